#include "costcap/jscc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "costcap/errors.hpp"
#include "costcap/lattice.hpp"
#include "costcap/mathutil.hpp"

namespace costcap::jscc {
namespace {

struct RdInner {
    std::vector<double> q;            // reproduction distribution
    std::vector<double> conditional;  // row-major |S| x |Z|
    double rate = 0.0;
    double expected_distortion = 0.0;
    bool converged = false;
};

// Blahut iteration for min_q -sum_s p(s) log sum_z q(z) exp(-lambda d(s,z)).
// The multiplier update q <- q*c is self-normalizing; max_z log c(z) bounds
// the optimality gap.
RdInner rd_lagrangian(const DmsSource& src, const std::vector<double>& p, double lambda,
                      double gap_tol, std::uint64_t& budget, std::uint64_t iter_cap) {
    const std::size_t ns = src.alphabet_size();
    const std::size_t nz = src.reproduction_size();

    std::vector<double> q(nz, 1.0 / static_cast<double>(nz));
    std::vector<double> a(ns * nz);
    for (std::size_t s = 0; s < ns; ++s) {
        for (std::size_t z = 0; z < nz; ++z) {
            a[s * nz + z] = std::exp(-lambda * src.distortion(s, z));
        }
    }

    std::vector<double> dsum(ns), c(nz);
    std::uint64_t iters = 0;
    bool converged = false;
    while (true) {
        if (budget == 0) throw NonConvergence("rate-distortion iteration budget exhausted");
        --budget;
        ++iters;

        for (std::size_t s = 0; s < ns; ++s) {
            if (p[s] <= 0.0) continue;
            double d = 0.0;
            for (std::size_t z = 0; z < nz; ++z) d += q[z] * a[s * nz + z];
            dsum[s] = d;
        }
        double maxc = 0.0;
        for (std::size_t z = 0; z < nz; ++z) {
            double cz = 0.0;
            for (std::size_t s = 0; s < ns; ++s) {
                if (p[s] > 0.0) cz += p[s] * a[s * nz + z] / dsum[s];
            }
            c[z] = cz;
            maxc = std::max(maxc, cz);
        }
        if (std::log(maxc) <= gap_tol) {
            converged = true;
            break;
        }
        if (iters >= iter_cap) break;
        // The floor keeps letters revivable: a reproduction point squeezed
        // out by underflow could otherwise never re-enter the support even
        // when its multiplier exceeds 1.
        for (std::size_t z = 0; z < nz; ++z) q[z] = std::max(q[z] * c[z], 1e-300);
    }

    RdInner out;
    out.converged = converged;
    out.q = q;
    out.conditional.assign(src.alphabet_size() * nz, 0.0);
    std::vector<double> marginal(nz, 0.0);
    for (std::size_t s = 0; s < ns; ++s) {
        if (p[s] <= 0.0) continue;
        for (std::size_t z = 0; z < nz; ++z) {
            double v = q[z] * a[s * nz + z] / dsum[s];
            out.conditional[s * nz + z] = v;
            marginal[z] += p[s] * v;
        }
    }
    out.rate = 0.0;
    out.expected_distortion = 0.0;
    for (std::size_t s = 0; s < ns; ++s) {
        if (p[s] <= 0.0) continue;
        for (std::size_t z = 0; z < nz; ++z) {
            double v = out.conditional[s * nz + z];
            if (v > 0.0 && marginal[z] > 0.0) {
                out.rate += p[s] * v * std::log(v / marginal[z]);
                out.expected_distortion += p[s] * v * src.distortion(s, z);
            }
        }
    }
    return out;
}

RdSolution finalize_rd(const DmsSource& src, const std::vector<double>& p, const RdInner& inner,
                       double d, double lambda, RdDiagnostics diag) {
    RdSolution sol;
    sol.d = d;
    sol.lambda_s = lambda;
    sol.rate = inner.rate;
    sol.p_z_star = inner.q;
    sol.diag = diag;

    const std::size_t ns = src.alphabet_size();
    const std::size_t nz = src.reproduction_size();
    sol.tilted.assign(ns, 0.0);
    double mean = 0.0;
    for (std::size_t s = 0; s < ns; ++s) {
        double dsum = 0.0;
        for (std::size_t z = 0; z < nz; ++z) {
            dsum += sol.p_z_star[z] * std::exp(-lambda * src.distortion(s, z));
        }
        sol.tilted[s] = -std::log(dsum) - lambda * d;
        if (p[s] > 0.0) mean += p[s] * sol.tilted[s];
    }
    sol.var_tilted = 0.0;
    for (std::size_t s = 0; s < ns; ++s) {
        if (p[s] > 0.0) {
            double dev = sol.tilted[s] - mean;
            sol.var_tilted += p[s] * dev * dev;
        }
    }
    return sol;
}

}  // namespace

DmsSource::DmsSource(std::vector<double> pmf, std::vector<std::vector<double>> distortion) {
    if (pmf.empty() || distortion.size() != pmf.size() || distortion.front().empty()) {
        throw BadPmf("source pmf and distortion matrix shapes do not match");
    }
    double sum = 0.0;
    for (double v : pmf) {
        if (!(v >= 0.0) || !std::isfinite(v)) throw BadPmf("source pmf entries must be >= 0");
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-12) throw BadPmf("source pmf must sum to 1 within 1e-12");

    reproduction_size_ = distortion.front().size();
    distortion_.assign(pmf.size() * reproduction_size_, 0.0);
    for (std::size_t s = 0; s < pmf.size(); ++s) {
        if (distortion[s].size() != reproduction_size_) throw BadPmf("ragged distortion matrix");
        for (std::size_t z = 0; z < reproduction_size_; ++z) {
            double v = distortion[s][z];
            if (!(v >= 0.0) || !std::isfinite(v)) {
                throw DomainError("distortion entries must be finite and nonnegative");
            }
            distortion_[s * reproduction_size_ + z] = v;
        }
    }
    pmf_ = std::move(pmf);

    d_min_ = 0.0;
    for (std::size_t s = 0; s < pmf_.size(); ++s) {
        double m = std::numeric_limits<double>::infinity();
        for (std::size_t z = 0; z < reproduction_size_; ++z) {
            m = std::min(m, distortion_[s * reproduction_size_ + z]);
        }
        d_min_ += pmf_[s] * m;
    }
    d_max_ = std::numeric_limits<double>::infinity();
    for (std::size_t z = 0; z < reproduction_size_; ++z) {
        double e = 0.0;
        for (std::size_t s = 0; s < pmf_.size(); ++s) {
            e += pmf_[s] * distortion_[s * reproduction_size_ + z];
        }
        d_max_ = std::min(d_max_, e);
    }
}

RdSolution solve_rate_distortion(const DmsSource& source, double d, const RdOptions& opts) {
    if (!(opts.tol > 0.0)) throw DomainError("tolerance must be positive");
    if (!(d > source.d_min()) || d > source.d_max()) {
        throw InfeasibleDistortion("distortion level outside (d_min, d_max]");
    }
    // Zero-mass source letters are pruned from the optimization (they would
    // otherwise distort the Lagrangian bounds); tilted values are still
    // reported for every letter.
    const std::vector<double>& p = source.pmf();

    std::uint64_t budget = opts.max_inner_iterations;
    const std::uint64_t iter_cap = 30'000;
    const double gap_tol = std::max(opts.tol * 0.5, 1e-14);
    RdDiagnostics diag;

    auto solve_at = [&](double lambda) {
        return rd_lagrangian(source, p, lambda, gap_tol, budget, iter_cap);
    };

    double lam_lo = 1e-12;  // E[d] -> d_max as the price vanishes
    RdInner sol_lo = solve_at(lam_lo);
    if (sol_lo.expected_distortion <= d) {
        diag.inner_iterations = opts.max_inner_iterations - budget;
        diag.lambda_lo = diag.lambda_hi = lam_lo;
        diag.cost_met = std::abs(sol_lo.expected_distortion - d) <= opts.distortion_tol;
        return finalize_rd(source, p, sol_lo, d, lam_lo, diag);
    }

    double lam_hi = 1.0;
    RdInner sol_hi;
    bool bracketed = false;
    for (int it = 0; it < 200; ++it) {
        sol_hi = solve_at(lam_hi);
        if (sol_hi.expected_distortion <= d) {
            bracketed = true;
            break;
        }
        lam_lo = lam_hi;
        sol_lo = sol_hi;
        lam_hi *= 2.0;
    }
    if (!bracketed) throw NonConvergence("failed to bracket the distortion constraint");

    for (int it = 0; it < 300; ++it) {
        if (lam_hi - lam_lo <= 1e-11 * std::max(1.0, lam_hi)) break;
        double mid = 0.5 * (lam_lo + lam_hi);
        RdInner sm = solve_at(mid);
        if (sm.converged && std::abs(sm.expected_distortion - d) <= opts.distortion_tol) {
            diag.inner_iterations = opts.max_inner_iterations - budget;
            diag.lambda_lo = lam_lo;
            diag.lambda_hi = lam_hi;
            diag.cost_met = true;
            return finalize_rd(source, p, sm, d, mid, diag);
        }
        if (sm.expected_distortion > d) {
            lam_lo = mid;
            sol_lo = std::move(sm);
        } else {
            lam_hi = mid;
            sol_hi = std::move(sm);
        }
    }

    // Kink of R(d): mix the endpoint conditionals to meet the distortion
    // with equality.
    diag.inner_iterations = opts.max_inner_iterations - budget;
    diag.lambda_lo = lam_lo;
    diag.lambda_hi = lam_hi;
    diag.cost_met = false;
    diag.kink = true;
    double t = (d - sol_hi.expected_distortion) /
               (sol_lo.expected_distortion - sol_hi.expected_distortion);
    t = std::clamp(t, 0.0, 1.0);
    RdInner mixed;
    const std::size_t ns = source.alphabet_size();
    const std::size_t nz = source.reproduction_size();
    mixed.conditional.assign(ns * nz, 0.0);
    mixed.q.assign(nz, 0.0);
    mixed.rate = 0.0;
    mixed.expected_distortion = 0.0;
    std::vector<double> marginal(nz, 0.0);
    for (std::size_t i = 0; i < ns * nz; ++i) {
        mixed.conditional[i] = t * sol_lo.conditional[i] + (1.0 - t) * sol_hi.conditional[i];
    }
    for (std::size_t z = 0; z < nz; ++z) {
        mixed.q[z] = t * sol_lo.q[z] + (1.0 - t) * sol_hi.q[z];
    }
    for (std::size_t s = 0; s < ns; ++s) {
        if (p[s] <= 0.0) continue;
        for (std::size_t z = 0; z < nz; ++z) marginal[z] += p[s] * mixed.conditional[s * nz + z];
    }
    for (std::size_t s = 0; s < ns; ++s) {
        if (p[s] <= 0.0) continue;
        for (std::size_t z = 0; z < nz; ++z) {
            double v = mixed.conditional[s * nz + z];
            if (v > 0.0 && marginal[z] > 0.0) {
                mixed.rate += p[s] * v * std::log(v / marginal[z]);
                mixed.expected_distortion += p[s] * v * source.distortion(s, z);
            }
        }
    }
    return finalize_rd(source, p, mixed, d, 0.5 * (lam_lo + lam_hi), diag);
}

RdSolution solve_rate_distortion(const DmsSource& source, double d, double tol) {
    RdOptions opts;
    opts.tol = tol;
    return solve_rate_distortion(source, d, opts);
}

double d_tilted_info(const RdSolution& rd, std::size_t s) {
    if (s >= rd.tilted.size()) throw DomainError("source letter out of range");
    return rd.tilted[s];
}

double jscc_gaussian_approx(const RdSolution& rd, const CostCapacitySolution& cc, int n,
                            double epsilon, SolveFor solve_for) {
    if (!(epsilon > 0.0) || !(epsilon < 1.0)) throw DomainError("epsilon must lie in (0,1)");
    if (n < 1) throw DomainError("blocklength must be at least 1");
    if (!(cc.capacity > 0.0)) throw DomainError("channel capacity must be positive");
    if (!(rd.rate > 0.0)) throw DomainError("source rate must be positive");

    const double nn = static_cast<double>(n);
    const double C = cc.capacity, R = rd.rate;
    const double V = std::max(cc.dispersion, 0.0);
    const double Vs = std::max(rd.var_tilted, 0.0);
    const double t = q_inv(epsilon);

    double k;
    if (t == 0.0 || (V == 0.0 && Vs == 0.0)) {
        k = nn * C / R;
    } else {
        // (nC - kR)^2 = t^2 (nV + k Vs), with the admissible sign
        // nC - kR >= 0 for t > 0 and <= 0 for t < 0.
        const double b = 2.0 * nn * C * R + t * t * Vs;
        const double disc = 4.0 * nn * C * R * t * t * Vs + t * t * t * t * Vs * Vs +
                            4.0 * R * R * t * t * nn * V;
        const double sq = std::sqrt(std::max(disc, 0.0));
        if (t > 0.0) {
            k = (b - sq) / (2.0 * R * R);
            if (k < 0.0) {
                throw NoPositiveSolution(
                    "n*C(beta) is too small against the dispersion at this epsilon");
            }
        } else {
            k = (b + sq) / (2.0 * R * R);
        }
    }
    return solve_for == SolveFor::k ? k : k / nn;
}

double jscc_band_nats(const CostCapacitySolution& cc, int n) {
    std::size_t supp = 0;
    for (double v : cc.p_x_star) {
        if (v > 0.0) ++supp;
    }
    return 0.5 * (static_cast<double>(supp) + 1.0) * std::log(static_cast<double>(std::max(n, 2)));
}

double jscc_converse_epsilon(const DmsSource& source, const RdSolution& rd,
                             const DmcChannel& channel, const CostCapacitySolution& cc, int k,
                             int n, double gamma, const bounds::EvalOptions& opts) {
    if (!(gamma > 0.0)) throw DomainError("gamma must be positive");
    if (k < 0) throw DomainError("source block length must be nonnegative");
    if (n < 1) throw DomainError("blocklength must be at least 1");

    bounds::TypeTailSet tails(channel, cc, n, opts, bounds::TailStatistic::tilted_density);

    if (k == 0) {
        return std::max(0.0, tails.min_cdf_lower(-gamma) - std::exp(-gamma));
    }

    std::vector<std::pair<double, double>> atoms;
    for (std::size_t s = 0; s < source.alphabet_size(); ++s) {
        if (source.pmf()[s] > 0.0) atoms.emplace_back(rd.tilted[s], source.pmf()[s]);
    }
    lattice::LatticeDistribution src_sum = lattice::power(
        lattice::LatticeDistribution::from_atoms(atoms, opts.lattice_step),
        static_cast<std::uint64_t>(k), opts.cell_budget);

    // E over the source sum of the per-threshold minimum channel tail; the
    // source atom location is shifted down by its slack and truncated source
    // mass contributes zero, so the expectation stays a valid lower bound.
    double expectation = 0.0;
    for (const auto& a : src_sum.atoms()) {
        double sigma = static_cast<double>(a.index) * src_sum.step() - src_sum.slack();
        expectation += a.mass * tails.min_cdf_lower(sigma - gamma);
    }
    return std::max(0.0, expectation - std::exp(-gamma));
}

}  // namespace costcap::jscc
