#include "costcap/dmc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "costcap/errors.hpp"

namespace costcap {
namespace {

constexpr double kRowSumTolerance = 1e-9;

struct BaOutcome {
    std::vector<double> p;
    double mutual_info = 0.0;
    double expected_cost = 0.0;
    double gap = 0.0;
    bool converged = false;
};

// Blahut-Arimoto on I(X;Y) - lambda*E[b(X)] for fixed lambda. Convergence is
// declared when the bracket [current Lagrangian, max_x Dl(x)] closes to
// gap_tol and every letter still carrying mass sits within kkt_tol of the
// maximum; letters violating stationarity at negligible mass are purged so
// "support" is well defined afterwards. A per-solve cap bounds the slow
// I-neutral drift that appears at small lambda on degenerate channels; a
// capped outcome reports converged = false but still carries usable moment
// estimates for bracketing decisions.
BaOutcome ba_lagrangian(const DmcChannel& ch, double lambda, std::vector<double> p,
                        double gap_tol, double kkt_tol, std::uint64_t& budget,
                        std::uint64_t iter_cap) {
    const std::size_t na = ch.input_size();
    const std::size_t nb = ch.output_size();
    constexpr double kPurgeMass = 1e-4;

    std::vector<double> q(nb), dl(na), d(na);
    std::uint64_t iters = 0;
    while (true) {
        if (budget == 0) throw NonConvergence("Blahut-Arimoto iteration budget exhausted");
        --budget;
        ++iters;

        std::fill(q.begin(), q.end(), 0.0);
        for (std::size_t x = 0; x < na; ++x) {
            if (p[x] <= 0.0) continue;
            const double* row = ch.row(x);
            for (std::size_t y = 0; y < nb; ++y) q[y] += p[x] * row[y];
        }
        double lower = 0.0;  // current Lagrangian value
        double upper = -std::numeric_limits<double>::infinity();
        for (std::size_t x = 0; x < na; ++x) {
            const double* row = ch.row(x);
            double div = 0.0;
            for (std::size_t y = 0; y < nb; ++y) {
                if (row[y] > 0.0) {
                    div += q[y] > 0.0 ? row[y] * std::log(row[y] / q[y])
                                      : std::numeric_limits<double>::infinity();
                }
            }
            d[x] = div;
            dl[x] = div - lambda * ch.cost(x);
            if (p[x] > 0.0) lower += p[x] * dl[x];
            upper = std::max(upper, dl[x]);
        }

        bool done = false;
        bool capped = iters >= iter_cap;
        if (upper - lower <= gap_tol) {
            bool stationary = true;
            bool purged = false;
            for (std::size_t x = 0; x < na; ++x) {
                if (p[x] <= 0.0 || upper - dl[x] <= kkt_tol) continue;
                if (p[x] < kPurgeMass) {
                    p[x] = 0.0;
                    purged = true;
                } else {
                    stationary = false;
                }
            }
            if (purged) {
                double s = 0.0;
                for (double v : p) s += v;
                for (double& v : p) v /= s;
                continue;  // re-verify the gap on the purged support
            }
            done = stationary;
        }
        if (done || capped) {
            BaOutcome out;
            out.gap = upper - lower;
            out.converged = done;
            out.mutual_info = 0.0;
            out.expected_cost = 0.0;
            for (std::size_t x = 0; x < na; ++x) {
                if (p[x] > 0.0) {
                    out.mutual_info += p[x] * d[x];
                    out.expected_cost += p[x] * ch.cost(x);
                }
            }
            out.p = std::move(p);
            return out;
        }

        double norm = 0.0;
        for (std::size_t x = 0; x < na; ++x) {
            p[x] = p[x] > 0.0 ? p[x] * std::exp(dl[x] - upper) : 0.0;
            norm += p[x];
        }
        if (!(norm > 0.0)) throw NonConvergence("Blahut-Arimoto input distribution collapsed");
        for (double& v : p) v /= norm;
    }
}

std::vector<double> uniform_init(std::size_t n) {
    return std::vector<double>(n, 1.0 / static_cast<double>(n));
}

// Dense Gaussian elimination with partial pivoting; returns false on a
// (near-)singular system. Dimensions here are at most |A|+1.
bool gauss_solve(std::vector<double> a, std::vector<double> b, std::vector<double>& out) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(a[r * n + col]) > std::abs(a[piv * n + col])) piv = r;
        }
        if (std::abs(a[piv * n + col]) < 1e-14) return false;
        if (piv != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(a[piv * n + c], a[col * n + c]);
            std::swap(b[piv], b[col]);
        }
        for (std::size_t r = col + 1; r < n; ++r) {
            double f = a[r * n + col] / a[col * n + col];
            if (f == 0.0) continue;
            for (std::size_t c = col; c < n; ++c) a[r * n + c] -= f * a[col * n + c];
            b[r] -= f * b[col];
        }
    }
    out.assign(n, 0.0);
    for (std::size_t r = n; r-- > 0;) {
        double s = b[r];
        for (std::size_t c = r + 1; c < n; ++c) s -= a[r * n + c] * out[c];
        out[r] = s / a[r * n + r];
    }
    return true;
}

struct KktPoint {
    std::vector<double> p;
    double lambda = 0.0;
    bool ok = false;
};

// Active-set Newton solve of the KKT system: equal tilted divergences on the
// support, unit mass, and (in active mode) the cost met with equality, with
// lambda as an unknown. The support grows when an excluded letter violates
// the stationarity inequality and shrinks when a mass collapses. First-order
// ascent supplies the starting point; this closes the remaining digits with
// quadratic convergence. A certified point is globally optimal by concavity.
// Fails (ok = false) on singular systems, e.g. genuinely non-unique faces.
KktPoint kkt_solve(const DmcChannel& ch, double beta, const std::vector<double>& p_init,
                   double lambda_init, bool solve_lambda) {
    const std::size_t na = ch.input_size();
    const std::size_t nb = ch.output_size();
    KktPoint fail;

    std::vector<char> in_support(na, 0);
    for (std::size_t x = 0; x < na; ++x) in_support[x] = p_init[x] > 1e-10 ? 1 : 0;

    std::vector<double> p(p_init);
    double lambda = solve_lambda ? std::max(lambda_init, 0.0) : lambda_init;

    for (std::size_t round = 0; round < 2 * na + 2; ++round) {
        std::vector<std::size_t> support;
        for (std::size_t x = 0; x < na; ++x) {
            if (in_support[x]) support.push_back(x);
        }
        if (support.empty()) return fail;
        const std::size_t ns = support.size();
        const std::size_t dim = ns + (solve_lambda ? 1 : 0);

        // project onto the current support
        double mass = 0.0;
        for (std::size_t x = 0; x < na; ++x) {
            if (!in_support[x]) p[x] = 0.0;
            p[x] = std::max(p[x], in_support[x] ? 1e-9 : 0.0);
            mass += p[x];
        }
        for (double& v : p) v /= mass;

        std::vector<double> q(nb), div(ns), f(dim), jac(dim * dim), delta;
        auto residual = [&](double& maxabs) {
            std::fill(q.begin(), q.end(), 0.0);
            for (std::size_t i = 0; i < ns; ++i) {
                const double* row = ch.row(support[i]);
                for (std::size_t y = 0; y < nb; ++y) q[y] += p[support[i]] * row[y];
            }
            for (std::size_t i = 0; i < ns; ++i) {
                const double* row = ch.row(support[i]);
                double d = 0.0;
                for (std::size_t y = 0; y < nb; ++y) {
                    if (row[y] > 0.0) {
                        if (q[y] <= 0.0) return false;
                        d += row[y] * std::log(row[y] / q[y]);
                    }
                }
                div[i] = d;
            }
            maxabs = 0.0;
            for (std::size_t i = 0; i + 1 < ns; ++i) {
                f[i] = div[i + 1] - lambda * ch.cost(support[i + 1]) - div[0] +
                       lambda * ch.cost(support[0]);
                maxabs = std::max(maxabs, std::abs(f[i]));
            }
            double m = -1.0, cost = -beta;
            for (std::size_t i = 0; i < ns; ++i) {
                m += p[support[i]];
                cost += p[support[i]] * ch.cost(support[i]);
            }
            f[ns - 1] = m;
            maxabs = std::max(maxabs, std::abs(m));
            if (solve_lambda) {
                f[ns] = cost;
                maxabs = std::max(maxabs, std::abs(cost));
            }
            return true;
        };

        double res = 0.0;
        if (!residual(res)) return fail;
        bool newton_ok = true;
        for (int it = 0; it < 80 && res > 1e-13; ++it) {
            // d div_i / d p_j = -sum_y W(y|x_i) W(y|x_j) / q(y)
            auto m2 = [&](std::size_t i, std::size_t j) {
                const double* ri = ch.row(support[i]);
                const double* rj = ch.row(support[j]);
                double s2 = 0.0;
                for (std::size_t y = 0; y < nb; ++y) {
                    if (ri[y] > 0.0 && rj[y] > 0.0) s2 -= ri[y] * rj[y] / q[y];
                }
                return s2;
            };
            std::fill(jac.begin(), jac.end(), 0.0);
            for (std::size_t i = 0; i + 1 < ns; ++i) {
                for (std::size_t j = 0; j < ns; ++j) {
                    jac[i * dim + j] = m2(i + 1, j) - m2(0, j);
                }
                if (solve_lambda) {
                    jac[i * dim + ns] = -(ch.cost(support[i + 1]) - ch.cost(support[0]));
                }
            }
            for (std::size_t j = 0; j < ns; ++j) jac[(ns - 1) * dim + j] = 1.0;
            if (solve_lambda) {
                for (std::size_t j = 0; j < ns; ++j) jac[ns * dim + j] = ch.cost(support[j]);
            }
            std::vector<double> rhs(dim);
            for (std::size_t i = 0; i < dim; ++i) rhs[i] = -f[i];
            if (!gauss_solve(jac, rhs, delta)) {
                newton_ok = false;
                break;
            }
            double step = 1.0;
            for (int halved = 0; halved < 50; ++halved) {
                bool feasible = true;
                for (std::size_t i = 0; i < ns; ++i) {
                    if (p[support[i]] + step * delta[i] < 0.0) {
                        feasible = false;
                        break;
                    }
                }
                if (feasible) break;
                step *= 0.5;
            }
            for (std::size_t i = 0; i < ns; ++i) {
                p[support[i]] = std::max(p[support[i]] + step * delta[i], 0.0);
            }
            if (solve_lambda) lambda = std::max(lambda + step * delta[ns], 0.0);
            if (!residual(res)) return fail;
        }
        if (!newton_ok || res > 1e-12) return fail;

        // shrink: letters whose mass collapsed leave the support
        bool changed = false;
        for (std::size_t i = 0; i < ns; ++i) {
            if (p[support[i]] <= 1e-12) {
                in_support[support[i]] = 0;
                changed = true;
            }
        }
        if (changed) continue;

        // grow: an excluded letter beating the support value enters
        double nu = div[0] - lambda * ch.cost(support[0]);
        double worst = 1e-11;
        std::size_t enter = na;
        for (std::size_t x = 0; x < na; ++x) {
            if (in_support[x]) continue;
            const double* row = ch.row(x);
            double d = 0.0;
            for (std::size_t y = 0; y < nb; ++y) {
                if (row[y] > 0.0) {
                    if (q[y] <= 0.0) {
                        d = std::numeric_limits<double>::infinity();
                        break;
                    }
                    d += row[y] * std::log(row[y] / q[y]);
                }
            }
            double viol = d - lambda * ch.cost(x) - nu;
            if (viol > worst) {
                worst = viol;
                enter = x;
            }
        }
        if (enter < na) {
            in_support[enter] = 1;
            p[enter] = 1e-6;
            continue;
        }

        KktPoint out;
        out.p.assign(na, 0.0);
        for (std::size_t i = 0; i < ns; ++i) out.p[support[i]] = p[support[i]];
        out.lambda = lambda;
        out.ok = true;
        return out;
    }
    return fail;
}

// Initial bracket seed: max_{x,y} |log(kernel(x,y)/uniform)| over the cost
// range; the caller doubles it until the cost constraint brackets beta.
double initial_lambda_guess(const DmcChannel& ch) {
    double num = 0.0;
    for (std::size_t x = 0; x < ch.input_size(); ++x) {
        for (std::size_t y = 0; y < ch.output_size(); ++y) {
            double k = ch.kernel(x, y);
            if (k > 0.0) {
                num = std::max(num, std::abs(std::log(k * static_cast<double>(ch.output_size()))));
            }
        }
    }
    double range = ch.cost_range();
    double guess = range > 0.0 ? num / range : 1.0;
    return guess > 0.0 ? guess : 1.0;
}

void recompute_moments(const DmcChannel& ch, const std::vector<double>& p, double& mutual_info,
                       double& expected_cost) {
    const std::size_t nb = ch.output_size();
    std::vector<double> q(nb, 0.0);
    for (std::size_t x = 0; x < ch.input_size(); ++x) {
        if (p[x] <= 0.0) continue;
        const double* row = ch.row(x);
        for (std::size_t y = 0; y < nb; ++y) q[y] += p[x] * row[y];
    }
    mutual_info = 0.0;
    expected_cost = 0.0;
    for (std::size_t x = 0; x < ch.input_size(); ++x) {
        if (p[x] <= 0.0) continue;
        const double* row = ch.row(x);
        double d = 0.0;
        for (std::size_t y = 0; y < nb; ++y) {
            if (row[y] > 0.0 && q[y] > 0.0) d += row[y] * std::log(row[y] / q[y]);
        }
        mutual_info += p[x] * d;
        expected_cost += p[x] * ch.cost(x);
    }
}

CostCapacitySolution finalize_solution(const DmcChannel& ch, std::vector<double> p, double beta,
                                       double lambda, const SolveOptions& opts,
                                       SolveDiagnostics diag) {
    const std::size_t na = ch.input_size();
    const std::size_t nb = ch.output_size();

    // Active-set polish of the point delivered by the ascent; accepted only
    // when feasibility holds at the polished point.
    KktPoint refined = lambda > 1e-12 ? kkt_solve(ch, beta, p, lambda, /*solve_lambda=*/true)
                                      : kkt_solve(ch, beta, p, 0.0, /*solve_lambda=*/false);
    if (refined.ok) {
        double mi = 0.0, cost = 0.0;
        recompute_moments(ch, refined.p, mi, cost);
        bool feasible = lambda > 1e-12 ? std::abs(cost - beta) <= 1e-9
                                       : cost <= beta + std::max(opts.cost_tol, 1e-11);
        if (feasible) {
            p = std::move(refined.p);
            lambda = refined.lambda;
        }
    }

    double mass = 0.0;
    for (double& v : p) {
        if (v < opts.support_threshold) v = 0.0;
        mass += v;
    }
    if (!(mass > 0.0)) throw NonConvergence("solution support vanished after thresholding");
    for (double& v : p) v /= mass;

    CostCapacitySolution sol;
    sol.beta = beta;
    sol.lambda_star = lambda;
    sol.p_x_star = std::move(p);
    sol.p_y_star.assign(nb, 0.0);
    for (std::size_t x = 0; x < na; ++x) {
        if (sol.p_x_star[x] <= 0.0) continue;
        const double* row = ch.row(x);
        for (std::size_t y = 0; y < nb; ++y) sol.p_y_star[y] += sol.p_x_star[x] * row[y];
    }

    sol.cond_mean.assign(na, 0.0);
    sol.cond_var.assign(na, 0.0);
    sol.capacity = 0.0;
    sol.active_cost = 0.0;
    sol.dispersion = 0.0;
    for (std::size_t x = 0; x < na; ++x) {
        const double* row = ch.row(x);
        double imean = 0.0;
        for (std::size_t y = 0; y < nb; ++y) {
            if (row[y] > 0.0) {
                imean += sol.p_y_star[y] > 0.0 ? row[y] * std::log(row[y] / sol.p_y_star[y])
                                               : std::numeric_limits<double>::infinity();
            }
        }
        double ivar = 0.0;
        if (std::isfinite(imean)) {
            for (std::size_t y = 0; y < nb; ++y) {
                if (row[y] > 0.0) {
                    double dev = std::log(row[y] / sol.p_y_star[y]) - imean;
                    ivar += row[y] * dev * dev;
                }
            }
        } else {
            ivar = std::numeric_limits<double>::infinity();
        }
        // The lambda shift is constant given X = x, so the conditional
        // variance of the tilted density equals that of the information
        // density.
        sol.cond_mean[x] = imean - lambda * (ch.cost(x) - beta);
        sol.cond_var[x] = ivar;
        if (sol.p_x_star[x] > 0.0) {
            sol.capacity += sol.p_x_star[x] * imean;
            sol.active_cost += sol.p_x_star[x] * ch.cost(x);
            sol.dispersion += sol.p_x_star[x] * ivar;
        }
    }
    sol.diag = diag;
    return sol;
}

CostCapacitySolution solve_from_init(const DmcChannel& ch, double beta, const SolveOptions& opts,
                                     const std::vector<double>& init) {
    if (!(beta > ch.beta_min())) {
        throw InfeasibleCost("beta must exceed the minimum letter cost");
    }
    std::uint64_t budget = opts.max_inner_iterations;
    const std::uint64_t iter_cap = 30'000;
    const double gap_tol = std::max(opts.tol * 0.5, 1e-14);
    const double kkt_tol = std::max(20.0 * gap_tol, 1e-8);
    SolveDiagnostics diag;

    // Consecutive bisection prices are close, so each solve warm-starts from
    // the previous optimizer. The floor keeps every letter revivable: the
    // support appropriate at one price may differ at the next.
    std::vector<double> warm = init;
    auto solve_at = [&](double lambda) {
        std::vector<double> start = warm;
        double sum = 0.0;
        for (double& v : start) {
            v = std::max(v, 1e-12);
            sum += v;
        }
        for (double& v : start) v /= sum;
        BaOutcome r = ba_lagrangian(ch, lambda, std::move(start), gap_tol, kkt_tol, budget,
                                    iter_cap);
        warm = r.p;
        // Certified fixed-price polish keeps the bisection reads exact even
        // when the first-order ascent was capped on an ill-conditioned
        // kernel.
        KktPoint k = kkt_solve(ch, beta, r.p, lambda, /*solve_lambda=*/false);
        if (k.ok) {
            r.p = std::move(k.p);
            recompute_moments(ch, r.p, r.mutual_info, r.expected_cost);
            r.gap = 0.0;
            r.converged = true;
            warm = r.p;
        }
        return r;
    };

    BaOutcome unconstrained = solve_at(0.0);
    if (unconstrained.converged && unconstrained.expected_cost <= beta + opts.cost_tol) {
        diag.inner_iterations = opts.max_inner_iterations - budget;
        diag.lambda_lo = diag.lambda_hi = 0.0;
        diag.cost_met = true;
        return finalize_solution(ch, std::move(unconstrained.p), beta, 0.0, opts, diag);
    }

    double lam_lo = 0.0;
    BaOutcome sol_lo = unconstrained;
    double lam_hi = initial_lambda_guess(ch);
    BaOutcome sol_hi;
    bool bracketed = false;
    for (int it = 0; it < 200; ++it) {
        sol_hi = solve_at(lam_hi);
        if (sol_hi.expected_cost <= beta) {
            bracketed = true;
            break;
        }
        lam_lo = lam_hi;
        sol_lo = sol_hi;
        lam_hi *= 2.0;
    }
    if (!bracketed) throw NonConvergence("failed to bracket the cost constraint in lambda");

    for (int it = 0; it < 500; ++it) {
        // The constraint goes slack as the price collapses toward zero: weak
        // duality pins the capacity to within lam_hi*(beta - E[b]).
        if (lam_lo == 0.0 && lam_hi <= 1e-6 && sol_hi.converged &&
            lam_hi * (beta - sol_hi.expected_cost) <= 0.5 * opts.tol) {
            diag.inner_iterations = opts.max_inner_iterations - budget;
            diag.lambda_lo = 0.0;
            diag.lambda_hi = lam_hi;
            diag.cost_met = false;
            return finalize_solution(ch, std::move(sol_hi.p), beta, 0.0, opts, diag);
        }
        if (lam_hi - lam_lo <= 1e-12 * std::max(1.0, lam_hi)) break;
        double mid = 0.5 * (lam_lo + lam_hi);
        BaOutcome sm = solve_at(mid);
        if (sm.converged && std::abs(sm.expected_cost - beta) <= opts.cost_tol) {
            diag.inner_iterations = opts.max_inner_iterations - budget;
            diag.lambda_lo = lam_lo;
            diag.lambda_hi = lam_hi;
            diag.cost_met = true;
            return finalize_solution(ch, std::move(sm.p), beta, mid, opts, diag);
        }
        if (sm.expected_cost > beta) {
            lam_lo = mid;
            sol_lo = std::move(sm);
        } else {
            lam_hi = mid;
            sol_hi = std::move(sm);
        }
    }

    diag.inner_iterations = opts.max_inner_iterations - budget;
    diag.lambda_lo = lam_lo;
    diag.lambda_hi = lam_hi;
    diag.cost_met = false;
    if (lam_hi <= 1e-9) {
        // Any positive price pushes the cost below beta: the constraint is
        // slack at the optimum and the price is zero.
        return finalize_solution(ch, std::move(sol_hi.p), beta, 0.0, opts, diag);
    }
    // Kink of C(beta): the supports switch across the collapsed bracket. Mix
    // the endpoint optimizers to meet the cost with equality and report the
    // bracket midpoint as the price. The bisection only ever stores sol_lo
    // with cost above beta and sol_hi at or below it, so the mixing weight
    // lands in [0,1] and the mixture is feasible by construction.
    diag.kink = true;
    double lo_cost = sol_lo.expected_cost, hi_cost = sol_hi.expected_cost;
    double t = lo_cost > hi_cost ? (beta - hi_cost) / (lo_cost - hi_cost) : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    std::vector<double> mix(ch.input_size());
    for (std::size_t x = 0; x < ch.input_size(); ++x) {
        mix[x] = t * sol_lo.p[x] + (1.0 - t) * sol_hi.p[x];
    }
    return finalize_solution(ch, std::move(mix), beta, 0.5 * (lam_lo + lam_hi), opts, diag);
}

}  // namespace

DmcChannel::DmcChannel(std::vector<std::vector<double>> kernel, std::vector<double> cost,
                       std::vector<std::string> labels) {
    if (kernel.empty() || kernel.front().empty()) {
        throw BadPmf("channel kernel must be a nonempty matrix");
    }
    input_size_ = kernel.size();
    output_size_ = kernel.front().size();
    if (cost.size() != input_size_) {
        throw DomainError("cost vector length must match the input alphabet");
    }
    if (!labels.empty() && labels.size() != input_size_) {
        throw DomainError("labels length must match the input alphabet");
    }
    kernel_.assign(input_size_ * output_size_, 0.0);
    for (std::size_t x = 0; x < input_size_; ++x) {
        if (kernel[x].size() != output_size_) throw BadPmf("ragged channel kernel");
        double sum = 0.0;
        for (std::size_t y = 0; y < output_size_; ++y) {
            double v = kernel[x][y];
            if (!(v >= 0.0) || !std::isfinite(v)) {
                throw BadPmf("kernel entries must be finite and nonnegative");
            }
            sum += v;
        }
        if (std::abs(sum - 1.0) > kRowSumTolerance) {
            throw BadPmf("kernel row " + std::to_string(x) + " sums to " + std::to_string(sum));
        }
        for (std::size_t y = 0; y < output_size_; ++y) {
            kernel_[x * output_size_ + y] = kernel[x][y] / sum;
        }
    }
    for (std::size_t y = 0; y < output_size_; ++y) {
        bool accessible = false;
        for (std::size_t x = 0; x < input_size_ && !accessible; ++x) {
            accessible = kernel_[x * output_size_ + y] > 0.0;
        }
        if (!accessible) {
            throw BadPmf("output " + std::to_string(y) + " is not accessible from any input");
        }
    }
    for (double c : cost) {
        if (!(c >= 0.0) || !std::isfinite(c)) {
            throw DomainError("cost entries must be finite and nonnegative");
        }
    }
    cost_ = std::move(cost);
    labels_ = std::move(labels);
    beta_min_ = *std::min_element(cost_.begin(), cost_.end());
    cost_max_ = *std::max_element(cost_.begin(), cost_.end());
}

CostCapacitySolution solve_capacity_cost(const DmcChannel& channel, double beta,
                                         const SolveOptions& opts) {
    if (!(opts.tol > 0.0)) throw DomainError("tolerance must be positive");
    return solve_from_init(channel, beta, opts, uniform_init(channel.input_size()));
}

CostCapacitySolution solve_capacity_cost(const DmcChannel& channel, double beta, double tol) {
    SolveOptions opts;
    opts.tol = tol;
    return solve_capacity_cost(channel, beta, opts);
}

double tilted_density(const DmcChannel& channel, const CostCapacitySolution& sol, std::size_t x,
                      std::size_t y) {
    if (x >= channel.input_size() || y >= channel.output_size() ||
        sol.p_y_star.size() != channel.output_size()) {
        throw DomainError("tilted_density: solution does not match the channel");
    }
    double k = channel.kernel(x, y);
    double py = sol.p_y_star[y];
    if (py <= 0.0) {
        throw UndefinedDensity(k > 0.0
                                   ? "kernel mass on an output with zero optimal probability"
                                   : "density undefined where kernel and output mass both vanish");
    }
    if (k <= 0.0) return -std::numeric_limits<double>::infinity();
    return std::log(k / py) - sol.lambda_star * (channel.cost(x) - sol.beta);
}

std::vector<std::pair<double, double>> conditional_tilted_pmf(const DmcChannel& channel,
                                                              const CostCapacitySolution& sol,
                                                              std::size_t x) {
    if (x >= channel.input_size() || sol.p_y_star.size() != channel.output_size()) {
        throw DomainError("conditional_tilted_pmf: solution does not match the channel");
    }
    std::vector<std::pair<double, double>> atoms;
    const double* row = channel.row(x);
    double shift = sol.lambda_star * (channel.cost(x) - sol.beta);
    for (std::size_t y = 0; y < channel.output_size(); ++y) {
        if (row[y] <= 0.0) continue;
        if (sol.p_y_star[y] <= 0.0) {
            throw UndefinedDensity("kernel mass on an output with zero optimal probability");
        }
        atoms.emplace_back(std::log(row[y] / sol.p_y_star[y]) - shift, row[y]);
    }
    std::sort(atoms.begin(), atoms.end());
    // Merge numerically coincident values (mass-weighted) so symmetric rows
    // collapse to single atoms.
    std::vector<std::pair<double, double>> merged;
    for (const auto& [v, m] : atoms) {
        if (!merged.empty() && v - merged.back().first <= 1e-12) {
            auto& [mv, mm] = merged.back();
            mv = (mv * mm + v * m) / (mm + m);
            mm += m;
        } else {
            merged.emplace_back(v, m);
        }
    }
    return merged;
}

double dispersion_cost(const CostCapacitySolution& sol) { return sol.dispersion; }

UniquenessReport caid_uniqueness_probe(const DmcChannel& channel, double beta, int trials,
                                       const SolveOptions& opts, std::uint64_t seed) {
    if (trials < 2) throw DomainError("uniqueness probe needs at least 2 trials");
    std::mt19937_64 rng(seed);
    std::exponential_distribution<double> expd(1.0);

    std::vector<CostCapacitySolution> sols;
    sols.reserve(static_cast<std::size_t>(trials));
    for (int t = 0; t < trials; ++t) {
        std::vector<double> init(channel.input_size());
        double sum = 0.0;
        for (double& v : init) {
            v = expd(rng) + 1e-12;
            sum += v;
        }
        for (double& v : init) v /= sum;
        sols.push_back(solve_from_init(channel, beta, opts, init));
    }

    UniquenessReport rep;
    rep.dispersion_min = std::numeric_limits<double>::infinity();
    rep.dispersion_max = -std::numeric_limits<double>::infinity();
    double cap_min = std::numeric_limits<double>::infinity();
    double cap_max = -std::numeric_limits<double>::infinity();
    for (const auto& s : sols) {
        rep.lambda_values.push_back(s.lambda_star);
        rep.dispersion_min = std::min(rep.dispersion_min, s.dispersion);
        rep.dispersion_max = std::max(rep.dispersion_max, s.dispersion);
        cap_min = std::min(cap_min, s.capacity);
        cap_max = std::max(cap_max, s.capacity);
    }
    rep.capacity_spread = cap_max - cap_min;
    for (std::size_t i = 0; i < sols.size(); ++i) {
        for (std::size_t j = i + 1; j < sols.size(); ++j) {
            double l1 = 0.0;
            for (std::size_t x = 0; x < channel.input_size(); ++x) {
                l1 += std::abs(sols[i].p_x_star[x] - sols[j].p_x_star[x]);
            }
            rep.max_l1_distance = std::max(rep.max_l1_distance, l1);
        }
    }
    rep.unique = rep.max_l1_distance <= 1e-6;
    return rep;
}

}  // namespace costcap
