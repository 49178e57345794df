#include "costcap/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "costcap/errors.hpp"

namespace costcap::lattice {
namespace {

std::int64_t quantize(double value, double step) {
    double q = value / step;
    if (!(std::abs(q) < 9.0e18)) {
        throw DomainError("lattice index overflow: value too large for the chosen step");
    }
    return static_cast<std::int64_t>(std::llround(q));
}

// Sorts, merges duplicate cells, and truncates sub-threshold masses into the
// tail. `raw` is consumed.
void finalize_atoms(std::vector<Atom>& raw, std::vector<Atom>& out, double& tail_loss,
                    bool truncate) {
    std::sort(raw.begin(), raw.end(),
              [](const Atom& a, const Atom& b) { return a.index < b.index; });
    out.clear();
    out.reserve(raw.size());
    for (const Atom& a : raw) {
        if (!out.empty() && out.back().index == a.index) {
            out.back().mass += a.mass;
        } else {
            out.push_back(a);
        }
    }
    if (truncate) {
        std::size_t w = 0;
        for (std::size_t r = 0; r < out.size(); ++r) {
            if (out[r].mass < kMassTruncation) {
                tail_loss += out[r].mass;
            } else {
                out[w++] = out[r];
            }
        }
        out.resize(w);
    }
}

}  // namespace

LatticeDistribution LatticeDistribution::from_atoms(
    const std::vector<std::pair<double, double>>& atoms, double step) {
    if (!(step > 0.0) || !std::isfinite(step)) throw DomainError("lattice step must be positive");
    double sum = 0.0;
    for (const auto& [value, prob] : atoms) {
        if (!(prob >= 0.0) || !std::isfinite(prob) || !std::isfinite(value)) {
            throw BadPmf("atom probabilities must be finite and nonnegative");
        }
        sum += prob;
    }
    if (std::abs(sum - 1.0) > 1e-12) throw BadPmf("atom probabilities must sum to 1 within 1e-12");

    std::vector<Atom> raw;
    raw.reserve(atoms.size());
    for (const auto& [value, prob] : atoms) {
        if (prob > 0.0) raw.push_back({quantize(value, step), prob});
    }
    LatticeDistribution d;
    d.step_ = step;
    d.slack_ = step / 2.0;
    d.tail_loss_ = 0.0;
    finalize_atoms(raw, d.atoms_, d.tail_loss_, /*truncate=*/false);
    return d;
}

LatticeDistribution LatticeDistribution::delta(double value, double step) {
    return from_atoms({{value, 1.0}}, step);
}

double LatticeDistribution::offset() const {
    return atoms_.empty() ? 0.0 : static_cast<double>(atoms_.front().index) * step_;
}

std::int64_t LatticeDistribution::span_cells() const {
    if (atoms_.empty()) return 0;
    return atoms_.back().index - atoms_.front().index + 1;
}

double LatticeDistribution::total_mass() const {
    double s = 0.0;
    for (const Atom& a : atoms_) s += a.mass;
    return s;
}

double LatticeDistribution::mean() const {
    double s = 0.0, m = 0.0;
    for (const Atom& a : atoms_) {
        s += a.mass;
        m += a.mass * static_cast<double>(a.index) * step_;
    }
    return s > 0.0 ? m / s : 0.0;
}

double LatticeDistribution::variance() const {
    double mu = mean();
    double s = 0.0, v = 0.0;
    for (const Atom& a : atoms_) {
        double x = static_cast<double>(a.index) * step_ - mu;
        s += a.mass;
        v += a.mass * x * x;
    }
    return s > 0.0 ? v / s : 0.0;
}

double LatticeDistribution::min_value() const {
    return atoms_.empty() ? std::numeric_limits<double>::quiet_NaN()
                          : static_cast<double>(atoms_.front().index) * step_;
}

double LatticeDistribution::max_value() const {
    return atoms_.empty() ? std::numeric_limits<double>::quiet_NaN()
                          : static_cast<double>(atoms_.back().index) * step_;
}

std::pair<double, double> LatticeDistribution::cdf_bounds(double t) const {
    double lo = 0.0, hi = 0.0;
    for (const Atom& a : atoms_) {
        double v = static_cast<double>(a.index) * step_;
        if (v <= t - slack_) lo += a.mass;
        if (v <= t + slack_) hi += a.mass;
    }
    hi += tail_loss_;
    lo = std::clamp(lo, 0.0, 1.0);
    hi = std::clamp(hi, 0.0, 1.0);
    if (hi < lo) hi = lo;
    return {lo, hi};
}

std::pair<double, double> LatticeDistribution::expect_exp_clip(double t) const {
    auto clip = [t](double s) { return s <= t ? 1.0 : std::exp(-(s - t)); };
    double lo = 0.0, hi = 0.0;
    for (const Atom& a : atoms_) {
        double v = static_cast<double>(a.index) * step_;
        lo += a.mass * clip(v + slack_);
        hi += a.mass * clip(v - slack_);
    }
    hi += tail_loss_;
    lo = std::clamp(lo, 0.0, 1.0);
    hi = std::clamp(hi, 0.0, 1.0);
    if (hi < lo) hi = lo;
    return {lo, hi};
}

LatticeDistribution convolve(const LatticeDistribution& a, const LatticeDistribution& b,
                             std::uint64_t cell_budget) {
    if (a.step_ != b.step_) throw StepMismatch("convolve requires identical lattice steps");
    std::uint64_t products =
        static_cast<std::uint64_t>(a.atoms_.size()) * static_cast<std::uint64_t>(b.atoms_.size());
    if (products > cell_budget) {
        throw BudgetExceeded("convolution support would exceed the cell budget");
    }

    std::vector<Atom> raw;
    raw.reserve(products);
    for (const Atom& x : a.atoms_) {
        for (const Atom& y : b.atoms_) {
            raw.push_back({x.index + y.index, x.mass * y.mass});
        }
    }
    LatticeDistribution r;
    r.step_ = a.step_;
    r.slack_ = a.slack_ + b.slack_;
    r.tail_loss_ = a.tail_loss_ + b.tail_loss_ - a.tail_loss_ * b.tail_loss_;
    finalize_atoms(raw, r.atoms_, r.tail_loss_, /*truncate=*/true);
    if (static_cast<std::uint64_t>(r.atoms_.size()) > cell_budget) {
        throw BudgetExceeded("convolution result exceeds the cell budget");
    }
    return r;
}

LatticeDistribution power(const LatticeDistribution& a, std::uint64_t n,
                          std::uint64_t cell_budget) {
    if (n < 1) throw DomainError("power requires n >= 1");
    // Binary exponentiation; slack and tail accounting stay additive because
    // they add per convolve.
    LatticeDistribution result;
    LatticeDistribution base = a;
    bool have_result = false;
    std::uint64_t k = n;
    while (true) {
        if (k & 1) {
            result = have_result ? convolve(result, base, cell_budget) : base;
            have_result = true;
        }
        k >>= 1;
        if (k == 0) break;
        base = convolve(base, base, cell_budget);
    }
    return result;
}

}  // namespace costcap::lattice
