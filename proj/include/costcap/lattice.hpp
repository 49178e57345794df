#ifndef COSTCAP_LATTICE_HPP
#define COSTCAP_LATTICE_HPP

#include <cstdint>
#include <utility>
#include <vector>

namespace costcap::lattice {

// Budget (in stored lattice cells) for intermediate supports, overridable per
// call and via the CLI environment knob.
inline constexpr std::uint64_t kDefaultCellBudget = 200'000'000;

// Per-cell mass below this is truncated into tail_loss to keep supports
// sparse without unaccounted error.
inline constexpr double kMassTruncation = 1e-18;

struct Atom {
    std::int64_t index;  // location is index * step
    double mass;
};

// A real-valued pmf quantized onto the global lattice {k*step : k integer}.
// Quantization and truncation are tracked explicitly: `slack` bounds the
// worst-case distance between an atom's stored location and the true value it
// carries mass for, and `tail_loss` is the total probability discarded.
// All tail queries return two-sided brackets that remain valid under both.
// Values are immutable once built; operations return new objects.
class LatticeDistribution {
public:
    LatticeDistribution() = default;

    // Quantizes (value, probability) atoms onto the lattice. Atoms landing in
    // the same cell merge. slack = step/2; nothing is truncated.
    static LatticeDistribution from_atoms(const std::vector<std::pair<double, double>>& atoms,
                                          double step);

    // Point mass, quantized. Convenience wrapper over from_atoms.
    static LatticeDistribution delta(double value, double step);

    double step() const { return step_; }
    double slack() const { return slack_; }
    double tail_loss() const { return tail_loss_; }
    const std::vector<Atom>& atoms() const { return atoms_; }
    bool empty() const { return atoms_.empty(); }
    std::size_t size() const { return atoms_.size(); }

    double offset() const;       // location of the first stored cell
    std::int64_t span_cells() const;  // lattice cells between first and last atom

    double total_mass() const;
    double mean() const;      // of the retained mass, renormalized
    double variance() const;  // same normalization
    double min_value() const;
    double max_value() const;

    // Brackets P[S <= t]: lower counts cells at or below t - slack, upper
    // counts cells at or below t + slack plus everything truncated.
    std::pair<double, double> cdf_bounds(double t) const;

    // Brackets E[exp(-max(S - t, 0))], shifting atom locations by +-slack in
    // the direction that preserves the bound on each side.
    std::pair<double, double> expect_exp_clip(double t) const;

private:
    double step_ = 0.0;
    double slack_ = 0.0;
    double tail_loss_ = 0.0;
    std::vector<Atom> atoms_;  // sorted by index, unique indices, masses > 0

    friend LatticeDistribution convolve(const LatticeDistribution&, const LatticeDistribution&,
                                        std::uint64_t);
    friend LatticeDistribution power(const LatticeDistribution&, std::uint64_t, std::uint64_t);
};

// Distribution of the sum of independent draws. Steps must match exactly.
LatticeDistribution convolve(const LatticeDistribution& a, const LatticeDistribution& b,
                             std::uint64_t cell_budget = kDefaultCellBudget);

// n-fold self-convolution by binary exponentiation.
LatticeDistribution power(const LatticeDistribution& a, std::uint64_t n,
                          std::uint64_t cell_budget = kDefaultCellBudget);

}  // namespace costcap::lattice

#endif
