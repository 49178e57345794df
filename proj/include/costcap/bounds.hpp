#ifndef COSTCAP_BOUNDS_HPP
#define COSTCAP_BOUNDS_HPP

#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "costcap/dmc.hpp"
#include "costcap/lattice.hpp"
#include "costcap/mathutil.hpp"

namespace costcap::bounds {

// Empirical composition of a length-n input block.
struct TypeComposition {
    std::vector<int> counts;  // per input letter, sums to n
    double mean_cost = 0.0;   // sum counts[x]*b(x) / n
};

struct EvalOptions {
    double lattice_step = 1e-6;  // nats; may be raised for very long blocks
    std::uint64_t cell_budget = lattice::kDefaultCellBudget;
    std::uint64_t type_budget = 10'000'000;
    int threads = 1;                   // per-type work is order-independent
    double envelope_grid_step = 1e-3;  // nats, tau grid used by the searches
    // Above this many per-query product evaluations the searches switch from
    // exact per-type tail queries to the grid envelope (which floors the cdf
    // and therefore only loosens, never invalidates, the bound).
    std::uint64_t exact_query_limit = 200'000'000;
};

// All compositions of n with mean cost <= beta, in lexicographic order of the
// count vectors. Throws BudgetExceeded past `budget` admissible types.
std::vector<TypeComposition> enumerate_admissible_types(const DmcChannel& channel, double beta,
                                                        int n, std::uint64_t budget = 10'000'000);

// Per-letter statistic carried by the tail evaluation. The channel converse
// uses the plain information density against the product optimal output (the
// stronger line of the converse theorem: the cost enters through the type
// admissibility alone, which keeps the minimizing composition near the
// optimizer). The tilted form, where the price term shifts each letter, is
// what the joint source-channel converse is stated with.
enum class TailStatistic { information_density, tilted_density };

// Per-type distributions of the per-letter statistic summed over a block, on
// a shared lattice, with valid-side tail queries minimized over all
// admissible types. Used by the channel converse and by the joint
// source-channel converse.
//
// Cost scaling: per type, everything but the largest factor is folded into an
// explicit distribution, so construction grows with the product of the
// non-largest per-letter supports. Two-letter channels stay cheap at any
// blocklength (the fold is a single binomial); wider alphabets are intended
// for short blocks, with the cell budget guarding the rest.
class TypeTailSet {
public:
    TypeTailSet(const DmcChannel& channel, const CostCapacitySolution& sol, int n,
                const EvalOptions& opts = {},
                TailStatistic stat = TailStatistic::information_density);
    ~TypeTailSet();
    TypeTailSet(TypeTailSet&&) noexcept;
    TypeTailSet& operator=(TypeTailSet&&) noexcept;

    int block_length() const;
    std::size_t type_count() const;
    double slack() const;          // n * step / 2
    double max_tail_loss() const;  // largest per-type truncated mass
    // Valid lower bound on min over admissible types of P[sum <= tau].
    double min_cdf_lower(double tau) const;
    // Envelope of min_cdf_lower sampled on {lo + i*step_out}; entry i is a
    // valid lower bound at tau = lo + i*step_out.
    std::vector<double> envelope(double lo, double hi, double step_out) const;
    // Estimated cost (product evaluations) of one min_cdf_lower call.
    std::uint64_t query_cost() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

enum class ThirdOrder { none, half_log_n };

// n*C(beta) - sqrt(n*V(beta))*Qinv(eps) (+ 0.5*log n), in nats.
double normal_approx(const CostCapacitySolution& sol, int n, double epsilon, ThirdOrder third);

// Lower bound on the error probability of any (n, M, beta) code, from the
// tilted-density converse with the product capacity-achieving output
// distribution and the given gamma. Quantization is resolved pessimistically
// so the returned value is a valid bound despite the lattice.
double converse_epsilon(const DmcChannel& channel, const CostCapacitySolution& sol, int n,
                        double log_m, double gamma, const EvalOptions& opts = {});

struct BoundSearchResult {
    double log_m = 0.0;  // nats
    double gamma = 0.0;  // nats (converse only)
    double slack_nats = 0.0;
    double tail_loss = 0.0;
    std::size_t types_evaluated = 0;
};

// Largest log M (1e-6 nats search resolution) whose gamma-optimized converse
// epsilon stays at or below epsilon. Gamma runs over a 64-point logarithmic
// grid on [1e-4, n*C] with 3 local refinement rounds; any gamma gives a valid
// bound, so the grid affects tightness only.
BoundSearchResult converse_log_m(const DmcChannel& channel, const CostCapacitySolution& sol,
                                 int n, double epsilon, const EvalOptions& opts = {});

// Dependence-testing achievability with codewords drawn from the admissible
// type closest to p_x_star, using the exact multinomial correction
// K_n = n*H(t) - log(n choose counts). Upper bound on the error of the best
// (n, M, beta) code.
double dt_achievability_epsilon(const DmcChannel& channel, const CostCapacitySolution& sol,
                                int n, double log_m, const EvalOptions& opts = {});

BoundSearchResult achievability_log_m(const DmcChannel& channel, const CostCapacitySolution& sol,
                                      int n, double epsilon, const EvalOptions& opts = {});

// Converse epsilon along n_list at log M = n*rate with gamma = n*alpha.
// Requires rate >= C(beta) + 2*alpha.
std::vector<std::pair<int, double>> strong_converse_curve(const DmcChannel& channel,
                                                          const CostCapacitySolution& sol,
                                                          double rate,
                                                          const std::vector<int>& n_list,
                                                          double alpha,
                                                          const EvalOptions& opts = {});

struct BoundPoint {
    int n = 0;
    double epsilon = 0.0;
    double log_m_converse = 0.0;       // nats
    double log_m_achievability = 0.0;  // nats
    double log_m_normal = 0.0;         // nats, half-log-n third order
    double gamma_used = 0.0;           // nats
    double slack_nats = 0.0;
    double tail_loss = 0.0;
    std::size_t types_evaluated = 0;
};
using BoundCurve = std::vector<BoundPoint>;

BoundPoint compute_bound_point(const DmcChannel& channel, const CostCapacitySolution& sol, int n,
                               double epsilon, const EvalOptions& opts = {});

// Warns (returns true) when every per-letter information density support lies
// on a common arithmetic progression; the half-log-n refinement assumes the
// nonlattice case.
bool lattice_support_warning(const DmcChannel& channel, const CostCapacitySolution& sol);

}  // namespace costcap::bounds

#endif
