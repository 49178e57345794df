#ifndef COSTCAP_DMC_HPP
#define COSTCAP_DMC_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace costcap {

// Finite-alphabet memoryless channel kernel with a per-letter cost vector.
// Immutable after construction; construction validates row stochasticity,
// cost nonnegativity and output accessibility.
class DmcChannel {
public:
    DmcChannel(std::vector<std::vector<double>> kernel, std::vector<double> cost,
               std::vector<std::string> labels = {});

    std::size_t input_size() const { return input_size_; }
    std::size_t output_size() const { return output_size_; }
    double kernel(std::size_t x, std::size_t y) const { return kernel_[x * output_size_ + y]; }
    const double* row(std::size_t x) const { return kernel_.data() + x * output_size_; }
    double cost(std::size_t x) const { return cost_[x]; }
    const std::vector<double>& costs() const { return cost_; }
    const std::vector<std::string>& labels() const { return labels_; }

    double beta_min() const { return beta_min_; }
    double cost_range() const { return cost_max_ - beta_min_; }

private:
    std::size_t input_size_ = 0;
    std::size_t output_size_ = 0;
    std::vector<double> kernel_;  // row-major
    std::vector<double> cost_;
    std::vector<std::string> labels_;
    double beta_min_ = 0.0;
    double cost_max_ = 0.0;
};

struct SolveDiagnostics {
    double lambda_lo = 0.0;      // final bisection bracket on lambda
    double lambda_hi = 0.0;
    bool cost_met = true;        // |E b - beta| reached the cost tolerance
    bool kink = false;           // bracket collapsed without meeting it
    std::uint64_t inner_iterations = 0;
};

// Solved capacity-cost triple plus the per-input conditional moments of the
// b-tilted information density. All information quantities in nats.
struct CostCapacitySolution {
    double beta = 0.0;
    double capacity = 0.0;     // C(beta), nats
    double lambda_star = 0.0;  // C'(beta), nats per cost unit
    std::vector<double> p_x_star;
    std::vector<double> p_y_star;
    std::vector<double> cond_mean;  // E[j(x;Y,beta) | X=x], nats
    std::vector<double> cond_var;   // Var[j(x;Y,beta) | X=x], nats^2
    double dispersion = 0.0;        // V(beta), nats^2
    double active_cost = 0.0;       // E[b(X*)]
    SolveDiagnostics diag;
};

struct SolveOptions {
    double tol = 1e-9;          // absolute tolerance on capacity, nats
    double cost_tol = 1e-10;    // bisection tolerance on E[b]
    std::uint64_t max_inner_iterations = 1'000'000;
    double support_threshold = 1e-12;  // masses below are zeroed and renormalized
};

// Maximizes I(X;Y) subject to E[b(X)] <= beta. Inner loop is Blahut-Arimoto
// on the Lagrangian I - lambda*E[b]; the outer loop bisects lambda >= 0 until
// E[b] = beta or detects the inactive-constraint case lambda = 0.
CostCapacitySolution solve_capacity_cost(const DmcChannel& channel, double beta,
                                         const SolveOptions& opts = {});
CostCapacitySolution solve_capacity_cost(const DmcChannel& channel, double beta, double tol);

// j(x;y,beta) = log(kernel(x,y)/p_y_star(y)) - lambda_star*(b(x) - beta).
// Returns -inf when kernel(x,y) = 0 with p_y_star(y) > 0; throws
// UndefinedDensity in the reverse (corrupted) case.
double tilted_density(const DmcChannel& channel, const CostCapacitySolution& sol, std::size_t x,
                      std::size_t y);

// Atoms of j(x;Y,beta) under P_{Y|X=x}: (value nats, probability), atoms with
// kernel mass only, equal values merged. Mean equals cond_mean[x].
std::vector<std::pair<double, double>> conditional_tilted_pmf(const DmcChannel& channel,
                                                              const CostCapacitySolution& sol,
                                                              std::size_t x);

// V(beta) as the P_{X*}-average of conditional variances.
double dispersion_cost(const CostCapacitySolution& sol);

struct UniquenessReport {
    bool unique = true;               // max pairwise L1 below 1e-6
    double max_l1_distance = 0.0;     // between solved input distributions
    double capacity_spread = 0.0;
    double dispersion_min = 0.0;
    double dispersion_max = 0.0;
    std::vector<double> lambda_values;  // per trial, both kink candidates collapse here
};

// Re-solves from randomized initializations (deterministic seed) and reports
// the spread of optimizers; flags non-uniqueness when input distributions
// differ while capacities agree.
UniquenessReport caid_uniqueness_probe(const DmcChannel& channel, double beta, int trials,
                                       const SolveOptions& opts = {},
                                       std::uint64_t seed = 20140923u);

}  // namespace costcap

#endif
