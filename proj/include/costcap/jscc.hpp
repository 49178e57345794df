#ifndef COSTCAP_JSCC_HPP
#define COSTCAP_JSCC_HPP

#include <cstdint>
#include <vector>

#include "costcap/bounds.hpp"
#include "costcap/dmc.hpp"

namespace costcap::jscc {

// Discrete memoryless source with a finite reproduction alphabet and a
// nonnegative per-letter distortion matrix.
class DmsSource {
public:
    DmsSource(std::vector<double> pmf, std::vector<std::vector<double>> distortion);

    std::size_t alphabet_size() const { return pmf_.size(); }
    std::size_t reproduction_size() const { return reproduction_size_; }
    const std::vector<double>& pmf() const { return pmf_; }
    double distortion(std::size_t s, std::size_t z) const {
        return distortion_[s * reproduction_size_ + z];
    }

    double d_min() const { return d_min_; }  // E[min_z d(S,z)]
    double d_max() const { return d_max_; }  // best constant reproduction

private:
    std::vector<double> pmf_;
    std::size_t reproduction_size_ = 0;
    std::vector<double> distortion_;  // row-major |S| x |Z|
    double d_min_ = 0.0;
    double d_max_ = 0.0;
};

struct RdDiagnostics {
    double lambda_lo = 0.0;
    double lambda_hi = 0.0;
    bool cost_met = true;
    bool kink = false;
    std::uint64_t inner_iterations = 0;
};

// Rate-distortion solution with per-letter d-tilted information values.
struct RdSolution {
    double d = 0.0;
    double rate = 0.0;      // R(d), nats
    double lambda_s = 0.0;  // -R'(d)
    std::vector<double> p_z_star;
    std::vector<double> tilted;  // per source letter, nats
    double var_tilted = 0.0;     // Var[j_S(S,d)]
    RdDiagnostics diag;
};

struct RdOptions {
    double tol = 1e-9;
    double distortion_tol = 1e-10;
    std::uint64_t max_inner_iterations = 1'000'000;
};

// Blahut-Arimoto on the distortion Lagrangian with an outer bisection on
// lambda to meet E[d(S,Z)] = d.
RdSolution solve_rate_distortion(const DmsSource& source, double d, const RdOptions& opts = {});
RdSolution solve_rate_distortion(const DmsSource& source, double d, double tol);

double d_tilted_info(const RdSolution& rd, std::size_t s);

enum class SolveFor { k, rate };

// Largest k >= 0 with n*C(beta) - k*R(d) = sqrt(n*V(beta) + k*Var[j_S]) *
// Qinv(epsilon); returns k or k/n. The log-n remainder is not included (the
// CLI reports it as an uncertainty band).
double jscc_gaussian_approx(const RdSolution& rd, const CostCapacitySolution& cc, int n,
                            double epsilon, SolveFor solve_for);

// Reporting half-width (nats) for the unresolved log-n remainder of the
// Gaussian approximation.
double jscc_band_nats(const CostCapacitySolution& cc, int n);

// Lower bound on the excess-distortion probability of any (k, n, d, beta)
// code: tilted-density converse with the product optimal output distribution,
// evaluated exactly on the lattice with pessimistic rounding.
double jscc_converse_epsilon(const DmsSource& source, const RdSolution& rd,
                             const DmcChannel& channel, const CostCapacitySolution& cc, int k,
                             int n, double gamma, const bounds::EvalOptions& opts = {});

}  // namespace costcap::jscc

#endif
