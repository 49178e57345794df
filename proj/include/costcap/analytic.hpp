#ifndef COSTCAP_ANALYTIC_HPP
#define COSTCAP_ANALYTIC_HPP

#include <cstdint>
#include <utility>

namespace costcap::analytic {

// Power-constrained AWGN channel: unit noise variance, per-codeword power at
// most n*snr, converse evaluated on the equal-power shell |x|^2 = n*snr.
// The max-cost-to-equal-cost reduction appends one coordinate, so as a bound
// for maximal-cost codes the blocklength bookkeeping is n vs n+1; we evaluate
// at the given n and surface that note in the CLI diagnostics rather than
// shifting silently.
struct AwgnSpec {
    double snr = 1.0;
    int n = 1;
};

// Additive exponential-noise channel with unit-mean noise and mean input
// constraint beta; converse on the equal-cost simplex sum(x) = n*beta.
struct ExpChannelSpec {
    double beta = 1.0;
    int n = 1;
};

double awgn_capacity(double snr);    // nats: 0.5*log(1+P)
double awgn_dispersion(double snr);  // nats^2: 0.5*(1 - (1+P)^-2)

// Brackets P[sum of tilted densities <= threshold] on the equal-power shell.
// The sum is an affine map of a noncentral chi-square with n degrees of
// freedom and noncentrality n/P; the Poisson-mixture series is truncated at
// relative tail 1e-12 with the truncation folded into the bracket width.
std::pair<double, double> awgn_tilted_cdf(const AwgnSpec& spec, double threshold_nats,
                                          std::uint64_t series_budget = 1'000'000);

struct AnalyticSearchResult {
    double log_m = 0.0;  // nats
    double gamma = 0.0;  // nats
};

AnalyticSearchResult awgn_converse_log_m(const AwgnSpec& spec, double epsilon,
                                         std::uint64_t series_budget = 1'000'000);

double exp_capacity(double beta);    // nats: log(1+beta)
double exp_dispersion(double beta);  // nats^2: beta^2/(1+beta)^2

// j = intercept + noise_coeff*N with N ~ Exp(1), so the per-letter tilted
// density is affine in the noise.
struct ExpTiltedParams {
    double intercept = 0.0;    // log(1+beta) + beta/(1+beta)
    double noise_coeff = 0.0;  // -beta/(1+beta)
};
ExpTiltedParams exp_tilted_params(double beta);

// P[sum of tilted densities <= threshold]; the noise sum is Erlang(n), so
// this is a regularized incomplete gamma evaluated exactly (bracket width
// covers floating-point error only).
std::pair<double, double> exp_tilted_cdf(const ExpChannelSpec& spec, double threshold_nats);

AnalyticSearchResult exp_converse_log_m(const ExpChannelSpec& spec, double epsilon);

// Output divergence L(t, n) of the induced output-sum distribution against
// the product optimal output, its maximizer t*(n), and the n = 1 supremum.
double exp_output_idiv(double t, int n, double beta);
double exp_idiv_argmax(int n, double beta);
double exp_idiv_max(double beta);

}  // namespace costcap::analytic

#endif
