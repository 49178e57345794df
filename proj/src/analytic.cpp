#include "costcap/analytic.hpp"

#include <algorithm>
#include <cmath>

#include "costcap/errors.hpp"
#include "costcap/mathutil.hpp"

namespace costcap::analytic {
namespace {

// Brackets the noncentral chi-square cdf F(w; df, ncp) via the Poisson
// mixture of central chi-square cdfs, expanded two-sided from the Poisson
// mode. The uncovered Poisson mass bounds the truncation error.
std::pair<double, double> noncentral_chisq_cdf(double w, double df, double ncp,
                                               std::uint64_t budget) {
    if (!(df > 0.0) || ncp < 0.0) throw DomainError("bad noncentral chi-square parameters");
    if (w <= 0.0) return {0.0, 0.0};
    const double x = w / 2.0;
    const double half = ncp / 2.0;
    if (half == 0.0) {
        double v = gamma_p(df / 2.0, x);
        return {std::max(0.0, v - 1e-13), std::min(1.0, v + 1e-13)};
    }

    const std::int64_t j0 = static_cast<std::int64_t>(std::floor(half));
    auto poisson_log = [&](std::int64_t j) {
        return -half + static_cast<double>(j) * std::log(half) -
               std::lgamma(static_cast<double>(j) + 1.0);
    };
    auto term = [&](double a) {
        // x^a e^{-x} / Gamma(a+1): step of the recurrence
        // P(a+1, x) = P(a, x) - term(a).
        return std::exp(a * std::log(x) - x - std::lgamma(a + 1.0));
    };

    double sum = 0.0;
    double covered = 0.0;
    std::uint64_t used = 0;

    double w_up = std::exp(poisson_log(j0));
    double c_up = gamma_p(df / 2.0 + static_cast<double>(j0), x);
    double w_dn = w_up;
    double c_dn = c_up;
    std::int64_t j_up = j0, j_dn = j0;

    sum += w_up * c_up;
    covered += w_up;
    ++used;

    const double tail_target = 1e-12;
    while (1.0 - covered > tail_target) {
        if (used > budget) throw SeriesBudget("noncentral chi-square series budget exceeded");
        bool can_down = j_dn > 0;
        // Expand the side with the larger next weight.
        double next_up_w = w_up * half / static_cast<double>(j_up + 1);
        double next_dn_w = can_down ? w_dn * static_cast<double>(j_dn) / half : -1.0;
        if (next_up_w >= next_dn_w) {
            c_up -= term(df / 2.0 + static_cast<double>(j_up));
            c_up = std::clamp(c_up, 0.0, 1.0);
            ++j_up;
            w_up = next_up_w;
            sum += w_up * c_up;
            covered += w_up;
        } else {
            --j_dn;
            c_dn += term(df / 2.0 + static_cast<double>(j_dn));
            c_dn = std::clamp(c_dn, 0.0, 1.0);
            w_dn = next_dn_w;
            sum += w_dn * c_dn;
            covered += w_dn;
        }
        ++used;
    }
    double truncated = std::max(0.0, 1.0 - covered);
    double lo = std::clamp(sum - 1e-13, 0.0, 1.0);
    double hi = std::clamp(sum + truncated + 1e-13, 0.0, 1.0);
    return {lo, hi};
}

// Shared search: largest log M whose gamma-optimized lower bound on epsilon
// stays at or below the target. `cdf_lower(tau)` must lower-bound
// P[sum of tilted densities <= tau].
AnalyticSearchResult search_log_m(const std::function<double(double)>& cdf_lower, double epsilon,
                                  double n_capacity, double bracket_hi) {
    if (!(epsilon > 0.0) || !(epsilon < 1.0)) throw DomainError("epsilon must lie in (0,1)");
    double lo = 0.0, hi = bracket_hi;
    double best_gamma = 0.0;
    auto feasible = [&](double log_m) {
        auto [g, v] = maximize_log_grid(
            [&](double gamma) {
                return std::max(0.0, cdf_lower(log_m - gamma) - std::exp(-gamma));
            },
            1e-4, std::max(n_capacity, 1.0), 64, 3);
        if (v <= epsilon) {
            best_gamma = g;
            return true;
        }
        return false;
    };
    if (feasible(hi)) {
        lo = hi;
    } else {
        for (int it = 0; it < 60; ++it) {
            double mid = 0.5 * (lo + hi);
            if (feasible(mid)) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
    }
    return {lo, best_gamma};
}

}  // namespace

double awgn_capacity(double snr) {
    if (!(snr > 0.0)) throw DomainError("snr must be positive");
    return 0.5 * std::log1p(snr);
}

double awgn_dispersion(double snr) {
    if (!(snr > 0.0)) throw DomainError("snr must be positive");
    double s = 1.0 + snr;
    return 0.5 * (1.0 - 1.0 / (s * s));
}

std::pair<double, double> awgn_tilted_cdf(const AwgnSpec& spec, double threshold_nats,
                                          std::uint64_t series_budget) {
    if (!(spec.snr > 0.0)) throw DomainError("snr must be positive");
    if (spec.n < 1) throw DomainError("blocklength must be at least 1");
    const double P = spec.snr;
    const double n = static_cast<double>(spec.n);
    // On the shell |x|^2 = nP the sum of tilted densities is distributed as
    // (n/2)log(1+P) - P/(2(1+P)) * (W - n - n/P) with W noncentral chi-square,
    // df = n, ncp = |x|^2/P^2 = n/P. So {sum <= t} = {W >= w(t)}.
    const double mean = 0.5 * n * std::log1p(P);
    const double scale = P / (2.0 * (1.0 + P));
    const double w = n + n / P - (threshold_nats - mean) / scale;
    if (w <= 0.0) return {1.0, 1.0};
    auto [flo, fhi] = noncentral_chisq_cdf(w, n, n / P, series_budget);
    return {std::max(0.0, 1.0 - fhi), std::min(1.0, 1.0 - flo)};
}

AnalyticSearchResult awgn_converse_log_m(const AwgnSpec& spec, double epsilon,
                                         std::uint64_t series_budget) {
    const double n = static_cast<double>(spec.n);
    const double nC = n * awgn_capacity(spec.snr);
    const double nV = n * awgn_dispersion(spec.snr);
    double bracket = nC + 20.0 * std::sqrt(std::max(nV, 1.0)) + 50.0;
    return search_log_m(
        [&](double tau) { return awgn_tilted_cdf(spec, tau, series_budget).first; }, epsilon, nC,
        bracket);
}

double exp_capacity(double beta) {
    if (!(beta > 0.0)) throw DomainError("beta must be positive");
    return std::log1p(beta);
}

double exp_dispersion(double beta) {
    if (!(beta > 0.0)) throw DomainError("beta must be positive");
    double r = beta / (1.0 + beta);
    return r * r;
}

ExpTiltedParams exp_tilted_params(double beta) {
    if (!(beta > 0.0)) throw DomainError("beta must be positive");
    double r = beta / (1.0 + beta);
    return {std::log1p(beta) + r, -r};
}

std::pair<double, double> exp_tilted_cdf(const ExpChannelSpec& spec, double threshold_nats) {
    if (!(spec.beta > 0.0)) throw DomainError("beta must be positive");
    if (spec.n < 1) throw DomainError("blocklength must be at least 1");
    const double n = static_cast<double>(spec.n);
    ExpTiltedParams p = exp_tilted_params(spec.beta);
    // sum = n*intercept + noise_coeff*G with G ~ Erlang(n, 1); the event
    // {sum <= t} is {G >= g}.
    const double g = (n * p.intercept - threshold_nats) / (-p.noise_coeff);
    if (g <= 0.0) return {1.0, 1.0};
    double v = gamma_q(n, g);
    return {std::max(0.0, v - 1e-13), std::min(1.0, v + 1e-13)};
}

AnalyticSearchResult exp_converse_log_m(const ExpChannelSpec& spec, double epsilon) {
    const double n = static_cast<double>(spec.n);
    const double nC = n * exp_capacity(spec.beta);
    const double nV = n * exp_dispersion(spec.beta);
    double bracket = nC + 20.0 * std::sqrt(std::max(nV, 1.0)) + 50.0;
    return search_log_m([&](double tau) { return exp_tilted_cdf(spec, tau).first; }, epsilon, nC,
                        bracket);
}

double exp_output_idiv(double t, int n, double beta) {
    if (!(beta > 0.0)) throw DomainError("beta must be positive");
    if (n < 1) throw DomainError("blocklength must be at least 1");
    const double nn = static_cast<double>(n);
    if (n == 1) {
        if (t < beta) throw DomainError("t must be at least beta for n = 1");
        return beta - beta / (1.0 + beta) * t + std::log1p(beta);
    }
    if (!(t > nn * beta)) throw DomainError("t must exceed n*beta");
    return nn * beta - beta / (1.0 + beta) * t + nn * std::log1p(beta) +
           (nn - 1.0) * std::log1p(-nn * beta / t);
}

double exp_idiv_argmax(int n, double beta) {
    if (!(beta > 0.0)) throw DomainError("beta must be positive");
    if (n < 1) throw DomainError("blocklength must be at least 1");
    const double nn = static_cast<double>(n);
    return 0.5 * (nn * beta +
                  std::sqrt(nn) * std::sqrt(nn * beta * beta + 4.0 * nn * (1.0 + beta) -
                                            4.0 * (1.0 + beta)));
}

double exp_idiv_max(double beta) {
    if (!(beta > 0.0)) throw DomainError("beta must be positive");
    return beta / (1.0 + beta) + std::log1p(beta);
}

}  // namespace costcap::analytic
