#ifndef COSTCAP_MATHUTIL_HPP
#define COSTCAP_MATHUTIL_HPP

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

namespace costcap {

inline constexpr double kLn2 = 0.6931471805599453094172321214581766;

inline double nats_to_bits(double x) { return x / kLn2; }
inline double bits_to_nats(double x) { return x * kLn2; }

// Binary entropy in nats, with 0 log 0 = 0.
double binary_entropy(double p);

// Gaussian complementary cdf Q(x) and its inverse.
double q_func(double x);

// Inverse of Q on (0,1). Newton-refined against std::erfc, so the roundtrip
// Q(q_inv(p)) = p holds to near machine precision. Throws DomainError
// outside (0,1).
double q_inv(double p);

// Regularized incomplete gamma functions P(a,x) and Q(a,x) = 1 - P(a,x),
// a > 0, x >= 0. Series for x < a+1, Lentz continued fraction otherwise.
double gamma_p(double a, double x);
double gamma_q(double a, double x);

// ln of the multinomial coefficient n! / prod(counts[i]!).
double log_multinomial(std::int64_t n, const std::vector<int>& counts);

// Maximizes fn over a logarithmic grid on [lo, hi] (`points` samples) with
// `rounds` local refinements between the argmax neighbors. Returns
// (argmax, max). Used for the gamma search in the converse bounds, where any
// grid point yields a valid bound and optimization only tightens.
std::pair<double, double> maximize_log_grid(const std::function<double(double)>& fn, double lo,
                                            double hi, int points, int rounds);

// Shannon entropy (nats) of a nonnegative vector normalized to its sum.
double entropy_nats(const std::vector<double>& p);

}  // namespace costcap

#endif
