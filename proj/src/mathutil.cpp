#include "costcap/mathutil.hpp"

#include <cmath>
#include <limits>

#include "costcap/errors.hpp"

namespace costcap {
namespace {

constexpr double kSqrt2 = 1.4142135623730950488016887242097;
constexpr double kInvSqrt2Pi = 0.3989422804014326779399460599344;

// Acklam's rational approximation to the inverse normal cdf, used only as a
// Newton starting point (absolute error ~1e-9 on its own).
double inv_normal_cdf_approx(double p) {
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425;
    if (p < plow) {
        double q = std::sqrt(-2 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
    }
    if (p > 1 - plow) {
        double q = std::sqrt(-2 * std::log(1 - p));
        return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
    }
    double q = p - 0.5;
    double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
}

}  // namespace

double binary_entropy(double p) {
    if (p < 0.0 || p > 1.0) throw DomainError("binary_entropy argument outside [0,1]");
    double h = 0.0;
    if (p > 0.0) h -= p * std::log(p);
    if (p < 1.0) h -= (1.0 - p) * std::log(1.0 - p);
    return h;
}

double q_func(double x) { return 0.5 * std::erfc(x / kSqrt2); }

double q_inv(double p) {
    if (!(p > 0.0) || !(p < 1.0)) throw DomainError("q_inv argument must lie in (0,1)");
    // Solve on the small-tail side: for p > 1/2 the subtraction 1-p is exact
    // and Q keeps full relative precision there.
    if (p > 0.5) return -q_inv(1.0 - p);
    double x = -inv_normal_cdf_approx(p);
    for (int it = 0; it < 4; ++it) {
        double err = q_func(x) - p;
        double pdf = kInvSqrt2Pi * std::exp(-0.5 * x * x);
        if (pdf <= 0.0) break;
        double dx = err / pdf;  // Q' = -pdf, so the Newton step is +err/pdf
        x += dx;
        if (std::abs(dx) < 1e-15 * (1.0 + std::abs(x))) break;
    }
    return x;
}

namespace {

double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int it = 0; it < 10000; ++it) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::abs(del) < std::abs(sum) * 1e-17) {
            return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
        }
    }
    throw NonConvergence("incomplete gamma series failed to converge");
}

double gamma_q_contfrac(double a, double x) {
    // Modified Lentz algorithm for the continued fraction of Q(a,x).
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 10000; ++i) {
        double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-17) {
            return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
        }
    }
    throw NonConvergence("incomplete gamma continued fraction failed to converge");
}

}  // namespace

double gamma_p(double a, double x) {
    if (!(a > 0.0) || x < 0.0 || !std::isfinite(x)) {
        throw DomainError("gamma_p requires a > 0 and finite x >= 0");
    }
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) return gamma_p_series(a, x);
    return 1.0 - gamma_q_contfrac(a, x);
}

double gamma_q(double a, double x) {
    if (!(a > 0.0) || x < 0.0 || !std::isfinite(x)) {
        throw DomainError("gamma_q requires a > 0 and finite x >= 0");
    }
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_contfrac(a, x);
}

double log_multinomial(std::int64_t n, const std::vector<int>& counts) {
    double r = std::lgamma(static_cast<double>(n) + 1.0);
    std::int64_t total = 0;
    for (int c : counts) {
        if (c < 0) throw DomainError("log_multinomial counts must be nonnegative");
        r -= std::lgamma(static_cast<double>(c) + 1.0);
        total += c;
    }
    if (total != n) throw DomainError("log_multinomial counts must sum to n");
    return r;
}

std::pair<double, double> maximize_log_grid(const std::function<double(double)>& fn, double lo,
                                            double hi, int points, int rounds) {
    if (!(lo > 0.0) || hi < lo) throw DomainError("maximize_log_grid needs 0 < lo <= hi");
    auto build = [](double a, double b, int n) {
        std::vector<double> g;
        g.reserve(static_cast<std::size_t>(n));
        if (b <= a || n <= 1) {
            g.push_back(a);
            return g;
        }
        double la = std::log(a), lb = std::log(b);
        for (int i = 0; i < n; ++i) g.push_back(std::exp(la + (lb - la) * i / (n - 1)));
        return g;
    };
    std::vector<double> grid = build(lo, hi, points);
    double best_x = grid.front();
    double best_v = -std::numeric_limits<double>::infinity();
    auto scan = [&](const std::vector<double>& g) {
        std::size_t local = 0;
        double local_v = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < g.size(); ++i) {
            double v = fn(g[i]);
            if (v > local_v) {
                local_v = v;
                local = i;
            }
        }
        if (local_v > best_v) {
            best_v = local_v;
            best_x = g[local];
        }
        return local;
    };
    std::size_t at = scan(grid);
    for (int r = 0; r < rounds; ++r) {
        double rlo = grid[at > 0 ? at - 1 : 0];
        double rhi = grid[std::min(at + 1, grid.size() - 1)];
        grid = build(rlo, rhi, 16);
        at = scan(grid);
    }
    return {best_x, best_v};
}

double entropy_nats(const std::vector<double>& p) {
    double sum = 0.0;
    for (double v : p) sum += v;
    if (sum <= 0.0) return 0.0;
    double h = 0.0;
    for (double v : p) {
        if (v > 0.0) {
            double q = v / sum;
            h -= q * std::log(q);
        }
    }
    return h;
}

}  // namespace costcap
