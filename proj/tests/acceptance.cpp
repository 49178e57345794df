// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failures. Every oracle here is recomputed from scratch (closed forms,
// exhaustive enumeration, Monte Carlo with fixed seeds) independently of the
// library paths it checks.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "costcap/analytic.hpp"
#include "costcap/bounds.hpp"
#include "costcap/dmc.hpp"
#include "costcap/jscc.hpp"
#include "costcap/mathutil.hpp"

using namespace costcap;

namespace {

int failures = 0;

struct Criterion {
    std::string label;
    bool ok = true;
    std::string detail;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    explicit Criterion(std::string l) : label(std::move(l)) {}
    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail = what;
        } else if (!cond) {
            detail += "; " + what;
        }
    }
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
    void finish(double limit_seconds) {
        double t = seconds();
        if (t > limit_seconds) {
            require(false, "runtime " + std::to_string(t) + "s exceeds " +
                               std::to_string(limit_seconds) + "s");
        }
        std::printf("[%s] %s (%.2fs)%s%s\n", ok ? "PASS" : "FAIL", label.c_str(), t,
                    ok ? "" : " -- ", ok ? "" : detail.c_str());
        if (!ok) ++failures;
    }
};

DmcChannel bsc(double delta) {
    return DmcChannel({{1.0 - delta, delta}, {delta, 1.0 - delta}}, {0.0, 1.0});
}

double h2_bits(double p) { return nats_to_bits(binary_entropy(p)); }

// ---- exhaustive oracles -----------------------------------------------

double brute_type_info_cdf(const DmcChannel& ch, const CostCapacitySolution& sol,
                           const std::vector<int>& counts, double tau) {
    std::vector<std::size_t> letters;
    for (std::size_t x = 0; x < counts.size(); ++x) {
        for (int c = 0; c < counts[x]; ++c) letters.push_back(x);
    }
    const std::size_t nb = ch.output_size();
    double total = 0.0;
    std::vector<std::size_t> y(letters.size(), 0);
    while (true) {
        double prob = 1.0, s = 0.0;
        for (std::size_t i = 0; i < letters.size(); ++i) {
            prob *= ch.kernel(letters[i], y[i]);
            if (prob == 0.0) break;
            s += std::log(ch.kernel(letters[i], y[i]) / sol.p_y_star[y[i]]);
        }
        if (prob > 0.0 && s <= tau) total += prob;
        std::size_t pos = 0;
        while (pos < letters.size() && ++y[pos] == nb) {
            y[pos] = 0;
            ++pos;
        }
        if (pos == letters.size()) break;
    }
    return total;
}

double brute_converse_epsilon(const DmcChannel& ch, const CostCapacitySolution& sol, int n,
                              double log_m, double gamma) {
    auto types = bounds::enumerate_admissible_types(ch, sol.beta, n);
    double best = 1.0;
    for (const auto& t : types) {
        best = std::min(best, brute_type_info_cdf(ch, sol, t.counts, log_m - gamma));
    }
    return std::max(0.0, best - std::exp(-gamma));
}

double brute_dt_epsilon(const DmcChannel& ch, const CostCapacitySolution& sol, int n,
                        double log_m) {
    auto types = bounds::enumerate_admissible_types(ch, sol.beta, n);
    const std::vector<int>* counts = nullptr;
    double best_d = 1e300;
    for (const auto& t : types) {
        double d = 0.0;
        for (std::size_t x = 0; x < ch.input_size(); ++x) {
            double diff = static_cast<double>(t.counts[x]) / n - sol.p_x_star[x];
            d += diff * diff;
        }
        if (d < best_d) {
            best_d = d;
            counts = &t.counts;
        }
    }
    std::vector<std::size_t> letters;
    std::vector<double> emp(counts->size());
    for (std::size_t x = 0; x < counts->size(); ++x) {
        emp[x] = static_cast<double>((*counts)[x]) / n;
        for (int c = 0; c < (*counts)[x]; ++c) letters.push_back(x);
    }
    std::vector<double> induced(ch.output_size(), 0.0);
    for (std::size_t x = 0; x < counts->size(); ++x) {
        for (std::size_t y = 0; y < ch.output_size(); ++y) {
            induced[y] += emp[x] * ch.kernel(x, y);
        }
    }
    double entropy = 0.0, logmult = std::lgamma(n + 1.0);
    for (std::size_t x = 0; x < counts->size(); ++x) {
        if ((*counts)[x] > 0) entropy -= emp[x] * std::log(emp[x]);
        logmult -= std::lgamma((*counts)[x] + 1.0);
    }
    double t = std::log((std::exp(log_m) - 1.0) / 2.0) + n * entropy - logmult;

    double total = 0.0;
    std::vector<std::size_t> y(letters.size(), 0);
    while (true) {
        double prob = 1.0, s = 0.0;
        for (std::size_t i = 0; i < letters.size(); ++i) {
            prob *= ch.kernel(letters[i], y[i]);
            if (prob == 0.0) break;
            s += std::log(ch.kernel(letters[i], y[i]) / induced[y[i]]);
        }
        if (prob > 0.0) total += prob * (s <= t ? 1.0 : std::exp(-(s - t)));
        std::size_t pos = 0;
        while (pos < letters.size() && ++y[pos] == ch.output_size()) {
            y[pos] = 0;
            ++pos;
        }
        if (pos == letters.size()) break;
    }
    return total;
}

double brute_jscc_epsilon(const jscc::DmsSource& src, const jscc::RdSolution& rd,
                          const DmcChannel& ch, const CostCapacitySolution& cc, int k, int n,
                          double gamma) {
    auto types = bounds::enumerate_admissible_types(ch, cc.beta, n);
    std::vector<std::size_t> s(static_cast<std::size_t>(k), 0);
    double expectation = 0.0;
    while (true) {
        double prob = 1.0, sigma = 0.0;
        for (std::size_t i = 0; i < s.size(); ++i) {
            prob *= src.pmf()[s[i]];
            sigma += rd.tilted[s[i]];
        }
        if (prob > 0.0) {
            double best = 1.0;
            for (const auto& t : types) {
                std::vector<std::size_t> letters;
                for (std::size_t x = 0; x < t.counts.size(); ++x) {
                    for (int c = 0; c < t.counts[x]; ++c) letters.push_back(x);
                }
                double total = 0.0;
                std::vector<std::size_t> y(letters.size(), 0);
                while (true) {
                    double pr = 1.0, sum = 0.0;
                    for (std::size_t i = 0; i < letters.size(); ++i) {
                        pr *= ch.kernel(letters[i], y[i]);
                        if (pr == 0.0) break;
                        sum += tilted_density(ch, cc, letters[i], y[i]);
                    }
                    if (pr > 0.0 && sigma - sum >= gamma) total += pr;
                    std::size_t pos = 0;
                    while (pos < letters.size() && ++y[pos] == ch.output_size()) {
                        y[pos] = 0;
                        ++pos;
                    }
                    if (pos == letters.size()) break;
                }
                best = std::min(best, total);
            }
            expectation += prob * best;
        }
        std::size_t pos = 0;
        while (pos < s.size() && ++s[pos] == src.alphabet_size()) {
            s[pos] = 0;
            ++pos;
        }
        if (pos == s.size()) break;
    }
    return std::max(0.0, expectation - std::exp(-gamma));
}

// ---- criteria ----------------------------------------------------------

void criterion1() {
    Criterion c("criterion 1: BSC capacity-cost closed form");
    auto ch = bsc(0.11);
    auto sol = solve_capacity_cost(ch, 0.25, 1e-9);
    double bd = 0.75 * 0.11 + 0.25 * 0.89;
    double capacity_bits = h2_bits(bd) - h2_bits(0.11);
    double lambda_bits = (1.0 - 2.0 * 0.11) * std::log2((1.0 - bd) / bd);
    c.require(std::abs(nats_to_bits(sol.capacity) - capacity_bits) <= 1e-6,
              "capacity " + std::to_string(nats_to_bits(sol.capacity)) + " vs closed form " +
                  std::to_string(capacity_bits));
    c.require(std::abs(nats_to_bits(sol.lambda_star) - lambda_bits) <= 1e-4,
              "lambda " + std::to_string(nats_to_bits(sol.lambda_star)) + " vs closed form " +
                  std::to_string(lambda_bits));
    c.finish(1.0);
}

void criterion2() {
    Criterion c("criterion 2: stationarity and variance identities on 50 random channels");
    std::mt19937_64 rng(987654321u);
    std::exponential_distribution<double> expd(1.0);
    std::uniform_real_distribution<double> unif(0.0, 2.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t na = 2 + rng() % 4, nb = 2 + rng() % 4;
        std::vector<std::vector<double>> kernel(na, std::vector<double>(nb));
        for (auto& row : kernel) {
            double s = 0.0;
            for (double& v : row) {
                v = expd(rng) + 1e-6;
                s += v;
            }
            for (double& v : row) v /= s;
        }
        std::vector<double> cost(na);
        for (double& v : cost) v = unif(rng);
        DmcChannel ch(kernel, cost);
        double lo = ch.beta_min();
        double hi = lo + std::max(ch.cost_range(), 0.5);
        double beta = lo + (0.2 + 0.6 * (static_cast<double>(rng() % 1000) / 1000.0)) * (hi - lo);
        auto sol = solve_capacity_cost(ch, beta, 1e-9);

        double avg_cond_var = 0.0, joint_mean = 0.0, joint_second = 0.0;
        for (std::size_t x = 0; x < na; ++x) {
            c.require(sol.cond_mean[x] <= sol.capacity + 1e-6,
                      "trial " + std::to_string(trial) + ": cond_mean above capacity");
            if (sol.p_x_star[x] > 0.0) {
                c.require(std::abs(sol.cond_mean[x] - sol.capacity) <= 1e-6,
                          "trial " + std::to_string(trial) + ": support equality violated");
                avg_cond_var += sol.p_x_star[x] * sol.cond_var[x];
                for (std::size_t y = 0; y < nb; ++y) {
                    if (ch.kernel(x, y) <= 0.0) continue;
                    double j = tilted_density(ch, sol, x, y);
                    double w = sol.p_x_star[x] * ch.kernel(x, y);
                    joint_mean += w * j;
                    joint_second += w * j * j;
                }
            }
        }
        double joint_var = joint_second - joint_mean * joint_mean;
        c.require(std::abs(sol.dispersion - avg_cond_var) <= 1e-10,
                  "trial " + std::to_string(trial) + ": dispersion != avg conditional variance");
        c.require(std::abs(joint_var - sol.dispersion) <= 1e-9,
                  "trial " + std::to_string(trial) + ": total variance identity violated");
        if (!c.ok) break;
    }
    c.finish(30.0);
}

void criterion3() {
    Criterion c("criterion 3: brute-force oracle equivalence at n = 2..8");
    auto ch = bsc(0.11);
    auto sol = solve_capacity_cost(ch, 0.25, 1e-9);
    for (int n = 2; n <= 8; ++n) {
        double log_m = 0.31 * n + 0.05;
        double gamma = 0.45;
        double mine = bounds::converse_epsilon(ch, sol, n, log_m, gamma);
        double oracle = brute_converse_epsilon(ch, sol, n, log_m, gamma);
        c.require(mine <= oracle + 1e-12 && oracle - mine <= 1e-4,
                  "BSC converse n=" + std::to_string(n));
        double minedt = bounds::dt_achievability_epsilon(ch, sol, n, log_m);
        double oracledt = brute_dt_epsilon(ch, sol, n, log_m);
        c.require(minedt >= oracledt - 1e-12 && minedt - oracledt <= 1e-4,
                  "BSC DT n=" + std::to_string(n));
    }
    std::mt19937_64 rng(555);
    std::exponential_distribution<double> expd(1.0);
    std::vector<std::vector<double>> kernel(3, std::vector<double>(3));
    for (auto& row : kernel) {
        double s = 0.0;
        for (double& v : row) {
            v = expd(rng) + 0.05;
            s += v;
        }
        for (double& v : row) v /= s;
    }
    DmcChannel ch3(kernel, {0.0, 0.8, 1.6});
    auto sol3 = solve_capacity_cost(ch3, 0.7, 1e-9);
    for (int n = 2; n <= 8; ++n) {
        double log_m = 0.22 * n + 0.1;
        double gamma = 0.4;
        double mine = bounds::converse_epsilon(ch3, sol3, n, log_m, gamma);
        double oracle = brute_converse_epsilon(ch3, sol3, n, log_m, gamma);
        c.require(mine <= oracle + 1e-12 && oracle - mine <= 1e-4,
                  "3x3 converse n=" + std::to_string(n));
        double minedt = bounds::dt_achievability_epsilon(ch3, sol3, n, log_m);
        double oracledt = brute_dt_epsilon(ch3, sol3, n, log_m);
        c.require(minedt >= oracledt - 1e-12 && minedt - oracledt <= 1e-4,
                  "3x3 DT n=" + std::to_string(n));
    }
    c.finish(120.0);
}

void criterion4() {
    Criterion c("criterion 4: sandwich and half-log-n window at n = 500..4000");
    auto ch = bsc(0.11);
    auto sol = solve_capacity_cost(ch, 0.25, 1e-9);
    for (double eps : {1e-2, 1e-3}) {
        double prev_gap_rate = 1e300;
        for (int n : {500, 1000, 2000, 4000}) {
            auto conv = bounds::converse_log_m(ch, sol, n, eps);
            auto ach = bounds::achievability_log_m(ch, sol, n, eps);
            double na = bounds::normal_approx(sol, n, eps, bounds::ThirdOrder::half_log_n);
            double logn = std::log(static_cast<double>(n));
            std::string tag = " (n=" + std::to_string(n) + ", eps=" + std::to_string(eps) + ")";
            c.require(ach.log_m <= conv.log_m, "sandwich violated" + tag);
            c.require(std::abs(na - conv.log_m) <= 6.0 * logn,
                      "normal-converse window violated" + tag);
            c.require(conv.log_m - ach.log_m <= 3.0 * logn + 20.0,
                      "converse-achievability window violated" + tag);
            double gap_rate = (conv.log_m - ach.log_m) / n;
            c.require(gap_rate < prev_gap_rate, "gap per channel use not decreasing" + tag);
            prev_gap_rate = gap_rate;
        }
    }
    c.finish(600.0);
}

void criterion5() {
    Criterion c("criterion 5: strong converse above capacity");
    auto ch = bsc(0.11);
    auto sol = solve_capacity_cost(ch, 0.25, 1e-9);
    double rate = sol.capacity + bits_to_nats(0.05);
    double alpha = 0.01;
    auto curve = bounds::strong_converse_curve(ch, sol, rate, {500, 4000}, alpha);
    c.require(curve[1].second > 0.9, "epsilon(4000) = " + std::to_string(curve[1].second));
    c.require(curve[1].second > curve[0].second, "epsilon not increasing from n=500 to 4000");
    // Chebyshev floor: every admissible type has mean at most nC, deficit at
    // least n(rate - alpha - C), variance at most n*max cond_var.
    {
        int n = 4000;
        double margin = n * (rate - alpha - sol.capacity);
        double vmax = std::max(sol.cond_var[0], sol.cond_var[1]);
        double cheb = 1.0 - n * vmax / (margin * margin) - std::exp(-n * alpha);
        c.require(curve[1].second >= cheb - 1e-9, "below the Chebyshev floor");
    }
    c.finish(120.0);
}

void criterion6() {
    Criterion c("criterion 6: AWGN dispersion and tilted-density Monte Carlo");
    double formula_bits = 0.5 * (1.0 - 1.0 / 4.0) / (kLn2 * kLn2);
    double got_bits = analytic::awgn_dispersion(1.0) / (kLn2 * kLn2);
    c.require(std::abs(got_bits - formula_bits) <= 1e-9, "dispersion formula mismatch");
    c.require(std::abs(got_bits - 0.78053) <= 5e-5, "dispersion far from 0.78053 bits^2");

    // 1e6 fixed-seed draws of the tilted density on the equal-power shell
    const int n = 10;
    const double P = 1.0;
    std::mt19937_64 rng(314159);
    std::normal_distribution<double> normal(0.0, 1.0);
    const int samples = 1'000'000;
    double acc = 0.0, acc2 = 0.0;
    for (int s = 0; s < samples; ++s) {
        double ynorm2 = 0.0, dist2 = 0.0;
        for (int i = 0; i < n; ++i) {
            double z = normal(rng);
            double y = std::sqrt(P) + z;
            ynorm2 += y * y;
            dist2 += z * z;
        }
        double j = 0.5 * n * std::log1p(P) - 0.5 * dist2 + ynorm2 / (2.0 * (1.0 + P));
        acc += j;
        acc2 += j * j;
    }
    double mean = acc / samples;
    double var = acc2 / samples - mean * mean;
    double expect_mean = 0.5 * n * std::log1p(P);
    double expect_var = 0.5 * (n * P * P + 2.0 * n * P) / ((1.0 + P) * (1.0 + P));
    c.require(std::abs(mean - expect_mean) <= 4.0 * std::sqrt(expect_var / samples),
              "Monte Carlo mean off by more than 4 standard errors");
    c.require(std::abs(var - expect_var) <=
                  4.0 * expect_var * std::sqrt(2.0 / static_cast<double>(samples)),
              "Monte Carlo variance off by more than 4 standard errors");
    c.finish(120.0);
}

void criterion7() {
    Criterion c("criterion 7: exponential channel closed forms and converse");
    c.require(std::abs(nats_to_bits(analytic::exp_capacity(1.0)) - 1.0) <= 1e-15,
              "capacity at beta=1 is not 1 bit");
    for (double beta : {0.5, 1.0, 2.0}) {
        c.require(std::abs(analytic::exp_idiv_max(beta) -
                           (beta / (1.0 + beta) + std::log1p(beta))) <= 1e-12,
                  "idiv max identity");
        double prev = 1e300;
        for (int n = 1; n <= 100; ++n) {
            double v = analytic::exp_output_idiv(analytic::exp_idiv_argmax(n, beta), n, beta);
            c.require(v <= prev + 1e-12,
                      "L(t*(n),n) not nonincreasing at beta=" + std::to_string(beta));
            prev = v;
        }
    }
    for (int n : {10, 100, 1000, 10000}) {
        auto r = analytic::exp_converse_log_m(analytic::ExpChannelSpec{1.0, n}, 0.5);
        double ref = n * analytic::exp_capacity(1.0) + 0.5 * std::log(static_cast<double>(n));
        c.require(std::abs(r.log_m - ref) <= 5.0,
                  "converse off the half-log-n track at n=" + std::to_string(n));
    }
    c.finish(120.0);
}

void criterion8() {
    Criterion c("criterion 8: joint source-channel coding");
    jscc::DmsSource src({0.5, 0.5}, {{0.0, 1.0}, {1.0, 0.0}});
    auto rd = jscc::solve_rate_distortion(src, 0.11, 1e-9);
    c.require(std::abs(rd.rate - (kLn2 - binary_entropy(0.11))) <= 1e-6,
              "R(0.11) mismatch with ln2 - h(0.11)");

    auto ch = bsc(0.11);
    auto cc = solve_capacity_cost(ch, 0.25, 1e-9);
    for (int n : {64, 1000}) {
        double k = jscc::jscc_gaussian_approx(rd, cc, n, 0.5, jscc::SolveFor::k);
        c.require(k == n * cc.capacity / rd.rate, "approximation at eps=1/2 is not exactly nC/R");
    }

    auto cc2 = solve_capacity_cost(ch, 0.5, 1e-9);
    for (double gamma : {0.3, 0.9}) {
        double mine = jscc::jscc_converse_epsilon(src, rd, ch, cc2, 4, 4, gamma);
        double oracle = brute_jscc_epsilon(src, rd, ch, cc2, 4, 4, gamma);
        c.require(mine <= oracle + 1e-12 && oracle - mine <= 1e-4,
                  "k=n=4 brute-force mismatch at gamma=" + std::to_string(gamma));
    }
    c.finish(120.0);
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    if (failures == 0) {
        std::printf("all acceptance criteria passed\n");
    } else {
        std::printf("%d acceptance criteria failed\n", failures);
    }
    return failures;
}
