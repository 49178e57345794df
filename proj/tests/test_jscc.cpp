#include <doctest.h>

#include <cmath>
#include <vector>

#include "costcap/bounds.hpp"
#include "costcap/dmc.hpp"
#include "costcap/errors.hpp"
#include "costcap/jscc.hpp"
#include "costcap/mathutil.hpp"

using namespace costcap;
using namespace costcap::jscc;

namespace {

DmsSource binary_hamming(double p) {
    return DmsSource({1.0 - p, p}, {{0.0, 1.0}, {1.0, 0.0}});
}

DmcChannel bsc(double delta) {
    return DmcChannel({{1.0 - delta, delta}, {delta, 1.0 - delta}}, {0.0, 1.0});
}

// Exhaustive oracle for the joint converse at tiny (k, n): enumerate source
// strings and, per string, minimize the exact channel tail over admissible
// compositions by enumerating output strings.
double brute_jscc_epsilon(const DmsSource& src, const RdSolution& rd, const DmcChannel& ch,
                          const CostCapacitySolution& cc, int k, int n, double gamma) {
    auto types = bounds::enumerate_admissible_types(ch, cc.beta, n);
    const std::size_t ns = src.alphabet_size();
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
                // exact cdf of the channel tilted sum for this composition
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
        while (pos < s.size() && ++s[pos] == ns) {
            s[pos] = 0;
            ++pos;
        }
        if (pos == s.size()) break;
    }
    return std::max(0.0, expectation - std::exp(-gamma));
}

}  // namespace

TEST_CASE("source validation and distortion range") {
    CHECK_THROWS_AS(DmsSource({0.6, 0.5}, {{0.0, 1.0}, {1.0, 0.0}}), BadPmf);
    CHECK_THROWS_AS(DmsSource({0.5, 0.5}, {{0.0, -1.0}, {1.0, 0.0}}), DomainError);
    auto src = binary_hamming(0.5);
    CHECK(src.d_min() == 0.0);
    CHECK(src.d_max() == doctest::Approx(0.5).epsilon(1e-15));
    auto biased = binary_hamming(0.2);
    CHECK(biased.d_max() == doctest::Approx(0.2).epsilon(1e-15));
}

TEST_CASE("rate-distortion closed forms for binary Hamming sources") {
    auto src = binary_hamming(0.5);
    auto rd = solve_rate_distortion(src, 0.11, 1e-9);
    // R(d) = ln 2 - h(d): frozen 30-digit value
    CHECK(rd.rate == doctest::Approx(0.34663184364127916).epsilon(1e-7));
    CHECK(nats_to_bits(rd.rate) == doctest::Approx(0.500084041835472).epsilon(1e-7));
    // -R'(d) = log((1-d)/d)
    CHECK(rd.lambda_s == doctest::Approx(std::log(0.89 / 0.11)).epsilon(1e-6));
    // symmetry: the tilted values agree across letters and average to R(d)
    CHECK(rd.tilted[0] == doctest::Approx(rd.tilted[1]).epsilon(1e-10));
    CHECK(d_tilted_info(rd, 0) == rd.tilted[0]);
    double mean = 0.5 * (rd.tilted[0] + rd.tilted[1]);
    CHECK(mean == doctest::Approx(rd.rate).epsilon(1e-9));
    CHECK(rd.var_tilted <= 1e-12);

    // biased source: solver self-consistency plus the closed form
    auto rd2 = solve_rate_distortion(binary_hamming(0.2), 0.05, 1e-9);
    CHECK(rd2.rate == doctest::Approx(0.30188718019231532).epsilon(1e-7));
    double mean2 = 0.8 * rd2.tilted[0] + 0.2 * rd2.tilted[1];
    CHECK(mean2 == doctest::Approx(rd2.rate).epsilon(1e-9));
    double var2 = 0.8 * (rd2.tilted[0] - mean2) * (rd2.tilted[0] - mean2) +
                  0.2 * (rd2.tilted[1] - mean2) * (rd2.tilted[1] - mean2);
    CHECK(var2 == doctest::Approx(rd2.var_tilted).epsilon(1e-9));
}

TEST_CASE("rate-distortion boundary and monotonicity") {
    auto src = binary_hamming(0.5);
    CHECK(solve_rate_distortion(src, 0.5, 1e-9).rate <= 1e-6);  // d = d_max
    CHECK_THROWS_AS(solve_rate_distortion(src, 0.0, 1e-9), InfeasibleDistortion);
    CHECK_THROWS_AS(solve_rate_distortion(src, 0.6, 1e-9), InfeasibleDistortion);
    RdOptions tiny;
    tiny.max_inner_iterations = 1;
    CHECK_THROWS_AS(solve_rate_distortion(src, 0.11, tiny), NonConvergence);

    double prev_rate = -1.0, prev_tilted = -1.0;
    for (double d : {0.4, 0.3, 0.2, 0.1, 0.05}) {
        auto rd = solve_rate_distortion(src, d, 1e-9);
        CHECK(rd.rate > prev_rate);
        CHECK(rd.tilted[0] > prev_tilted);  // d-tilted information grows as d shrinks
        prev_rate = rd.rate;
        prev_tilted = rd.tilted[0];
    }
}

TEST_CASE("gaussian approximation for joint source-channel coding") {
    auto ch = bsc(0.11);
    auto cc = solve_capacity_cost(ch, 0.25, 1e-9);
    auto rd = solve_rate_distortion(binary_hamming(0.5), 0.11, 1e-9);

    // eps = 1/2 collapses to k = nC/R exactly
    for (int n : {100, 1000}) {
        double k = jscc_gaussian_approx(rd, cc, n, 0.5, SolveFor::k);
        CHECK(k == n * cc.capacity / rd.rate);
        CHECK(jscc_gaussian_approx(rd, cc, n, 0.5, SolveFor::rate) == k / n);
    }

    // both dispersions zero: identity channel with free inputs and the
    // equiprobable source
    DmcChannel ident({{1.0, 0.0}, {0.0, 1.0}}, {0.0, 0.0});
    auto ci = solve_capacity_cost(ident, 0.5, 1e-9);
    CHECK(ci.dispersion <= 1e-12);
    for (double e : {0.1, 0.5, 0.9}) {
        double k = jscc_gaussian_approx(rd, ci, 50, e, SolveFor::k);
        CHECK(k == doctest::Approx(50.0 * ci.capacity / rd.rate).epsilon(1e-12));
    }

    // bisection oracle on the defining equation
    {
        int n = 1000;
        double eps = 1e-3;
        double k = jscc_gaussian_approx(rd, cc, n, eps, SolveFor::k);
        auto f = [&](double kk) {
            return n * cc.capacity - kk * rd.rate -
                   std::sqrt(n * cc.dispersion + kk * rd.var_tilted) * q_inv(eps);
        };
        double lo = 0.0, hi = n * cc.capacity / rd.rate;
        for (int it = 0; it < 200; ++it) {
            double mid = 0.5 * (lo + hi);
            (f(mid) >= 0.0 ? lo : hi) = mid;
        }
        CHECK(k == doctest::Approx(lo).epsilon(1e-9));
        CHECK(std::abs(f(k)) <= 1e-9);
    }

    CHECK_THROWS_AS(jscc_gaussian_approx(rd, cc, 1, 1e-6, SolveFor::k), NoPositiveSolution);
    CHECK_THROWS_AS(jscc_gaussian_approx(rd, cc, 100, 0.0, SolveFor::k), DomainError);
    CHECK(jscc_band_nats(cc, 1000) > 0.0);
}

TEST_CASE("jscc converse epsilon basics") {
    auto ch = bsc(0.11);
    auto cc = solve_capacity_cost(ch, 0.5, 1e-9);
    auto src = binary_hamming(0.5);
    auto rd = solve_rate_distortion(src, 0.11, 1e-9);

    // enormous gamma drives the bound to zero
    CHECK(jscc_converse_epsilon(src, rd, ch, cc, 4, 4, 50.0) == 0.0);
    // no source letters: channel-only converse at log M = 0
    CHECK(jscc_converse_epsilon(src, rd, ch, cc, 0, 4, 1.0) == 0.0);
    CHECK_THROWS_AS(jscc_converse_epsilon(src, rd, ch, cc, 4, 4, 0.0), DomainError);
}

TEST_CASE("jscc converse matches the exhaustive oracle at k = n = 4") {
    auto ch = bsc(0.11);
    auto cc = solve_capacity_cost(ch, 0.5, 1e-9);

    auto src = binary_hamming(0.5);
    auto rd = solve_rate_distortion(src, 0.11, 1e-9);
    for (double gamma : {0.2, 0.5, 1.0}) {
        double mine = jscc_converse_epsilon(src, rd, ch, cc, 4, 4, gamma);
        double brute = brute_jscc_epsilon(src, rd, ch, cc, 4, 4, gamma);
        CHECK(mine <= brute + 1e-12);
        CHECK(brute - mine <= 1e-4);
    }

    // biased source exercises the expectation over distinct source sums
    auto src2 = binary_hamming(0.3);
    auto rd2 = solve_rate_distortion(src2, 0.1, 1e-9);
    for (double gamma : {0.3, 0.8}) {
        double mine = jscc_converse_epsilon(src2, rd2, ch, cc, 4, 4, gamma);
        double brute = brute_jscc_epsilon(src2, rd2, ch, cc, 4, 4, gamma);
        CHECK(mine <= brute + 1e-12);
        CHECK(brute - mine <= 1e-4);
    }
}

TEST_CASE("jscc converse is nonincreasing in gamma past its maximizer") {
    auto ch = bsc(0.11);
    auto cc = solve_capacity_cost(ch, 0.25, 1e-9);
    auto src = binary_hamming(0.5);
    auto rd = solve_rate_distortion(src, 0.11, 1e-9);
    std::vector<double> gammas{0.25, 0.5, 1.0, 2.0, 4.0, 8.0};
    std::vector<double> vals;
    for (double g : gammas) vals.push_back(jscc_converse_epsilon(src, rd, ch, cc, 16, 16, g));
    std::size_t argmax = 0;
    for (std::size_t i = 1; i < vals.size(); ++i) {
        if (vals[i] > vals[argmax]) argmax = i;
    }
    for (std::size_t i = argmax; i + 1 < vals.size(); ++i) {
        CHECK(vals[i + 1] <= vals[i] + 1e-12);
    }
}

TEST_CASE("jscc strong-converse trend above C/R") {
    auto ch = bsc(0.11);
    auto cc = solve_capacity_cost(ch, 0.25, 1e-9);
    auto src = binary_hamming(0.5);
    auto rd = solve_rate_distortion(src, 0.11, 1e-9);
    // k = n with R(d) > C(beta): the excess-distortion bound must grow
    REQUIRE(rd.rate > cc.capacity);
    double e8 = jscc_converse_epsilon(src, rd, ch, cc, 8, 8, 1.0);
    double e32 = jscc_converse_epsilon(src, rd, ch, cc, 32, 32, 1.0);
    double e128 = jscc_converse_epsilon(src, rd, ch, cc, 128, 128, 2.0);
    CHECK(e32 >= e8 - 1e-9);
    CHECK(e128 > e32);
}
