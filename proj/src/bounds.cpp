#include "costcap/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <thread>

#include "costcap/errors.hpp"

namespace costcap::bounds {
namespace {

using lattice::LatticeDistribution;

void parallel_over(std::size_t count, int threads, const std::function<void(std::size_t)>& work) {
    if (threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) work(i);
        return;
    }
    std::size_t nt = std::min<std::size_t>(static_cast<std::size_t>(threads), count);
    std::vector<std::thread> pool;
    pool.reserve(nt);
    for (std::size_t t = 0; t < nt; ++t) {
        pool.emplace_back([&, t]() {
            for (std::size_t i = t; i < count; i += nt) work(i);
        });
    }
    for (auto& th : pool) th.join();
}

// Merges coincident values so symmetric rows produce single atoms, mirroring
// conditional_tilted_pmf.
std::vector<std::pair<double, double>> merge_atoms(std::vector<std::pair<double, double>> atoms) {
    std::sort(atoms.begin(), atoms.end());
    std::vector<std::pair<double, double>> merged;
    for (const auto& [v, m] : atoms) {
        if (!merged.empty() && v - merged.back().first <= 1e-12) {
            auto& [mv, mm] = merged.back();
            mv = (mv * mm + v * m) / (mm + m);
            mm += m;
        } else {
            merged.emplace_back(v, m);
        }
    }
    return merged;
}

// Atoms of the information density i(x; Y) against the output marginal q.
std::vector<std::pair<double, double>> info_density_atoms(const DmcChannel& ch, std::size_t x,
                                                          const std::vector<double>& q) {
    std::vector<std::pair<double, double>> atoms;
    const double* row = ch.row(x);
    for (std::size_t y = 0; y < ch.output_size(); ++y) {
        if (row[y] <= 0.0) continue;
        if (q[y] <= 0.0) {
            throw UndefinedDensity("kernel mass on an output with zero reference probability");
        }
        atoms.emplace_back(std::log(row[y] / q[y]), row[y]);
    }
    return merge_atoms(std::move(atoms));
}

// The spec'd gamma grid: 64 log-spaced points on [1e-4, max(n*C, 1)] with 3
// local refinement rounds.
std::pair<double, double> optimize_gamma(const std::function<double(double)>& eval, double nC) {
    return maximize_log_grid(eval, 1e-4, std::max(nC, 1.0), 64, 3);
}

}  // namespace

std::vector<TypeComposition> enumerate_admissible_types(const DmcChannel& channel, double beta,
                                                        int n, std::uint64_t budget) {
    if (n < 1) throw DomainError("blocklength must be at least 1");
    const std::size_t na = channel.input_size();
    const double cost_cap = static_cast<double>(n) * beta * (1.0 + 1e-12) + 1e-12;
    double min_tail_cost = channel.beta_min();

    std::vector<TypeComposition> out;
    std::vector<int> counts(na, 0);
    std::function<void(std::size_t, int, double)> rec = [&](std::size_t x, int left,
                                                            double cost_so_far) {
        if (x + 1 == na) {
            counts[x] = left;
            double total = cost_so_far + static_cast<double>(left) * channel.cost(x);
            if (total <= cost_cap) {
                if (out.size() >= budget) {
                    throw BudgetExceeded("admissible type enumeration exceeds budget");
                }
                out.push_back({counts, total / static_cast<double>(n)});
            }
            return;
        }
        for (int c = 0; c <= left; ++c) {
            counts[x] = c;
            double cost = cost_so_far + static_cast<double>(c) * channel.cost(x);
            // Even the cheapest completion cannot rescue this prefix.
            if (cost + static_cast<double>(left - c) * min_tail_cost > cost_cap) continue;
            rec(x + 1, left - c, cost);
        }
        counts[x] = 0;
    };
    rec(0, n, 0.0);
    return out;
}

// ---------------------------------------------------------------------------
// TypeTailSet

struct TypeTailSet::Impl {
    struct Pow {
        std::vector<std::int64_t> idx;
        std::vector<double> mass;
        std::vector<double> prefix;  // inclusive cumulative mass
        double tail = 0.0;
    };
    struct TypePrep {
        const Pow* big = nullptr;
        std::vector<std::int64_t> small_idx;
        std::vector<double> small_mass;
        double tail = 0.0;
    };

    int n = 0;
    double step = 0.0;
    double slack = 0.0;
    double max_tail = 0.0;
    std::vector<TypeComposition> types;
    std::map<std::pair<std::size_t, int>, Pow> powers;  // (letter, count) -> pmf^count
    // same powers as distributions, for folding the non-big factors without
    // recomputing them per type
    std::map<std::pair<std::size_t, int>, LatticeDistribution> power_dists;
    std::vector<TypePrep> preps;
    std::uint64_t query_products = 0;
    int threads = 1;

    static Pow to_pow(const LatticeDistribution& d) {
        Pow p;
        p.idx.reserve(d.size());
        p.mass.reserve(d.size());
        p.prefix.reserve(d.size());
        double run = 0.0;
        for (const auto& a : d.atoms()) {
            p.idx.push_back(a.index);
            p.mass.push_back(a.mass);
            run += a.mass;
            p.prefix.push_back(run);
        }
        p.tail = d.tail_loss();
        return p;
    }

    double cdf_lower_for(const TypePrep& t, std::int64_t limit_index) const {
        double total = 0.0;
        for (std::size_t i = 0; i < t.small_idx.size(); ++i) {
            std::int64_t rem = limit_index - t.small_idx[i];
            auto it = std::upper_bound(t.big->idx.begin(), t.big->idx.end(), rem);
            if (it != t.big->idx.begin()) {
                total += t.small_mass[i] *
                         t.big->prefix[static_cast<std::size_t>(it - t.big->idx.begin()) - 1];
            }
        }
        return total;
    }
};

TypeTailSet::TypeTailSet(const DmcChannel& channel, const CostCapacitySolution& sol, int n,
                         const EvalOptions& opts, TailStatistic stat)
    : impl_(std::make_unique<Impl>()) {
    if (n < 1) throw DomainError("blocklength must be at least 1");
    impl_->n = n;
    impl_->step = opts.lattice_step;
    impl_->slack = static_cast<double>(n) * opts.lattice_step / 2.0;
    impl_->threads = opts.threads;
    impl_->types = enumerate_admissible_types(channel, sol.beta, n, opts.type_budget);
    if (impl_->types.empty()) {
        throw InfeasibleType("no admissible type meets the cost constraint");
    }

    const std::size_t na = channel.input_size();
    std::vector<LatticeDistribution> letter_pmf(na);
    std::vector<int> max_count(na, 0);
    std::vector<std::vector<char>> needed(na);
    for (std::size_t x = 0; x < na; ++x) needed[x].assign(static_cast<std::size_t>(n) + 1, 0);
    for (const auto& t : impl_->types) {
        for (std::size_t x = 0; x < na; ++x) {
            if (t.counts[x] > 0) {
                needed[x][static_cast<std::size_t>(t.counts[x])] = 1;
                max_count[x] = std::max(max_count[x], t.counts[x]);
            }
        }
    }
    for (std::size_t x = 0; x < na; ++x) {
        if (max_count[x] == 0) continue;
        letter_pmf[x] = LatticeDistribution::from_atoms(
            stat == TailStatistic::tilted_density
                ? conditional_tilted_pmf(channel, sol, x)
                : info_density_atoms(channel, x, sol.p_y_star),
            impl_->step);
        // Incremental ladder: every count up to the maximum passes through
        // here once; only requested counts are retained.
        LatticeDistribution cur = letter_pmf[x];
        for (int c = 1; c <= max_count[x]; ++c) {
            if (c > 1) cur = lattice::convolve(cur, letter_pmf[x], opts.cell_budget);
            if (needed[x][static_cast<std::size_t>(c)]) {
                impl_->powers.emplace(std::make_pair(x, c), Impl::to_pow(cur));
                impl_->power_dists.emplace(std::make_pair(x, c), cur);
            }
        }
    }

    impl_->preps.resize(impl_->types.size());
    for (std::size_t ti = 0; ti < impl_->types.size(); ++ti) {
        const auto& t = impl_->types[ti];
        Impl::TypePrep prep;
        // Largest factor is queried through its prefix sums; the remaining
        // factors are folded into one explicit distribution.
        std::size_t big_letter = na;
        std::size_t big_size = 0;
        for (std::size_t x = 0; x < na; ++x) {
            if (t.counts[x] <= 0) continue;
            const auto& pw = impl_->powers.at({x, t.counts[x]});
            if (pw.idx.size() >= big_size) {
                big_size = pw.idx.size();
                big_letter = x;
            }
        }
        prep.big = &impl_->powers.at({big_letter, t.counts[big_letter]});
        prep.tail = prep.big->tail;

        LatticeDistribution fold;
        bool have = false;
        for (std::size_t x = 0; x < na; ++x) {
            if (x == big_letter || t.counts[x] <= 0) continue;
            const LatticeDistribution& pw = impl_->power_dists.at({x, t.counts[x]});
            fold = have ? lattice::convolve(fold, pw, opts.cell_budget) : pw;
            have = true;
        }
        if (have) {
            prep.small_idx.reserve(fold.size());
            prep.small_mass.reserve(fold.size());
            for (const auto& a : fold.atoms()) {
                prep.small_idx.push_back(a.index);
                prep.small_mass.push_back(a.mass);
            }
            prep.tail += fold.tail_loss();
        } else {
            prep.small_idx.push_back(0);
            prep.small_mass.push_back(1.0);
        }
        impl_->max_tail = std::max(impl_->max_tail, prep.tail);
        impl_->query_products += prep.small_idx.size();
        impl_->preps[ti] = std::move(prep);
    }
}

TypeTailSet::~TypeTailSet() = default;
TypeTailSet::TypeTailSet(TypeTailSet&&) noexcept = default;
TypeTailSet& TypeTailSet::operator=(TypeTailSet&&) noexcept = default;

int TypeTailSet::block_length() const { return impl_->n; }
std::size_t TypeTailSet::type_count() const { return impl_->types.size(); }
double TypeTailSet::slack() const { return impl_->slack; }
double TypeTailSet::max_tail_loss() const { return impl_->max_tail; }
std::uint64_t TypeTailSet::query_cost() const { return impl_->query_products; }

double TypeTailSet::min_cdf_lower(double tau) const {
    double shifted = tau - impl_->slack;
    std::int64_t limit =
        static_cast<std::int64_t>(std::floor(shifted / impl_->step + 1e-9));
    std::vector<double> per_type(impl_->preps.size());
    parallel_over(impl_->preps.size(), impl_->threads, [&](std::size_t i) {
        per_type[i] = impl_->cdf_lower_for(impl_->preps[i], limit);
    });
    double best = 1.0;
    for (double v : per_type) best = std::min(best, v);
    return std::clamp(best, 0.0, 1.0);
}

std::vector<double> TypeTailSet::envelope(double lo, double hi, double step_out) const {
    if (!(step_out > 0.0) || hi <= lo) throw DomainError("bad envelope grid");
    const std::size_t cells = static_cast<std::size_t>(std::floor((hi - lo) / step_out)) + 1;
    std::vector<double> env(cells, 1.0);
    const double slack = impl_->slack;
    const double step = impl_->step;

    int nt = std::max(1, impl_->threads);
    std::vector<std::vector<double>> locals(static_cast<std::size_t>(nt),
                                            std::vector<double>(cells, 1.0));
    std::vector<std::vector<double>> bins_scratch(static_cast<std::size_t>(nt));

    parallel_over(static_cast<std::size_t>(nt), nt, [&](std::size_t tid) {
        std::vector<double>& local = locals[tid];
        std::vector<double>& bins = bins_scratch[tid];
        for (std::size_t ti = tid; ti < impl_->preps.size(); ti += static_cast<std::size_t>(nt)) {
            const auto& prep = impl_->preps[ti];
            bins.assign(cells, 0.0);
            double below = 0.0;
            for (std::size_t i = 0; i < prep.small_idx.size(); ++i) {
                double base = static_cast<double>(prep.small_idx[i]) * step + slack - lo;
                double m = prep.small_mass[i];
                for (std::size_t j = 0; j < prep.big->idx.size(); ++j) {
                    double v = base + static_cast<double>(prep.big->idx[j]) * step;
                    double bm = m * prep.big->mass[j];
                    // Strictly-next grid cell keeps the floor query a valid
                    // lower bound under fp rounding.
                    double q = v / step_out;
                    if (q < -1.0) {
                        below += bm;
                    } else {
                        std::size_t bin = static_cast<std::size_t>(std::floor(q)) + 1;
                        if (bin < cells) {
                            bins[bin] += bm;
                        } else if (q < 0.0) {
                            below += bm;
                        }
                    }
                }
            }
            double run = below;
            for (std::size_t c = 0; c < cells; ++c) {
                run += bins[c];
                local[c] = std::min(local[c], run);
            }
        }
    });
    for (int t = 0; t < nt; ++t) {
        for (std::size_t c = 0; c < cells; ++c) env[c] = std::min(env[c], locals[t][c]);
    }
    for (double& v : env) v = std::clamp(v, 0.0, 1.0);
    return env;
}

// ---------------------------------------------------------------------------

double normal_approx(const CostCapacitySolution& sol, int n, double epsilon, ThirdOrder third) {
    if (!(epsilon > 0.0) || !(epsilon < 1.0)) throw DomainError("epsilon must lie in (0,1)");
    if (n < 1) throw DomainError("blocklength must be at least 1");
    if (sol.dispersion < -1e-15) throw DomainError("negative dispersion");
    double v = std::max(sol.dispersion, 0.0);
    double nn = static_cast<double>(n);
    double r = nn * sol.capacity - std::sqrt(nn * v) * q_inv(epsilon);
    if (third == ThirdOrder::half_log_n) r += 0.5 * std::log(nn);
    return r;
}

double converse_epsilon(const DmcChannel& channel, const CostCapacitySolution& sol, int n,
                        double log_m, double gamma, const EvalOptions& opts) {
    if (!(gamma > 0.0)) throw DomainError("gamma must be positive");
    if (!(log_m > 0.0)) throw DomainError("log M must be positive");
    TypeTailSet tails(channel, sol, n, opts);
    double v = tails.min_cdf_lower(log_m - gamma) - std::exp(-gamma);
    return std::max(0.0, v);
}

namespace {

struct ConverseEvaluator {
    const TypeTailSet& tails;
    bool use_envelope = false;
    double env_lo = 0.0;
    double env_step = 0.0;
    std::vector<double> env;

    ConverseEvaluator(const TypeTailSet& t, const CostCapacitySolution& sol, int n,
                      const EvalOptions& opts)
        : tails(t) {
        double nn = static_cast<double>(n);
        std::uint64_t queries = 60ull * 112ull;  // search iterations x gamma points
        use_envelope = tails.query_cost() * queries > opts.exact_query_limit;
        if (use_envelope) {
            double spread = 60.0 * std::sqrt(std::max(nn * sol.dispersion, 1.0)) + 10.0;
            env_lo = nn * sol.capacity - spread;
            env_step = opts.envelope_grid_step;
            double env_hi = nn * sol.capacity + 10.0;
            env = tails.envelope(env_lo, env_hi, env_step);
        }
    }

    double min_cdf(double tau) const {
        if (!use_envelope) return tails.min_cdf_lower(tau);
        if (tau < env_lo) return 0.0;
        std::size_t i = static_cast<std::size_t>(std::floor((tau - env_lo) / env_step));
        if (i >= env.size()) i = env.size() - 1;
        return env[i];
    }

    double epsilon_at(double log_m, double gamma) const {
        return std::max(0.0, min_cdf(log_m - gamma) - std::exp(-gamma));
    }

    std::pair<double, double> gamma_optimized(double log_m, double nC) const {
        return optimize_gamma([&](double g) { return epsilon_at(log_m, g); }, nC);
    }
};

}  // namespace

BoundSearchResult converse_log_m(const DmcChannel& channel, const CostCapacitySolution& sol,
                                 int n, double epsilon, const EvalOptions& opts) {
    if (!(epsilon > 0.0) || !(epsilon < 1.0)) throw DomainError("epsilon must lie in (0,1)");
    TypeTailSet tails(channel, sol, n, opts);
    ConverseEvaluator eval(tails, sol, n, opts);
    double nC = static_cast<double>(n) * sol.capacity;

    double lo = 0.0;
    double hi = static_cast<double>(n) * std::log(static_cast<double>(channel.input_size())) + 5.0;
    double best_gamma = 0.0;
    auto feasible = [&](double log_m) {
        auto [g, v] = eval.gamma_optimized(log_m, nC);
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
    BoundSearchResult r;
    r.log_m = lo;
    r.gamma = best_gamma;
    r.slack_nats = tails.slack() + (eval.use_envelope ? opts.envelope_grid_step : 0.0);
    r.tail_loss = tails.max_tail_loss();
    r.types_evaluated = tails.type_count();
    return r;
}

namespace {

// Closest admissible type to the capacity-achieving input distribution
// (Euclidean on the empirical distribution; lexicographic tie-break comes
// free from the enumeration order).
TypeComposition closest_admissible_type(const DmcChannel& channel,
                                        const CostCapacitySolution& sol, int n,
                                        std::uint64_t budget) {
    std::vector<TypeComposition> types = enumerate_admissible_types(channel, sol.beta, n, budget);
    if (types.empty()) throw InfeasibleType("no admissible type meets the cost constraint");
    const TypeComposition* best = nullptr;
    double best_d = std::numeric_limits<double>::infinity();
    for (const auto& t : types) {
        double d = 0.0;
        for (std::size_t x = 0; x < sol.p_x_star.size(); ++x) {
            double diff = static_cast<double>(t.counts[x]) / static_cast<double>(n) -
                          sol.p_x_star[x];
            d += diff * diff;
        }
        if (d < best_d) {
            best_d = d;
            best = &t;
        }
    }
    return *best;
}

double dt_threshold(double log_m) {
    // ln((M-1)/2) computed stably from ln M.
    double log_m_minus_1 = log_m > kLn2 ? log_m + std::log1p(-std::exp(-log_m))
                                        : std::log(std::expm1(log_m));
    return log_m_minus_1 - kLn2;
}

struct DtEvaluator {
    LatticeDistribution sum;
    double correction = 0.0;  // K_n
    TypeComposition type;

    DtEvaluator(const DmcChannel& channel, const CostCapacitySolution& sol, int n,
                const EvalOptions& opts) {
        type = closest_admissible_type(channel, sol, n, opts.type_budget);
        double nn = static_cast<double>(n);
        std::vector<double> empirical(channel.input_size());
        for (std::size_t x = 0; x < channel.input_size(); ++x) {
            empirical[x] = static_cast<double>(type.counts[x]) / nn;
        }
        std::vector<double> induced(channel.output_size(), 0.0);
        for (std::size_t x = 0; x < channel.input_size(); ++x) {
            if (empirical[x] <= 0.0) continue;
            const double* row = channel.row(x);
            for (std::size_t y = 0; y < channel.output_size(); ++y) {
                induced[y] += empirical[x] * row[y];
            }
        }
        correction = nn * entropy_nats(empirical) - log_multinomial(n, type.counts);

        bool have = false;
        for (std::size_t x = 0; x < channel.input_size(); ++x) {
            if (type.counts[x] <= 0) continue;
            LatticeDistribution letter = LatticeDistribution::from_atoms(
                info_density_atoms(channel, x, induced), opts.lattice_step);
            LatticeDistribution pw = lattice::power(
                letter, static_cast<std::uint64_t>(type.counts[x]), opts.cell_budget);
            sum = have ? lattice::convolve(sum, pw, opts.cell_budget) : pw;
            have = true;
        }
    }

    double epsilon_at(double log_m) const {
        if (log_m == 0.0) return 0.0;  // a single message needs no channel
        return sum.expect_exp_clip(dt_threshold(log_m) + correction).second;
    }
};

}  // namespace

double dt_achievability_epsilon(const DmcChannel& channel, const CostCapacitySolution& sol,
                                int n, double log_m, const EvalOptions& opts) {
    if (log_m < 0.0) throw DomainError("log M must be nonnegative");
    if (n < 1) throw DomainError("blocklength must be at least 1");
    if (log_m == 0.0) return 0.0;
    DtEvaluator eval(channel, sol, n, opts);
    return eval.epsilon_at(log_m);
}

BoundSearchResult achievability_log_m(const DmcChannel& channel, const CostCapacitySolution& sol,
                                      int n, double epsilon, const EvalOptions& opts) {
    if (!(epsilon > 0.0) || !(epsilon < 1.0)) throw DomainError("epsilon must lie in (0,1)");
    if (n < 1) throw DomainError("blocklength must be at least 1");
    DtEvaluator eval(channel, sol, n, opts);
    double lo = 0.0;
    double hi = static_cast<double>(n) * std::log(static_cast<double>(channel.input_size())) + 5.0;
    if (eval.epsilon_at(hi) <= epsilon) {
        lo = hi;
    } else {
        for (int it = 0; it < 60; ++it) {
            double mid = 0.5 * (lo + hi);
            if (eval.epsilon_at(mid) <= epsilon) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
    }
    BoundSearchResult r;
    r.log_m = lo;
    r.gamma = 0.0;
    r.slack_nats = eval.sum.slack();
    r.tail_loss = eval.sum.tail_loss();
    r.types_evaluated = 1;
    return r;
}

std::vector<std::pair<int, double>> strong_converse_curve(const DmcChannel& channel,
                                                          const CostCapacitySolution& sol,
                                                          double rate,
                                                          const std::vector<int>& n_list,
                                                          double alpha,
                                                          const EvalOptions& opts) {
    if (!(alpha > 0.0)) throw DomainError("alpha must be positive");
    if (rate < sol.capacity + 2.0 * alpha) {
        throw DomainError("strong converse curve requires rate >= C(beta) + 2*alpha");
    }
    std::vector<std::pair<int, double>> out;
    out.reserve(n_list.size());
    for (int n : n_list) {
        double nn = static_cast<double>(n);
        double eps = converse_epsilon(channel, sol, n, nn * rate, nn * alpha, opts);
        out.emplace_back(n, std::min(eps, 1.0));
    }
    return out;
}

BoundPoint compute_bound_point(const DmcChannel& channel, const CostCapacitySolution& sol, int n,
                               double epsilon, const EvalOptions& opts) {
    BoundPoint p;
    p.n = n;
    p.epsilon = epsilon;
    BoundSearchResult conv = converse_log_m(channel, sol, n, epsilon, opts);
    BoundSearchResult ach = achievability_log_m(channel, sol, n, epsilon, opts);
    p.log_m_converse = conv.log_m;
    p.log_m_achievability = ach.log_m;
    p.log_m_normal = normal_approx(sol, n, epsilon, ThirdOrder::half_log_n);
    p.gamma_used = conv.gamma;
    p.slack_nats = std::max(conv.slack_nats, ach.slack_nats);
    p.tail_loss = std::max(conv.tail_loss, ach.tail_loss);
    p.types_evaluated = conv.types_evaluated;
    return p;
}

bool lattice_support_warning(const DmcChannel& channel, const CostCapacitySolution& sol) {
    // Collect the support of i(X*; Y*) and test whether successive gaps share
    // a common divisor (arithmetic progression).
    std::vector<double> values;
    for (std::size_t x = 0; x < channel.input_size(); ++x) {
        if (sol.p_x_star[x] <= 0.0) continue;
        const double* row = channel.row(x);
        for (std::size_t y = 0; y < channel.output_size(); ++y) {
            if (row[y] > 0.0 && sol.p_y_star[y] > 0.0) {
                values.push_back(std::log(row[y] / sol.p_y_star[y]));
            }
        }
    }
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end(),
                             [](double a, double b) { return std::abs(a - b) < 1e-12; }),
                 values.end());
    if (values.size() <= 2) return true;
    double g = 0.0;
    for (std::size_t i = 1; i < values.size(); ++i) {
        double d = values[i] - values[0];
        // Floating-point gcd by Euclid with a tolerance floor.
        while (d > 1e-9) {
            if (g < 1e-9) {
                g = d;
                break;
            }
            double r = std::fmod(d, g);
            if (r < 1e-9 || g - r < 1e-9) break;
            d = g;
            g = r;
        }
    }
    if (g < 1e-9) return false;
    for (std::size_t i = 1; i < values.size(); ++i) {
        double ratio = (values[i] - values[0]) / g;
        if (std::abs(ratio - std::llround(ratio)) > 1e-6) return false;
    }
    return true;
}

}  // namespace costcap::bounds
