#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "costcap/analytic.hpp"
#include "costcap/bounds.hpp"
#include "costcap/dmc.hpp"
#include "costcap/errors.hpp"
#include "costcap/io.hpp"
#include "costcap/jscc.hpp"
#include "costcap/mathutil.hpp"

namespace {

using namespace costcap;

io::Units parse_units(const std::string& s) {
    if (s == "bits") return io::Units::bits;
    if (s == "nats") return io::Units::nats;
    throw DomainError("units must be 'bits' or 'nats'");
}

// n list syntax: "a:b:c" (inclusive range with step) or comma-separated ints.
std::vector<int> parse_n_list(const std::string& s) {
    std::vector<int> out;
    auto parse_int = [](const std::string& t) {
        std::size_t pos = 0;
        long v = std::stol(t, &pos);
        if (pos != t.size()) throw DomainError("bad integer in n list: " + t);
        return static_cast<int>(v);
    };
    if (s.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::string cur;
        for (char c : s) {
            if (c == ':') {
                parts.push_back(cur);
                cur.clear();
            } else {
                cur.push_back(c);
            }
        }
        parts.push_back(cur);
        if (parts.size() != 3) throw DomainError("n range must be start:stop:step");
        int start = parse_int(parts[0]), stop = parse_int(parts[1]), step = parse_int(parts[2]);
        if (step <= 0 || stop < start) throw DomainError("bad n range");
        for (int n = start; n <= stop; n += step) out.push_back(n);
    } else {
        std::string cur;
        for (char c : s + ",") {
            if (c == ',') {
                if (!cur.empty()) out.push_back(parse_int(cur));
                cur.clear();
            } else {
                cur.push_back(c);
            }
        }
    }
    if (out.empty()) throw DomainError("empty n list");
    for (int n : out) {
        if (n < 1) throw DomainError("n values must be at least 1");
    }
    return out;
}

std::vector<double> parse_eps_list(const std::string& s) {
    std::vector<double> out;
    std::string cur;
    for (char c : s + ",") {
        if (c == ',') {
            if (!cur.empty()) {
                std::size_t pos = 0;
                double v = std::stod(cur, &pos);
                if (pos != cur.size()) throw DomainError("bad epsilon: " + cur);
                if (!(v > 0.0) || !(v < 1.0)) throw DomainError("epsilon must lie in (0,1)");
                out.push_back(v);
            }
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (out.empty()) throw DomainError("empty epsilon list");
    return out;
}

std::uint64_t cell_budget_from_env() {
    const char* env = std::getenv("COSTCAP_BUDGET_CELLS");
    if (env == nullptr) return lattice::kDefaultCellBudget;
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || v == 0) throw DomainError("bad COSTCAP_BUDGET_CELLS value");
    return v;
}

// Dispatches grid points to a worker pool; results land in input order.
template <typename Result>
std::vector<Result> run_grid(std::size_t count, int threads,
                             const std::function<Result(std::size_t)>& work) {
    std::vector<Result> results(count);
    if (threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) results[i] = work(i);
        return results;
    }
    std::size_t nt = std::min<std::size_t>(static_cast<std::size_t>(threads), count);
    std::vector<std::thread> pool;
    std::exception_ptr first_error;
    std::mutex err_mutex;
    for (std::size_t t = 0; t < nt; ++t) {
        pool.emplace_back([&, t]() {
            for (std::size_t i = t; i < count; i += nt) {
                try {
                    results[i] = work(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(err_mutex);
                    if (!first_error) first_error = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
    return results;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DomainError("cannot write output file: " + path);
    return out;
}

int run_capacity(const std::string& channel_path, double beta, double tol) {
    DmcChannel ch = io::parse_channel_json(channel_path);
    CostCapacitySolution sol = solve_capacity_cost(ch, beta, tol);
    auto line = [](const char* name, double nats, const char* unit) {
        std::cout << name << " = " << io::format_value(nats_to_bits(nats)) << " bits" << unit
                  << " = " << io::format_value(nats) << " nats" << unit << "\n";
    };
    line("C(beta)   ", sol.capacity, "");
    line("lambda*   ", sol.lambda_star, "/cost");
    std::cout << "V(beta)    = " << io::format_value(sol.dispersion / (kLn2 * kLn2))
              << " bits^2 = " << io::format_value(sol.dispersion) << " nats^2\n";
    std::cout << "E[b(X*)]   = " << io::format_value(sol.active_cost)
              << " (beta = " << io::format_value(beta) << ")\n";
    std::cout << "p_x_star   =";
    for (double v : sol.p_x_star) std::cout << ' ' << io::format_value(v);
    std::cout << "\n";
    if (sol.diag.kink) {
        std::cout << "note: lambda bracket [" << io::format_value(sol.diag.lambda_lo) << ", "
                  << io::format_value(sol.diag.lambda_hi)
                  << "] did not meet the cost tolerance (kink of C(beta))\n";
    }
    if (!bounds::lattice_support_warning(ch, sol)) {
        // nonlattice support: half-log-n refinement applies
    } else {
        std::cout << "warning: information density support lies on an arithmetic progression; "
                     "the half-log-n term assumes the nonlattice case\n";
    }
    return 0;
}

int run_bounds(const std::string& channel_path, double beta, const std::string& eps_s,
               const std::string& n_s, double step, int threads, io::Units units,
               const std::string& out_path, const std::string& plot_path) {
    DmcChannel ch = io::parse_channel_json(channel_path);
    std::vector<int> ns = parse_n_list(n_s);
    std::vector<double> epss = parse_eps_list(eps_s);
    if (!plot_path.empty() && epss.size() != 1) {
        throw DomainError("--plot needs exactly one epsilon");
    }
    CostCapacitySolution sol = solve_capacity_cost(ch, beta, 1e-9);

    bounds::EvalOptions opts;
    opts.lattice_step = step;
    opts.cell_budget = cell_budget_from_env();
    opts.threads = 1;  // grid points own the parallelism

    struct Task {
        int n;
        double eps;
    };
    std::vector<Task> tasks;
    for (int n : ns) {
        for (double e : epss) tasks.push_back({n, e});
    }
    std::vector<bounds::BoundPoint> curve =
        run_grid<bounds::BoundPoint>(tasks.size(), threads, [&](std::size_t i) {
            return bounds::compute_bound_point(ch, sol, tasks[i].n, tasks[i].eps, opts);
        });

    for (const auto& p : curve) {
        std::cout << "n=" << p.n << " eps=" << io::format_value(p.epsilon)
                  << " converse=" << io::format_value(io::rate_from_nats(p.log_m_converse, units))
                  << " achievability="
                  << io::format_value(io::rate_from_nats(p.log_m_achievability, units))
                  << " normal=" << io::format_value(io::rate_from_nats(p.log_m_normal, units))
                  << (units == io::Units::bits ? " (bits)" : " (nats)") << "\n";
    }
    auto out = open_output(out_path);
    io::write_bound_curve_csv(curve, out, units);
    if (!plot_path.empty()) io::emit_plot_data(curve, plot_path, units);
    return 0;
}

int run_strong_converse(const std::string& channel_path, double beta, double rate_in,
                        double alpha, const std::string& n_s, io::Units units,
                        const std::string& out_path) {
    DmcChannel ch = io::parse_channel_json(channel_path);
    std::vector<int> ns = parse_n_list(n_s);
    CostCapacitySolution sol = solve_capacity_cost(ch, beta, 1e-9);
    double rate_nats = units == io::Units::bits ? bits_to_nats(rate_in) : rate_in;

    bounds::EvalOptions opts;
    opts.cell_budget = cell_budget_from_env();
    auto curve = bounds::strong_converse_curve(ch, sol, rate_nats, ns, alpha, opts);
    auto out = open_output(out_path);
    out << "n,epsilon_lower\n";
    for (const auto& [n, eps] : curve) {
        std::cout << "n=" << n << " eps_lower=" << io::format_value(eps) << "\n";
        out << n << ',' << io::format_value(eps) << '\n';
    }
    return 0;
}

int run_awgn(double snr, const std::string& eps_s, const std::string& n_s, io::Units units,
             const std::string& out_path) {
    std::vector<int> ns = parse_n_list(n_s);
    std::vector<double> epss = parse_eps_list(eps_s);
    std::vector<io::AnalyticPoint> points;
    for (int n : ns) {
        for (double e : epss) {
            analytic::AwgnSpec spec{snr, n};
            auto r = analytic::awgn_converse_log_m(spec, e);
            io::AnalyticPoint p;
            p.channel = "awgn";
            p.n = n;
            p.epsilon = e;
            p.log_m_converse = r.log_m;
            p.gamma_used = r.gamma;
            double nn = static_cast<double>(n);
            p.log_m_normal = nn * analytic::awgn_capacity(snr) -
                             std::sqrt(nn * analytic::awgn_dispersion(snr)) * q_inv(e) +
                             0.5 * std::log(nn);
            points.push_back(p);
            std::cout << "awgn n=" << n << " eps=" << io::format_value(e)
                      << " converse=" << io::format_value(io::rate_from_nats(r.log_m, units))
                      << " normal=" << io::format_value(io::rate_from_nats(p.log_m_normal, units))
                      << "\n";
        }
    }
    std::cout << "note: equal-power shell converse at blocklength n; as a maximal-power bound "
                 "it applies with the n/n+1 shift\n";
    auto out = open_output(out_path);
    io::write_analytic_csv(points, out, units);
    return 0;
}

int run_exp(double beta, const std::string& eps_s, const std::string& n_s, io::Units units,
            const std::string& out_path) {
    std::vector<int> ns = parse_n_list(n_s);
    std::vector<double> epss = parse_eps_list(eps_s);
    std::vector<io::AnalyticPoint> points;
    for (int n : ns) {
        for (double e : epss) {
            analytic::ExpChannelSpec spec{beta, n};
            auto r = analytic::exp_converse_log_m(spec, e);
            io::AnalyticPoint p;
            p.channel = "exp";
            p.n = n;
            p.epsilon = e;
            p.log_m_converse = r.log_m;
            p.gamma_used = r.gamma;
            double nn = static_cast<double>(n);
            p.log_m_normal = nn * analytic::exp_capacity(beta) -
                             std::sqrt(nn * analytic::exp_dispersion(beta)) * q_inv(e) +
                             0.5 * std::log(nn);
            points.push_back(p);
            std::cout << "exp n=" << n << " eps=" << io::format_value(e)
                      << " converse=" << io::format_value(io::rate_from_nats(r.log_m, units))
                      << " normal=" << io::format_value(io::rate_from_nats(p.log_m_normal, units))
                      << "\n";
        }
    }
    std::cout << "note: equal-cost simplex converse at blocklength n; as a maximal-cost bound "
                 "it applies with the n/n+1 shift\n";
    auto out = open_output(out_path);
    io::write_analytic_csv(points, out, units);
    return 0;
}

int run_jscc(const std::string& channel_path, const std::string& source_path, double beta,
             double d, const std::string& eps_s, const std::string& n_s, int k_flag,
             double gamma_flag, const std::string& out_path) {
    DmcChannel ch = io::parse_channel_json(channel_path);
    jscc::DmsSource src = io::parse_source_json(source_path);
    std::vector<int> ns = parse_n_list(n_s);
    std::vector<double> epss = parse_eps_list(eps_s);
    CostCapacitySolution cc = solve_capacity_cost(ch, beta, 1e-9);
    jscc::RdSolution rd = solve_rate_distortion(src, d, 1e-9);

    bounds::EvalOptions opts;
    opts.cell_budget = cell_budget_from_env();
    std::vector<io::JsccPoint> points;
    for (int n : ns) {
        for (double e : epss) {
            double approx_k = jscc::jscc_gaussian_approx(rd, cc, n, e, jscc::SolveFor::k);
            int k = k_flag >= 0 ? k_flag : static_cast<int>(std::llround(approx_k));
            double gamma = gamma_flag > 0.0 ? gamma_flag
                                            : 0.5 * std::log(static_cast<double>(std::max(n, 2)));
            io::JsccPoint p;
            p.k = k;
            p.n = n;
            p.epsilon = e;
            p.d = d;
            p.beta = beta;
            p.converse_eps = jscc::jscc_converse_epsilon(src, rd, ch, cc, k, n, gamma, opts);
            p.approx_k = approx_k;
            p.band_nats = jscc::jscc_band_nats(cc, n);
            points.push_back(p);
            std::cout << "k=" << k << " n=" << n << " eps=" << io::format_value(e)
                      << " converse_eps=" << io::format_value(p.converse_eps)
                      << " approx_k=" << io::format_value(approx_k) << " +-"
                      << io::format_value(p.band_nats) << " nats\n";
        }
    }
    auto out = open_output(out_path);
    io::write_jscc_csv(points, out);
    return 0;
}

int classify_error(const Error& e) {
    const std::string& n = e.name();
    if (n == "NonConvergence" || n == "BudgetExceeded" || n == "SeriesBudget") return 3;
    if (n == "InfeasibleCost" || n == "InfeasibleDistortion" || n == "InfeasibleType" ||
        n == "NoPositiveSolution" || n == "UndefinedDensity") {
        return 4;
    }
    return 2;  // configuration / input errors
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite-blocklength bounds for channels with input cost constraints"};
    app.require_subcommand(1);

    std::string channel_path, source_path, eps_s = "1e-3", n_s = "1000", units_s = "bits";
    std::string out_path, plot_path;
    double beta = 0.0, tol = 1e-9, snr = 1.0, rate = 0.0, alpha = 0.01, d = 0.0;
    double step = 1e-6, gamma_flag = -1.0;
    int threads = 1, k_flag = -1;

    auto add_units = [&](CLI::App* cmd) {
        cmd->add_option("--units", units_s, "output units: bits or nats")
            ->check(CLI::IsMember({"bits", "nats"}));
    };

    auto* cap = app.add_subcommand("capacity", "capacity-cost function of a DMC");
    cap->add_option("--channel", channel_path, "channel spec JSON")->required();
    cap->add_option("--beta", beta, "cost level")->required();
    cap->add_option("--tol", tol, "capacity tolerance (nats)");

    auto* bnd = app.add_subcommand("bounds", "converse/achievability/normal bounds over a grid");
    bnd->add_option("--channel", channel_path)->required();
    bnd->add_option("--beta", beta)->required();
    bnd->add_option("--eps", eps_s, "epsilon list, e.g. 1e-3 or 1e-2,1e-3");
    bnd->add_option("--n", n_s, "n list: start:stop:step or comma list");
    bnd->add_option("--step", step, "lattice step (nats)");
    bnd->add_option("--threads", threads, "worker pool size for grid points");
    bnd->add_option("--out", out_path, "CSV output path");
    bnd->add_option("--plot", plot_path, "plot-data output path (single epsilon)");
    add_units(bnd);

    auto* sc = app.add_subcommand("strong-converse", "error lower bound above capacity");
    sc->add_option("--channel", channel_path)->required();
    sc->add_option("--beta", beta)->required();
    sc->add_option("--rate", rate, "rate per channel use (in --units)")->required();
    sc->add_option("--alpha", alpha, "gamma = n*alpha (nats)");
    sc->add_option("--n", n_s);
    sc->add_option("--out", out_path);
    add_units(sc);

    auto* aw = app.add_subcommand("awgn", "AWGN power-constrained converse");
    aw->add_option("--snr", snr, "signal-to-noise ratio P")->required();
    aw->add_option("--eps", eps_s);
    aw->add_option("--n", n_s);
    aw->add_option("--out", out_path);
    add_units(aw);

    auto* ex = app.add_subcommand("exp", "additive exponential-noise channel converse");
    ex->add_option("--beta", beta, "mean input constraint")->required();
    ex->add_option("--eps", eps_s);
    ex->add_option("--n", n_s);
    ex->add_option("--out", out_path);
    add_units(ex);

    auto* js = app.add_subcommand("jscc", "joint source-channel converse and approximation");
    js->add_option("--channel", channel_path)->required();
    js->add_option("--source", source_path)->required();
    js->add_option("--beta", beta)->required();
    js->add_option("--d", d, "distortion level")->required();
    js->add_option("--eps", eps_s);
    js->add_option("--n", n_s);
    js->add_option("--k", k_flag, "source block length (default: rounded approx_k)");
    js->add_option("--gamma", gamma_flag, "converse gamma (nats, default 0.5*ln n)");
    js->add_option("--out", out_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        io::Units units = parse_units(units_s);
        if (cap->parsed()) return run_capacity(channel_path, beta, tol);
        if (bnd->parsed()) {
            return run_bounds(channel_path, beta, eps_s, n_s, step, threads, units,
                              out_path.empty() ? "bounds.csv" : out_path, plot_path);
        }
        if (sc->parsed()) {
            return run_strong_converse(channel_path, beta, rate, alpha, n_s, units,
                                       out_path.empty() ? "strong_converse.csv" : out_path);
        }
        if (aw->parsed()) {
            return run_awgn(snr, eps_s, n_s, units, out_path.empty() ? "awgn.csv" : out_path);
        }
        if (ex->parsed()) {
            return run_exp(beta, eps_s, n_s, units, out_path.empty() ? "exp.csv" : out_path);
        }
        if (js->parsed()) {
            return run_jscc(channel_path, source_path, beta, d, eps_s, n_s, k_flag, gamma_flag,
                            out_path.empty() ? "jscc.csv" : out_path);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return classify_error(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
