#include "costcap/io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "costcap/errors.hpp"
#include "costcap/mathutil.hpp"

namespace costcap::io {
namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DomainError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<double> to_vector(const json& j, const std::string& what) {
    if (!j.is_array()) throw BadPmf(what + " must be an array");
    std::vector<double> v;
    v.reserve(j.size());
    for (const auto& e : j) {
        if (!e.is_number()) throw BadPmf(what + " entries must be numbers");
        v.push_back(e.get<double>());
    }
    return v;
}

std::vector<std::vector<double>> to_matrix(const json& j, const std::string& what) {
    if (!j.is_array() || j.empty()) throw BadPmf(what + " must be a nonempty array of rows");
    std::vector<std::vector<double>> m;
    m.reserve(j.size());
    for (const auto& row : j) m.push_back(to_vector(row, what + " row"));
    return m;
}

}  // namespace

double rate_from_nats(double nats, Units u) { return u == Units::bits ? nats_to_bits(nats) : nats; }

double rate_sq_from_nats(double nats_sq, Units u) {
    return u == Units::bits ? nats_sq / (kLn2 * kLn2) : nats_sq;
}

DmcChannel parse_channel_json_text(const std::string& text) {
    json j = json::parse(text, nullptr, true, /*ignore_comments=*/false);
    if (!j.contains("kernel") || !j.contains("cost")) {
        throw BadPmf("channel spec needs \"kernel\" and \"cost\" fields");
    }
    auto kernel = to_matrix(j["kernel"], "kernel");
    auto cost = to_vector(j["cost"], "cost");
    std::vector<std::string> labels;
    if (j.contains("labels")) {
        for (const auto& e : j["labels"]) labels.push_back(e.get<std::string>());
    }
    return DmcChannel(std::move(kernel), std::move(cost), std::move(labels));
}

DmcChannel parse_channel_json(const std::string& path) {
    try {
        return parse_channel_json_text(read_file(path));
    } catch (const json::exception& e) {
        throw BadPmf("channel spec " + path + ": " + e.what());
    }
}

jscc::DmsSource parse_source_json_text(const std::string& text) {
    json j = json::parse(text);
    if (!j.contains("pmf") || !j.contains("distortion")) {
        throw BadPmf("source spec needs \"pmf\" and \"distortion\" fields");
    }
    return jscc::DmsSource(to_vector(j["pmf"], "pmf"), to_matrix(j["distortion"], "distortion"));
}

jscc::DmsSource parse_source_json(const std::string& path) {
    try {
        return parse_source_json_text(read_file(path));
    } catch (const json::exception& e) {
        throw BadPmf("source spec " + path + ": " + e.what());
    }
}

std::string format_value(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

void write_bound_curve_csv(const bounds::BoundCurve& curve, std::ostream& os, Units units) {
    const char* suffix = units == Units::bits ? "bits" : "nats";
    os << "n,epsilon,converse_" << suffix << ",achievability_" << suffix << ",normal_approx_"
       << suffix << ",gamma_nats,slack_nats,types_evaluated\n";
    for (const auto& p : curve) {
        os << p.n << ',' << format_value(p.epsilon) << ','
           << format_value(rate_from_nats(p.log_m_converse, units)) << ','
           << format_value(rate_from_nats(p.log_m_achievability, units)) << ','
           << format_value(rate_from_nats(p.log_m_normal, units)) << ','
           << format_value(p.gamma_used) << ',' << format_value(p.slack_nats) << ','
           << p.types_evaluated << '\n';
    }
}

void write_analytic_csv(const std::vector<AnalyticPoint>& points, std::ostream& os, Units units) {
    const char* suffix = units == Units::bits ? "bits" : "nats";
    os << "channel,n,epsilon,converse_" << suffix << ",achievability_" << suffix
       << ",normal_approx_" << suffix << ",gamma_nats,slack_nats,types_evaluated\n";
    for (const auto& p : points) {
        os << p.channel << ',' << p.n << ',' << format_value(p.epsilon) << ','
           << format_value(rate_from_nats(p.log_m_converse, units)) << ",,"
           << format_value(rate_from_nats(p.log_m_normal, units)) << ','
           << format_value(p.gamma_used) << ",0,0\n";
    }
}

void write_jscc_csv(const std::vector<JsccPoint>& points, std::ostream& os) {
    os << "k,n,epsilon,d,beta,converse_eps,approx_k,band_nats\n";
    for (const auto& p : points) {
        os << format_value(p.k) << ',' << p.n << ',' << format_value(p.epsilon) << ','
           << format_value(p.d) << ',' << format_value(p.beta) << ','
           << format_value(p.converse_eps) << ',' << format_value(p.approx_k) << ','
           << format_value(p.band_nats) << '\n';
    }
}

void emit_plot_data(const bounds::BoundCurve& curve, std::ostream& os, Units units) {
    if (curve.empty()) throw DomainError("plot data requires a nonempty curve");
    auto series = [&](const char* name, auto value) {
        os << "# " << name << "\n";
        for (const auto& p : curve) {
            double rate = rate_from_nats(value(p), units) / static_cast<double>(p.n);
            os << p.n << ' ' << format_value(rate) << '\n';
        }
    };
    series("converse", [](const bounds::BoundPoint& p) { return p.log_m_converse; });
    os << '\n';
    series("achievability", [](const bounds::BoundPoint& p) { return p.log_m_achievability; });
    os << '\n';
    series("normal_approx", [](const bounds::BoundPoint& p) { return p.log_m_normal; });
}

void emit_plot_data(const bounds::BoundCurve& curve, const std::string& path, Units units) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DomainError("cannot write plot data: " + path);
    emit_plot_data(curve, out, units);
}

}  // namespace costcap::io
