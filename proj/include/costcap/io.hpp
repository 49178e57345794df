#ifndef COSTCAP_IO_HPP
#define COSTCAP_IO_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "costcap/bounds.hpp"
#include "costcap/dmc.hpp"
#include "costcap/jscc.hpp"

namespace costcap::io {

enum class Units { bits, nats };

double rate_from_nats(double nats, Units u);
double rate_sq_from_nats(double nats_sq, Units u);

// Channel spec file (UTF-8 JSON): "kernel" (array of rows), "cost" (array),
// optional "labels". Rows off by more than 1e-9 are rejected; smaller
// discrepancies are renormalized.
DmcChannel parse_channel_json(const std::string& path);
DmcChannel parse_channel_json_text(const std::string& text);

// Source spec file (UTF-8 JSON): "pmf", "distortion" matrix.
jscc::DmsSource parse_source_json(const std::string& path);
jscc::DmsSource parse_source_json_text(const std::string& text);

// Number formatting used by every CSV and plot emitter: 12 significant
// digits, fixed across runs so identical configs yield identical bytes.
std::string format_value(double v);

// BoundCurve CSV: n, epsilon, converse, achievability, normal approximation
// (in the configured unit, reflected in the header), gamma and slack in nats,
// types evaluated.
void write_bound_curve_csv(const bounds::BoundCurve& curve, std::ostream& os, Units units);

// Analytic-channel variant of the same schema with a leading channel column
// ("awgn" or "exp"); the achievability column is left empty.
struct AnalyticPoint {
    std::string channel;
    int n = 0;
    double epsilon = 0.0;
    double log_m_converse = 0.0;  // nats
    double log_m_normal = 0.0;    // nats
    double gamma_used = 0.0;      // nats
};
void write_analytic_csv(const std::vector<AnalyticPoint>& points, std::ostream& os, Units units);

// JSCC CSV: k, n, epsilon, d, beta, converse_eps, approx_k, band_nats.
struct JsccPoint {
    double k = 0.0;
    int n = 0;
    double epsilon = 0.0;
    double d = 0.0;
    double beta = 0.0;
    double converse_eps = 0.0;
    double approx_k = 0.0;
    double band_nats = 0.0;
};
void write_jscc_csv(const std::vector<JsccPoint>& points, std::ostream& os);

// Plot-ready data: one (n, rate) series each for converse, achievability and
// normal approximation, blocks separated by blank lines.
void emit_plot_data(const bounds::BoundCurve& curve, std::ostream& os, Units units);
void emit_plot_data(const bounds::BoundCurve& curve, const std::string& path, Units units);

}  // namespace costcap::io

#endif
