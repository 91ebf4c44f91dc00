#include "flockcert/csv.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace flockcert {

std::string format_full(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void atomic_write_file(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open for writing: " + tmp.string());
        out << content;
        if (!out) throw std::runtime_error("write failed: " + tmp.string());
    }
    fs::rename(tmp, target);
}

std::string trajectory_csv(const Trajectory& traj, int stride) {
    if (stride < 1) throw std::domain_error("trajectory_csv: stride >= 1 required");
    const int n = traj.scenario().agents;
    const int d = traj.scenario().dim;

    std::string out = "t";
    for (int i = 0; i < n; ++i)
        for (int c = 0; c < d; ++c) out += ",x_" + std::to_string(i) + "_" + std::to_string(c);
    for (int i = 0; i < n; ++i)
        for (int c = 0; c < d; ++c) out += ",v_" + std::to_string(i) + "_" + std::to_string(c);
    out += "\n";

    const auto emit = [&](std::size_t k) {
        out += format_full(traj.time(k));
        for (int i = 0; i < n; ++i)
            for (int c = 0; c < d; ++c) out += "," + format_full(traj.positions(k)(i, c));
        for (int i = 0; i < n; ++i)
            for (int c = 0; c < d; ++c) out += "," + format_full(traj.velocities(k)(i, c));
        out += "\n";
    };
    for (std::size_t k = 0; k < traj.size(); k += static_cast<std::size_t>(stride)) emit(k);
    if ((traj.size() - 1) % static_cast<std::size_t>(stride) != 0) emit(traj.size() - 1);
    return out;
}

std::string diagnostics_csv(const DiagnosticsSeries& series) {
    std::string out = "t,d_X,d_V,dX_runmax,psi_t,phi\n";
    for (std::size_t k = 0; k < series.t.size(); ++k) {
        out += format_full(series.t[k]) + "," + format_full(series.dX[k]) + "," + format_full(series.dV[k]) +
               "," + format_full(series.runmax_dX[k]) + "," + format_full(series.psi_t[k]) + "," +
               format_full(series.phi[k]) + "\n";
    }
    return out;
}

std::string certificate_series_csv(const Diagnostics& diag, const CertificateFunctions& funcs,
                                   const TheoryConstants& constants, int stride) {
    if (stride < 1) throw std::domain_error("certificate_series_csv: stride >= 1 required");
    std::string out = "t,d_V,decay_envelope,envelope_D,lyapunov\n";
    const double tau = diag.tau_bar();
    const auto emit = [&](std::size_t k) {
        const double t = diag.mesh_time(k);
        const double bound = constants.D0 * std::exp(-constants.C * (t - 2.0 * tau));
        out += format_full(t) + "," + format_full(diag.dV(k)) + "," + format_full(bound) + "," +
               format_full(funcs.envelope(t)) + "," + format_full(funcs.lyapunov(t)) + "\n";
    };
    for (std::size_t k = 0; k < diag.mesh_size(); k += static_cast<std::size_t>(stride)) emit(k);
    if ((diag.mesh_size() - 1) % static_cast<std::size_t>(stride) != 0) emit(diag.mesh_size() - 1);
    return out;
}

std::string decay_plot_svg(const Diagnostics& diag, const TheoryConstants& constants, int stride) {
    const double tau = diag.tau_bar();
    const double t0 = diag.mesh_time(0);
    const double t1 = diag.mesh_time(diag.mesh_size() - 1);

    double ymax = 1e-300;
    for (std::size_t k = 0; k < diag.mesh_size(); ++k) ymax = std::max(ymax, diag.dV(k));
    ymax = std::max(ymax, constants.D0 * std::exp(-constants.C * (t0 - 2.0 * tau)));
    if (ymax <= 0.0) ymax = 1.0;

    constexpr double W = 720.0, H = 420.0, margin = 50.0;
    const auto px = [&](double t) { return margin + (t - t0) / (t1 - t0) * (W - 2.0 * margin); };
    const auto py = [&](double y) { return H - margin - (y / ymax) * (H - 2.0 * margin); };

    const auto polyline = [&](const char* color, auto&& f) {
        std::string pts;
        for (std::size_t k = 0; k < diag.mesh_size(); k += static_cast<std::size_t>(stride)) {
            const double t = diag.mesh_time(k);
            char buf[64];
            std::snprintf(buf, sizeof(buf), "%.2f,%.2f ", px(t), py(f(k, t)));
            pts += buf;
        }
        return "  <polyline fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"1.5\" points=\"" +
               pts + "\"/>\n";
    };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"720\" height=\"420\" viewBox=\"0 0 720 420\">\n";
    svg += "  <rect width=\"720\" height=\"420\" fill=\"white\"/>\n";
    char axis[256];
    std::snprintf(axis, sizeof(axis),
                  "  <line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>\n"
                  "  <line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>\n",
                  margin, H - margin, W - margin, H - margin, margin, margin, margin, H - margin);
    svg += axis;
    svg += polyline("#d62728", [&](std::size_t, double t) {
        return constants.D0 * std::exp(-constants.C * (t - 2.0 * tau));
    });
    svg += polyline("#1f77b4", [&](std::size_t k, double) { return diag.dV(k); });
    svg += "  <text x=\"360\" y=\"405\" text-anchor=\"middle\" font-size=\"13\">t</text>\n";
    svg += "  <text x=\"60\" y=\"40\" font-size=\"13\" fill=\"#1f77b4\">d_V(t)</text>\n";
    svg += "  <text x=\"60\" y=\"58\" font-size=\"13\" fill=\"#d62728\">D0 exp(-C (t - 2 tau_bar))</text>\n";
    svg += "</svg>\n";
    return svg;
}

}  // namespace flockcert
