#pragma once

#include <string>

#include "flockcert/diagnostics.hpp"
#include "flockcert/envelope.hpp"
#include "flockcert/trajectory.hpp"

namespace flockcert {

/// Format a double with 17 significant digits (value-preserving round trip).
std::string format_full(double v);

/// Write content to path atomically (temp file in the same directory, then
/// rename). Throws std::runtime_error on I/O failure.
void atomic_write_file(const std::string& path, const std::string& content);

/// Header `t,x_0_0..x_{N-1}_{d-1},v_0_0..v_{N-1}_{d-1}`, one row per
/// output-stride mesh point over [-tau_bar, T], full precision.
std::string trajectory_csv(const Trajectory& traj, int stride);

/// Header `t,d_X,d_V,dX_runmax,psi_t,phi`.
std::string diagnostics_csv(const DiagnosticsSeries& series);

/// Plot-ready series: `t,d_V,decay_envelope,envelope_D,lyapunov`.
std::string certificate_series_csv(const Diagnostics& diag, const CertificateFunctions& funcs,
                                   const TheoryConstants& constants, int stride);

/// Minimal static SVG with d_V and the certified decay envelope over time.
std::string decay_plot_svg(const Diagnostics& diag, const TheoryConstants& constants, int stride);

}  // namespace flockcert
