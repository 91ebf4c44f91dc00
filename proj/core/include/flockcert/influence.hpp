#pragma once

#include <string>
#include <vector>

#include "flockcert/validation.hpp"

namespace flockcert {

enum class InfluenceFamily { CuckerSmale, Constant, Oscillating, Table };

/// Communication weight psi as a function of inter-agent distance.
///
/// Every family is positive, bounded and continuous on [0, inf):
///   cucker-smale:  psi(r) = k0 * (1 + r^2)^(-beta)
///   constant:      psi(r) = value
///   oscillating:   psi(r) = base + amp * sin(freq * r), base > amp >= 0
///   table:         linear interpolation of (r_k, psi_k) samples starting at
///                  r_0 = 0, held at the last sample beyond the final knot
struct InfluenceSpec {
    InfluenceFamily family = InfluenceFamily::CuckerSmale;

    double k0 = 1.0;
    double beta = 0.25;

    double value = 1.0;

    double base = 0.5;
    double amp = 0.25;
    double freq = 1.0;

    std::vector<double> table_r;
    std::vector<double> table_psi;
    /// Tables cannot prove that the integral of psi over [0, inf) diverges;
    /// the author of the table asserts it explicitly.
    bool table_divergence_attested = false;

    static InfluenceSpec cucker_smale(double k0, double beta);
    static InfluenceSpec constant(double value);
    static InfluenceSpec oscillating(double base, double amp, double freq);
    static InfluenceSpec table(std::vector<double> r, std::vector<double> psi, bool divergence_attested);
};

/// psi(r). Throws std::domain_error for r < 0.
double eval_influence(const InfluenceSpec& spec, double r);

/// K = sup of psi over [0, inf). Closed form for the analytic families,
/// knot maximum for tables (piecewise-linear maxima sit on knots).
double sup_influence(const InfluenceSpec& spec);

/// min of psi over [0, r], exact per family. O(1) for the analytic families,
/// O(log knots) for tables via a precomputed prefix minimum.
double min_influence_prefix(const InfluenceSpec& spec, double r);

/// Whether the integral of psi over [0, inf) diverges. Analytic for the
/// closed-form families (cucker-smale diverges iff beta <= 1/2); tables
/// report their attestation flag.
bool influence_integral_diverges(const InfluenceSpec& spec);

void validate_influence(const InfluenceSpec& spec, const std::string& path, std::vector<Violation>& out);

std::string influence_family_name(InfluenceFamily family);

}  // namespace flockcert
