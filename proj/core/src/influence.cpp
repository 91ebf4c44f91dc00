#include "flockcert/influence.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace flockcert {

InfluenceSpec InfluenceSpec::cucker_smale(double k0, double beta) {
    InfluenceSpec s;
    s.family = InfluenceFamily::CuckerSmale;
    s.k0 = k0;
    s.beta = beta;
    return s;
}

InfluenceSpec InfluenceSpec::constant(double value) {
    InfluenceSpec s;
    s.family = InfluenceFamily::Constant;
    s.value = value;
    return s;
}

InfluenceSpec InfluenceSpec::oscillating(double base, double amp, double freq) {
    InfluenceSpec s;
    s.family = InfluenceFamily::Oscillating;
    s.base = base;
    s.amp = amp;
    s.freq = freq;
    return s;
}

InfluenceSpec InfluenceSpec::table(std::vector<double> r, std::vector<double> psi, bool divergence_attested) {
    InfluenceSpec s;
    s.family = InfluenceFamily::Table;
    s.table_r = std::move(r);
    s.table_psi = std::move(psi);
    s.table_divergence_attested = divergence_attested;
    return s;
}

namespace {

double eval_table(const InfluenceSpec& spec, double r) {
    const auto& xs = spec.table_r;
    const auto& ys = spec.table_psi;
    if (r >= xs.back()) return ys.back();
    // first knot is at r = 0, so r < xs.back() has a bracketing pair
    const auto it = std::upper_bound(xs.begin(), xs.end(), r);
    const std::size_t hi = static_cast<std::size_t>(it - xs.begin());
    const std::size_t lo = hi - 1;
    const double w = (r - xs[lo]) / (xs[hi] - xs[lo]);
    return ys[lo] + w * (ys[hi] - ys[lo]);
}

// min of sin over [0, x] for x >= 0
double sin_prefix_min(double x) {
    constexpr double pi = std::numbers::pi;
    if (x <= pi) return 0.0;
    if (x <= 1.5 * pi) return std::sin(x);
    return -1.0;
}

}  // namespace

double eval_influence(const InfluenceSpec& spec, double r) {
    if (r < 0.0) throw std::domain_error("eval_influence: distance must be nonnegative");
    switch (spec.family) {
        case InfluenceFamily::CuckerSmale:
            return spec.k0 * std::pow(1.0 + r * r, -spec.beta);
        case InfluenceFamily::Constant:
            return spec.value;
        case InfluenceFamily::Oscillating:
            return spec.base + spec.amp * std::sin(spec.freq * r);
        case InfluenceFamily::Table:
            return eval_table(spec, r);
    }
    throw std::logic_error("eval_influence: unknown family");
}

double sup_influence(const InfluenceSpec& spec) {
    switch (spec.family) {
        case InfluenceFamily::CuckerSmale:
            return spec.k0;
        case InfluenceFamily::Constant:
            return spec.value;
        case InfluenceFamily::Oscillating:
            return spec.base + spec.amp;
        case InfluenceFamily::Table:
            return *std::max_element(spec.table_psi.begin(), spec.table_psi.end());
    }
    throw std::logic_error("sup_influence: unknown family");
}

double min_influence_prefix(const InfluenceSpec& spec, double r) {
    if (r < 0.0) throw std::domain_error("min_influence_prefix: distance must be nonnegative");
    switch (spec.family) {
        case InfluenceFamily::CuckerSmale:
            // nonincreasing in r, so the prefix minimum sits at the right end
            return eval_influence(spec, r);
        case InfluenceFamily::Constant:
            return spec.value;
        case InfluenceFamily::Oscillating:
            return spec.base + spec.amp * sin_prefix_min(spec.freq * r);
        case InfluenceFamily::Table: {
            // piecewise-linear minima sit on knots, so the prefix minimum is the
            // knot-prefix minimum combined with the value at r itself
            const auto& xs = spec.table_r;
            const auto& ys = spec.table_psi;
            double m = eval_table(spec, r);
            for (std::size_t k = 0; k < xs.size() && xs[k] <= r; ++k) m = std::min(m, ys[k]);
            return m;
        }
    }
    throw std::logic_error("min_influence_prefix: unknown family");
}

bool influence_integral_diverges(const InfluenceSpec& spec) {
    switch (spec.family) {
        case InfluenceFamily::CuckerSmale:
            // (1 + r^2)^(-beta) ~ r^(-2 beta): divergent tail iff 2 beta <= 1
            return spec.beta <= 0.5;
        case InfluenceFamily::Constant:
            return true;
        case InfluenceFamily::Oscillating:
            // bounded below by base - amp > 0
            return true;
        case InfluenceFamily::Table:
            return spec.table_divergence_attested;
    }
    throw std::logic_error("influence_integral_diverges: unknown family");
}

void validate_influence(const InfluenceSpec& spec, const std::string& path, std::vector<Violation>& out) {
    const auto add = [&](const std::string& field, const std::string& msg) {
        out.push_back({path + "." + field, msg});
    };
    switch (spec.family) {
        case InfluenceFamily::CuckerSmale:
            if (!(spec.k0 > 0.0)) add("k0", "psi must be positive: k0 > 0 required, got " + std::to_string(spec.k0));
            if (!(spec.beta >= 0.0)) add("beta", "beta >= 0 required, got " + std::to_string(spec.beta));
            break;
        case InfluenceFamily::Constant:
            if (!(spec.value > 0.0))
                add("value", "psi must be positive: value > 0 required, got " + std::to_string(spec.value));
            break;
        case InfluenceFamily::Oscillating:
            if (!(spec.base > 0.0)) add("base", "base > 0 required, got " + std::to_string(spec.base));
            if (!(spec.amp >= 0.0)) add("amp", "amp >= 0 required, got " + std::to_string(spec.amp));
            if (!(spec.base > spec.amp))
                add("amp", "psi must be positive: base > amp required, got base=" + std::to_string(spec.base) +
                               " amp=" + std::to_string(spec.amp));
            if (!(spec.freq > 0.0)) add("freq", "freq > 0 required, got " + std::to_string(spec.freq));
            break;
        case InfluenceFamily::Table: {
            if (spec.table_r.size() != spec.table_psi.size())
                add("table", "r and psi sample arrays must have equal length");
            if (spec.table_r.size() < 2) add("table", "at least two samples required");
            if (!spec.table_r.empty() && spec.table_r.front() != 0.0)
                add("table_r", "first sample must sit at r = 0");
            for (std::size_t k = 0; k + 1 < spec.table_r.size(); ++k)
                if (!(spec.table_r[k] < spec.table_r[k + 1])) {
                    add("table_r", "sample distances must be strictly increasing");
                    break;
                }
            for (std::size_t k = 0; k < spec.table_psi.size(); ++k)
                if (!(spec.table_psi[k] > 0.0)) {
                    add("table_psi[" + std::to_string(k) + "]",
                        "psi must be positive, got " + std::to_string(spec.table_psi[k]));
                    break;
                }
            break;
        }
    }
    if (!out.empty()) return;

    // dense positivity / boundedness sweep; structural for the analytic
    // families, a real check for tables
    const double K = sup_influence(spec);
    constexpr int samples = 4096;
    constexpr double r_max = 1.0e3;
    for (int k = 0; k <= samples; ++k) {
        const double r = r_max * static_cast<double>(k) / samples;
        const double v = eval_influence(spec, r);
        if (!(v > 0.0)) {
            add("family", "psi must be positive: psi(" + std::to_string(r) + ") = " + std::to_string(v));
            return;
        }
        if (v > K * (1.0 + 1e-12)) {
            add("family", "psi exceeds its supremum at r = " + std::to_string(r));
            return;
        }
    }
}

std::string influence_family_name(InfluenceFamily family) {
    switch (family) {
        case InfluenceFamily::CuckerSmale: return "cucker-smale";
        case InfluenceFamily::Constant: return "constant";
        case InfluenceFamily::Oscillating: return "oscillating";
        case InfluenceFamily::Table: return "table";
    }
    return "unknown";
}

}  // namespace flockcert
