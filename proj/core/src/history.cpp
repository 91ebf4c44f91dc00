#include "flockcert/history.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace flockcert {

HistoryLaw HistoryLaw::constant(std::vector<double> value) {
    HistoryLaw law;
    law.family = HistoryFamily::Constant;
    law.value = std::move(value);
    return law;
}

HistoryLaw HistoryLaw::linear(std::vector<double> value, std::vector<double> slope) {
    HistoryLaw law;
    law.family = HistoryFamily::Linear;
    law.value = std::move(value);
    law.slope = std::move(slope);
    return law;
}

HistoryLaw HistoryLaw::sampled(std::vector<double> s, std::vector<std::vector<double>> values) {
    HistoryLaw law;
    law.family = HistoryFamily::Sampled;
    law.knots_s = std::move(s);
    law.knots_value = std::move(values);
    return law;
}

int HistoryLaw::dim() const {
    switch (family) {
        case HistoryFamily::Constant:
        case HistoryFamily::Linear:
            return static_cast<int>(value.size());
        case HistoryFamily::Sampled:
            return knots_value.empty() ? 0 : static_cast<int>(knots_value.front().size());
    }
    return 0;
}

namespace {

// tangent of the sampled law at knot k, centered where possible
double knot_tangent(const HistoryLaw& law, std::size_t k, std::size_t c) {
    const auto& s = law.knots_s;
    const auto& y = law.knots_value;
    const std::size_t last = s.size() - 1;
    if (k == 0) return (y[1][c] - y[0][c]) / (s[1] - s[0]);
    if (k == last) return (y[last][c] - y[last - 1][c]) / (s[last] - s[last - 1]);
    return (y[k + 1][c] - y[k - 1][c]) / (s[k + 1] - s[k - 1]);
}

void eval_sampled(const HistoryLaw& law, double s, std::span<double> out) {
    const auto& xs = law.knots_s;
    const auto it = std::upper_bound(xs.begin(), xs.end(), s);
    std::size_t hi = static_cast<std::size_t>(it - xs.begin());
    if (hi == 0) hi = 1;
    if (hi == xs.size()) hi = xs.size() - 1;
    const std::size_t lo = hi - 1;

    // exact on knots
    if (s == xs[lo]) {
        std::copy(law.knots_value[lo].begin(), law.knots_value[lo].end(), out.begin());
        return;
    }
    if (s == xs[hi]) {
        std::copy(law.knots_value[hi].begin(), law.knots_value[hi].end(), out.begin());
        return;
    }

    const double h = xs[hi] - xs[lo];
    const double u = (s - xs[lo]) / h;
    const double h00 = (1.0 + 2.0 * u) * (1.0 - u) * (1.0 - u);
    const double h10 = u * (1.0 - u) * (1.0 - u);
    const double h01 = u * u * (3.0 - 2.0 * u);
    const double h11 = u * u * (u - 1.0);
    for (std::size_t c = 0; c < out.size(); ++c) {
        const double m0 = knot_tangent(law, lo, c);
        const double m1 = knot_tangent(law, hi, c);
        out[c] = h00 * law.knots_value[lo][c] + h * h10 * m0 + h01 * law.knots_value[hi][c] + h * h11 * m1;
    }
}

}  // namespace

void HistoryLaw::eval(double s, std::span<double> out) const {
    switch (family) {
        case HistoryFamily::Constant:
            std::copy(value.begin(), value.end(), out.begin());
            return;
        case HistoryFamily::Linear:
            for (std::size_t c = 0; c < out.size(); ++c) out[c] = value[c] + s * slope[c];
            return;
        case HistoryFamily::Sampled:
            eval_sampled(*this, s, out);
            return;
    }
    throw std::logic_error("HistoryLaw::eval: unknown family");
}

std::pair<std::vector<double>, std::vector<double>> eval_history(const HistorySpec& spec, double tau_bar,
                                                                 int agent, double s) {
    if (agent < 0 || agent >= static_cast<int>(spec.agents.size()))
        throw std::out_of_range("eval_history: agent index out of range");
    const int d = spec.agents[static_cast<std::size_t>(agent)].position.dim();
    std::vector<double> x(static_cast<std::size_t>(d)), v(static_cast<std::size_t>(d));
    eval_history_into(spec, tau_bar, agent, s, x, v);
    return {std::move(x), std::move(v)};
}

void eval_history_into(const HistorySpec& spec, double tau_bar, int agent, double s,
                       std::span<double> position, std::span<double> velocity) {
    if (agent < 0 || agent >= static_cast<int>(spec.agents.size()))
        throw std::out_of_range("eval_history: agent index out of range");
    if (s < -tau_bar || s > 0.0)
        throw std::domain_error("eval_history: s must lie in [-tau_bar, 0], got " + std::to_string(s));
    const auto& a = spec.agents[static_cast<std::size_t>(agent)];
    a.position.eval(s, position);
    a.velocity.eval(s, velocity);
}

namespace {

void validate_law(const HistoryLaw& law, double tau_bar, int dim, const std::string& path,
                  std::vector<Violation>& out) {
    const auto add = [&](const std::string& field, const std::string& msg) {
        out.push_back({path + "." + field, msg});
    };
    switch (law.family) {
        case HistoryFamily::Constant:
            if (static_cast<int>(law.value.size()) != dim)
                add("value", "expected " + std::to_string(dim) + " components");
            break;
        case HistoryFamily::Linear:
            if (static_cast<int>(law.value.size()) != dim)
                add("value", "expected " + std::to_string(dim) + " components");
            if (static_cast<int>(law.slope.size()) != dim)
                add("slope", "expected " + std::to_string(dim) + " components");
            break;
        case HistoryFamily::Sampled: {
            if (law.knots_s.size() < 2) add("knots_s", "at least two knots required");
            if (law.knots_s.size() != law.knots_value.size())
                add("knots", "knot time and value arrays must have equal length");
            if (!law.knots_s.empty()) {
                if (law.knots_s.front() != -tau_bar)
                    add("knots_s", "first knot must sit at -tau_bar = " + std::to_string(-tau_bar));
                if (law.knots_s.back() != 0.0) add("knots_s", "last knot must sit at 0");
            }
            for (std::size_t k = 0; k + 1 < law.knots_s.size(); ++k)
                if (!(law.knots_s[k] < law.knots_s[k + 1])) {
                    add("knots_s", "knot times must be strictly increasing");
                    break;
                }
            for (std::size_t k = 0; k < law.knots_value.size(); ++k)
                if (static_cast<int>(law.knots_value[k].size()) != dim) {
                    add("knots_value[" + std::to_string(k) + "]",
                        "expected " + std::to_string(dim) + " components");
                    break;
                }
            break;
        }
    }
    if (out.empty()) {
        // finiteness sweep
        std::vector<double> buf(static_cast<std::size_t>(dim));
        for (int k = 0; k <= 64; ++k) {
            const double s = -tau_bar + tau_bar * static_cast<double>(k) / 64.0;
            law.eval(std::min(s, 0.0), buf);
            for (double c : buf)
                if (!std::isfinite(c)) {
                    add("family", "law is not finite at s = " + std::to_string(s));
                    return;
                }
        }
    }
}

}  // namespace

void validate_history(const HistorySpec& spec, double tau_bar, int agents, int dim, const std::string& path,
                      std::vector<Violation>& out) {
    if (static_cast<int>(spec.agents.size()) != agents) {
        out.push_back({path + ".agents", "expected " + std::to_string(agents) + " agent histories, got " +
                                             std::to_string(spec.agents.size())});
        return;
    }
    for (int i = 0; i < agents; ++i) {
        const auto& a = spec.agents[static_cast<std::size_t>(i)];
        const std::string p = path + ".agents[" + std::to_string(i) + "]";
        validate_law(a.position, tau_bar, dim, p + ".position", out);
        validate_law(a.velocity, tau_bar, dim, p + ".velocity", out);
    }
}

std::string history_family_name(HistoryFamily family) {
    switch (family) {
        case HistoryFamily::Constant: return "constant";
        case HistoryFamily::Linear: return "linear";
        case HistoryFamily::Sampled: return "sampled";
    }
    return "unknown";
}

}  // namespace flockcert
