#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "flockcert/validation.hpp"

namespace flockcert {

enum class HistoryFamily { Constant, Linear, Sampled };

/// One continuous R^d-valued law on the pre-history interval [-tau_bar, 0].
///
///   constant:  h(s) = value
///   linear:    h(s) = value + s * slope            (value is the state at s = 0)
///   sampled:   cubic Hermite through (s_k, value_k) knots spanning [-tau_bar, 0],
///              with centered finite-difference tangents (one-sided at the ends)
struct HistoryLaw {
    HistoryFamily family = HistoryFamily::Constant;

    std::vector<double> value;
    std::vector<double> slope;

    std::vector<double> knots_s;
    std::vector<std::vector<double>> knots_value;

    static HistoryLaw constant(std::vector<double> value);
    static HistoryLaw linear(std::vector<double> value, std::vector<double> slope);
    static HistoryLaw sampled(std::vector<double> s, std::vector<std::vector<double>> values);

    int dim() const;
    void eval(double s, std::span<double> out) const;
};

struct AgentHistory {
    HistoryLaw position;
    HistoryLaw velocity;
};

/// Initial data: a position law and a velocity law per agent.
struct HistorySpec {
    std::vector<AgentHistory> agents;
};

/// (x_i(s), v_i(s)) for s in [-tau_bar, 0]. Throws std::domain_error for s
/// outside the interval and std::out_of_range for a bad agent index.
std::pair<std::vector<double>, std::vector<double>> eval_history(const HistorySpec& spec, double tau_bar,
                                                                 int agent, double s);

/// Allocation-free variant used on the hot path.
void eval_history_into(const HistorySpec& spec, double tau_bar, int agent, double s,
                       std::span<double> position, std::span<double> velocity);

void validate_history(const HistorySpec& spec, double tau_bar, int agents, int dim, const std::string& path,
                      std::vector<Violation>& out);

std::string history_family_name(HistoryFamily family);

}  // namespace flockcert
