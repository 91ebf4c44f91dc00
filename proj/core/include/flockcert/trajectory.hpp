#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "flockcert/matrix.hpp"
#include "flockcert/scenario.hpp"

namespace flockcert {

/// Positions and velocities of all agents at one instant.
struct PhaseState {
    double t = 0.0;
    Matrix X;
    Matrix V;
};

/// Cubic Hermite evaluation on [t0, t1] given endpoint values and derivatives.
/// Evaluating outside [t0, t1] extrapolates the polynomial.
void hermite_eval(double t0, double t1, const Matrix& y0, const Matrix& m0, const Matrix& y1, const Matrix& m1,
                  double t, Matrix& out);

/// The computed solution on [-tau_bar, frontier].
///
/// The mesh covers [-tau_bar, 0] with states sampled from the history laws and
/// (0, frontier] with integrated states. Queries at mesh points return the
/// stored state bitwise; queries inside [-tau_bar, 0] delegate to the history
/// laws exactly; queries inside an integrated interval evaluate its cubic
/// Hermite (positions use velocities as slopes, velocities use the stored
/// accelerations).
class Trajectory {
public:
    explicit Trajectory(ScenarioSpec scenario);

    const ScenarioSpec& scenario() const { return *scenario_; }
    double tau_bar() const { return scenario_->tau_bar(); }
    double start_time() const { return -scenario_->tau_bar(); }
    double frontier() const { return times_.back(); }

    std::size_t size() const { return times_.size(); }
    std::size_t history_points() const { return history_points_; }
    double time(std::size_t k) const { return times_[k]; }
    const Matrix& positions(std::size_t k) const { return positions_[k]; }
    const Matrix& velocities(std::size_t k) const { return velocities_[k]; }
    const Matrix& accelerations(std::size_t k) const { return accelerations_[k]; }

    PhaseState state(std::size_t k) const;
    PhaseState query(double t) const;
    void query_into(double t, Matrix& X, Matrix& V) const;

    /// Extend the mesh; t must advance strictly. dVdt is the acceleration at t.
    void append(double t, Matrix X, Matrix V, Matrix dVdt);

    /// The acceleration at the frontier is provisional until the next step is
    /// taken; the integrator fixes it up once the step derivative is known.
    void set_acceleration(std::size_t k, Matrix dVdt);

private:
    std::size_t interval_left(double t) const;

    std::shared_ptr<const ScenarioSpec> scenario_;
    std::vector<double> times_;
    std::vector<Matrix> positions_;
    std::vector<Matrix> velocities_;
    std::vector<Matrix> accelerations_;
    std::size_t history_points_ = 0;
};

}  // namespace flockcert
