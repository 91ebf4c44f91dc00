#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "flockcert/trajectory.hpp"

namespace flockcert {

/// Window-guarded access to delayed states. Reads are only legal inside
/// [earliest, frontier]; anything else is a gap in the available history and
/// aborts the run.
class HistoryAccessor {
public:
    using Reader = std::function<void(double u, Matrix& X, Matrix& V)>;

    HistoryAccessor(Reader reader, double earliest, double frontier);

    void read(double u, Matrix& X, Matrix& V) const;
    double earliest() const { return earliest_; }
    double frontier() const { return frontier_; }

private:
    Reader reader_;
    double earliest_;
    double frontier_;
};

/// A trajectory-backed accessor whose frontier is the trajectory's own.
HistoryAccessor make_accessor(const Trajectory& traj);

struct PhaseDerivative {
    Matrix dX;
    Matrix dV;
};

/// Right-hand side of the model: dx_i = v_i and
/// dv_i = (1/(N-1)) sum_{j != i} psi(|x_i(t) - x_j(t - tau(t))|) (v_j(t - tau(t)) - v_i(t)).
PhaseDerivative rhs(double t, const PhaseState& state, const HistoryAccessor& hist, const ScenarioSpec& scenario);

struct IntegrateOptions {
    /// Abort when any speed exceeds blowup_factor times the largest initial
    /// speed; the dynamics cannot do that, so tripping it flags a solver bug.
    double blowup_factor = 1e3;
};

struct BlowUpError : std::runtime_error {
    BlowUpError(double last_good, const std::string& what) : std::runtime_error(what), last_good_time(last_good) {}
    double last_good_time;
};

/// Method-of-steps integrator: classical RK4 over a fixed mesh, delayed reads
/// answered from the trajectory's dense output. When a delayed read lands
/// inside the step being computed, the stage reads use a provisional cubic
/// for the current interval (the previous interval's Hermite extrapolated,
/// a Taylor predictor on the very first step) and the step is re-evaluated
/// once against the Hermite built from its own results.
class Integrator {
public:
    explicit Integrator(ScenarioSpec scenario, IntegrateOptions opts = {});

    const Trajectory& trajectory() const { return traj_; }
    bool done() const { return next_ >= plan_.size(); }

    /// Advance one planned mesh interval.
    void step();

    /// Advance the frontier to an explicit time (t1 - frontier <= tau_bar).
    void step_to(double t1);

    void run();
    Trajectory take() &&;

private:
    void advance(double t1);
    void read_delayed(double u, const struct ProvisionalSegment* prov, bool& used_provisional, Matrix& X,
                      Matrix& V) const;

    Trajectory traj_;
    std::vector<double> plan_;
    std::size_t next_ = 0;
    double blowup_threshold_ = 0.0;
    bool first_step_ = true;
};

/// Validate, integrate over [0, T], return the trajectory on [-tau_bar, T].
Trajectory integrate(const ScenarioSpec& scenario, IntegrateOptions opts = {});

/// The planned integration mesh for a scenario (times after 0, ending at T).
/// Uniform dt except with a constant lag, where each tau_bar window is
/// subdivided evenly so that derivative kinks on the lag lattice stay on
/// mesh points.
std::vector<double> integration_mesh(const ScenarioSpec& scenario);

}  // namespace flockcert
