#pragma once

#include <functional>

namespace flockcert {

/// Composite Simpson with panel doubling until two successive refinements
/// agree to rel_tol (relative) plus abs_floor. Intended for piecewise-smooth
/// integrands; kinks just cost extra doublings.
double simpson_adaptive(const std::function<double(double)>& f, double a, double b, double rel_tol = 1e-10,
                        double abs_floor = 0.0);

}  // namespace flockcert
