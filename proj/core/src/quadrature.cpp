#include "flockcert/quadrature.hpp"

#include <cmath>
#include <cstddef>
#include <vector>

namespace flockcert {

double simpson_adaptive(const std::function<double(double)>& f, double a, double b, double rel_tol,
                        double abs_floor) {
    if (a == b) return 0.0;

    // composite Simpson over n panels, reusing previously computed ordinates
    // would complicate the bookkeeping for little gain at these sizes
    const auto simpson = [&](std::size_t panels) {
        const double h = (b - a) / static_cast<double>(2 * panels);
        double odd = 0.0, even = 0.0;
        for (std::size_t k = 1; k < 2 * panels; ++k) {
            const double x = a + h * static_cast<double>(k);
            if (k % 2 == 1)
                odd += f(x);
            else
                even += f(x);
        }
        return (h / 3.0) * (f(a) + f(b) + 4.0 * odd + 2.0 * even);
    };

    std::size_t panels = 8;
    double prev = simpson(panels);
    for (;;) {
        panels *= 2;
        const double cur = simpson(panels);
        if (std::abs(cur - prev) <= rel_tol * std::abs(cur) + abs_floor) return cur;
        if (panels >= (1u << 22)) return cur;  // refinement exhausted
        prev = cur;
    }
}

}  // namespace flockcert
