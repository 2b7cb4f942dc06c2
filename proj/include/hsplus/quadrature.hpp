#pragma once

// Adaptive Gauss-Kronrod 7/15 quadrature with a worst-panel-first refinement
// queue. Endpoint singularities are never evaluated (all nodes are interior),
// so integrable log/power endpoints work when the caller supplies knots that
// approach them geometrically (see log_knots).

#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace hsplus {

class ToleranceNotMet : public std::runtime_error {
public:
    ToleranceNotMet(const std::string& what, double value, double error)
        : std::runtime_error(what), value_(value), error_(error) {}
    double value() const { return value_; }
    double error() const { return error_; }
private:
    double value_;
    double error_;
};

struct QuadOptions {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    int max_panels = 4000;
};

struct QuadResult {
    double value = 0.0;
    double abs_error = 0.0;
    int panels = 0;
};

using Integrand = std::function<double(double)>;

// Adaptive integration of f over [a, b].
QuadResult integrate(const Integrand& f, double a, double b, const QuadOptions& opt = {});

// Adaptive integration over consecutive panels [knots[0], knots[1], ...];
// each initial panel enters the shared refinement queue.
QuadResult integrate_segments(const Integrand& f, std::span<const double> knots,
                              const QuadOptions& opt = {});

// Geometric knot ladder a * ratio^k descending from b toward a (a may be 0):
// {a, a + eps_min, ..., b} suitable for log-type endpoint singularities at a.
std::vector<double> log_knots(double a, double b, double eps_min = 1e-14, double ratio = 10.0);

}  // namespace hsplus
