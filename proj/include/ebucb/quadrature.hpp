#ifndef EBUCB_QUADRATURE_HPP
#define EBUCB_QUADRATURE_HPP

#include <cstddef>
#include <functional>
#include <vector>

namespace ebucb {

struct QuadratureResult {
    double value = 0.0;
    double abs_error = 0.0;  // estimated
    bool converged = false;
    std::size_t intervals = 0;
};

/// Adaptive Gauss-Kronrod (7-15) integration of f on [a,b] to absolute
/// tolerance tol. Refines the interval with the largest error estimate
/// first; hard cap on the number of subintervals.
QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, double tol,
                           std::size_t max_intervals = 1000000);

/// Same, but splits the initial domain at the given interior points
/// (density jumps, sharp features).
QuadratureResult integrate_split(const std::function<double(double)>& f,
                                 double a, double b,
                                 const std::vector<double>& interior_points,
                                 double tol,
                                 std::size_t max_intervals = 1000000);

} // namespace ebucb

#endif
