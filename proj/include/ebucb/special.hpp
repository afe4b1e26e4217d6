#ifndef EBUCB_SPECIAL_HPP
#define EBUCB_SPECIAL_HPP

namespace ebucb {

// log of the complete beta function B(a,b)
double log_beta(double a, double b);

// Regularized incomplete beta I_x(a,b), absolute error <= 1e-12 on [0,1].
double ibeta(double a, double b, double x);

// log I_x(a,b); stays accurate where I_x underflows a double.
double log_ibeta(double a, double b, double x);

} // namespace ebucb

#endif
