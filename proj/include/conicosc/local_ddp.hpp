#ifndef CONICOSC_LOCAL_DDP_HPP
#define CONICOSC_LOCAL_DDP_HPP

#include "conicosc/types.hpp"

namespace conicosc::localddp {

struct LocalDDPParams {
    double a = 0.0; // delta strength
    double b = 0.0; // local delta' strength; |b| = 1 is outside the model
};

// Reduced determinant condition:  Ai'(-2E)/Ai(-2E) + a/(b^2 + 1).
// Zeros are the perturbed symmetric levels; antisymmetric levels are the
// zeros of Ai(-2E) for every (a, b).  Depends on b only through b^2.
double local_eigen_equation(double E, double a, double b, double pole_tol = 1e-12);

// k lowest levels of H0 - a delta + b delta' (local delta').  Solves
// local_eigen_equation per branch; algebraically this matches the pure
// delta model at the origin with coupling a/(b^2 + 1), which the tests
// assert by independent solves.  a = 0 returns the free spectrum exactly.
EigenResult local_spectrum(const LocalDDPParams& p, int k);

} // namespace conicosc::localddp

#endif
