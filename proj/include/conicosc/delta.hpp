#ifndef CONICOSC_DELTA_HPP
#define CONICOSC_DELTA_HPP

#include "conicosc/types.hpp"

#include <vector>

namespace conicosc::delta {

struct DeltaParams {
    double lambda = 0.0; // coupling, positive = attractive
    double x0 = 0.0;     // impurity position
};

// Airy-product branch function
//   lambda(E) = -Ai(-2E) Ai'(-2E) / ( Ai(x0-2E) Ai(-x0-2E) ),
// the quantity plotted branch-by-branch in the reference figures; at
// x0 = 0 it reduces to -Ai'(-2E)/Ai(-2E) and coincides with
// 1/G0(0,0;E).  For x0 != 0 the product form is the kernel formula
// evaluated outside its domain of validity (see green_function), so the
// branch construction built on it drifts from the spectrum of
// H0 - lambda delta(x - x0); the exact spectrum is delta_spectrum below.
double lambda_of_energy(double E, double x0, double pole_tol = 1e-12);

// Exact spectrum of H0 - lambda delta(x - x0): poles of the rank-one
// perturbed resolvent, i.e. roots of G0(x0,x0;E) = 1/lambda bracketed by
// consecutive unperturbed levels (G0 is strictly increasing between its
// poles, so every bracket holds at most one root).  At x0 = 0 the
// antisymmetric levels are returned unchanged as zeros of Ai(-2E).
EigenResult delta_spectrum(const DeltaParams& p, int k);

// Spectrum of the branch equation lambda_of_energy(E) = lambda with
// brackets at the zeros of Ai(+-x0 - 2E).  Identical to delta_spectrum
// for x0 = 0; for x0 != 0 it reproduces the published branch curves.
EigenResult airy_branch_spectrum(const DeltaParams& p, int k);

struct InverseSolution {
    double x0 = 0.0;
    double lambda = 0.0;
    double ratio_residual = 0.0; // cross-multiplied ratio-condition residual
};

// Design problem: all impurity positions in [x0_lo, x0_hi] for which some
// coupling reproduces both energies, paired with that coupling.  Ratio
// condition scanned for sign changes at scan_step and refined.
std::vector<InverseSolution> inverse_design(double E1, double E2, double x0_lo,
                                            double x0_hi, int max_solutions = 16,
                                            double scan_step = 1e-3);

// All E2 in [E2_lo, E2_hi] compatible with (x0, E1): the other eigenvalues
// of the coupling that produces E1 at this x0.  E2 values within 1e-8 of
// E1 itself are dropped.
std::vector<double> compatible_pairs(double x0, double E1, double E2_lo, double E2_hi,
                                     double scan_step = 1e-3);

} // namespace conicosc::delta

#endif
