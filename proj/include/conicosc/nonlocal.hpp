#ifndef CONICOSC_NONLOCAL_HPP
#define CONICOSC_NONLOCAL_HPP

#include "conicosc/types.hpp"

#include <Eigen/Core>

namespace conicosc::nonlocal {

struct NonlocalParams {
    double beta = 0.0; // renormalized form factor; beta = 0 is the free operator
};

// Location of all level crossings: beta0 = -Ai(0)/Ai'(0).
double crossing_constant();

// Airy form of the bound-state function,
//   beta(E) = Ai(0) Ai(-2E) / ( Ai(0) Ai'(-2E) - Ai'(0) Ai(-2E) ).
// Zero exactly at the antisymmetric unperturbed levels, equal to beta0 at
// every symmetric one.  Throws PoleError at zeros of the denominator.
double beta_of_energy(double E, double pole_tol = 1e-12);

// Regularized series form (the renormalized denominator):
//   1/beta = (E/2) sum_n 1/(E_{2n} (E_{2n} - E)),
// truncated at N with the integral-comparison tail estimate attached.
SeriesValue inverse_beta_series(double E, int N);

// Spectrum of H_beta: every symmetric unperturbed level persists for all
// beta; the antisymmetric branch roots solve beta_of_energy(E) = beta on
// the intervals bracketed by consecutive antisymmetric unperturbed levels.
// Output marks invariant levels and flags degenerate (crossing) pairs.
EigenResult nonlocal_spectrum(const NonlocalParams& p, int k);

struct DefectFunction {
    double E = 0.0;
    int N = 0;
    Eigen::VectorXd xs;
    Eigen::VectorXd values;
};

// Truncated defect function  Psi(x;E) = 2^(-1/2) sum_{n<=N} psi_2n(x)/(E_2n - E)
// sampled on the grid.  Throws PoleError near any included E_2n.
DefectFunction defect_function(double E, int N, const Eigen::VectorXd& grid);

// Term-by-term series for Psi'(0): (1/2) sum_{n<=N} 1/(E_2n - E).  Grows
// like N^(1/3); its renormalized finite part (subtracting the E = 0 sum)
// converges to 1/beta at a bound state.
double defect_slope_series(double E, int N);

// Coefficient norm  ||Psi(E)||^2 = (1/2) sum_{n<=N} (E_2n - E)^(-2).
double defect_norm_sq(double E, int N);

struct CutoffCoupling {
    double mu = 0.0;
    bool near_singular = false; // denominator 1/beta + S_N passed close to zero
};

// Cutoff coupling mu_beta(N) = 1 / ( 1/beta + (1/2) sum_{n<=N} 1/E_2n ).
// Flows to zero as the cutoff is removed.
CutoffCoupling cutoff_coupling(double beta, int N);

} // namespace conicosc::nonlocal

#endif
