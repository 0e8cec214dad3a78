#ifndef CONICOSC_FD_ORACLE_HPP
#define CONICOSC_FD_ORACLE_HPP

#include "conicosc/types.hpp"

#include <Eigen/Core>

#include <vector>

namespace conicosc::fd {

// Finite-difference cross-check: (1/2)[-D2 + |x|] on [-L, L] with Dirichlet
// ends, lowest M eigenvalues by Sturm bisection on the symmetric
// tridiagonal matrix.
struct OracleSpec {
    double L = 20.0; // half-width; confinement decay wants L >= 15
    double h = 1e-3; // grid step, second-order stencil
    int M = 5;       // eigenvalues requested

    void validate() const;
};

std::vector<double> fd_unperturbed(const OracleSpec& spec);

// delta realized as the on-site potential -lambda/h at the grid node
// nearest to x0 (must lie within h/2 of a node).
std::vector<double> fd_delta(const OracleSpec& spec, double lambda, double x0);

// local delta-delta': two half-lines coupled through the matching matrix at
// x = 0 by ghost-point elimination (doubled interface node, first-order
// one-sided derivatives).  The eliminated system stays symmetric
// tridiagonal for every b != +-1.  b = 0 is the same discrete model as
// fd_delta(lambda = a, x0 = 0).
std::vector<double> fd_local_ddp(const OracleSpec& spec, double a, double b);

// eigenpair of the delta model (inverse iteration on the Sturm eigenvalue);
// used for discrete parity checks.
std::pair<double, Eigen::VectorXd> fd_delta_mode(const OracleSpec& spec, double lambda,
                                                 double x0, int index);

// grid nodes matching the eigenvector layout of fd_delta_mode
Eigen::VectorXd fd_grid(const OracleSpec& spec);

} // namespace conicosc::fd

#endif
