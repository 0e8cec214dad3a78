#ifndef CONICOSC_SPECTRUM_HPP
#define CONICOSC_SPECTRUM_HPP

#include "conicosc/types.hpp"

namespace conicosc::spectrum {

// Unperturbed conic-oscillator levels: E_{2m-1} = -a'_m / 2 (symmetric),
// E_{2m} = -a_m / 2 (antisymmetric), strictly increasing by interlacing.
double unperturbed_energy(int n);
Parity parity_of_index(int n);

// Large-n level location from the asymptotic zero formulas; one formula
// covers both parities: E(n) ~ (1/2) (3 pi (2n-1)/8)^(2/3).
double asymptotic_energy(int n);

// L2-normalized eigenfunction, sign convention psi(0) > 0 for symmetric
// levels and psi'(0) > 0 for antisymmetric ones.
double eigenfunction(int n, double x);

// Exact resolvent kernel (H0 - E)^{-1}(x, y).  For x, y on opposite sides
// of the kink this is the Airy product of the Wronskian formula; for x, y
// on the same side the left-decaying solution is continued through the
// origin (it picks up a Bi component there).  Throws PoleError within
// pole_tol of an unperturbed level.
double green_function(double x, double y, double E, double pole_tol = 1e-12);

// Distance from E to the nearest unperturbed level.
double nearest_level_distance(double E);

// N-term eigen-expansion of the kernel plus the algebraic tail estimate
// (asymptotic-level continuation and a semiclassical closure of the
// remaining integral; raw truncation decays only like N^(-1/3)).
SeriesValue green_series(double x, double y, double E, int N);

// | sum_{n<=N} psi_n(x0)^2/(E_n - E) [tail-corrected] - G(x0,x0;E) |.
// The tail correction is part of the series oracle's contract; the raw
// partial sum alone misses by ~N^(-1/3).
double diagonal_norm_identity_residual(double x0, double E, int N);

enum class LevelFilter { all, odd, even };

// Partial Schatten-type sum  sum_{n<=N} E_n^(-gamma)  (optionally odd/even
// indices only), plus the tail estimate for the dropped terms.
double schatten_partial_sum(double gamma, int N, LevelFilter filter = LevelFilter::all);
double schatten_tail_estimate(double gamma, int N, LevelFilter filter = LevelFilter::all);

} // namespace conicosc::spectrum

#endif
