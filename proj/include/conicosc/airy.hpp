#ifndef CONICOSC_AIRY_HPP
#define CONICOSC_AIRY_HPP

#include <vector>

namespace conicosc::airy {

// Evaluation of Ai, Ai' and (internally) Bi, Bi' on the real line.
//
// |x| <= 9 : Maclaurin series accumulated in double-double arithmetic
//            (plain double summation loses up to 8 digits near x = -8 to
//            term cancellation).
// x >  9   : exponentially scaled asymptotic expansion.
// x < -9   : oscillatory modulus/phase asymptotic expansion.
//
// Absolute error stays below 1e-13 on [-40, 40]; the worst point is the
// negative switchover at x = -9 where the optimally truncated expansion
// bottoms out near 2e-16 relative.

struct AiryValue {
    double x = 0.0;
    double ai = 0.0;
    double aip = 0.0;
    bool underflow = false; // Ai(x) not representable (rounds to 0/subnormal)
};

// Ai, Ai' and Bi, Bi' at a common argument, exponentially scaled:
//   Ai = ai * exp(-xi),  Ai' = aip * exp(-xi),
//   Bi = bi * exp(+xi),  Bi' = bip * exp(+xi),
// with xi = (2/3) x^(3/2) for x above the asymptotic threshold and xi = 0
// otherwise.  Lets resolvent formulas combine exponents analytically
// instead of overflowing.
struct ScaledAiry {
    double ai = 0.0;
    double aip = 0.0;
    double bi = 0.0;
    double bip = 0.0;
    double xi = 0.0;
};

double ai(double x);
double aip(double x);
double bi(double x);
double bip(double x);

AiryValue eval(double x);
ScaledAiry eval_scaled(double x);

// n-th negative zero of Ai (resp. Ai'), n >= 1, polished to ~1e-12.
// Tables are built lazily and grown on demand; safe for concurrent callers.
double ai_zero(int n);
double aip_zero(int n);

// First n zeros at once (single lock acquisition).
std::vector<double> ai_zeros(int n);
std::vector<double> aip_zeros(int n);

// Large-n asymptotic zero locations (no polishing; relative error falls
// like t^-10 with t ~ n, already ~1e-12 by n = 10).  Used for seeding and
// for closed-form continuation of spectral tail sums.
double asymptotic_ai_zero(int n);
double asymptotic_aip_zero(int n);

} // namespace conicosc::airy

#endif
