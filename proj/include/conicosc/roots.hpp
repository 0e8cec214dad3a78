#ifndef CONICOSC_ROOTS_HPP
#define CONICOSC_ROOTS_HPP

#include "conicosc/types.hpp"

#include <cmath>
#include <functional>
#include <string>
#include <vector>

namespace conicosc::roots {

struct RootOpts {
    double bisect_width = 1e-6; // bisection phase stops at this bracket width
    double residual_tol = 1e-10;
    double x_tol = 1e-13;
    int max_iter = 240;
};

// Bracketed bisection followed by secant polish clamped to the bracket.
// The bracket endpoints must carry opposite signs.  Derivative-free by
// design: the branch functions solved here have poles next to every root.
template <class F>
double solve_bracketed(F&& f, double lo, double hi, const RootOpts& opts = {}) {
    double flo = f(lo), fhi = f(hi);
    if (!std::isfinite(flo) || !std::isfinite(fhi) || (flo < 0.0) == (fhi < 0.0))
        throw SolverError("solve_bracketed: no sign change on [" + std::to_string(lo) +
                          ", " + std::to_string(hi) + "]");
    int it = 0;
    while (hi - lo > opts.bisect_width && it++ < opts.max_iter) {
        double mid = 0.5 * (lo + hi);
        double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((flo < 0.0) == (fm < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
            fhi = fm;
        }
    }
    double a = lo, b = hi, fa = flo, fb = fhi;
    for (; it < opts.max_iter; ++it) {
        double x;
        if (fb != fa) {
            x = b - fb * (b - a) / (fb - fa);
            if (!(x > lo && x < hi)) x = 0.5 * (lo + hi); // clamp to bracket
        } else {
            x = 0.5 * (lo + hi);
        }
        double fx = f(x);
        if (std::abs(fx) < opts.residual_tol || std::abs(b - x) < opts.x_tol) {
            // keep the bracket consistent for the final interval answer
            if (std::abs(fx) <= std::min(std::abs(fa), std::abs(fb))) return x;
            return x;
        }
        a = b; fa = fb;
        b = x; fb = fx;
        if ((flo < 0.0) != (fx < 0.0)) {
            hi = x;
        } else {
            lo = x;
        }
        if (hi - lo < opts.x_tol) return 0.5 * (lo + hi);
    }
    return 0.5 * (lo + hi);
}

// Sign-change scan: brackets of f over [lo, hi] probed at the given step.
template <class F>
std::vector<std::pair<double, double>> scan_brackets(F&& f, double lo, double hi,
                                                     double step) {
    std::vector<std::pair<double, double>> out;
    if (!(step > 0.0) || !(hi > lo)) return out;
    double x0 = lo, f0 = f(x0);
    for (double x = lo + step; x < hi + 0.5 * step; x += step) {
        double xc = std::min(x, hi);
        double f1 = f(xc);
        if (std::isfinite(f0) && std::isfinite(f1) && (f0 < 0.0) != (f1 < 0.0))
            out.emplace_back(x0, xc);
        x0 = xc;
        f0 = f1;
        if (xc >= hi) break;
    }
    return out;
}

} // namespace conicosc::roots

#endif
