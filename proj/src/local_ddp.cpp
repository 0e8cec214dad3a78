#include "conicosc/local_ddp.hpp"

#include "conicosc/airy.hpp"
#include "conicosc/roots.hpp"
#include "conicosc/spectrum.hpp"

#include <algorithm>
#include <cmath>

namespace conicosc::localddp {

namespace {

void check_b(double b) {
    if (std::abs(std::abs(b) - 1.0) < 1e-12)
        throw std::invalid_argument("local ddp: |b| = 1 degenerates the matching matrix");
}

// h(E) = Ai'(-2E)/Ai(-2E): increasing in E between consecutive
// antisymmetric levels, spanning all of R on each such interval.
double h_of_energy(double E) {
    airy::ScaledAiry s = airy::eval_scaled(-2.0 * E);
    return s.aip / s.ai;
}

} // namespace

double local_eigen_equation(double E, double a, double b, double pole_tol) {
    check_b(b);
    if (!std::isfinite(a)) throw std::invalid_argument("local ddp: a must be finite");
    double u = -2.0 * E;
    // poles at Ai(-2E) = 0, i.e. at the antisymmetric levels
    if (u < -0.5) {
        int need = (int)((std::pow(-u + 1.0, 1.5) * 8.0 / (3.0 * M_PI) + 1.0) / 4.0) + 2;
        auto az = airy::ai_zeros(need);
        for (double z : az)
            if (std::abs(z - u) < 2.0 * pole_tol)
                throw PoleError("local_eigen_equation: E at an antisymmetric level");
    }
    return h_of_energy(E) + a / (b * b + 1.0);
}

EigenResult local_spectrum(const LocalDDPParams& p, int k) {
    check_b(p.b);
    if (k < 1) throw std::invalid_argument("local_spectrum: k must be >= 1");
    if (!std::isfinite(p.a)) throw std::invalid_argument("local_spectrum: a must be finite");

    EigenResult out;
    if (p.a == 0.0) { // pure local delta' leaves every level untouched
        for (int n = 1; n <= k; ++n) {
            Level l;
            l.index = n;
            l.energy = spectrum::unperturbed_energy(n);
            l.parity = spectrum::parity_of_index(n);
            l.invariant = true;
            out.push_back(l);
        }
        return out;
    }

    double target = -p.a / (p.b * p.b + 1.0); // h(E) = target
    int nb = k / 2 + 3;
    for (int m = 1; 2 * m <= k + 2; ++m) {
        Level l;
        l.energy = spectrum::unperturbed_energy(2 * m);
        l.parity = Parity::antisymmetric;
        l.invariant = true;
        out.push_back(l);
    }
    double margin = 1e-11;
    for (int m = 0; m <= nb && (int)out.size() < k + 3; ++m) {
        double lo, hi;
        if (m == 0) {
            hi = spectrum::unperturbed_energy(2) - margin;
            double off = 1.0;
            lo = hi - off;
            for (int it = 0; it < 80 && h_of_energy(lo) >= target; ++it) {
                off *= 2.0;
                lo = hi - off;
            }
            if (h_of_energy(lo) >= target)
                throw SolverError("local_spectrum: lowest bracket extension failed");
        } else {
            lo = spectrum::unperturbed_energy(2 * m) + margin;
            hi = spectrum::unperturbed_energy(2 * m + 2) - margin;
        }
        roots::RootOpts opts;
        opts.residual_tol = 1e-13 * (1.0 + std::abs(target));
        Level l;
        l.energy =
            roots::solve_bracketed([&](double E) { return h_of_energy(E) - target; }, lo, hi, opts);
        l.parity = Parity::symmetric;
        l.residual = std::abs(h_of_energy(l.energy) - target);
        out.push_back(l);
    }
    std::sort(out.begin(), out.end(),
              [](const Level& a, const Level& b) { return a.energy < b.energy; });
    if ((int)out.size() > k) out.resize(k);
    for (int i = 0; i < (int)out.size(); ++i) out[i].index = i + 1;
    return out;
}

} // namespace conicosc::localddp
