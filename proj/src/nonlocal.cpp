#include "conicosc/nonlocal.hpp"

#include "conicosc/airy.hpp"
#include "conicosc/roots.hpp"
#include "conicosc/spectrum.hpp"

#include <algorithm>
#include <cmath>

namespace conicosc::nonlocal {

namespace {

constexpr double PI = 3.14159265358979323846;

double even_level(int n) { return spectrum::unperturbed_energy(2 * n); }

double asym_even_level(long n) {
    return 0.5 * std::pow(3.0 * PI * (4.0 * n - 1.0) / 8.0, 2.0 / 3.0);
}

// g(E) = 1/beta(E) = Ai'(u)/Ai(u) + c2/c1, u = -2E; strictly increasing in
// E between consecutive antisymmetric levels (spectral representation).
double g_of_energy(double E) {
    airy::ScaledAiry s = airy::eval_scaled(-2.0 * E);
    double c1 = airy::ai(0.0), c2 = -airy::aip(0.0);
    return s.aip / s.ai + c2 / c1;
}

} // namespace

double crossing_constant() { return -airy::ai(0.0) / airy::aip(0.0); }

double beta_of_energy(double E, double pole_tol) {
    double u = -2.0 * E;
    airy::ScaledAiry s = airy::eval_scaled(u);
    double c1 = airy::ai(0.0), c2 = -airy::aip(0.0);
    double den = c1 * s.aip + c2 * s.ai;
    double scale = std::abs(c1 * s.aip) + std::abs(c2 * s.ai);
    if (std::abs(den) < pole_tol * scale)
        throw PoleError("beta_of_energy: denominator zero (branch pole)");
    return c1 * s.ai / den;
}

SeriesValue inverse_beta_series(double E, int N) {
    if (N < 1) throw std::invalid_argument("inverse_beta_series: N must be >= 1");
    SeriesValue out;
    int head = std::min(N, 2000);
    for (int n = 1; n <= head; ++n) {
        double En = even_level(n);
        out.partial += 1.0 / (En * (En - E));
    }
    for (long n = head + 1; n <= N; ++n) {
        double En = asym_even_level(n);
        out.partial += 1.0 / (En * (En - E));
    }
    out.partial *= 0.5 * E;

    // tail: asymptotic levels to K, then integral remainder with the
    // geometric expansion 1/(En - E) = (1/En)(1 + E/En + (E/En)^2 + ...)
    long K = std::max<long>(8L * N, 400000L);
    double t = 0.0;
    for (long n = N + 1; n <= K; ++n) {
        double En = asym_even_level(n);
        t += 1.0 / (En * (En - E));
    }
    double a = 3.0 * PI / 2.0; // d(3 pi (4n-1)/8)/dn
    double w0 = 3.0 * PI * (4.0 * (K + 0.5) - 1.0) / 8.0;
    for (int p = 2; p <= 4; ++p) {
        // integral of E^(p-2) * En^-p dn, En = (1/2) w^(2/3)
        double q = 2.0 * p / 3.0;
        t += std::pow(E, p - 2) * std::pow(2.0, p) * std::pow(w0, 1.0 - q) / (a * (q - 1.0));
    }
    out.tail = 0.5 * E * t;
    return out;
}

EigenResult nonlocal_spectrum(const NonlocalParams& p, int k) {
    if (k < 1) throw std::invalid_argument("nonlocal_spectrum: k must be >= 1");
    if (!std::isfinite(p.beta)) throw std::invalid_argument("nonlocal_spectrum: beta not finite");

    EigenResult out;
    if (p.beta == 0.0) { // free operator
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

    // symmetric levels persist for every beta
    int modd = k / 2 + 3;
    for (int m = 1; m <= modd; ++m) {
        Level l;
        l.energy = spectrum::unperturbed_energy(2 * m - 1);
        l.parity = Parity::symmetric;
        l.invariant = true;
        out.push_back(l);
    }

    // beta-dependent antisymmetric branches: one root of g(E) = 1/beta per
    // interval between consecutive antisymmetric levels (plus the unbounded
    // lowest interval)
    double invb = 1.0 / p.beta;
    double margin = 1e-11;
    int nbr = k / 2 + 3;
    for (int m = 0; m <= nbr; ++m) {
        double lo, hi;
        if (m == 0) {
            hi = even_level(1) - margin;
            double off = 1.0;
            lo = hi - off;
            for (int it = 0; it < 80 && g_of_energy(lo) >= invb; ++it) {
                off *= 2.0;
                lo = hi - off;
            }
            if (g_of_energy(lo) >= invb)
                throw SolverError("nonlocal_spectrum: lowest bracket extension failed");
        } else {
            lo = even_level(m) + margin;
            hi = even_level(m + 1) - margin;
        }
        roots::RootOpts opts;
        opts.residual_tol = 1e-13 * (1.0 + std::abs(invb));
        Level l;
        l.energy =
            roots::solve_bracketed([&](double E) { return g_of_energy(E) - invb; }, lo, hi, opts);
        l.parity = Parity::antisymmetric;
        try {
            l.residual = std::abs(beta_of_energy(l.energy) - p.beta);
        } catch (const PoleError&) {
            l.residual = std::abs(g_of_energy(l.energy) - invb);
        }
        out.push_back(l);
    }

    // flag degenerate (crossing) pairs
    for (auto& a : out)
        for (auto& b : out)
            if (&a != &b && std::abs(a.energy - b.energy) < 1e-8) {
                a.crossing = true;
                b.crossing = true;
            }

    std::sort(out.begin(), out.end(),
              [](const Level& a, const Level& b) { return a.energy < b.energy; });
    if ((int)out.size() > k) out.resize(k);
    for (int i = 0; i < (int)out.size(); ++i) out[i].index = i + 1;
    return out;
}

DefectFunction defect_function(double E, int N, const Eigen::VectorXd& grid) {
    if (N < 1) throw std::invalid_argument("defect_function: N must be >= 1");
    for (int n = 1; n <= N; ++n) {
        double En = (n <= 2000) ? even_level(n) : asym_even_level(n);
        if (std::abs(En - E) < 1e-10)
            throw PoleError("defect_function: E too close to an included level");
        if (En > E + 1.0 && n > 4) break; // levels are increasing; no pole beyond
    }
    DefectFunction out;
    out.E = E;
    out.N = N;
    out.xs = grid;
    out.values = Eigen::VectorXd::Zero(grid.size());
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (int n = 1; n <= N; ++n) {
        double En = even_level(n);
        double w = inv_sqrt2 / (En - E);
        for (Eigen::Index i = 0; i < grid.size(); ++i)
            out.values[i] += w * spectrum::eigenfunction(2 * n, grid[i]);
    }
    return out;
}

double defect_slope_series(double E, int N) {
    double s = 0.0;
    for (int n = 1; n <= N; ++n) s += 1.0 / (even_level(n) - E);
    return 0.5 * s;
}

double defect_norm_sq(double E, int N) {
    double s = 0.0;
    for (int n = 1; n <= N; ++n) {
        double d = even_level(n) - E;
        s += 1.0 / (d * d);
    }
    return 0.5 * s;
}

CutoffCoupling cutoff_coupling(double beta, int N) {
    if (N < 1) throw std::invalid_argument("cutoff_coupling: N must be >= 1");
    if (beta == 0.0) throw std::invalid_argument("cutoff_coupling: beta must be nonzero");
    double s = 0.0;
    for (int n = 1; n <= N; ++n) s += 1.0 / ((n <= 2000) ? even_level(n) : asym_even_level(n));
    double den = 1.0 / beta + 0.5 * s;
    CutoffCoupling out;
    out.near_singular = std::abs(den) < 1e-6 * (std::abs(1.0 / beta) + 0.5 * s);
    out.mu = 1.0 / den;
    return out;
}

} // namespace conicosc::nonlocal
