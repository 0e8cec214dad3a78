#include "conicosc/delta.hpp"

#include "conicosc/airy.hpp"
#include "conicosc/roots.hpp"
#include "conicosc/spectrum.hpp"

#include <algorithm>
#include <cmath>

namespace conicosc::delta {

namespace {

// distance from t to the nearest Ai zero
double dist_to_ai_zero(double t) {
    if (t > -1.0) return t - airy::ai_zero(1);
    int need = (int)((std::pow(-t + 1.0, 1.5) * 8.0 / (3.0 * M_PI) + 1.0) / 4.0) + 2;
    auto az = airy::ai_zeros(std::max(need, 1));
    auto it = std::lower_bound(az.begin(), az.end(), t, std::greater<double>());
    double d = HUGE_VAL;
    if (it != az.end()) d = std::min(d, std::abs(*it - t));
    if (it != az.begin()) d = std::min(d, std::abs(*(it - 1) - t));
    return d;
}

EigenResult unperturbed_levels(int k) {
    EigenResult out;
    for (int n = 1; n <= k; ++n) {
        Level l;
        l.index = n;
        l.energy = spectrum::unperturbed_energy(n);
        l.parity = spectrum::parity_of_index(n);
        l.residual = 0.0;
        l.invariant = true;
        out.push_back(l);
    }
    return out;
}

void sort_and_index(EigenResult& levels, int k) {
    std::sort(levels.begin(), levels.end(),
              [](const Level& a, const Level& b) { return a.energy < b.energy; });
    if ((int)levels.size() > k) levels.resize(k);
    for (int i = 0; i < (int)levels.size(); ++i) levels[i].index = i + 1;
}

// G0(0,0;E) = -Ai(-2E)/Ai'(-2E), scaled ratio (safe arbitrarily deep)
double diag_kernel_origin(double E) {
    airy::ScaledAiry s = airy::eval_scaled(-2.0 * E);
    return -s.ai / s.aip;
}

// one root of G(E) = 1/lambda on (lo, hi), G increasing across the bracket
template <class G>
double solve_gap(G&& g, double lo, double hi, double inv_lambda) {
    roots::RootOpts opts;
    opts.residual_tol = 1e-13 * (1.0 + std::abs(inv_lambda));
    auto f = [&](double E) { return g(E) - inv_lambda; };
    return roots::solve_bracketed(f, lo, hi, opts);
}

// extend the lower end of the unbounded ground bracket until sign change
template <class G>
double extend_ground(G&& g, double hi, double inv_lambda) {
    double off = 1.0;
    double lo = hi - off;
    for (int it = 0; it < 80 && g(lo) >= inv_lambda; ++it) {
        off *= 2.0;
        lo = hi - off;
    }
    if (g(lo) >= inv_lambda)
        throw SolverError("delta_spectrum: ground bracket extension failed");
    return lo;
}

EigenResult spectrum_origin(double lambda, int k) {
    EigenResult out;
    int gaps = k / 2 + 3;
    auto g = [](double E) { return diag_kernel_origin(E); };
    double inv = 1.0 / lambda;
    // antisymmetric levels are untouched: zeros of Ai(-2E)
    for (int m = 1; 2 * m <= k + 2; ++m) {
        Level l;
        l.energy = spectrum::unperturbed_energy(2 * m);
        l.parity = Parity::antisymmetric;
        l.invariant = true;
        out.push_back(l);
    }
    // symmetric roots: one per gap between consecutive odd levels
    std::vector<std::pair<double, double>> brackets;
    double margin = 1e-11;
    if (lambda > 0.0) {
        double hi = spectrum::unperturbed_energy(1) - margin;
        brackets.emplace_back(extend_ground(g, hi, inv), hi);
    }
    for (int m = 1; m <= gaps; ++m) {
        brackets.emplace_back(spectrum::unperturbed_energy(2 * m - 1) + margin,
                              spectrum::unperturbed_energy(2 * m + 1) - margin);
    }
    for (auto& [lo, hi] : brackets) {
        if ((int)out.size() >= k + 3) break;
        Level l;
        l.energy = solve_gap(g, lo, hi, inv);
        l.parity = Parity::symmetric;
        l.residual = std::abs(1.0 / g(l.energy) - lambda);
        out.push_back(l);
    }
    sort_and_index(out, k);
    return out;
}

} // namespace

double lambda_of_energy(double E, double x0, double pole_tol) {
    double u = -2.0 * E;
    if (x0 == 0.0) {
        if (0.5 * dist_to_ai_zero(u) < pole_tol)
            throw PoleError("lambda_of_energy: E at a pole of the branch function");
        airy::ScaledAiry s = airy::eval_scaled(u);
        return -s.aip / s.ai;
    }
    double dp = std::min(dist_to_ai_zero(x0 + u), dist_to_ai_zero(-x0 + u));
    if (0.5 * dp < pole_tol)
        throw PoleError("lambda_of_energy: E at a pole of the branch function");
    airy::ScaledAiry su = airy::eval_scaled(u);
    airy::ScaledAiry sp = airy::eval_scaled(x0 + u);
    airy::ScaledAiry sq = airy::eval_scaled(-x0 + u);
    double ex = sp.xi + sq.xi - 2.0 * su.xi; // >= 0, bounded for desk x0
    return -(su.ai * su.aip) / (sp.ai * sq.ai) * std::exp(ex);
}

EigenResult delta_spectrum(const DeltaParams& p, int k) {
    if (k < 1) throw std::invalid_argument("delta_spectrum: k must be >= 1");
    if (!std::isfinite(p.lambda) || !std::isfinite(p.x0))
        throw std::invalid_argument("delta_spectrum: parameters must be finite");
    if (p.lambda == 0.0) return unperturbed_levels(k);
    if (p.x0 == 0.0) return spectrum_origin(p.lambda, k);

    double x0 = p.x0;
    double inv = 1.0 / p.lambda;
    auto g = [x0](double E) { return spectrum::green_function(x0, x0, E); };

    // strong poles of G: levels whose eigenfunction does not vanish at x0
    int npoles = k + 6;
    std::vector<double> poles;
    EigenResult out;
    for (int n = 1; n <= npoles; ++n) {
        double En = spectrum::unperturbed_energy(n);
        double w = spectrum::eigenfunction(n, x0);
        if (w * w >= 1e-12) {
            poles.push_back(En);
        } else {
            Level l; // impurity sits on a node; level survives unchanged
            l.energy = En;
            l.parity = spectrum::parity_of_index(n);
            l.invariant = true;
            out.push_back(l);
        }
    }
    double margin = 1e-11;
    std::vector<std::pair<double, double>> brackets;
    if (p.lambda > 0.0)
        brackets.emplace_back(extend_ground(g, poles.front() - margin, inv),
                              poles.front() - margin);
    for (size_t i = 0; i + 1 < poles.size(); ++i)
        brackets.emplace_back(poles[i] + margin, poles[i + 1] - margin);

    for (auto& [lo, hi] : brackets) {
        if ((int)out.size() >= k + 3) break;
        double flo = g(lo) - inv, fhi = g(hi) - inv;
        if (!std::isfinite(flo) || !std::isfinite(fhi) || (flo < 0.0) == (fhi < 0.0))
            continue; // no root in this gap (possible next to a near-node level)
        Level l;
        l.energy = solve_gap(g, lo, hi, inv);
        l.parity = Parity::none;
        l.residual = std::abs(1.0 / g(l.energy) - p.lambda);
        out.push_back(l);
    }
    if ((int)out.size() < k)
        throw SolverError("delta_spectrum: fewer roots than requested levels");
    sort_and_index(out, k);
    return out;
}

EigenResult airy_branch_spectrum(const DeltaParams& p, int k) {
    if (k < 1) throw std::invalid_argument("airy_branch_spectrum: k must be >= 1");
    if (p.lambda == 0.0) return unperturbed_levels(k);
    if (p.x0 == 0.0) return spectrum_origin(p.lambda, k);

    double x0 = p.x0, lt = p.lambda;
    auto lam = [x0](double E) { return lambda_of_energy(E, x0, 0.0); };

    // pole ladders (+-x0 - a_j)/2, merged and deduplicated
    int nj = k + 4;
    auto az = airy::ai_zeros(nj);
    std::vector<double> poles;
    for (int j = 0; j < nj; ++j) {
        poles.push_back(0.5 * (x0 - az[j]));
        poles.push_back(0.5 * (-x0 - az[j]));
    }
    std::sort(poles.begin(), poles.end());
    poles.erase(std::unique(poles.begin(), poles.end(),
                            [](double a, double b) { return std::abs(a - b) < 1e-11; }),
                poles.end());

    EigenResult out;
    auto solve_branch = [&](double lo, double hi) {
        // probe inward until both endpoint signs are usable
        double w = hi - lo;
        double flo = 0.0, fhi = 0.0, plo = 0.0, phi = 0.0;
        bool ok = false;
        for (double t = 1e-3; t >= 1e-12; t *= 0.1) {
            plo = lo + t * w;
            phi = hi - t * w;
            flo = lam(plo) - lt;
            fhi = lam(phi) - lt;
            if (std::isfinite(flo) && std::isfinite(fhi) && (flo < 0.0) != (fhi < 0.0)) {
                ok = true;
                break;
            }
        }
        if (!ok) {
            // no sign change near the poles: scan the interior
            auto f = [&](double E) { return lam(E) - lt; };
            auto br = roots::scan_brackets(f, lo + 1e-6 * w, hi - 1e-6 * w, w / 64.0);
            if (br.empty()) return false;
            plo = br.front().first;
            phi = br.front().second;
        }
        roots::RootOpts opts;
        opts.residual_tol = 1e-12 * (1.0 + std::abs(lt));
        Level l;
        l.energy = roots::solve_bracketed([&](double E) { return lam(E) - lt; }, plo, phi, opts);
        l.parity = Parity::none;
        l.residual = std::abs(lam(l.energy) - lt);
        out.push_back(l);
        return true;
    };

    // unbounded lowest branch: lambda -> +inf as E -> -inf
    {
        double hi = poles.front();
        double off = 1.0;
        double lo = hi - off;
        for (int it = 0; it < 80 && lam(lo) - lt <= 0.0; ++it) {
            off *= 2.0;
            lo = hi - off;
        }
        if (lam(lo) - lt > 0.0) {
            double w = hi - lo;
            double phi = hi;
            double fhi = 0.0;
            for (double t = 1e-3; t >= 1e-12; t *= 0.1) {
                phi = hi - t * w;
                fhi = lam(phi) - lt;
                if (std::isfinite(fhi) && fhi < 0.0) break;
            }
            if (fhi < 0.0) {
                roots::RootOpts opts;
                opts.residual_tol = 1e-12 * (1.0 + std::abs(lt));
                Level l;
                l.energy =
                    roots::solve_bracketed([&](double E) { return lam(E) - lt; }, lo, phi, opts);
                l.parity = Parity::none;
                l.residual = std::abs(lam(l.energy) - lt);
                out.push_back(l);
            }
        }
    }
    for (size_t i = 0; i + 1 < poles.size() && (int)out.size() < k + 2; ++i)
        solve_branch(poles[i], poles[i + 1]);

    if ((int)out.size() < k)
        throw SolverError("airy_branch_spectrum: fewer roots than requested levels");
    sort_and_index(out, k);
    return out;
}

namespace {

// Ai(-2E) Ai'(-2E) and Ai(x0-2E) Ai(-x0-2E) for the cross-multiplied forms
double num_product(double E) {
    double u = -2.0 * E;
    airy::ScaledAiry s = airy::eval_scaled(u);
    return s.ai * s.aip * std::exp(-2.0 * s.xi);
}

double den_product(double E, double x0) {
    double u = -2.0 * E;
    airy::ScaledAiry sp = airy::eval_scaled(x0 + u);
    airy::ScaledAiry sq = airy::eval_scaled(-x0 + u);
    return sp.ai * sq.ai * std::exp(-sp.xi - sq.xi);
}

} // namespace

std::vector<InverseSolution> inverse_design(double E1, double E2, double x0_lo, double x0_hi,
                                            int max_solutions, double scan_step) {
    if (!(E1 < E2)) throw std::invalid_argument("inverse_design: requires E1 < E2");
    if (!(x0_hi > x0_lo)) throw std::invalid_argument("inverse_design: empty x0 interval");
    if (max_solutions < 1) throw std::invalid_argument("inverse_design: max_solutions >= 1");

    double A1 = num_product(E1), A2 = num_product(E2);
    // ratio condition, cross-multiplied to remove poles in x0
    auto F = [&](double x0) { return A1 * den_product(E2, x0) - A2 * den_product(E1, x0); };

    std::vector<InverseSolution> out;
    auto brackets = roots::scan_brackets(F, x0_lo, x0_hi, scan_step);
    for (auto& [lo, hi] : brackets) {
        if ((int)out.size() >= max_solutions) break;
        roots::RootOpts opts;
        opts.residual_tol = 1e-14 * (std::abs(A1) + std::abs(A2));
        double x0 = roots::solve_bracketed(F, lo, hi, opts);
        double d1 = den_product(E1, x0), d2 = den_product(E2, x0);
        if (d1 == 0.0 || d2 == 0.0) continue;
        double l1 = -A1 / d1, l2 = -A2 / d2;
        if (std::abs(l1 - l2) > 1e-6 * (1.0 + std::abs(l1))) continue; // spurious
        out.push_back({x0, l1, std::abs(F(x0))});
    }
    return out;
}

std::vector<double> compatible_pairs(double x0, double E1, double E2_lo, double E2_hi,
                                     double scan_step) {
    if (!(E2_hi > E2_lo)) return {};
    double l1 = lambda_of_energy(E1, x0);
    // lambda(E2) = lambda(E1), cross-multiplied
    auto H = [&](double E2) { return -num_product(E2) - l1 * den_product(E2, x0); };

    std::vector<double> out;
    auto brackets = roots::scan_brackets(H, E2_lo, E2_hi, scan_step);
    for (auto& [lo, hi] : brackets) {
        roots::RootOpts opts;
        opts.residual_tol = 1e-14;
        double E2 = roots::solve_bracketed(H, lo, hi, opts);
        if (std::abs(E2 - E1) < 1e-8) continue; // E1 trivially solves the condition
        double l2;
        try {
            l2 = lambda_of_energy(E2, x0);
        } catch (const PoleError&) {
            continue;
        }
        if (std::abs(l2 - l1) > 1e-6 * (1.0 + std::abs(l1))) continue;
        out.push_back(E2);
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace conicosc::delta
