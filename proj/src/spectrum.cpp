#include "conicosc/spectrum.hpp"

#include "conicosc/airy.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace conicosc::spectrum {

namespace {

constexpr double PI = 3.14159265358979323846;

double sgn(double v) { return v < 0.0 ? -1.0 : (v > 0.0 ? 1.0 : 0.0); }

// index of the zero table entry nearest to u in a decreasing table
double nearest_in_table(const std::vector<double>& tab, double u) {
    auto it = std::lower_bound(tab.begin(), tab.end(), u, std::greater<double>());
    double best = HUGE_VAL;
    if (it != tab.end()) best = std::min(best, std::abs(*it - u));
    if (it != tab.begin()) best = std::min(best, std::abs(*(it - 1) - u));
    return best;
}

// levels needed to cover spectral parameter E (plus margin)
int zeros_needed(double E) {
    if (E < 0.5) return 2;
    double t = std::pow(2.0 * E + 2.0, 1.5) * 8.0 / (3.0 * PI);
    return (int)((t + 3.0) / 4.0) + 2;
}

// adaptive Simpson
template <class F>
double simpson_rec(F& f, double a, double m, double b, double fa, double fm, double fb,
                   double whole, double tol, int depth) {
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return simpson_rec(f, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_rec(f, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

template <class F>
double adaptive_simpson(F f, double a, double b, double tol, int depth = 48) {
    double m = 0.5 * (a + b);
    double fa = f(a), fm = f(m), fb = f(b);
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_rec(f, a, m, b, fa, fm, fb, whole, tol, depth);
}

// classical action S = int_y^x sqrt(2 eps - |t|) dt  (y <= x)
double action(double x, double y, double eps) {
    auto F = [eps](double t) { return std::pow(2.0 * eps - t, 1.5); }; // antiderivative * -3/2
    if (y >= 0.0) return (2.0 / 3.0) * (F(y) - F(x));
    if (x <= 0.0) return (2.0 / 3.0) * (F(-x) - F(-y));
    return (2.0 / 3.0) * (2.0 * F(0.0) - F(x) - F(-y));
}

// travel time tau = dS/deps
double travel_time(double x, double y, double eps) {
    auto r = [eps](double t) { return std::sqrt(2.0 * eps - t); };
    if (y >= 0.0) return 2.0 * (r(y) - r(x));
    if (x <= 0.0) return 2.0 * (r(-x) - r(-y));
    return 2.0 * (2.0 * r(0.0) - r(x) - r(-y));
}

// Semiclassical closure of  sum_{n>M} psi_n(x) psi_n(y) / (E_n - E0):
//   (1/pi) int_{E*}^inf cos S(x,y;eps) / (sqrt(vx vy) (eps - E0)) deps,
// E* at the Euler-Maclaurin midpoint of level M.
double tail_closure(double x, double y, double E0, int levels_used) {
    if (x < y) std::swap(x, y);
    double estar = 0.5 * std::pow(3.0 * PI * levels_used / 4.0, 2.0 / 3.0);

    auto speed = [](double t, double eps) { return std::sqrt(2.0 * eps - std::abs(t)); };

    if (x == y) {
        // closed form
        double V = 0.5 * std::abs(x);
        double wstar = std::sqrt(2.0 * estar - 2.0 * V);
        if (V > E0) {
            double q = std::sqrt(2.0 * (V - E0));
            return (2.0 / (PI * q)) * (0.5 * PI - std::atan(wstar / q));
        }
        double mu = std::sqrt(2.0 * (E0 - V));
        return (1.0 / (PI * mu)) * std::log((wstar + mu) / (wstar - mu));
    }

    auto integrand = [&](double eps) {
        return std::cos(action(x, y, eps)) /
               (std::sqrt(speed(x, eps) * speed(y, eps)) * (eps - E0)) / PI;
    };
    // push the endpoint out until the integration-by-parts bound is small
    double efar = 4.0 * estar;
    auto drop_bound = [&](double eps) {
        double tau = travel_time(x, y, eps);
        return 3.0 / (PI * std::max(tau, 1e-300) *
                      std::sqrt(speed(x, eps) * speed(y, eps)) * (eps - E0));
    };
    for (int it = 0; it < 12 && drop_bound(efar) > 2e-5; ++it) efar *= 2.0;
    return adaptive_simpson(integrand, estar, efar, 2e-7);
}

} // namespace

double unperturbed_energy(int n) {
    if (n < 1) throw std::invalid_argument("unperturbed_energy: n must be >= 1");
    return (n % 2 == 1) ? -0.5 * airy::aip_zero((n + 1) / 2) : -0.5 * airy::ai_zero(n / 2);
}

Parity parity_of_index(int n) {
    if (n < 1) throw std::invalid_argument("parity_of_index: n must be >= 1");
    return (n % 2 == 1) ? Parity::symmetric : Parity::antisymmetric;
}

double asymptotic_energy(int n) {
    return 0.5 * std::pow(3.0 * PI * (2.0 * n - 1.0) / 8.0, 2.0 / 3.0);
}

double eigenfunction(int n, double x) {
    if (n < 1) throw std::invalid_argument("eigenfunction: n must be >= 1");
    if (n % 2 == 1) {
        double a = airy::aip_zero((n + 1) / 2);
        double va = airy::ai(a);
        return sgn(va) * airy::ai(std::abs(x) + a) / (std::sqrt(-2.0 * a) * std::abs(va));
    }
    double a = airy::ai_zero(n / 2);
    double da = airy::aip(a);
    return sgn(x) * sgn(da) * airy::ai(std::abs(x) + a) / (std::sqrt(2.0) * std::abs(da));
}

double nearest_level_distance(double E) {
    double u = -2.0 * E;
    int need = zeros_needed(E);
    auto az = airy::ai_zeros(need);
    auto apz = airy::aip_zeros(need);
    double d = std::min(nearest_in_table(az, u), nearest_in_table(apz, u));
    return 0.5 * d;
}

double green_function(double x, double y, double E, double pole_tol) {
    if (nearest_level_distance(E) < pole_tol)
        throw PoleError("green_function: E within pole tolerance of an unperturbed level");

    if (x < y) std::swap(x, y);
    if (x <= 0.0 || (y < 0.0 && -y > x)) { // mirror so the upper point is on the right
        double nx = -y, ny = -x;
        x = nx;
        y = ny;
    }
    double u = -2.0 * E;
    airy::ScaledAiry su = airy::eval_scaled(u);
    airy::ScaledAiry sx = airy::eval_scaled(x + u);

    if (y <= 0.0) {
        airy::ScaledAiry sy = airy::eval_scaled(-y + u);
        double ex = 2.0 * su.xi - sx.xi - sy.xi; // <= 0
        return -(sx.ai * sy.ai) / (su.ai * su.aip) * std::exp(ex);
    }
    airy::ScaledAiry sy = airy::eval_scaled(y + u);
    double alpha = PI * (su.ai * su.bip + su.aip * su.bi); // exponents cancel
    double t1 = -alpha * (sx.ai * sy.ai) / (su.ai * su.aip) *
                std::exp(2.0 * su.xi - sx.xi - sy.xi);
    double t2 = 2.0 * PI * sx.ai * sy.bi * std::exp(sy.xi - sx.xi);
    return t1 + t2;
}

SeriesValue green_series(double x, double y, double E, int N) {
    if (N < 1) throw std::invalid_argument("green_series: N must be >= 1");
    SeriesValue out;
    for (int n = 1; n <= N; ++n)
        out.partial += eigenfunction(n, x) * eigenfunction(n, y) / (unperturbed_energy(n) - E);

    int nfar = std::max(N, 4000);
    double brute = 0.0;
    for (int n = N + 1; n <= nfar; ++n)
        brute += eigenfunction(n, x) * eigenfunction(n, y) / (unperturbed_energy(n) - E);
    out.tail = brute + tail_closure(x, y, E, nfar);
    return out;
}

double diagonal_norm_identity_residual(double x0, double E, int N) {
    SeriesValue s = green_series(x0, x0, E, N);
    return std::abs(s.value() - green_function(x0, x0, E));
}

namespace {

double level_for_filter(int k, LevelFilter f) {
    switch (f) {
        case LevelFilter::all: return unperturbed_energy(k);
        case LevelFilter::odd: return unperturbed_energy(2 * k - 1);
        case LevelFilter::even: return unperturbed_energy(2 * k);
    }
    return 0.0;
}

double asym_level_for_filter(int k, LevelFilter f) {
    // E ~ (1/2) (3 pi q / 8)^(2/3), q = 2k-1 (all), 4k-3 (odd), 4k-1 (even)
    double q = (f == LevelFilter::all) ? 2.0 * k - 1.0
             : (f == LevelFilter::odd) ? 4.0 * k - 3.0
                                       : 4.0 * k - 1.0;
    return 0.5 * std::pow(3.0 * PI * q / 8.0, 2.0 / 3.0);
}

} // namespace

double schatten_partial_sum(double gamma, int N, LevelFilter filter) {
    if (N < 1) throw std::invalid_argument("schatten_partial_sum: N must be >= 1");
    if (!(gamma > 0.0)) throw std::invalid_argument("schatten_partial_sum: gamma must be > 0");
    double s = 0.0;
    // exact zeros for the head, asymptotic locations beyond (relative error
    // < 1e-12 well before the switch)
    int head = std::min(N, 600);
    for (int k = 1; k <= head; ++k) s += std::pow(level_for_filter(k, filter), -gamma);
    for (int k = head + 1; k <= N; ++k) s += std::pow(asym_level_for_filter(k, filter), -gamma);
    return s;
}

double schatten_tail_estimate(double gamma, int N, LevelFilter filter) {
    if (!(gamma > 1.5)) throw std::invalid_argument("schatten_tail_estimate: needs gamma > 3/2");
    // continue term-by-term on asymptotic levels, then integrate the rest
    long K = std::max<long>(4L * N, 200000L);
    double s = 0.0;
    for (long k = N + 1; k <= K; ++k) s += std::pow(asym_level_for_filter((int)k, filter), -gamma);
    // integral of (1/2 (3 pi (c k + d)/8)^(2/3))^(-gamma) dk from K+1/2
    double c = (filter == LevelFilter::all) ? 2.0 : 4.0;
    double d = (filter == LevelFilter::all) ? -1.0 : (filter == LevelFilter::odd ? -3.0 : -1.0);
    double p = 2.0 * gamma / 3.0; // decay exponent in k
    double a = 3.0 * PI * c / 8.0;
    double q0 = a * (K + 0.5) + 3.0 * PI * d / 8.0;
    s += std::pow(2.0, gamma) * std::pow(q0, -p) * q0 / (a * (p - 1.0));
    return s;
}

} // namespace conicosc::spectrum
