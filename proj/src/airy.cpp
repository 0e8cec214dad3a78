#include "conicosc/airy.hpp"
#include "conicosc/types.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>

namespace conicosc::airy {

namespace {

// ---------------------------------------------------------------------
// Minimal double-double arithmetic for the Maclaurin series.  Terms grow
// to ~3e6 near |x| = 9 before cancelling down to O(1); the compensated
// representation keeps the accumulated error near eps^2 * maxterm.
// ---------------------------------------------------------------------
struct dd {
    double hi = 0.0, lo = 0.0;
};

inline dd two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

inline dd quick_two_sum(double a, double b) {
    double s = a + b;
    return {s, b - (s - a)};
}

inline dd two_prod(double a, double b) {
    double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline dd dd_add(const dd& a, const dd& b) {
    dd s = two_sum(a.hi, b.hi);
    s.lo += a.lo + b.lo;
    return quick_two_sum(s.hi, s.lo);
}

inline dd dd_mul(const dd& a, const dd& b) {
    dd p = two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return quick_two_sum(p.hi, p.lo);
}

inline dd dd_mul_d(const dd& a, double b) {
    dd p = two_prod(a.hi, b);
    p.lo += a.lo * b;
    return quick_two_sum(p.hi, p.lo);
}

inline dd dd_div_d(const dd& a, double b) {
    double q1 = a.hi / b;
    dd p = two_prod(q1, b);
    double q2 = ((a.hi - p.hi) - p.lo + a.lo) / b;
    return quick_two_sum(q1, q2);
}

// Ai(0) and -Ai'(0) split into double pairs.
constexpr double AI0_HI = 0.3550280538878172, AI0_LO = 2.05233632436212e-17;
constexpr double MAIP0_HI = 0.2588194037928068, MAIP0_LO = -2.522243111610832e-17;
constexpr double SQRT3_HI = 1.7320508075688772, SQRT3_LO = 1.0035084221806903e-16;

constexpr double SERIES_LIMIT = 9.0;
constexpr double SQRT_PI = 1.7724538509055160273;

struct SeriesOut {
    double ai, aip, bi, bip;
};

// Maclaurin solutions of y'' = x y:
//   f(x) = sum a_k x^{3k},    a_0 = 1, a_k = a_{k-1} / ((3k)(3k-1))
//   g(x) = sum b_k x^{3k+1},  b_0 = 1, b_k = b_{k-1} / ((3k)(3k+1))
// Ai = c1 f - c2 g, Bi = sqrt(3)(c1 f + c2 g).
SeriesOut maclaurin(double x) {
    const dd c1{AI0_HI, AI0_LO};
    const dd c2{MAIP0_HI, MAIP0_LO};
    const dd s3{SQRT3_HI, SQRT3_LO};

    if (x == 0.0) {
        return {AI0_HI + AI0_LO, -(MAIP0_HI + MAIP0_LO),
                (SQRT3_HI + SQRT3_LO) * (AI0_HI + AI0_LO),
                (SQRT3_HI + SQRT3_LO) * (MAIP0_HI + MAIP0_LO)};
    }

    dd x2 = two_prod(x, x);
    dd x3 = dd_mul_d(x2, x);

    dd fterm{1.0, 0.0};
    dd gterm{x, 0.0};
    dd f = fterm, g = gterm;
    dd fp{0.0, 0.0};          // f'(x) = sum a_k 3k x^{3k-1}
    dd gp{1.0, 0.0};          // g'(x) = sum b_k (3k+1) x^{3k}

    for (int k = 1; k <= 120; ++k) {
        fterm = dd_div_d(dd_mul(fterm, x3), double(3 * k) * double(3 * k - 1));
        gterm = dd_div_d(dd_mul(gterm, x3), double(3 * k) * double(3 * k + 1));
        f = dd_add(f, fterm);
        g = dd_add(g, gterm);
        fp = dd_add(fp, dd_div_d(dd_mul_d(fterm, double(3 * k)), x));
        gp = dd_add(gp, dd_div_d(dd_mul_d(gterm, double(3 * k + 1)), x));
        if (std::abs(fterm.hi) < 1e-40 && std::abs(gterm.hi) < 1e-40) break;
    }

    dd ai = dd_add(dd_mul(c1, f), dd_mul_d(dd_mul(c2, g), -1.0));
    dd aip = dd_add(dd_mul(c1, fp), dd_mul_d(dd_mul(c2, gp), -1.0));
    dd bi = dd_mul(s3, dd_add(dd_mul(c1, f), dd_mul(c2, g)));
    dd bip = dd_mul(s3, dd_add(dd_mul(c1, fp), dd_mul(c2, gp)));
    return {ai.hi + ai.lo, aip.hi + aip.lo, bi.hi + bi.lo, bip.hi + bip.lo};
}

// Asymptotic coefficients u_k (DLMF 9.7.2) and v_k = (6k+1)/(1-6k) u_k.
constexpr int N_ASY = 40;

struct AsyTables {
    double u[N_ASY + 1];
    double v[N_ASY + 1];
    AsyTables() {
        u[0] = v[0] = 1.0;
        for (int k = 1; k <= N_ASY; ++k) {
            u[k] = u[k - 1] * (6.0 * k - 5.0) * (6.0 * k - 3.0) * (6.0 * k - 1.0) /
                   (216.0 * k * (2.0 * k - 1.0));
            v[k] = u[k] * (6.0 * k + 1.0) / (1.0 - 6.0 * k);
        }
    }
};
const AsyTables asy{};

// Sums S = sum_k coeff[k] (-sign)^k xi^-k, truncated where terms stop
// decreasing (optimal truncation) or fall below eps.
double asy_sum(const double* c, double xi, double sign) {
    double sum = 1.0, term = 1.0, prev = 1.0;
    for (int k = 1; k <= N_ASY; ++k) {
        term *= sign * c[k] / (c[k - 1] * xi);
        if (std::abs(term) >= std::abs(prev)) break;
        sum += term;
        prev = term;
        if (std::abs(term) < 1e-18) break;
    }
    return sum;
}

struct PosAsy {
    double ai_s, aip_s, bi_s, bip_s, xi; // Ai = ai_s e^-xi, Bi = bi_s e^+xi
};

PosAsy positive_asymptotic(double x) {
    double sq = std::sqrt(x);
    double xi = (2.0 / 3.0) * x * sq;
    double q = std::sqrt(sq); // x^(1/4)
    PosAsy r;
    r.xi = xi;
    r.ai_s = asy_sum(asy.u, xi, -1.0) / (2.0 * SQRT_PI * q);
    r.aip_s = -q * asy_sum(asy.v, xi, -1.0) / (2.0 * SQRT_PI);
    r.bi_s = asy_sum(asy.u, xi, 1.0) / (SQRT_PI * q);
    r.bip_s = q * asy_sum(asy.v, xi, 1.0) / SQRT_PI;
    return r;
}

// Even/odd splits P,Q,R,S of the u/v series (DLMF 9.7.9-9.7.12).
struct NegAsy {
    double ai, aip, bi, bip;
};

NegAsy negative_asymptotic(double x) {
    double z = -x;
    double sq = std::sqrt(z);
    double zeta = (2.0 / 3.0) * z * sq;
    double q = std::sqrt(sq);
    double P = 0.0, Q = 0.0, R = 0.0, S = 0.0;
    double zpow = 1.0; // zeta^(-2k)
    double sign = 1.0; // (-1)^k
    double prev_mag = HUGE_VAL;
    for (int k = 0; 2 * k + 1 <= N_ASY; ++k) {
        double mag = asy.u[2 * k] * zpow;
        if (mag >= prev_mag) break; // optimal truncation
        P += sign * asy.u[2 * k] * zpow;
        R += sign * asy.v[2 * k] * zpow;
        double zpow1 = zpow / zeta;
        Q += sign * asy.u[2 * k + 1] * zpow1;
        S += sign * asy.v[2 * k + 1] * zpow1;
        prev_mag = mag;
        zpow = zpow1 / zeta;
        sign = -sign;
        if (mag < 1e-18) break;
    }
    double w = zeta - 0.25 * M_PI;
    double cw = std::cos(w), sw = std::sin(w);
    NegAsy r;
    r.ai = (cw * P + sw * Q) / (SQRT_PI * q);
    r.aip = q * (sw * R - cw * S) / SQRT_PI;
    r.bi = (-sw * P + cw * Q) / (SQRT_PI * q);
    r.bip = q * (cw * R + sw * S) / SQRT_PI;
    return r;
}

} // namespace

ScaledAiry eval_scaled(double x) {
    ScaledAiry out;
    if (x > SERIES_LIMIT) {
        PosAsy p = positive_asymptotic(x);
        out.ai = p.ai_s;
        out.aip = p.aip_s;
        out.bi = p.bi_s;
        out.bip = p.bip_s;
        out.xi = p.xi;
    } else if (x < -SERIES_LIMIT) {
        NegAsy n = negative_asymptotic(x);
        out.ai = n.ai;
        out.aip = n.aip;
        out.bi = n.bi;
        out.bip = n.bip;
        out.xi = 0.0;
    } else {
        SeriesOut s = maclaurin(x);
        out.ai = s.ai;
        out.aip = s.aip;
        out.bi = s.bi;
        out.bip = s.bip;
        out.xi = 0.0;
    }
    return out;
}

AiryValue eval(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("airy: non-finite argument");
    AiryValue v;
    v.x = x;
    ScaledAiry s = eval_scaled(x);
    if (s.xi == 0.0) {
        v.ai = s.ai;
        v.aip = s.aip;
        return v;
    }
    double e = std::exp(-s.xi);
    v.ai = s.ai * e;
    v.aip = s.aip * e;
    if (e == 0.0 || std::abs(v.ai) < 2.2250738585072014e-308) {
        v.ai = (e == 0.0) ? 0.0 : v.ai;
        v.aip = (e == 0.0) ? 0.0 : v.aip;
        v.underflow = true;
    }
    return v;
}

double ai(double x) { return eval(x).ai; }
double aip(double x) { return eval(x).aip; }

double bi(double x) {
    ScaledAiry s = eval_scaled(x);
    return s.xi == 0.0 ? s.bi : s.bi * std::exp(s.xi);
}

double bip(double x) {
    ScaledAiry s = eval_scaled(x);
    return s.xi == 0.0 ? s.bip : s.bip * std::exp(s.xi);
}

// ---------------------------------------------------------------------
// Negative-axis zeros
// ---------------------------------------------------------------------

double asymptotic_ai_zero(int n) {
    if (n < 1) throw std::invalid_argument("asymptotic_ai_zero: n must be >= 1");
    double t = 3.0 * M_PI * (4.0 * n - 1.0) / 8.0;
    double t2 = 1.0 / (t * t);
    double c = 1.0 + t2 * (5.0 / 48.0 +
                t2 * (-5.0 / 36.0 +
                t2 * (77125.0 / 82944.0 +
                t2 * (-108056875.0 / 6967296.0))));
    return -std::cbrt(t * t) * c;
}

double asymptotic_aip_zero(int n) {
    if (n < 1) throw std::invalid_argument("asymptotic_aip_zero: n must be >= 1");
    double t = 3.0 * M_PI * (4.0 * n - 3.0) / 8.0;
    double t2 = 1.0 / (t * t);
    double c = 1.0 + t2 * (-7.0 / 48.0 +
                t2 * (35.0 / 288.0 +
                t2 * (-181223.0 / 207360.0 +
                t2 * (18683371.0 / 1244160.0))));
    return -std::cbrt(t * t) * c;
}

namespace {

// Lazily grown tables of polished zeros behind one mutex.
struct ZeroTable {
    std::mutex mtx;
    std::vector<double> az;  // Ai zeros
    std::vector<double> apz; // Ai' zeros

    static double polish(double lo, double hi, bool prime) {
        auto fn = [prime](double t) {
            AiryValue v = eval(t);
            return prime ? v.aip : v.ai;
        };
        double flo = fn(lo);
        for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
            double mid = 0.5 * (lo + hi);
            double fm = fn(mid);
            if ((flo < 0.0) == (fm < 0.0)) {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
            }
        }
        // Newton polish; Ai'' = x Ai supplies the derivative for Ai' zeros.
        double r = 0.5 * (lo + hi);
        for (int it = 0; it < 3; ++it) {
            AiryValue v = eval(r);
            double f = prime ? v.aip : v.ai;
            double df = prime ? r * v.ai : v.aip;
            double step = f / df;
            if (!std::isfinite(step)) break;
            double rn = r - step;
            if (rn < lo || rn > hi) break;
            r = rn;
        }
        return r;
    }

    // Isolating bracket for zero n given the previous zero (ordering anchor).
    static double locate(int n, double prev, bool prime) {
        double seed;
        if (prime)
            seed = (n == 1) ? -1.02 : (n == 2) ? -3.25 : asymptotic_aip_zero(n);
        else
            seed = (n == 1) ? -2.34 : (n == 2) ? -4.09 : asymptotic_ai_zero(n);
        double gap = M_PI / std::sqrt(-seed);
        double hi = std::min(seed + 0.6 * gap, prev - 1e-9);
        double lo = seed - 0.6 * gap;
        auto fn = [prime](double t) {
            AiryValue v = eval(t);
            return prime ? v.aip : v.ai;
        };
        double fhi = fn(hi), flo = fn(lo);
        // Expand if the seed bracket missed (only n = 1,2 of Ai' get close).
        for (int it = 0; it < 60 && (flo < 0.0) == (fhi < 0.0); ++it) {
            lo -= 0.4 * gap;
            flo = fn(lo);
        }
        if ((flo < 0.0) == (fhi < 0.0))
            throw SolverError("airy zero table: failed to bracket zero");
        return polish(lo, hi, prime);
    }

    void ensure(std::vector<double>& tab, int n, bool prime) {
        while ((int)tab.size() < n) {
            int k = (int)tab.size() + 1;
            double prev = tab.empty() ? 0.0 : tab.back();
            tab.push_back(locate(k, prev, prime));
        }
    }
};

ZeroTable& table() {
    static ZeroTable t;
    return t;
}

} // namespace

double ai_zero(int n) {
    if (n < 1) throw std::invalid_argument("ai_zero: n must be >= 1");
    ZeroTable& t = table();
    std::lock_guard<std::mutex> lock(t.mtx);
    t.ensure(t.az, n, false);
    return t.az[n - 1];
}

double aip_zero(int n) {
    if (n < 1) throw std::invalid_argument("aip_zero: n must be >= 1");
    ZeroTable& t = table();
    std::lock_guard<std::mutex> lock(t.mtx);
    t.ensure(t.apz, n, true);
    return t.apz[n - 1];
}

std::vector<double> ai_zeros(int n) {
    if (n < 1) throw std::invalid_argument("ai_zeros: n must be >= 1");
    ZeroTable& t = table();
    std::lock_guard<std::mutex> lock(t.mtx);
    t.ensure(t.az, n, false);
    return std::vector<double>(t.az.begin(), t.az.begin() + n);
}

std::vector<double> aip_zeros(int n) {
    if (n < 1) throw std::invalid_argument("aip_zeros: n must be >= 1");
    ZeroTable& t = table();
    std::lock_guard<std::mutex> lock(t.mtx);
    t.ensure(t.apz, n, true);
    return std::vector<double>(t.apz.begin(), t.apz.begin() + n);
}

} // namespace conicosc::airy
