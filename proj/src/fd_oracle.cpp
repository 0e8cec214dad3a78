#include "conicosc/fd_oracle.hpp"

#include <algorithm>
#include <cmath>

namespace conicosc::fd {

namespace {

// count of eigenvalues of the symmetric tridiagonal (d, e) below x
// (Sturm sequence via the LDL^T recurrence)
int sturm_count(const Eigen::VectorXd& d, const Eigen::VectorXd& e, double x) {
    const double tiny = 1e-300;
    int cnt = 0;
    double q = d[0] - x;
    if (q < 0.0) ++cnt;
    for (Eigen::Index i = 1; i < d.size(); ++i) {
        if (q == 0.0) q = tiny;
        q = d[i] - x - e[i - 1] * e[i - 1] / q;
        if (q < 0.0) ++cnt;
    }
    return cnt;
}

std::vector<double> lowest_eigenvalues(const Eigen::VectorXd& d, const Eigen::VectorXd& e,
                                       int M) {
    if (M < 1 || M > (int)d.size())
        throw std::invalid_argument("fd oracle: invalid eigenvalue count");
    // Gershgorin bounds
    double lo = d[0], hi = d[0];
    for (Eigen::Index i = 0; i < d.size(); ++i) {
        double r = 0.0;
        if (i > 0) r += std::abs(e[i - 1]);
        if (i < d.size() - 1) r += std::abs(e[i]);
        lo = std::min(lo, d[i] - r);
        hi = std::max(hi, d[i] + r);
    }
    std::vector<double> out;
    double known_lo = lo;
    for (int k = 1; k <= M; ++k) {
        double a = known_lo, b = hi;
        for (int it = 0; it < 200 && b - a > 1e-11 * std::max(1.0, std::abs(b)); ++it) {
            double m = 0.5 * (a + b);
            if (sturm_count(d, e, m) >= k)
                b = m;
            else
                a = m;
        }
        if (b - a > 1e-6)
            throw SolverError("fd oracle: Sturm bisection failed to converge");
        out.push_back(0.5 * (a + b));
        known_lo = a; // the (k+1)-th eigenvalue cannot lie below the k-th
    }
    return out;
}

struct Grid {
    Eigen::VectorXd x;
    Eigen::VectorXd diag;
    double inv2h2;
};

Grid base_grid(const OracleSpec& spec) {
    spec.validate();
    long n = std::lround(2.0 * spec.L / spec.h) - 1;
    Grid g;
    g.x.resize(n);
    g.diag.resize(n);
    g.inv2h2 = 1.0 / (2.0 * spec.h * spec.h);
    for (long j = 0; j < n; ++j) {
        double xj = -spec.L + (j + 1) * spec.h;
        g.x[j] = xj;
        g.diag[j] = 2.0 * g.inv2h2 + 0.5 * std::abs(xj);
    }
    return g;
}

} // namespace

void OracleSpec::validate() const {
    if (!(L >= 15.0)) throw std::invalid_argument("OracleSpec: L must be >= 15");
    if (!(h > 0.0) || !(h <= 1e-2)) throw std::invalid_argument("OracleSpec: need 0 < h <= 1e-2");
    if (M < 1 || M > 40) throw std::invalid_argument("OracleSpec: M out of range");
}

Eigen::VectorXd fd_grid(const OracleSpec& spec) { return base_grid(spec).x; }

std::vector<double> fd_unperturbed(const OracleSpec& spec) {
    Grid g = base_grid(spec);
    Eigen::VectorXd e = Eigen::VectorXd::Constant(g.x.size() - 1, -g.inv2h2);
    return lowest_eigenvalues(g.diag, e, spec.M);
}

std::vector<double> fd_delta(const OracleSpec& spec, double lambda, double x0) {
    Grid g = base_grid(spec);
    if (std::abs(x0) > spec.L - 1.0)
        throw std::invalid_argument("fd_delta: x0 too close to the truncation boundary");
    long j = std::lround((x0 + spec.L) / spec.h) - 1;
    j = std::clamp<long>(j, 0, g.x.size() - 1);
    if (std::abs(g.x[j] - x0) > 0.5 * spec.h + 1e-12)
        throw std::invalid_argument("fd_delta: x0 not representable on the grid");
    g.diag[j] -= lambda / spec.h;
    Eigen::VectorXd e = Eigen::VectorXd::Constant(g.x.size() - 1, -g.inv2h2);
    return lowest_eigenvalues(g.diag, e, spec.M);
}

std::vector<double> fd_local_ddp(const OracleSpec& spec, double a, double b) {
    if (std::abs(std::abs(b) - 1.0) < 1e-12)
        throw std::invalid_argument("fd_local_ddp: |b| = 1 is not a valid matching matrix");
    if (b == 0.0) return fd_delta(spec, a, 0.0);

    Grid g = base_grid(spec);
    long j0 = std::lround(spec.L / spec.h) - 1; // node at x = 0
    if (std::abs(g.x[j0]) > 0.25 * spec.h)
        throw std::invalid_argument("fd_local_ddp: grid must contain x = 0 (choose L/h integer)");

    // doubled interface node eliminated against the matching conditions
    //   psi(0+) = tau psi(0-),  psi'(0+) = s psi(0-) + psi'(0-)/tau,
    // tau = (1+b)/(1-b), s = -2a/(1-b^2)  [realizes H0 - a delta + b delta'].
    double tau = (1.0 + b) / (1.0 - b);
    double s = -2.0 * a / (1.0 - b * b);
    double D1 = tau + 1.0 / tau + s * spec.h;
    if (std::abs(D1) < 1e-8)
        throw SolverError("fd_local_ddp: interface elimination is singular");

    long n = g.x.size();
    Eigen::VectorXd d(n - 1), e(n - 2);
    // left block: rows 0 .. j0-1 of the new matrix are old rows 0 .. j0-1
    for (long j = 0; j < j0; ++j) d[j] = g.diag[j];
    for (long j = 0; j + 1 < j0; ++j) e[j] = -g.inv2h2;
    // right block: new row j0 + r is old row j0 + 1 + r
    for (long j = j0 + 1; j < n; ++j) d[j - 1] = g.diag[j];
    for (long j = j0 + 1; j + 1 < n; ++j) e[j - 1] = -g.inv2h2;
    // interface rows (old j0-1 and j0+1, adjacent in the new matrix)
    d[j0 - 1] = (2.0 - 1.0 / (tau * D1)) * g.inv2h2 + 0.5 * std::abs(g.x[j0 - 1]);
    d[j0] = (2.0 - tau / D1) * g.inv2h2 + 0.5 * std::abs(g.x[j0 + 1]);
    e[j0 - 1] = -g.inv2h2 / D1;

    return lowest_eigenvalues(d, e, spec.M);
}

std::pair<double, Eigen::VectorXd> fd_delta_mode(const OracleSpec& spec, double lambda,
                                                 double x0, int index) {
    if (index < 1) throw std::invalid_argument("fd_delta_mode: index must be >= 1");
    Grid g = base_grid(spec);
    long j = std::lround((x0 + spec.L) / spec.h) - 1;
    g.diag[j] -= lambda / spec.h;
    Eigen::VectorXd e = Eigen::VectorXd::Constant(g.x.size() - 1, -g.inv2h2);
    double ev = lowest_eigenvalues(g.diag, e, index).back();

    // inverse iteration at a slightly shifted eigenvalue; tridiagonal
    // Gaussian elimination with partial pivoting (fill-in limited to one
    // extra superdiagonal)
    long n = g.x.size();
    double shift = ev + 1e-9;
    Eigen::VectorXd v = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt((double)n));
    const double sub = -g.inv2h2;
    for (int sweep = 0; sweep < 4; ++sweep) {
        Eigen::VectorXd b = (g.diag.array() - shift).matrix();
        Eigen::VectorXd c = Eigen::VectorXd::Constant(n, sub); // c[i] = (i, i+1)
        Eigen::VectorXd c2 = Eigen::VectorXd::Zero(n);         // c2[i] = (i, i+2)
        Eigen::VectorXd rhs = v;
        for (long i = 0; i + 1 < n; ++i) {
            if (std::abs(b[i]) >= std::abs(sub)) {
                double m = sub / b[i];
                b[i + 1] -= m * c[i];
                rhs[i + 1] -= m * rhs[i];
                c2[i] = 0.0;
            } else { // swap rows i and i+1, then eliminate
                double m = b[i] / sub;
                double bi1 = b[i + 1], ci = c[i], ci1 = (i + 2 < n) ? c[i + 1] : 0.0;
                b[i] = sub;
                c[i] = bi1;
                c2[i] = ci1;
                b[i + 1] = ci - m * bi1;
                if (i + 2 < n) c[i + 1] = -m * ci1;
                double t = rhs[i];
                rhs[i] = rhs[i + 1];
                rhs[i + 1] = t - m * rhs[i];
            }
        }
        Eigen::VectorXd w(n);
        for (long i = n - 1; i >= 0; --i) {
            double acc = rhs[i];
            if (i + 1 < n) acc -= c[i] * w[i + 1];
            if (i + 2 < n) acc -= c2[i] * w[i + 2];
            w[i] = acc / b[i];
        }
        v = w / w.norm();
    }
    return {ev, v};
}

} // namespace conicosc::fd
