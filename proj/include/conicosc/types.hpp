#ifndef CONICOSC_TYPES_HPP
#define CONICOSC_TYPES_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace conicosc {

// Spectral parameter E is a plain double in natural units (hbar = m = 1).

// Parity convention of the conic oscillator: odd-indexed levels are
// symmetric (Ai' zeros), even-indexed levels antisymmetric (Ai zeros).
// For an off-center impurity parity is not a good quantum number.
enum class Parity { symmetric, antisymmetric, none };

inline const char* to_string(Parity p) {
    switch (p) {
        case Parity::symmetric: return "sym";
        case Parity::antisymmetric: return "anti";
        default: return "none";
    }
}

struct Level {
    int index = 0;          // 1-based position in the sorted spectrum
    double energy = 0.0;
    Parity parity = Parity::none;
    double residual = 0.0;  // residual of the defining equation at the solved energy
    bool invariant = false; // level unaffected by the perturbation
    bool crossing = false;  // degenerate with an invariant level (nonlocal dp at beta0)
};

using EigenResult = std::vector<Level>;

// Partial sum of a slowly converging spectral series together with the
// algebraic tail estimate for the dropped terms.  Tails here decay like
// N^(-1/3), so the partial sum alone is misleading.
struct SeriesValue {
    double partial = 0.0;
    double tail = 0.0;
    double value() const { return partial + tail; }
};

struct PoleError : std::domain_error {
    using std::domain_error::domain_error;
};

struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace conicosc

#endif
