#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace fpt {

/// Truncation policy for the infinite series used throughout the library.
/// A series is accepted once the relative-term criterion holds for three
/// consecutive terms; this guards against a non-monotone onset of decay.
struct SeriesControl {
    double rel_tol = 1e-15;     ///< relative term tolerance
    double abs_floor = 1e-300;  ///< terms below this count as converged outright
    int max_terms = 10000;      ///< hard cap on summed terms
    bool compensated = false;   ///< Neumaier-compensated partial sums

    void validate() const {
        if (!(rel_tol > 0.0))
            throw std::invalid_argument("SeriesControl: rel_tol must be > 0");
        if (max_terms < 10)
            throw std::invalid_argument("SeriesControl: max_terms must be >= 10");
    }
};

/// Convergence diagnostics attached to every truncated-series result.
struct SeriesDiag {
    int terms_used = 0;
    double tail_estimate = 0.0;  ///< geometric bound on the dropped tail
};

/// Thrown when a series fails the convergence criterion within max_terms.
class truncation_error : public std::runtime_error {
public:
    truncation_error(const std::string& what, int terms, double tail)
        : std::runtime_error(what), terms_used(terms), tail_estimate(tail) {}

    int terms_used;
    double tail_estimate;
};

/// Neumaier variant of compensated summation.
struct CompensatedSum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double x) {
        double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

}  // namespace fpt
