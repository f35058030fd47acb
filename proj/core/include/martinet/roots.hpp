#pragma once

#include <span>
#include <vector>

namespace martinet {

struct RootOptions {
    double lo = -10.0;
    double hi = 10.0;
    double root_tol = 1e-10;          ///< |p(root)| bound; also the test for roots at critical points
    double multiplicity_tol = 1e-8;   ///< derivative magnitude below which a root counts as repeated
};

struct RealRoot {
    double value = 0.0;
    int multiplicity = 1;
    double residual = 0.0;  ///< |p(value)|
};

/// Horner evaluation of c0 + c1 y + ... (ascending coefficients).
double evaluate_polynomial(std::span<const double> coeffs, double y);

std::vector<double> derivative_coefficients(std::span<const double> coeffs);

/**
    All real roots of a low-degree polynomial in [lo, hi], ascending.

    Roots of the derivative split the interval into monotone pieces; sign changes on each
    piece are refined by bisection to machine precision, and critical points with
    |p| <= root_tol are reported as repeated roots. The zero polynomial yields no roots.
*/
std::vector<RealRoot> real_roots(std::span<const double> coeffs, const RootOptions& opts = {});

}  // namespace martinet
