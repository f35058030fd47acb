#pragma once

// Versal unfoldings of the degenerate models: the 1-D family
//   a y^k + sum_{i=1}^{k-1} l_i y^(k-1-i) + l_k y^(2k-1)
// and the planar family it generates.

#include "martinet/jet.hpp"
#include "martinet/mufields.hpp"
#include "martinet/polynomial.hpp"

#include <vector>

namespace martinet {

template <Scalar T>
struct UnfoldingFamily {
    std::size_t k = 2;
    T a{1};
    std::vector<T> lambdas;

    /// Throws InvalidArgument for k < 2 or a = 0, BadArity unless exactly k parameters.
    void validate() const;
};

/// The 1-D unfolding as a jet of order 2k-1.
template <Scalar T>
Jet<T> unfold_1d(std::size_t k, const T& a, const std::vector<T>& lambdas);

template <Scalar T>
Jet<T> unfold_1d(const UnfoldingFamily<T>& family)
{
    return unfold_1d(family.k, family.a, family.lambdas);
}

/// The planar family with x-component built term by term from the unfolding coefficients;
/// the i = k-1 term, whose factor (k-1-i) vanishes, is omitted.
template <Scalar T>
PolyField2<T> unfold_planar(std::size_t k, const T& a, const std::vector<T>& lambdas);

/// The k = 2 family F2 = -(1+x)(2a y + 3 l2 y^2) d/dx + (a y^2 + l1 + l2 y^3) d/dy.
/// Unlike unfold_1d, a = 0 is accepted so sweeps may cross it.
PlanarMuField<double> f2_family(double a, double l1, double l2);

/// Generator a y^2 + l1 + l2 y^3 of f2_family.
Jet<double> f2_generator(double a, double l1, double l2);

}  // namespace martinet
