#pragma once

// Reduction of a germ f to its normal form under identity-tangent conjugacy
// g = f(psi) / psi', and the corresponding classification of X_f.

#include "martinet/jet.hpp"
#include "martinet/mufields.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace martinet {

enum class GermType { regular0, regular1, degenerate, flat };

std::string_view to_string(GermType type) noexcept;

/**
    Classification of a germ f.

    - regular0:   f(0) = a != 0, normal form a (k = 0)
    - regular1:   f(0) = 0, f'(0) = a != 0, normal form a*y (k = 1)
    - degenerate: first nonzero coefficient a at y^k, k >= 2, normal form a*y^k + d*y^(2k-1)
    - flat:       every coefficient up to the truncation order vanishes

    `psi` carries f to its normal form: pushforward(f, psi) equals the normal form modulo
    y^(order+1). It is the identity for flat germs.
*/
template <Scalar T>
struct GermClass {
    GermType type = GermType::flat;
    std::size_t k = 0;
    T a{0};
    T d{0};
    std::size_t order = 0;
    Jet<T> psi;
};

struct ClassifyOptions {
    double zero_tol = default_zero_tol;  ///< ignored in rational mode
};

template <Scalar T>
struct DegenerateNormalForm {
    std::size_t k = 0;
    T a{0};
    T d{0};
    Jet<T> psi;
};

/// psi = y + integral(a/f - 1) with a = f(0); satisfies f * psi' = a. Order is capped at order(f).
template <Scalar T>
Jet<T> normalize_regular(const Jet<T>& f);

/// Order-by-order removal of every coefficient of f(psi)/psi' past y^k except the y^(2k-1) obstruction.
/// Coefficients of psi above order N-k+1 are zero.
template <Scalar T>
DegenerateNormalForm<T> normalize_degenerate(const Jet<T>& f, const ClassifyOptions& opts = {});

/// Same as above with the order k given explicitly; throws LeadingCoefficientZero if f_k vanishes.
template <Scalar T>
DegenerateNormalForm<T> normalize_degenerate(const Jet<T>& f, std::size_t k, const ClassifyOptions& opts = {});

template <Scalar T>
GermClass<T> classify_germ(const Jet<T>& f, const ClassifyOptions& opts = {});

/// a, a*y or a*y^k + d*y^(2k-1) at the classification's truncation order; zero for flat germs.
template <Scalar T>
Jet<T> normal_form(const GermClass<T>& c);

template <Scalar T>
struct FieldClassification {
    GermClass<T> germ;
    std::string label;  ///< "X_0", "X_1", "X_k, a=.., d=..", or "flat"
    std::string model;  ///< the model field with coefficients substituted
    /// Present when X(0,0) = 0. Always upper triangular, so its diagonal holds the eigenvalues.
    std::optional<Matrix2<T>> jacobian;
};

template <Scalar T>
FieldClassification<T> classify_field(const PlanarMuField<T>& field, const ClassifyOptions& opts = {});

}  // namespace martinet
