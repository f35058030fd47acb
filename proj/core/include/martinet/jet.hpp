#pragma once

#include "martinet/error.hpp"
#include "martinet/scalar.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace martinet {

/// Default truncation order N for germs.
inline constexpr std::size_t default_order = 16;

/// Default zero threshold for jet-order detection in floating mode.
inline constexpr double default_zero_tol = 1e-9;

/**
    Truncated univariate power series c0 + c1 y + ... + cN y^N.

    All arithmetic is performed modulo y^(N+1); binary operations on jets of
    different orders truncate to the smaller order. The coefficient vector
    always holds exactly N+1 entries.
*/
template <Scalar T>
class Jet {
public:
    using value_type = T;

    Jet() : Jet(default_order) {}

    explicit Jet(std::size_t order) : coeffs_(order + 1, T(0)) {}

    /// Pads with zeros or truncates to the requested order.
    Jet(std::vector<T> coeffs, std::size_t order) : coeffs_(std::move(coeffs))
    {
        coeffs_.resize(order + 1, T(0));
    }

    /// Order is taken from the coefficient count; an empty list gives the zero jet of order 0.
    static Jet from_coeffs(std::vector<T> coeffs)
    {
        std::size_t order = coeffs.empty() ? 0 : coeffs.size() - 1;
        return Jet(std::move(coeffs), order);
    }

    static Jet constant(T c, std::size_t order = default_order)
    {
        Jet j(order);
        j.coeffs_[0] = std::move(c);
        return j;
    }

    /// The identity germ y.
    static Jet variable(std::size_t order = default_order) { return monomial(T(1), 1, order); }

    static Jet monomial(T c, std::size_t power, std::size_t order = default_order)
    {
        Jet j(order);
        if (power <= order) {
            j.coeffs_[power] = std::move(c);
        }
        return j;
    }

    std::size_t order() const noexcept { return coeffs_.size() - 1; }

    const T& operator[](std::size_t i) const { return coeffs_[i]; }
    T& operator[](std::size_t i) { return coeffs_[i]; }

    /// Coefficient of y^i, zero past the truncation order.
    T coefficient(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : T(0); }

    std::span<const T> coeffs() const noexcept { return coeffs_; }

    Jet with_order(std::size_t order) const { return Jet(coeffs_, order); }

    bool is_zero() const
    {
        return std::all_of(coeffs_.begin(), coeffs_.end(), [](const T& c) { return c == 0; });
    }

    /// Horner evaluation of the truncated polynomial.
    double evaluate(double y) const
    {
        double acc = 0.0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
            acc = acc * y + to_double(*it);
        }
        return acc;
    }

    Jet operator-() const
    {
        Jet r(*this);
        for (auto& c : r.coeffs_) {
            c = -c;
        }
        return r;
    }

    friend Jet operator+(const Jet& a, const Jet& b)
    {
        Jet r(std::min(a.order(), b.order()));
        for (std::size_t i = 0; i <= r.order(); ++i) {
            r.coeffs_[i] = a.coeffs_[i] + b.coeffs_[i];
        }
        return r;
    }

    friend Jet operator-(const Jet& a, const Jet& b) { return a + (-b); }

    /// Cauchy product truncated at min(order(a), order(b)).
    friend Jet operator*(const Jet& a, const Jet& b)
    {
        Jet r(std::min(a.order(), b.order()));
        const std::size_t n = r.order();
        for (std::size_t i = 0; i <= n; ++i) {
            if (a.coeffs_[i] == 0) {
                continue;
            }
            for (std::size_t j = 0; i + j <= n; ++j) {
                r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
            }
        }
        return r;
    }

    friend Jet operator*(const T& s, const Jet& a)
    {
        Jet r(a);
        for (auto& c : r.coeffs_) {
            c *= s;
        }
        return r;
    }

    friend Jet operator*(const Jet& a, const T& s) { return s * a; }

    friend bool operator==(const Jet& a, const Jet& b) = default;

private:
    std::vector<T> coeffs_;
};

/// Multiplicative inverse modulo y^(N+1).
template <Scalar T>
Jet<T> reciprocal(const Jet<T>& a)
{
    if (a[0] == 0) {
        throw Error(ErrorCode::zero_constant_term, "reciprocal of a jet with zero constant term");
    }
    const std::size_t n = a.order();
    Jet<T> b(n);
    const T inv0 = T(1) / a[0];
    b[0] = inv0;
    for (std::size_t m = 1; m <= n; ++m) {
        T acc(0);
        for (std::size_t i = 1; i <= m; ++i) {
            acc += a[i] * b[m - i];
        }
        b[m] = -acc * inv0;
    }
    return b;
}

/// f(g(y)) modulo y^(N+1), N = min of the two orders. Requires g(0) = 0.
template <Scalar T>
Jet<T> compose(const Jet<T>& f, const Jet<T>& g)
{
    if (g[0] != 0) {
        throw Error(ErrorCode::nonzero_inner_constant, "inner series of a composition must vanish at 0");
    }
    const std::size_t n = std::min(f.order(), g.order());
    const Jet<T> inner = g.with_order(n);
    Jet<T> acc = Jet<T>::constant(f[n], n);
    for (std::size_t i = n; i-- > 0;) {
        acc = acc * inner;
        acc[0] += f[i];
    }
    return acc;
}

/// Term-wise derivative; the result has order N-1 (order 0 for a constant-order jet).
template <Scalar T>
Jet<T> derive(const Jet<T>& f)
{
    if (f.order() == 0) {
        return Jet<T>(0);
    }
    Jet<T> r(f.order() - 1);
    for (std::size_t i = 1; i <= f.order(); ++i) {
        r[i - 1] = T(static_cast<long>(i)) * f[i];
    }
    return r;
}

/// Antiderivative with zero constant term. Order N+1, capped at `max_order` when given.
template <Scalar T>
Jet<T> integrate(const Jet<T>& f, std::optional<std::size_t> max_order = std::nullopt)
{
    std::size_t n = f.order() + 1;
    if (max_order) {
        n = std::min(n, *max_order);
    }
    Jet<T> r(n);
    for (std::size_t i = 1; i <= n; ++i) {
        r[i] = f[i - 1] / T(static_cast<long>(i));
    }
    return r;
}

/// Compositional inverse h with g(h) = h(g) = y. Requires g(0) = 0 and g'(0) != 0.
template <Scalar T>
Jet<T> reversion(const Jet<T>& g)
{
    if (g[0] != 0) {
        throw Error(ErrorCode::nonzero_inner_constant, "reversion requires g(0) = 0");
    }
    if (g.order() < 1 || g[1] == 0) {
        throw Error(ErrorCode::non_unit_linear_term, "reversion requires g'(0) != 0");
    }
    const std::size_t n = g.order();
    const T inv1 = T(1) / g[1];
    Jet<T> h(n);
    h[1] = inv1;
    // The y^m coefficient of g(h) depends on h_m only through g1 * h_m.
    for (std::size_t m = 2; m <= n; ++m) {
        const Jet<T> partial = compose(g.with_order(m), h.with_order(m));
        h[m] = -partial[m] * inv1;
    }
    return h;
}

/// Index of the first coefficient above `zero_tol` (exact test for rationals); nullopt for a flat jet.
template <Scalar T>
std::optional<std::size_t> jet_order(const Jet<T>& f, double zero_tol = default_zero_tol)
{
    for (std::size_t i = 0; i <= f.order(); ++i) {
        if (!is_negligible(f[i], zero_tol)) {
            return i;
        }
    }
    return std::nullopt;
}

inline Jet<double> to_floating(const Jet<Rational>& f)
{
    std::vector<double> c;
    c.reserve(f.order() + 1);
    for (const auto& v : f.coeffs()) {
        c.push_back(to_double(v));
    }
    return Jet<double>(std::move(c), f.order());
}

inline Jet<double> to_floating(const Jet<double>& f) { return f; }

}  // namespace martinet
