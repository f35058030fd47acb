#pragma once

#include "martinet/jet.hpp"
#include "martinet/scalar.hpp"

#include <array>
#include <cmath>
#include <cstddef>
#include <map>
#include <string>

namespace martinet {

enum class Var : std::size_t { x = 0, y = 1, z = 2 };

/// Sparse polynomial in (x, y, z). Zero coefficients are never stored.
template <Scalar T>
class Poly3 {
public:
    using Exponent = std::array<unsigned, 3>;
    using Terms = std::map<Exponent, T>;

    Poly3() = default;

    static Poly3 constant(const T& c) { return monomial(c, {0, 0, 0}); }

    static Poly3 variable(Var v)
    {
        Exponent e{0, 0, 0};
        e[static_cast<std::size_t>(v)] = 1;
        return monomial(T(1), e);
    }

    static Poly3 monomial(const T& c, Exponent e)
    {
        Poly3 p;
        p.add_term(e, c);
        return p;
    }

    /// Embeds a jet as a polynomial in the chosen variable.
    static Poly3 from_jet(const Jet<T>& f, Var v = Var::y)
    {
        Poly3 p;
        for (std::size_t i = 0; i <= f.order(); ++i) {
            Exponent e{0, 0, 0};
            e[static_cast<std::size_t>(v)] = static_cast<unsigned>(i);
            p.add_term(e, f[i]);
        }
        return p;
    }

    const Terms& terms() const noexcept { return terms_; }

    bool is_zero() const noexcept { return terms_.empty(); }

    T coefficient(const Exponent& e) const
    {
        auto it = terms_.find(e);
        return it == terms_.end() ? T(0) : it->second;
    }

    void add_term(const Exponent& e, const T& c)
    {
        if (c == 0) {
            return;
        }
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) {
                terms_.erase(it);
            }
        }
    }

    Poly3 derivative(Var v) const
    {
        const auto idx = static_cast<std::size_t>(v);
        Poly3 r;
        for (const auto& [e, c] : terms_) {
            if (e[idx] == 0) {
                continue;
            }
            Exponent d = e;
            --d[idx];
            r.add_term(d, c * T(static_cast<long>(e[idx])));
        }
        return r;
    }

    double evaluate(double x, double y, double z = 0.0) const
    {
        double acc = 0.0;
        for (const auto& [e, c] : terms_) {
            acc += to_double(c) * ipow(x, e[0]) * ipow(y, e[1]) * ipow(z, e[2]);
        }
        return acc;
    }

    /// Largest coefficient magnitude; zero for the zero polynomial.
    double max_abs_coefficient() const
    {
        double m = 0.0;
        for (const auto& [e, c] : terms_) {
            m = std::max(m, magnitude(c));
        }
        return m;
    }

    Poly3 operator-() const
    {
        Poly3 r;
        for (const auto& [e, c] : terms_) {
            r.terms_.emplace(e, -c);
        }
        return r;
    }

    friend Poly3 operator+(const Poly3& a, const Poly3& b)
    {
        Poly3 r = a;
        for (const auto& [e, c] : b.terms_) {
            r.add_term(e, c);
        }
        return r;
    }

    friend Poly3 operator-(const Poly3& a, const Poly3& b) { return a + (-b); }

    friend Poly3 operator*(const Poly3& a, const Poly3& b)
    {
        Poly3 r;
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                r.add_term({ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}, ca * cb);
            }
        }
        return r;
    }

    friend Poly3 operator*(const T& s, const Poly3& a)
    {
        Poly3 r;
        for (const auto& [e, c] : a.terms_) {
            r.add_term(e, s * c);
        }
        return r;
    }

    friend bool operator==(const Poly3& a, const Poly3& b) = default;

private:
    static double ipow(double base, unsigned n)
    {
        double r = 1.0;
        for (unsigned i = 0; i < n; ++i) {
            r *= base;
        }
        return r;
    }

    Terms terms_;
};

/// Planar field (X1, X2) with polynomial components.
template <Scalar T>
using PolyField2 = std::array<Poly3<T>, 2>;

/// Spatial field (X1, X2, X3) with polynomial components.
template <Scalar T>
using Field3 = std::array<Poly3<T>, 3>;

/// Human-readable form such as "-2*x*y + y^2".
template <Scalar T>
std::string to_string(const Poly3<T>& p)
{
    if (p.is_zero()) {
        return "0";
    }
    static constexpr const char* names[3] = {"x", "y", "z"};
    std::string out;
    // Graded order: lower total degree first.
    std::multimap<unsigned, std::pair<typename Poly3<T>::Exponent, T>> graded;
    for (const auto& [e, c] : p.terms()) {
        graded.emplace(e[0] + e[1] + e[2], std::make_pair(e, c));
    }
    bool first = true;
    for (const auto& [deg, term] : graded) {
        const auto& [e, c] = term;
        bool negative = c < 0;
        T mag = negative ? T(-c) : c;
        if (first) {
            out += negative ? "-" : "";
        } else {
            out += negative ? " - " : " + ";
        }
        first = false;
        std::string factors;
        for (std::size_t v = 0; v < 3; ++v) {
            if (e[v] == 0) {
                continue;
            }
            if (!factors.empty()) {
                factors += "*";
            }
            factors += names[v];
            if (e[v] > 1) {
                factors += "^" + std::to_string(e[v]);
            }
        }
        if (factors.empty()) {
            out += format_scalar(mag);
        } else if (mag == 1) {
            out += factors;
        } else {
            out += format_scalar(mag) + "*" + factors;
        }
    }
    return out;
}

}  // namespace martinet
