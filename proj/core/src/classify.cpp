#include "martinet/classify.hpp"

#include <string>

namespace martinet {

std::string_view to_string(GermType type) noexcept
{
    switch (type) {
    case GermType::regular0: return "regular0";
    case GermType::regular1: return "regular1";
    case GermType::degenerate: return "degenerate";
    case GermType::flat: return "flat";
    }
    return "unknown";
}

namespace {

/// Drops coefficients below `k` that are noise in floating mode.
template <Scalar T>
Jet<T> clean_below(const Jet<T>& f, std::size_t k)
{
    Jet<T> r(f);
    for (std::size_t i = 0; i < k && i <= r.order(); ++i) {
        r[i] = T(0);
    }
    return r;
}

/**
    Builds psi = y + sum_j p_j y^j so that f(psi)/psi' = a y^k + d y^(2k-1) mod y^(N+1).

    Adding p y^j to psi changes the y^m coefficient, m = j + k - 1, by p a (2k-1-m) and leaves
    lower coefficients alone, so each order is solved by one division. The order 2k-1 is the
    resonant one; its coefficient is the modulus d and p_k stays zero.
*/
template <Scalar T>
std::pair<Jet<T>, T> solve_homological(const Jet<T>& f, std::size_t k)
{
    const std::size_t n = f.order();
    const T a = f[k];
    Jet<T> psi = Jet<T>::variable(n);
    T d(0);
    for (std::size_t m = k + 1; m <= n; ++m) {
        const std::size_t j = m - k + 1;
        const Jet<T> g = pushforward(f.with_order(m), MuDiffeo<T>(psi.with_order(m)));
        const T& c = g[m];
        if (m == 2 * k - 1) {
            d = c;
            continue;
        }
        const long factor = static_cast<long>(m) - static_cast<long>(2 * k - 1);
        psi[j] = c / (a * T(factor));
    }
    return {psi, d};
}

}  // namespace

template <Scalar T>
Jet<T> normalize_regular(const Jet<T>& f)
{
    if (f[0] == 0) {
        throw Error(ErrorCode::zero_constant_term, "regular normalization needs f(0) != 0");
    }
    const T a = f[0];
    const Jet<T> rhs = a * reciprocal(f) - Jet<T>::constant(T(1), f.order());
    return Jet<T>::variable(f.order()) + integrate(rhs, f.order());
}

template <Scalar T>
DegenerateNormalForm<T> normalize_degenerate(const Jet<T>& f, std::size_t k, const ClassifyOptions& opts)
{
    if (k < 2) {
        throw Error(ErrorCode::invalid_argument, "degenerate normal form needs k >= 2");
    }
    if (f.order() < 2 * k - 1) {
        throw Error(ErrorCode::insufficient_order, "order " + std::to_string(f.order()) + " < 2k-1 = " +
                                                       std::to_string(2 * k - 1));
    }
    if (is_negligible(f[k], opts.zero_tol)) {
        throw Error(ErrorCode::leading_coefficient_zero, "coefficient of y^" + std::to_string(k) + " vanishes");
    }
    for (std::size_t i = 0; i < k; ++i) {
        if (!is_negligible(f[i], opts.zero_tol)) {
            throw Error(ErrorCode::invalid_argument, "germ has nonzero coefficient below y^" + std::to_string(k));
        }
    }
    auto [psi, d] = solve_homological(clean_below(f, k), k);
    return {k, f[k], d, std::move(psi)};
}

template <Scalar T>
DegenerateNormalForm<T> normalize_degenerate(const Jet<T>& f, const ClassifyOptions& opts)
{
    const auto k = jet_order(f, opts.zero_tol);
    if (!k) {
        throw Error(ErrorCode::leading_coefficient_zero, "flat germ has no leading coefficient");
    }
    return normalize_degenerate(f, *k, opts);
}

template <Scalar T>
GermClass<T> classify_germ(const Jet<T>& f, const ClassifyOptions& opts)
{
    GermClass<T> out;
    out.order = f.order();
    const auto k = jet_order(f, opts.zero_tol);
    if (!k) {
        out.type = GermType::flat;
        out.psi = Jet<T>::variable(f.order());
        return out;
    }
    out.k = *k;
    out.a = f[*k];
    if (*k == 0) {
        // Uncapped quadrature so that the reverted conjugacy is exact through order N+1.
        const Jet<T> rhs = out.a * reciprocal(f) - Jet<T>::constant(T(1), f.order());
        const Jet<T> psi = Jet<T>::variable(f.order() + 1) + integrate(rhs);
        out.type = GermType::regular0;
        out.psi = reversion(psi);
        return out;
    }
    if (*k == 1) {
        out.type = GermType::regular1;
        out.psi = solve_homological(clean_below(f, 1), 1).first;
        return out;
    }
    auto nf = normalize_degenerate(f, *k, opts);
    out.type = GermType::degenerate;
    out.d = nf.d;
    out.psi = std::move(nf.psi);
    return out;
}

template <Scalar T>
Jet<T> normal_form(const GermClass<T>& c)
{
    Jet<T> j(c.order);
    switch (c.type) {
    case GermType::regular0: j[0] = c.a; break;
    case GermType::regular1: j[1] = c.a; break;
    case GermType::degenerate:
        j[c.k] = c.a;
        j[2 * c.k - 1] = c.d;
        break;
    case GermType::flat: break;
    }
    return j;
}

namespace {

template <Scalar T>
std::string field_model(const Jet<T>& nf)
{
    const auto p = Poly3<T>::from_jet(nf);
    const auto dp = Poly3<T>::from_jet(derive(nf));
    return "-(1+x)*(" + to_string(dp) + ")*d/dx + (" + to_string(p) + ")*d/dy";
}

}  // namespace

template <Scalar T>
FieldClassification<T> classify_field(const PlanarMuField<T>& field, const ClassifyOptions& opts)
{
    const Jet<T>& f = field.generator();
    FieldClassification<T> out;
    out.germ = classify_germ(f, opts);
    const auto& g = out.germ;
    switch (g.type) {
    case GermType::regular0:
        out.label = "X_0";
        out.model = "(" + format_scalar(g.a) + ")*d/dy";
        break;
    case GermType::regular1:
        out.label = "X_1";
        out.model = field_model(normal_form(g));
        break;
    case GermType::degenerate:
        out.label = "X_" + std::to_string(g.k) + ", a=" + format_scalar(g.a) + ", d=" + format_scalar(g.d);
        out.model = field_model(normal_form(g));
        break;
    case GermType::flat:
        out.label = "flat";
        out.model = "undetermined at order " + std::to_string(g.order);
        break;
    }
    if (is_negligible(f[0], opts.zero_tol) && is_negligible(f.coefficient(1), opts.zero_tol)) {
        out.jacobian = jacobian_at_origin(f);
    }
    return out;
}

#define MARTINET_INSTANTIATE(T)                                                                                 \
    template Jet<T> normalize_regular<T>(const Jet<T>&);                                                        \
    template DegenerateNormalForm<T> normalize_degenerate<T>(const Jet<T>&, const ClassifyOptions&);            \
    template DegenerateNormalForm<T> normalize_degenerate<T>(const Jet<T>&, std::size_t, const ClassifyOptions&); \
    template GermClass<T> classify_germ<T>(const Jet<T>&, const ClassifyOptions&);                              \
    template Jet<T> normal_form<T>(const GermClass<T>&);                                                        \
    template FieldClassification<T> classify_field<T>(const PlanarMuField<T>&, const ClassifyOptions&);

MARTINET_INSTANTIATE(double)
MARTINET_INSTANTIATE(Rational)

#undef MARTINET_INSTANTIATE

}  // namespace martinet
