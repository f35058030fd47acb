#include "martinet/unfold.hpp"

#include <string>

namespace martinet {

template <Scalar T>
void UnfoldingFamily<T>::validate() const
{
    if (k < 2) {
        throw Error(ErrorCode::invalid_argument, "unfolding needs k >= 2");
    }
    if (a == 0) {
        throw Error(ErrorCode::invalid_argument, "unfolding needs a != 0");
    }
    if (lambdas.size() != k) {
        throw Error(ErrorCode::bad_arity, "expected " + std::to_string(k) + " parameters, got " +
                                              std::to_string(lambdas.size()));
    }
}

template <Scalar T>
Jet<T> unfold_1d(std::size_t k, const T& a, const std::vector<T>& lambdas)
{
    UnfoldingFamily<T>{k, a, lambdas}.validate();
    Jet<T> f(2 * k - 1);
    f[k] += a;
    for (std::size_t i = 1; i <= k - 1; ++i) {
        f[k - 1 - i] += lambdas[i - 1];
    }
    f[2 * k - 1] += lambdas[k - 1];
    return f;
}

template <Scalar T>
PolyField2<T> unfold_planar(std::size_t k, const T& a, const std::vector<T>& lambdas)
{
    UnfoldingFamily<T>{k, a, lambdas}.validate();
    using P = Poly3<T>;
    auto y_pow = [](const T& c, std::size_t p) { return P::monomial(c, {0, static_cast<unsigned>(p), 0}); };

    P bracket = y_pow(a * T(static_cast<long>(k)), k - 1);
    for (std::size_t i = 1; i + 1 < k; ++i) {
        bracket = bracket + y_pow(T(static_cast<long>(k - 1 - i)) * lambdas[i - 1], k - 2 - i);
    }
    bracket = bracket + y_pow(T(static_cast<long>(2 * k - 1)) * lambdas[k - 1], 2 * k - 2);

    P y_component = y_pow(a, k) + y_pow(lambdas[k - 1], 2 * k - 1);
    for (std::size_t i = 1; i <= k - 1; ++i) {
        y_component = y_component + y_pow(lambdas[i - 1], k - 1 - i);
    }

    const P one_plus_x = P::constant(T(1)) + P::variable(Var::x);
    return {-(one_plus_x * bracket), y_component};
}

Jet<double> f2_generator(double a, double l1, double l2)
{
    return Jet<double>::from_coeffs({l1, 0.0, a, l2});
}

PlanarMuField<double> f2_family(double a, double l1, double l2)
{
    return PlanarMuField<double>(f2_generator(a, l1, l2));
}

#define MARTINET_INSTANTIATE(T)                                                                 \
    template struct UnfoldingFamily<T>;                                                         \
    template Jet<T> unfold_1d<T>(std::size_t, const T&, const std::vector<T>&);                 \
    template PolyField2<T> unfold_planar<T>(std::size_t, const T&, const std::vector<T>&);

MARTINET_INSTANTIATE(double)
MARTINET_INSTANTIATE(Rational)

#undef MARTINET_INSTANTIATE

}  // namespace martinet
