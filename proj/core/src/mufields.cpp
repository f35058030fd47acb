#include "martinet/mufields.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace martinet {

MartinetForm::MartinetForm(int sign) : sign_(sign)
{
    if (sign != 1 && sign != -1) {
        throw Error(ErrorCode::invalid_argument, "Martinet form sign must be +1 or -1, got " + std::to_string(sign));
    }
}

template <Scalar T>
MuDiffeo<T>::MuDiffeo(Jet<T> psi) : psi_(std::move(psi))
{
    if (psi_[0] != 0 || psi_.order() < 1 || psi_[1] != 1) {
        throw Error(ErrorCode::inadmissible_psi, "psi must satisfy psi(0) = 0 and psi'(0) = 1");
    }
    dpsi_ = derive(psi_);
    ddpsi_ = derive(dpsi_);
}

template <Scalar T>
Vec2 MuDiffeo<T>::operator()(double x, double y) const
{
    return {(1.0 + x) / dpsi_.evaluate(y) - 1.0, psi_.evaluate(y)};
}

template <Scalar T>
Matrix2<double> MuDiffeo<T>::jacobian(double x, double y) const
{
    const double p1 = dpsi_.evaluate(y);
    const double p2 = ddpsi_.evaluate(y);
    return {{{1.0 / p1, -(1.0 + x) * p2 / (p1 * p1)}, {0.0, p1}}};
}

template <Scalar T>
std::array<Poly3<T>, 2> lie_derivative_mu(const PolyField2<T>& field)
{
    const auto one_plus_x = Poly3<T>::constant(T(1)) + Poly3<T>::variable(Var::x);
    const auto& [x1, x2] = field;
    return {one_plus_x * x2.derivative(Var::x), x1 + one_plus_x * x2.derivative(Var::y)};
}

Vec2 lie_derivative_mu(const PlanarFn& field, double x, double y, double h)
{
    const Vec2 at = field(x, y);
    const double dx_x2 = (field(x + h, y)[1] - field(x - h, y)[1]) / (2 * h);
    const double dy_x2 = (field(x, y + h)[1] - field(x, y - h)[1]) / (2 * h);
    return {(1.0 + x) * dx_x2, at[0] + (1.0 + x) * dy_x2};
}

template <Scalar T>
std::array<Poly3<T>, 3> lie_derivative_alpha(const Field3<T>& field, MartinetForm form)
{
    const auto one_plus_x = Poly3<T>::constant(T(1)) + Poly3<T>::variable(Var::x);
    const auto s = T(form.sign());
    const auto sz = s * Poly3<T>::variable(Var::z);
    const auto& [x1, x2, x3] = field;
    return {
        one_plus_x * x2.derivative(Var::x) + sz * x3.derivative(Var::x),
        x1 + one_plus_x * x2.derivative(Var::y) + sz * x3.derivative(Var::y),
        one_plus_x * x2.derivative(Var::z) + s * x3 + sz * x3.derivative(Var::z),
    };
}

Vec3 lie_derivative_alpha(const SpatialFn& field, MartinetForm form, double x, double y, double z, double h)
{
    const Vec3 at = field(x, y, z);
    auto partial = [&](int var, int comp) {
        Vec3 plus{x, y, z};
        Vec3 minus{x, y, z};
        plus[var] += h;
        minus[var] -= h;
        return (field(plus[0], plus[1], plus[2])[comp] - field(minus[0], minus[1], minus[2])[comp]) / (2 * h);
    };
    const double s = form.sign();
    return {
        (1.0 + x) * partial(0, 1) + s * z * partial(0, 2),
        at[0] + (1.0 + x) * partial(1, 1) + s * z * partial(1, 2),
        (1.0 + x) * partial(2, 1) + s * at[2] + s * z * partial(2, 2),
    };
}

template <Scalar T>
Jet<T> function_from_field(const PolyField2<T>& field, std::size_t order, double tol)
{
    for (const auto& r : lie_derivative_mu(field)) {
        const bool nonzero = scalar_traits<T>::exact ? !r.is_zero() : r.max_abs_coefficient() > tol;
        if (nonzero) {
            throw Error(ErrorCode::not_mu_preserving, "field does not preserve mu = (1+x) dy");
        }
    }
    Jet<T> f(order);
    for (const auto& [e, c] : field[1].terms()) {
        if (e[0] == 0 && e[2] == 0 && e[1] <= order) {
            f[e[1]] = c;
        }
    }
    return f;
}

Jet<double> function_from_field(const PlanarFn& field, const SampledFieldOptions& opts)
{
    const std::size_t m = std::max<std::size_t>(opts.residual_samples, 2);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            const double x = -opts.x_radius + 2 * opts.x_radius * static_cast<double>(i) / static_cast<double>(m - 1);
            const double y = -opts.y_radius + 2 * opts.y_radius * static_cast<double>(j) / static_cast<double>(m - 1);
            const Vec2 r = lie_derivative_mu(field, x, y, opts.fd_step);
            if (!std::isfinite(r[0]) || !std::isfinite(r[1]) || std::hypot(r[0], r[1]) > opts.tol) {
                throw Error(ErrorCode::not_mu_preserving, "sampled Lie-derivative residual exceeds tolerance");
            }
        }
    }

    // Newton-form interpolation of X2(0, y) at Chebyshev nodes, then expansion to monomials.
    const std::size_t n = opts.order;
    std::vector<double> nodes(n + 1);
    std::vector<double> dd(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        nodes[i] = opts.y_radius *
                   std::cos((2.0 * static_cast<double>(i) + 1.0) * std::numbers::pi / (2.0 * static_cast<double>(n + 1)));
        dd[i] = field(0.0, nodes[i])[1];
    }
    for (std::size_t level = 1; level <= n; ++level) {
        for (std::size_t i = n; i >= level; --i) {
            dd[i] = (dd[i] - dd[i - 1]) / (nodes[i] - nodes[i - level]);
        }
    }
    std::vector<double> poly{dd[n]};
    for (std::size_t i = n; i-- > 0;) {
        std::vector<double> next(poly.size() + 1, 0.0);
        for (std::size_t p = 0; p < poly.size(); ++p) {
            next[p + 1] += poly[p];
            next[p] -= nodes[i] * poly[p];
        }
        next[0] += dd[i];
        poly = std::move(next);
    }
    return Jet<double>(std::move(poly), n);
}

template <Scalar T>
Vec2 pullback_mu_residual(const MuDiffeo<T>& phi, double x, double y)
{
    // phi^* mu = (1 + phi1) (d phi2/dx dx + d phi2/dy dy)
    const Vec2 image = phi(x, y);
    const auto jac = phi.jacobian(x, y);
    const double scale = 1.0 + image[0];
    return {scale * jac[1][0], scale * jac[1][1] - (1.0 + x)};
}

template <Scalar T>
Jet<T> pushforward(const Jet<T>& f, const MuDiffeo<T>& psi)
{
    const std::size_t n = std::min(f.order(), psi.psi().order());
    const Jet<T> dpsi = derive(psi.psi().with_order(n + 1));
    return compose(f.with_order(n), psi.psi().with_order(n)) * reciprocal(dpsi);
}

template <Scalar T>
ConjugacyReport verify_conjugacy(const Jet<T>& f, const Jet<T>& g, const MuDiffeo<T>& psi, const SampleBox& box,
                                 double tol)
{
    const PlanarMuField<T> target(f);
    const PlanarMuField<T> source(g);
    ConjugacyReport report;
    report.tol = tol;
    const std::size_t nx = std::max<std::size_t>(box.nx, 1);
    const std::size_t ny = std::max<std::size_t>(box.ny, 1);
    auto lerp = [](double lo, double hi, std::size_t i, std::size_t n) {
        return n == 1 ? 0.5 * (lo + hi) : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    };
    for (std::size_t i = 0; i < nx; ++i) {
        for (std::size_t j = 0; j < ny; ++j) {
            const double x = lerp(box.x_lo, box.x_hi, i, nx);
            const double y = lerp(box.y_lo, box.y_hi, j, ny);
            const auto jac = psi.jacobian(x, y);
            const Vec2 yv = source(x, y);
            const Vec2 pushed{jac[0][0] * yv[0] + jac[0][1] * yv[1], jac[1][0] * yv[0] + jac[1][1] * yv[1]};
            const Vec2 image = psi(x, y);
            const Vec2 xv = target(image[0], image[1]);
            const double r = std::hypot(pushed[0] - xv[0], pushed[1] - xv[1]);
            ++report.samples;
            if (!(r <= report.max_residual)) {
                report.max_residual = r;
                report.worst_point = {x, y};
            }
        }
    }
    report.passed = report.max_residual <= tol;
    return report;
}

#define MARTINET_INSTANTIATE(T)                                                                                   \
    template class MuDiffeo<T>;                                                                                   \
    template std::array<Poly3<T>, 2> lie_derivative_mu<T>(const PolyField2<T>&);                                  \
    template std::array<Poly3<T>, 3> lie_derivative_alpha<T>(const Field3<T>&, MartinetForm);                     \
    template Jet<T> function_from_field<T>(const PolyField2<T>&, std::size_t, double);                            \
    template Vec2 pullback_mu_residual<T>(const MuDiffeo<T>&, double, double);                                    \
    template Jet<T> pushforward<T>(const Jet<T>&, const MuDiffeo<T>&);                                            \
    template ConjugacyReport verify_conjugacy<T>(const Jet<T>&, const Jet<T>&, const MuDiffeo<T>&, const SampleBox&, \
                                                 double);

MARTINET_INSTANTIATE(double)
MARTINET_INSTANTIATE(Rational)

#undef MARTINET_INSTANTIATE

}  // namespace martinet
