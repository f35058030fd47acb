#pragma once

// Vector fields of the plane preserving mu = (1+x) dy, their 3-D lifts preserving the
// Martinet form alpha = (1+x) dy +/- z dz, and the mu-preserving diffeomorphisms that
// act on them.

#include "martinet/jet.hpp"
#include "martinet/polynomial.hpp"

#include <array>
#include <functional>

namespace martinet {

using Vec2 = std::array<double, 2>;
using Vec3 = std::array<double, 3>;

template <typename T>
using Matrix2 = std::array<std::array<T, 2>, 2>;

/// Black-box planar field (x, y) -> (X1, X2).
using PlanarFn = std::function<Vec2(double, double)>;
/// Black-box spatial field (x, y, z) -> (X1, X2, X3).
using SpatialFn = std::function<Vec3(double, double, double)>;

/// The mu-preserving field X_f = -(1+x) f'(y) d/dx + f(y) d/dy generated by f.
template <Scalar T>
class PlanarMuField {
public:
    explicit PlanarMuField(Jet<T> f) : f_(std::move(f)), df_(derive(f_)), ddf_(derive(df_)) {}

    const Jet<T>& generator() const noexcept { return f_; }
    const Jet<T>& generator_derivative() const noexcept { return df_; }

    Vec2 operator()(double x, double y) const { return {-(1.0 + x) * df_.evaluate(y), f_.evaluate(y)}; }

    /// Jacobian [[-f'(y), -(1+x) f''(y)], [0, f'(y)]].
    Matrix2<double> jacobian(double x, double y) const
    {
        const double d1 = df_.evaluate(y);
        return {{{-d1, -(1.0 + x) * ddf_.evaluate(y)}, {0.0, d1}}};
    }

    PolyField2<T> components() const
    {
        const auto one_plus_x = Poly3<T>::constant(T(1)) + Poly3<T>::variable(Var::x);
        return {-(one_plus_x * Poly3<T>::from_jet(df_)), Poly3<T>::from_jet(f_)};
    }

private:
    Jet<T> f_;
    Jet<T> df_;
    Jet<T> ddf_;
};

/// Sign of the z dz term in alpha = (1+x) dy + sign * z dz.
class MartinetForm {
public:
    explicit MartinetForm(int sign);

    int sign() const noexcept { return sign_; }

private:
    int sign_;
};

/**
    The mu-preserving diffeomorphism phi(x, y) = ((1+x)/psi'(y) - 1, psi(y)).

    psi is read as the polynomial it stores (coefficients past its order are zero)
    and must satisfy psi(0) = 0, psi'(0) = 1.
*/
template <Scalar T>
class MuDiffeo {
public:
    explicit MuDiffeo(Jet<T> psi);

    const Jet<T>& psi() const noexcept { return psi_; }

    Vec2 operator()(double x, double y) const;

    /// Analytic Jacobian of phi built from psi', psi''.
    Matrix2<double> jacobian(double x, double y) const;

private:
    Jet<T> psi_;
    Jet<T> dpsi_;
    Jet<T> ddpsi_;
};

template <Scalar T>
PlanarMuField<T> field_from_function(Jet<T> f)
{
    return PlanarMuField<T>(std::move(f));
}

/// Inverse of field_from_function for polynomial fields. Throws NotMuPreserving when the
/// Lie-derivative residual is nonzero (exact) or exceeds `tol` (floating).
template <Scalar T>
Jet<T> function_from_field(const PolyField2<T>& field, std::size_t order = default_order, double tol = 1e-12);

struct SampledFieldOptions {
    double x_radius = 0.5;
    double y_radius = 0.5;
    std::size_t residual_samples = 9;  ///< per axis
    double fd_step = 1e-5;
    double tol = 1e-6;
    std::size_t order = 8;
};

/// Black-box variant: the residual is sampled with central differences on a grid, then f(y) = X2(0, y)
/// is interpolated at Chebyshev nodes to produce a jet of `opts.order`.
Jet<double> function_from_field(const PlanarFn& field, const SampledFieldOptions& opts = {});

/// Coefficients (r_dx, r_dy) of L_X mu = d(i_X mu) + i_X d mu, computed symbolically.
template <Scalar T>
std::array<Poly3<T>, 2> lie_derivative_mu(const PolyField2<T>& field);

/// Same residual at a point with central finite differences of step h.
Vec2 lie_derivative_mu(const PlanarFn& field, double x, double y, double h = 1e-5);

/// Left-hand sides (r_dx, r_dy, r_dz) of the system L_X alpha = 0, computed symbolically.
template <Scalar T>
std::array<Poly3<T>, 3> lie_derivative_alpha(const Field3<T>& field, MartinetForm form);

Vec3 lie_derivative_alpha(const SpatialFn& field, MartinetForm form, double x, double y, double z, double h = 1e-5);

/// (X1, X2, 0) with components independent of z.
template <Scalar T>
Field3<T> lift_to_3d(const PlanarMuField<T>& field)
{
    auto c = field.components();
    return {c[0], c[1], Poly3<T>{}};
}

/// Throws InadmissiblePsi unless psi(0) = 0 and psi'(0) = 1.
template <Scalar T>
MuDiffeo<T> mu_diffeo(Jet<T> psi)
{
    return MuDiffeo<T>(std::move(psi));
}

/// Coefficients of phi^* mu - mu at (x, y); zero for every admissible psi.
template <Scalar T>
Vec2 pullback_mu_residual(const MuDiffeo<T>& phi, double x, double y);

/// g = f(psi) / psi', the generator of the field mu-conjugate to X_f via phi_psi.
/// The result has order min(order(f), order(psi)).
template <Scalar T>
Jet<T> pushforward(const Jet<T>& f, const MuDiffeo<T>& psi);

struct SampleBox {
    double x_lo = -0.5;
    double x_hi = 0.5;
    double y_lo = -0.1;
    double y_hi = 0.1;
    std::size_t nx = 10;
    std::size_t ny = 10;
};

struct ConjugacyReport {
    double max_residual = 0.0;
    Vec2 worst_point{0.0, 0.0};
    std::size_t samples = 0;
    double tol = 0.0;
    bool passed = false;
};

/// max over a uniform grid of |D phi . Y - X o phi| with X = X_f, Y = X_g, phi = mu_diffeo(psi).
template <Scalar T>
ConjugacyReport verify_conjugacy(const Jet<T>& f, const Jet<T>& g, const MuDiffeo<T>& psi,
                                 const SampleBox& box = {}, double tol = 1e-8);

/// H(x, y) = mu(X_f) = (1+x) f(y).
template <Scalar T>
Poly3<T> hamiltonian(const PlanarMuField<T>& field)
{
    const auto one_plus_x = Poly3<T>::constant(T(1)) + Poly3<T>::variable(Var::x);
    return one_plus_x * Poly3<T>::from_jet(field.generator());
}

/// Exact Jacobian of X_f at the origin: [[-f'(0), -f''(0)], [0, f'(0)]].
template <Scalar T>
Matrix2<T> jacobian_at_origin(const Jet<T>& f)
{
    const T d1 = f.coefficient(1);
    const T d2 = T(2) * f.coefficient(2);
    return {{{-d1, -d2}, {T(0), d1}}};
}

}  // namespace martinet
