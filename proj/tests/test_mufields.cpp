#include "doctest.h"

#include "martinet/mufields.hpp"
#include "oracles.hpp"

#include <random>

using namespace martinet;
using RJet = Jet<Rational>;
using P = Poly3<Rational>;

namespace {

RJet rj(std::vector<Rational> c, std::size_t order) { return RJet(std::move(c), order); }

P px(const Rational& c, unsigned i, unsigned j, unsigned k = 0) { return P::monomial(c, {i, j, k}); }

RJet random_jet(std::mt19937& rng, std::size_t order)
{
    RJet j(order);
    for (std::size_t i = 0; i <= order; ++i) {
        j[i] = oracle::random_rational(rng, 4, 3);
    }
    return j;
}

/// psi = y + small higher-order terms, so phi stays a diffeomorphism on the sample boxes.
RJet random_psi(std::mt19937& rng, std::size_t order, std::size_t degree)
{
    RJet psi = RJet::variable(order);
    for (std::size_t i = 2; i <= std::min(order, degree); ++i) {
        psi[i] = oracle::random_rational(rng, 1, 4);
    }
    return psi;
}

void check_error(ErrorCode code, auto&& fn)
{
    try {
        fn();
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == code);
    }
}

}  // namespace

TEST_CASE("field from function matches the tabulated models")
{
    const auto x0 = field_from_function(RJet::constant(2, 6));
    CHECK(x0(0.3, -0.2) == Vec2{0.0, 2.0});
    CHECK(x0.components()[0].is_zero());
    CHECK(x0.components()[1] == P::constant(2));

    const auto x1 = field_from_function(RJet::variable(6));
    CHECK(x1.components()[0] == px(-1, 0, 0) + px(-1, 1, 0));
    CHECK(x1.components()[1] == px(1, 0, 1));
    CHECK(x1(0.5, 0.25)[0] == doctest::Approx(-1.5));

    const auto x2 = field_from_function(RJet::monomial(1, 2, 6));
    CHECK(x2.components()[0] == px(-2, 0, 1) + px(-2, 1, 1));
    CHECK(x2.components()[1] == px(1, 0, 2));
}

TEST_CASE("function from field inverts the bijection")
{
    CHECK(function_from_field(PolyField2<Rational>{P{}, P::constant(2)}, 6) == RJet::constant(2, 6));
    CHECK(function_from_field(PolyField2<Rational>{px(-1, 0, 0) + px(-1, 1, 0), px(1, 0, 1)}, 6) ==
          RJet::variable(6));
    check_error(ErrorCode::not_mu_preserving,
                [] { (void)function_from_field(PolyField2<Rational>{P::constant(1), P{}}, 6); });

    std::mt19937 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const auto f = random_jet(rng, 9);
        CHECK(function_from_field(field_from_function(f).components(), 9) == f);
    }

    SUBCASE("black-box fields")
    {
        const auto f = Jet<double>::from_coeffs({0.5, 2.0, 0.0, -1.0});
        const PlanarMuField<double> field(f);
        const auto recovered = function_from_field([&](double x, double y) { return field(x, y); });
        for (std::size_t i = 0; i <= 3; ++i) {
            CHECK(recovered[i] == doctest::Approx(f[i]).epsilon(1e-8));
        }
        for (std::size_t i = 4; i <= recovered.order(); ++i) {
            CHECK(std::abs(recovered[i]) < 1e-7);
        }
        check_error(ErrorCode::not_mu_preserving,
                    [] { (void)function_from_field([](double, double) { return Vec2{1.0, 0.0}; }); });
    }
}

TEST_CASE("Lie derivative of mu")
{
    std::mt19937 rng(3);
    for (int trial = 0; trial < 25; ++trial) {
        const auto r = lie_derivative_mu(field_from_function(random_jet(rng, 8)).components());
        CHECK(r[0].is_zero());
        CHECK(r[1].is_zero());
    }

    const PlanarFn ddx = [](double, double) { return Vec2{1.0, 0.0}; };
    const PlanarFn ddy = [](double, double) { return Vec2{0.0, 1.0}; };

    SUBCASE("d/dx gives dy")
    {
        const auto r = lie_derivative_mu(PolyField2<Rational>{P::constant(1), P{}});
        CHECK(r[0].is_zero());
        CHECK(r[1] == P::constant(1));
        const Vec2 fd = lie_derivative_mu(ddx, 0.3, -0.4);
        CHECK(std::abs(fd[0]) <= 1e-10);
        CHECK(std::abs(fd[1] - 1.0) <= 1e-10);
        const Vec2 flow = oracle::flow_lie_derivative_mu(ddx, {0.3, -0.4});
        CHECK(flow[0] == doctest::Approx(0.0).epsilon(1e-6));
        CHECK(flow[1] == doctest::Approx(1.0).epsilon(1e-6));
    }

    SUBCASE("d/dy preserves mu")
    {
        // d/dy is the regular model with a = 1: the d(i_X mu) = dx term cancels i_X dmu = -dx.
        const auto r = lie_derivative_mu(PolyField2<Rational>{P{}, P::constant(1)});
        CHECK(r[0].is_zero());
        CHECK(r[1].is_zero());
        const Vec2 flow = oracle::flow_lie_derivative_mu(ddy, {0.2, 0.1});
        CHECK(std::abs(flow[0]) < 1e-6);
        CHECK(std::abs(flow[1]) < 1e-6);
    }

    SUBCASE("symbolic, finite-difference and flow residuals agree on a generic field")
    {
        // X = (x y, x + y^2): residual ((1+x), x y + 2 y (1+x))
        const PolyField2<Rational> field{px(1, 1, 1), px(1, 1, 0) + px(1, 0, 2)};
        const auto r = lie_derivative_mu(field);
        CHECK(r[0] == px(1, 0, 0) + px(1, 1, 0));
        CHECK(r[1] == px(3, 1, 1) + px(2, 0, 1));
        const PlanarFn fn = [](double x, double y) { return Vec2{x * y, x + y * y}; };
        for (Vec2 p : {Vec2{0.1, 0.2}, Vec2{-0.3, 0.5}, Vec2{0.4, -0.25}}) {
            const Vec2 fd = lie_derivative_mu(fn, p[0], p[1]);
            const Vec2 flow = oracle::flow_lie_derivative_mu(fn, p);
            CHECK(fd[0] == doctest::Approx(r[0].evaluate(p[0], p[1])).epsilon(1e-8));
            CHECK(fd[1] == doctest::Approx(r[1].evaluate(p[0], p[1])).epsilon(1e-8));
            CHECK(flow[0] == doctest::Approx(r[0].evaluate(p[0], p[1])).epsilon(1e-5));
            CHECK(flow[1] == doctest::Approx(r[1].evaluate(p[0], p[1])).epsilon(1e-5));
        }
    }
}

TEST_CASE("lift to 3-D and the Martinet residual")
{
    CHECK_THROWS_AS(MartinetForm(0), Error);

    const auto a = Rational(3, 2);
    const auto lifted0 = lift_to_3d(field_from_function(RJet::constant(a, 5)));
    CHECK(lifted0[0].is_zero());
    CHECK(lifted0[1] == P::constant(a));
    CHECK(lifted0[2].is_zero());

    const auto lifted1 = lift_to_3d(field_from_function(RJet::monomial(a, 1, 5)));
    CHECK(lifted1[0] == px(-a, 0, 0) + px(-a, 1, 0));
    CHECK(lifted1[1] == px(a, 0, 1));

    const auto zero = lift_to_3d(field_from_function(RJet(5)));
    for (const auto& c : zero) {
        CHECK(c.is_zero());
    }

    std::mt19937 rng(5);
    for (int sign : {1, -1}) {
        const MartinetForm form(sign);
        for (int trial = 0; trial < 20; ++trial) {
            for (const auto& r : lie_derivative_alpha(lift_to_3d(field_from_function(random_jet(rng, 7))), form)) {
                CHECK(r.is_zero());
            }
        }
        const auto ddz = lie_derivative_alpha(Field3<Rational>{P{}, P{}, P::constant(1)}, form);
        CHECK(ddz[0].is_zero());
        CHECK(ddz[1].is_zero());
        CHECK(ddz[2] == P::constant(sign));
        for (const auto& r : lie_derivative_alpha(Field3<Rational>{}, form)) {
            CHECK(r.is_zero());
        }
        const Vec3 fd = lie_derivative_alpha([](double, double, double) { return Vec3{0, 0, 1}; }, form, 0.1, 0.2, 0.3);
        CHECK(fd[2] == doctest::Approx(sign));
    }
}

TEST_CASE("mu-preserving diffeomorphisms")
{
    const auto id = mu_diffeo(RJet::variable(8));
    CHECK(id(0.3, -0.2)[0] == doctest::Approx(0.3));
    CHECK(id(0.3, -0.2)[1] == doctest::Approx(-0.2));

    const auto phi = mu_diffeo(rj({0, 1, 1}, 8));
    CHECK(phi(0, 0) == Vec2{0.0, 0.0});
    for (double y : {-0.2, 0.05, 0.3}) {
        CHECK(phi(0, y)[0] == doctest::Approx(1.0 / (1.0 + 2.0 * y) - 1.0));
        CHECK(phi(0, y)[1] == doctest::Approx(y + y * y));
    }

    check_error(ErrorCode::inadmissible_psi, [] { (void)mu_diffeo(RJet::monomial(2, 1, 4)); });
    check_error(ErrorCode::inadmissible_psi, [] { (void)mu_diffeo(rj({1, 1}, 4)); });

    std::mt19937 rng(9);
    std::uniform_real_distribution<double> u(-0.2, 0.2);
    for (int trial = 0; trial < 20; ++trial) {
        const auto m = mu_diffeo(random_psi(rng, 8, 6));
        for (int s = 0; s < 10; ++s) {
            const Vec2 r = pullback_mu_residual(m, u(rng), u(rng));
            CHECK(std::abs(r[0]) <= 1e-10);
            CHECK(std::abs(r[1]) <= 1e-10);
        }
    }
}

TEST_CASE("pushforward")
{
    const auto f = rj({1, -2, 0, 5}, 9);
    CHECK(pushforward(f, mu_diffeo(RJet::variable(9))) == f);

    SUBCASE("y^2 along y + y^2")
    {
        const auto g = pushforward(RJet::monomial(1, 2, 8), mu_diffeo(rj({0, 1, 1}, 8)));
        const auto expected =
            oracle::truncate(oracle::full_product({0, 0, 1, 2, 1}, oracle::geometric_inverse(2, 8)), 8);
        CHECK(oracle::Series(g.coeffs().begin(), g.coeffs().end()) == expected);
        CHECK(g[2] == 1);
        CHECK(g[3] == 0);
        CHECK(g[4] == 1);
        CHECK(g[5] == -2);
    }

    SUBCASE("the logarithm conjugacy flattens 1 + y")
    {
        // psi' = 1/(1+y): pushing the constant 1 forward gives 1/psi' = 1 + y.
        RJet log_series(12);
        for (std::size_t n = 1; n <= 12; ++n) {
            log_series[n] = Rational(n % 2 == 1 ? 1 : -1, static_cast<long>(n));
        }
        // the top coefficient would need psi beyond its stored order
        const auto g = pushforward(RJet::constant(1, 12), mu_diffeo(log_series));
        CHECK(g.with_order(11) == rj({1, 1}, 11));
    }

    SUBCASE("group action")
    {
        std::mt19937 rng(13);
        for (int trial = 0; trial < 20; ++trial) {
            const std::size_t n = 8;
            const auto g0 = random_jet(rng, n);
            const auto p1 = random_psi(rng, n, n);
            const auto p2 = random_psi(rng, n, n);
            const auto lhs = pushforward(pushforward(g0, mu_diffeo(p1)), mu_diffeo(p2));
            const auto rhs = pushforward(g0, mu_diffeo(compose(p1, p2)));
            CHECK(lhs.with_order(n - 1) == rhs.with_order(n - 1));
        }
    }

    check_error(ErrorCode::inadmissible_psi, [&] { (void)pushforward(f, mu_diffeo(RJet::monomial(2, 1, 9))); });
}

TEST_CASE("conjugacy verification")
{
    std::mt19937 rng(17);
    for (int trial = 0; trial < 10; ++trial) {
        const auto f = random_jet(rng, 8).with_order(16);
        auto psi = RJet::variable(16);
        for (std::size_t j = 2; j <= 6; ++j) {
            psi[j] = oracle::random_rational(rng, 1, 4) / static_cast<long>(j);
        }
        const auto m = mu_diffeo(psi);
        const auto report = verify_conjugacy(f, pushforward(f, m), m);
        CHECK(report.samples == 100);
        CHECK(report.passed);
        CHECK(report.max_residual <= 1e-8);
    }

    SUBCASE("the residual is the truncation error of g")
    {
        const auto f = rj({0, 0, 1, 2, -3}, 32);
        const auto psi = rj({0, 1, 1, -1, 1, 1, 1}, 32);
        double previous = 1.0;
        for (std::size_t n : {12, 16, 24, 32}) {
            const auto m = mu_diffeo(psi.with_order(n));
            const double r = verify_conjugacy(f.with_order(n), pushforward(f.with_order(n), m), m).max_residual;
            CHECK(r < previous);
            previous = r;
        }
        CHECK(previous <= 1e-13);
    }

    const auto f = rj({1, 2, 3}, 10);
    const auto same = verify_conjugacy(f, f, mu_diffeo(RJet::variable(10)));
    CHECK(same.max_residual == 0.0);
    CHECK(same.passed);

    const auto wrong = verify_conjugacy(RJet::variable(10), rj({0, 1, 1}, 10), mu_diffeo(RJet::variable(10)));
    CHECK_FALSE(wrong.passed);
    CHECK(wrong.max_residual > 1e-3);
}

TEST_CASE("Hamiltonian form")
{
    const auto one_plus_x = P::constant(1) + P::variable(Var::x);
    CHECK(hamiltonian(field_from_function(RJet::monomial(1, 2, 6))) == px(1, 0, 2) + px(1, 1, 2));
    CHECK(hamiltonian(field_from_function(RJet::constant(Rational(5, 3), 6))) == Rational(5, 3) * one_plus_x);

    std::mt19937 rng(19);
    for (int trial = 0; trial < 20; ++trial) {
        const auto field = field_from_function(random_jet(rng, 9));
        const auto h = hamiltonian(field);
        const auto c = field.components();
        CHECK(c[0] == -h.derivative(Var::y));
        CHECK(c[1] == h.derivative(Var::x));
    }
}

TEST_CASE("singular points have a nilpotent Jacobian")
{
    std::mt19937 rng(23);
    for (int trial = 0; trial < 200; ++trial) {
        auto f = random_jet(rng, 8);
        f[0] = 0;
        f[1] = 0;
        const auto j = jacobian_at_origin(f);
        CHECK(j[0][0] == 0);
        CHECK(j[1][1] == 0);
        CHECK(j[1][0] == 0);
        CHECK(j[0][1] == -2 * f[2]);
    }
    // the x-axis of a field with a double root at 0 is singular everywhere; the Jacobian stays nilpotent
    const PlanarMuField<double> x2(Jet<double>::from_coeffs({0, 0, 1, 1}));
    const auto j = x2.jacobian(0.7, 0.0);
    CHECK(j[0][0] == 0.0);
    CHECK(j[1][1] == 0.0);
    CHECK(j[0][1] == doctest::Approx(-1.7 * 2.0));
}
