// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "martinet/martinet.hpp"
#include "oracles.hpp"

#include <fmt/format.h>

#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

using namespace martinet;
using RJet = Jet<Rational>;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point start)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Criterion 1: the table of local models.
Outcome table_reproduction()
{
    const auto start = std::chrono::steady_clock::now();
    const std::vector<std::pair<RJet, std::string>> cases{
        {RJet::constant(5, default_order), "X_0"},
        {RJet::monomial(3, 1, default_order), "X_1"},
        {RJet::monomial(1, 2, default_order), "X_2, a=1, d=0"},
        {RJet(std::vector<Rational>{0, 0, 1, 7}, default_order), "X_2, a=1, d=7"},
        {RJet::monomial(1, 3, default_order), "X_3, a=1, d=0"},
    };
    bool ok = true;
    std::string labels;
    for (const auto& [f, expected] : cases) {
        const auto label = classify_field(field_from_function(f)).label;
        ok = ok && label == expected;
        labels += (labels.empty() ? "" : " | ") + label;
    }
    const double t = seconds_since(start);
    ok = ok && t < 1.0;
    return {ok, fmt::format("labels [{}], {:.3f} s (limit 1 s)", labels, t)};
}

// Criterion 2: singular germs have a nilpotent linear part.
Outcome no_hyperbolic_singularities()
{
    std::mt19937 rng(2);
    std::size_t nilpotent = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        RJet f(8);
        for (std::size_t i = 2; i <= 8; ++i) {
            f[i] = oracle::random_rational(rng, 9, 5);
        }
        const auto j = jacobian_at_origin(f);
        // upper triangular with zero diagonal: both eigenvalues are exactly 0
        if (j[0][0] == 0 && j[1][1] == 0 && j[1][0] == 0) {
            ++nilpotent;
        }
    }
    return {nilpotent == 1000, fmt::format("{}/1000 Jacobians with exact double-zero spectrum", nilpotent)};
}

struct Pair {
    std::size_t k;
    RJet f;
    RJet psi;
};

/// The shared (f, psi) sample for criteria 3 and 4: N = 2k + 4, psi close to the identity.
const std::vector<Pair>& invariance_pairs()
{
    static const std::vector<Pair> pairs = [] {
        std::mt19937 rng(3);
        std::vector<Pair> out;
        for (int trial = 0; trial < 200; ++trial) {
            const std::size_t k = trial % 2 == 0 ? 2 : 3;
            const std::size_t n = 2 * k + 4;
            RJet f(n);
            f[k] = oracle::random_nonzero_rational(rng, 5, 4);
            for (std::size_t i = k + 1; i <= n; ++i) {
                f[i] = oracle::random_rational(rng, 5, 4);
            }
            RJet psi = RJet::variable(n);
            for (std::size_t i = 2; i <= n; ++i) {
                psi[i] = oracle::random_rational(rng, 1, 2);
            }
            out.push_back({k, f, psi});
        }
        return out;
    }();
    return pairs;
}

// Criterion 3: (k, a, d) survive conjugation.
Outcome invariance()
{
    std::size_t exact_ok = 0;
    double worst = 0.0;
    std::size_t float_k_ok = 0;
    for (const auto& p : invariance_pairs()) {
        const auto cf = classify_germ(p.f);
        const auto cg = classify_germ(pushforward(p.f, mu_diffeo(p.psi)));
        if (cf.k == cg.k && cf.a == cg.a && cf.d == cg.d && cf.k == p.k) {
            ++exact_ok;
        }
        const auto ff = to_floating(p.f);
        const auto gf = classify_germ(pushforward(ff, mu_diffeo(to_floating(p.psi))));
        if (gf.k == cf.k) {
            ++float_k_ok;
        }
        worst = std::max({worst, std::abs(gf.a - to_double(cf.a)), std::abs(gf.d - to_double(cf.d))});
    }
    const bool ok = exact_ok == 200 && float_k_ok == 200 && worst <= 1e-9;
    return {ok, fmt::format("exact agreement {}/200, floating k agreement {}/200, max floating deviation {:.3e} "
                            "(limit 1e-9)",
                            exact_ok, float_k_ok, worst)};
}

// Criterion 4: the conjugacy holds pointwise.
Outcome conjugacy_verification()
{
    // Only the order-16 check decides the outcome; order 40 shows how much of the residual is truncation of g.
    auto check = [](const Pair& p, std::size_t order) {
        const auto f = p.f.with_order(order);
        const auto m = mu_diffeo(p.psi.with_order(order));
        return verify_conjugacy(f, pushforward(f, m), m);
    };
    double worst = 0.0;
    double worst_40 = 0.0;
    std::size_t passed = 0;
    std::size_t samples = 0;
    for (const auto& p : invariance_pairs()) {
        const auto r = check(p, default_order);
        worst = std::max(worst, r.max_residual);
        samples = r.samples;
        passed += r.max_residual <= 1e-8 ? 1 : 0;
        worst_40 = std::max(worst_40, check(p, 40).max_residual);
    }
    return {passed == 200 && samples == 100,
            fmt::format("{}/200 pairs within 1e-8 on {} samples at N=16, max residual {:.3e} (at N=40: {:.3e})",
                        passed, samples, worst, worst_40)};
}

// Criterion 5: 1 + y flattens with the logarithm.
Outcome regular_flattening()
{
    const auto exact = normalize_regular(RJet(std::vector<Rational>{1, 1}, 12));
    const auto floating = normalize_regular(Jet<double>(std::vector<double>{1, 1}, 12));
    bool exact_ok = true;
    double err = 0.0;
    for (std::size_t n = 1; n <= 12; ++n) {
        const Rational log_n(n % 2 == 1 ? 1 : -1, static_cast<long>(n));
        exact_ok = exact_ok && exact[n] == log_n;
        err = std::max(err, std::abs(floating[n] - to_double(log_n)));
    }
    const auto product = RJet(std::vector<Rational>{1, 1}, 11) * derive(exact);
    const bool identity = product == RJet::constant(1, 11);
    return {exact_ok && identity && err < 1e-12,
            fmt::format("rational series exact: {}, floating max error {:.3e} (limit 1e-12), f*psi' = 1: {}",
                        exact_ok, err, identity)};
}

// Criterion 6: Lie-derivative residuals.
Outcome lie_derivatives()
{
    std::mt19937 rng(6);
    std::size_t zero = 0;
    for (int trial = 0; trial < 100; ++trial) {
        RJet f(10);
        for (std::size_t i = 0; i <= 10; ++i) {
            f[i] = oracle::random_rational(rng, 9, 5);
        }
        const auto field = field_from_function(f);
        bool ok = true;
        for (const auto& r : lie_derivative_mu(field.components())) {
            ok = ok && r.is_zero();
        }
        for (int sign : {1, -1}) {
            for (const auto& r : lie_derivative_alpha(lift_to_3d(field), MartinetForm(sign))) {
                ok = ok && r.is_zero();
            }
        }
        zero += ok ? 1 : 0;
    }
    const Vec2 r = lie_derivative_mu([](double, double) { return Vec2{1.0, 0.0}; }, 0.3, -0.2);
    const double dev = std::max(std::abs(r[0]), std::abs(r[1] - 1.0));
    return {zero == 100 && dev <= 1e-10,
            fmt::format("{}/100 jets with zero mu and alpha residuals (both signs); d/dx residual ({:.3g}, {:.15g}), "
                        "deviation {:.3e} (limit 1e-10)",
                        zero, r[0], r[1], dev)};
}

// Criterion 7: equilibrium counts on x = -1.
Outcome equilibrium_counts()
{
    const auto one = equilibria_on_line(2, 1.0, {1.0, 1.0});
    const auto three = equilibria_on_line(2, 1.0, {-0.02, 1.0});
    bool ok = one.size() == 1 && three.size() == 3;
    const std::array<std::array<double, 2>, 3> brackets{{{-1.0, -0.2}, {-0.2, 0.0}, {0.0, 0.2}}};
    double worst = 0.0;
    std::string roots;
    if (three.size() == 3) {
        for (std::size_t i = 0; i < 3; ++i) {
            const double y = three[i].point[1];
            ok = ok && y > brackets[i][0] && y < brackets[i][1] && three[i].point[0] == -1.0;
            worst = std::max(worst, three[i].residual);
            roots += fmt::format("{}{:.12f}", i == 0 ? "" : ", ", y);
        }
    }
    ok = ok && worst <= 1e-10;
    return {ok, fmt::format("l1=1: {} equilibrium; l1=-0.02: {} equilibria at y = [{}], max |p(y)| {:.3e}",
                            one.size(), three.size(), roots, worst)};
}

// Criterion 8: the saddle of X2 and its crossing of the fixed axis.
Outcome saddle()
{
    const auto eq = equilibria_on_line(2, 1.0, {0.0, 1.0});
    const auto it = std::find_if(eq.begin(), eq.end(), [](const EquilibriumReport& e) {
        return std::abs(e.point[1] + 1.0) < 1e-9;
    });
    bool ok = it != eq.end();
    double ev_err = 1.0;
    if (ok) {
        ev_err = std::max(std::abs(it->eigenvalues[0] - std::complex<double>(-1.0)),
                          std::abs(it->eigenvalues[1] - std::complex<double>(1.0)));
        ok = it->type == EquilibriumType::saddle && ev_err <= 1e-12 && it->point[0] == -1.0;
    }
    const auto lines = fixed_line_detect(f2_generator(1.0, 0.0, 1.0));
    const bool axis = lines && !lines->everywhere && lines->y_values.size() == 1 && lines->y_values[0] == 0.0;

    // a-sweep at l1 = 0, l2 = 1: the saddle sits at y = -a, above the axis for a < 0 and below for a > 0
    bool crossing = true;
    bool merged = false;
    for (const auto& s : a_sweep(0.0, 1.0, -1.0, 1.0, 21)) {
        const auto sad = std::find_if(s.equilibria.begin(), s.equilibria.end(),
                                      [](const EquilibriumReport& e) { return e.type == EquilibriumType::saddle; });
        if (std::abs(s.value) < 1e-12) {
            merged = sad == s.equilibria.end();
            continue;
        }
        crossing = crossing && s.fixed_x_axis && sad != s.equilibria.end() &&
                   std::abs(sad->point[1] + s.value) <= 1e-10 && (sad->point[1] > 0) == (s.value < 0);
    }
    return {ok && axis && crossing && merged,
            fmt::format("saddle at (-1,-1) with eigenvalue error {:.3e} (limit 1e-12); x-axis fixed line: {}; "
                        "a-sweep saddle at y=-a crossing the axis: {}, merged at a=0: {}",
                        ev_err, axis, crossing, merged)};
}

// Criterion 9: bifurcation sweep.
Outcome bifurcation()
{
    const auto start = std::chrono::steady_clock::now();
    const auto d = bifurcation_sweep(1.0, 1.0, -0.2, 0.2, 401);
    const double t = seconds_since(start);
    bool ok = d.critical.size() == 2;
    double err = 1.0;
    std::string counts;
    if (ok) {
        err = std::max(std::abs(d.critical[0] + 4.0 / 27.0), std::abs(d.critical[1]));
        std::vector<std::size_t> regimes;
        for (std::size_t i = 0; i < d.l1.size(); ++i) {
            const double l = d.l1[i];
            if (std::abs(l - d.critical[0]) < 1e-6 || std::abs(l - d.critical[1]) < 1e-6) {
                continue;
            }
            if (regimes.empty() || regimes.back() != d.counts[i]) {
                regimes.push_back(d.counts[i]);
            }
        }
        for (std::size_t c : regimes) {
            counts += (counts.empty() ? "" : "/") + std::to_string(c);
        }
        ok = err <= 1e-6 && counts == "1/3/1" && t < 5.0;
    }
    return {ok, fmt::format("critical l1 = [{}], max error {:.3e} (limit 1e-6), counts {}, {:.3f} s (limit 5 s)",
                            fmt::join(d.critical, ", "), err, counts, t)};
}

// Criterion 10: RK4 quality and portrait cost and stability.
Outcome integrator()
{
    const auto field = f2_family(1.0, 0.0, 1.0);
    TrajectoryOptions o;
    o.t_end = 5.0;
    o.step = 1e-3;
    const auto coarse = integrate_trajectory(field, {0.0, 0.5}, o);
    o.step = 5e-4;
    const auto fine = integrate_trajectory(field, {0.0, 0.5}, o);
    const double dh = *coarse.max_hamiltonian_drift;
    const double ratio = dh / *fine.max_hamiltonian_drift;

    auto render = [] {
        std::ostringstream s;
        const auto p = phase_portrait(f2_generator(1.0, 0.0, 1.0));
        write_svg(p, s);
        write_csv(p, s);
        return s.str();
    };
    const auto start = std::chrono::steady_clock::now();
    const std::string first = render();
    const double t = seconds_since(start);
    const bool stable = render() == first;

    const bool ok = dh <= 1e-8 && ratio >= 12.0 && t < 5.0 && stable;
    return {ok, fmt::format("max |dH| {:.3e} at step 1e-3 (limit 1e-8; path {} at t = {:.4f}), halving ratio {:.2f} "
                            "(limit 12), 20x20 portrait {:.3f} s (limit 5 s), byte-stable: {}",
                            dh, to_string(coarse.status), coarse.times.back(), ratio, t, stable)};
}

}  // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"local model table", table_reproduction},
        {"no hyperbolic singularities", no_hyperbolic_singularities},
        {"(k, a, d) invariance", invariance},
        {"conjugacy verification", conjugacy_verification},
        {"regular flattening", regular_flattening},
        {"Lie-derivative residuals", lie_derivatives},
        {"equilibrium counts", equilibrium_counts},
        {"X2 saddle", saddle},
        {"bifurcation sweep", bifurcation},
        {"integrator quality", integrator},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome r;
        try {
            r = criteria[i].second();
        } catch (const std::exception& e) {
            r = {false, std::string("exception: ") + e.what()};
        }
        failures += r.pass ? 0 : 1;
        fmt::print("{} criterion {:>2} ({}): {}\n", r.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, r.detail);
    }
    fmt::print("{}/{} criteria passed\n", criteria.size() - static_cast<std::size_t>(failures), criteria.size());
    return failures == 0 ? 0 : 1;
}
