#include "martinet/dynamics.hpp"

#include <algorithm>
#include <cmath>

namespace martinet {

std::string_view to_string(EquilibriumType type) noexcept
{
    switch (type) {
    case EquilibriumType::saddle: return "saddle";
    case EquilibriumType::node: return "node";
    case EquilibriumType::focus: return "focus";
    case EquilibriumType::degenerate: return "degenerate";
    case EquilibriumType::on_fixed_line: return "on-fixed-line";
    }
    return "unknown";
}

std::string_view to_string(TrajectoryStatus status) noexcept
{
    switch (status) {
    case TrajectoryStatus::completed: return "completed";
    case TrajectoryStatus::left_box: return "left_box";
    case TrajectoryStatus::non_finite: return "non_finite";
    case TrajectoryStatus::step_limit: return "step_limit";
    }
    return "unknown";
}

EquilibriumReport describe_equilibrium(const PlanarMuField<double>& field, Vec2 point, int multiplicity,
                                       double zero_eigenvalue_tol)
{
    EquilibriumReport r;
    r.point = point;
    r.multiplicity = multiplicity;
    const Vec2 v = field(point[0], point[1]);
    r.residual = std::hypot(v[0], v[1]);

    const auto j = field.jacobian(point[0], point[1]);
    const double tr = j[0][0] + j[1][1];
    const double det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
    const std::complex<double> disc = std::sqrt(std::complex<double>(tr * tr - 4.0 * det, 0.0));
    r.eigenvalues = {0.5 * (tr - disc), 0.5 * (tr + disc)};

    const auto& [l0, l1] = r.eigenvalues;
    const bool real = l0.imag() == 0.0 && l1.imag() == 0.0;
    if (multiplicity >= 2 && point[0] != -1.0) {
        r.type = EquilibriumType::on_fixed_line;
    } else if (multiplicity >= 2 || std::abs(l0) < zero_eigenvalue_tol || std::abs(l1) < zero_eigenvalue_tol) {
        r.type = EquilibriumType::degenerate;
    } else if (real && (l0.real() < 0) != (l1.real() < 0)) {
        r.type = EquilibriumType::saddle;
    } else if (real) {
        r.type = EquilibriumType::node;
    } else if (l0.real() != 0.0) {
        r.type = EquilibriumType::focus;
    } else {
        r.type = EquilibriumType::degenerate;
    }
    return r;
}

std::vector<EquilibriumReport> equilibria_on_line(const Jet<double>& f, const RootOptions& opts)
{
    const PlanarMuField<double> field(f);
    std::vector<EquilibriumReport> out;
    for (const auto& root : real_roots(f.coeffs(), opts)) {
        out.push_back(describe_equilibrium(field, {-1.0, root.value}, root.multiplicity, opts.multiplicity_tol));
    }
    return out;
}

std::vector<EquilibriumReport> equilibria_on_line(std::size_t k, double a, const std::vector<double>& lambdas,
                                                  const RootOptions& opts)
{
    return equilibria_on_line(unfold_1d(k, a, lambdas), opts);
}

std::optional<FixedLines> fixed_line_detect(const Jet<double>& f, const RootOptions& opts)
{
    if (f.is_zero()) {
        return FixedLines{true, {}};
    }
    FixedLines lines;
    for (const auto& root : real_roots(f.coeffs(), opts)) {
        if (root.multiplicity >= 2) {
            lines.y_values.push_back(root.value);
        }
    }
    if (lines.y_values.empty()) {
        return std::nullopt;
    }
    return lines;
}

namespace {

bool finite(Vec2 p) { return std::isfinite(p[0]) && std::isfinite(p[1]); }

Vec2 axpy(Vec2 p, double h, Vec2 k) { return {p[0] + h * k[0], p[1] + h * k[1]}; }

}  // namespace

Trajectory integrate_trajectory(const PlanarFn& field, Vec2 start, const TrajectoryOptions& opts,
                                const ScalarFn& hamiltonian)
{
    if (!(opts.step > 0.0)) {
        throw Error(ErrorCode::invalid_argument, "integration step must be positive");
    }
    Trajectory tr;
    const double direction = opts.t_end < 0.0 ? -1.0 : 1.0;
    const double span = std::abs(opts.t_end);
    const std::size_t record_every = std::max<std::size_t>(opts.record_every, 1);
    const double h0 = hamiltonian ? hamiltonian(start[0], start[1]) : 0.0;
    if (hamiltonian) {
        tr.max_hamiltonian_drift = 0.0;
    }

    tr.times.push_back(0.0);
    tr.points.push_back(start);
    if (!finite(start)) {
        tr.status = TrajectoryStatus::non_finite;
        return tr;
    }

    auto eval = [&field](Vec2 q) { return field(q[0], q[1]); };
    Vec2 p = start;
    double t = 0.0;
    std::size_t n = 0;
    bool last_recorded = true;
    while (t < span * (1.0 - 1e-12)) {
        if (opts.max_steps != 0 && n >= opts.max_steps) {
            tr.status = TrajectoryStatus::step_limit;
            break;
        }
        const double h = std::min(opts.step, span - t) * direction;
        const Vec2 k1 = eval(p);
        const Vec2 k2 = eval(axpy(p, 0.5 * h, k1));
        const Vec2 k3 = eval(axpy(p, 0.5 * h, k2));
        const Vec2 k4 = eval(axpy(p, h, k3));
        const Vec2 next{p[0] + h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
                        p[1] + h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1])};
        if (!finite(next)) {
            tr.status = TrajectoryStatus::non_finite;
            break;
        }
        if (!opts.box.contains(next)) {
            tr.status = TrajectoryStatus::left_box;
            break;
        }
        p = next;
        t += std::abs(h);
        ++n;
        if (hamiltonian) {
            tr.max_hamiltonian_drift =
                std::max(*tr.max_hamiltonian_drift, std::abs(hamiltonian(p[0], p[1]) - h0));
        }
        last_recorded = n % record_every == 0;
        if (last_recorded) {
            tr.times.push_back(direction * t);
            tr.points.push_back(p);
        }
    }
    if (!last_recorded) {
        tr.times.push_back(direction * t);
        tr.points.push_back(p);
    }
    return tr;
}

Trajectory integrate_trajectory(const PlanarMuField<double>& field, Vec2 start, const TrajectoryOptions& opts)
{
    const Jet<double>& f = field.generator();
    return integrate_trajectory(
        [&field](double x, double y) { return field(x, y); }, start, opts,
        [&f](double x, double y) { return (1.0 + x) * f.evaluate(y); });
}

BifurcationDiagram bifurcation_sweep(double a, double l2, double l1_lo, double l1_hi, std::size_t samples,
                                     const SweepOptions& opts)
{
    if (samples < 2) {
        throw Error(ErrorCode::invalid_argument, "a sweep needs at least 2 samples");
    }
    auto count = [&](double l1) { return real_roots(f2_generator(a, l1, l2).coeffs(), opts.roots).size(); };

    BifurcationDiagram diagram;
    for (std::size_t i = 0; i < samples; ++i) {
        const double l1 = l1_lo + (l1_hi - l1_lo) * static_cast<double>(i) / static_cast<double>(samples - 1);
        diagram.l1.push_back(l1);
        diagram.counts.push_back(count(l1));
    }
    for (std::size_t i = 0; i + 1 < samples; ++i) {
        if (diagram.counts[i] == diagram.counts[i + 1]) {
            continue;
        }
        double lo = diagram.l1[i];
        double hi = diagram.l1[i + 1];
        const std::size_t left = diagram.counts[i];
        while (hi - lo > opts.critical_tol) {
            const double mid = 0.5 * (lo + hi);
            (count(mid) == left ? lo : hi) = mid;
        }
        const double c = 0.5 * (lo + hi);
        // A sample sitting exactly on a critical value shows up as two neighbouring changes.
        if (diagram.critical.empty() || c - diagram.critical.back() > 2.0 * opts.critical_tol) {
            diagram.critical.push_back(c);
        }
    }
    return diagram;
}

std::vector<ParameterSample> a_sweep(double l1, double l2, double a_lo, double a_hi, std::size_t samples,
                                     const RootOptions& opts)
{
    if (samples < 2) {
        throw Error(ErrorCode::invalid_argument, "a sweep needs at least 2 samples");
    }
    std::vector<ParameterSample> out;
    for (std::size_t i = 0; i < samples; ++i) {
        const double a = a_lo + (a_hi - a_lo) * static_cast<double>(i) / static_cast<double>(samples - 1);
        const Jet<double> f = f2_generator(a, l1, l2);
        ParameterSample s;
        s.value = a;
        s.equilibria = equilibria_on_line(f, opts);
        if (auto lines = fixed_line_detect(f, opts)) {
            s.fixed_x_axis = lines->everywhere ||
                             std::any_of(lines->y_values.begin(), lines->y_values.end(),
                                         [](double y) { return std::abs(y) < 1e-9; });
        }
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace martinet
