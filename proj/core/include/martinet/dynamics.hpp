#pragma once

// Phase-space analysis of mu-preserving fields and their unfoldings: equilibria on the
// invariant line x = -1, lines of fixed points, RK4 trajectories with Hamiltonian
// drift, phase portraits and parameter sweeps.

#include "martinet/jet.hpp"
#include "martinet/mufields.hpp"
#include "martinet/roots.hpp"
#include "martinet/unfold.hpp"

#include <complex>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

namespace martinet {

enum class EquilibriumType { saddle, node, focus, degenerate, on_fixed_line };

std::string_view to_string(EquilibriumType type) noexcept;

struct EquilibriumReport {
    Vec2 point{0.0, 0.0};
    std::array<std::complex<double>, 2> eigenvalues{};
    EquilibriumType type = EquilibriumType::degenerate;
    double residual = 0.0;  ///< |X(point)|
    int multiplicity = 1;   ///< multiplicity of the y-root of the generator
};

/// Equilibrium data for X_f at `point`. Repeated roots and zero eigenvalues are typed degenerate.
EquilibriumReport describe_equilibrium(const PlanarMuField<double>& field, Vec2 point, int multiplicity = 1,
                                       double zero_eigenvalue_tol = 1e-8);

/// Equilibria (-1, y*) for every real root y* of f in [opts.lo, opts.hi]. The x-component
/// vanishes identically on x = -1, so these are all equilibria on that line.
std::vector<EquilibriumReport> equilibria_on_line(const Jet<double>& f, const RootOptions& opts = {});

std::vector<EquilibriumReport> equilibria_on_line(std::size_t k, double a, const std::vector<double>& lambdas,
                                                  const RootOptions& opts = {});

/// Horizontal lines y = y* of fixed points, one per repeated root of f; `everywhere` for f = 0.
struct FixedLines {
    bool everywhere = false;
    std::vector<double> y_values;
};

/// nullopt when the field has no line of fixed points.
std::optional<FixedLines> fixed_line_detect(const Jet<double>& f, const RootOptions& opts = {});

struct Box {
    double x_lo = -5.0;
    double x_hi = 5.0;
    double y_lo = -5.0;
    double y_hi = 5.0;

    bool contains(Vec2 p) const noexcept
    {
        return p[0] >= x_lo && p[0] <= x_hi && p[1] >= y_lo && p[1] <= y_hi;
    }
};

enum class TrajectoryStatus { completed, left_box, non_finite, step_limit };

std::string_view to_string(TrajectoryStatus status) noexcept;

struct TrajectoryOptions {
    double t_end = 1.0;  ///< negative integrates backward in time
    double step = 1e-3;
    Box box{};
    std::size_t max_steps = 0;     ///< 0 means unlimited
    std::size_t record_every = 1;  ///< store every n-th state (the final state is always stored)
};

struct Trajectory {
    std::vector<double> times;
    std::vector<Vec2> points;
    TrajectoryStatus status = TrajectoryStatus::completed;
    /// max |H(p(t)) - H(p(0))| over every accepted step, when a Hamiltonian was supplied.
    std::optional<double> max_hamiltonian_drift;
};

using ScalarFn = std::function<double(double, double)>;

/// Fixed-step classical RK4. Stops (keeping the partial path) when a step would leave
/// `opts.box` or produce a non-finite state.
Trajectory integrate_trajectory(const PlanarFn& field, Vec2 start, const TrajectoryOptions& opts,
                                const ScalarFn& hamiltonian = {});

/// Convenience overload for f-generated fields; drift is measured against H = (1+x) f(y).
Trajectory integrate_trajectory(const PlanarMuField<double>& field, Vec2 start, const TrajectoryOptions& opts);

struct PortraitOptions {
    Box window{-2.0, 1.0, -2.0, 2.0};
    std::size_t grid = 20;  ///< seeds per axis
    double step = 1e-2;
    std::size_t max_steps = 2000;  ///< per time direction
    std::size_t record_every = 5;
    unsigned threads = 0;  ///< 0 picks hardware concurrency
};

struct PortraitCurve {
    std::size_t seed_index = 0;
    Vec2 seed{0.0, 0.0};
    std::vector<double> times;
    std::vector<Vec2> points;
};

struct Portrait {
    Box window;
    std::vector<PortraitCurve> curves;  ///< ordered by seed index
    std::vector<EquilibriumReport> equilibria;
    std::optional<FixedLines> fixed_lines;
    std::size_t seeds = 0;
    std::size_t failed_seeds = 0;
};

/// Trajectories through a uniform seed grid in both time directions, with equilibria on
/// x = -1 and fixed lines as overlays. Output is independent of the thread count.
Portrait phase_portrait(const Jet<double>& f, const PortraitOptions& opts = {});

/// 800x800 SVG: trajectories as polylines, fixed lines dotted, x = -1 dashed, equilibria as
/// filled circles (saddle red, node blue, degenerate black).
void write_svg(const Portrait& portrait, std::ostream& out);

/// Header "curve,t,x,y"; one row per stored vertex, 17 significant digits.
void write_csv(const Portrait& portrait, std::ostream& out);

struct BifurcationDiagram {
    std::vector<double> l1;
    std::vector<std::size_t> counts;  ///< distinct equilibria on x = -1
    std::vector<double> critical;     ///< ascending
};

struct SweepOptions {
    RootOptions roots{};
    double critical_tol = 1e-6;
};

/// Equilibrium counts of F2(a, l1, l2) on x = -1 for l1 sampled uniformly over [l1_lo, l1_hi];
/// every count change between neighbouring samples is refined by bisection to `critical_tol`.
BifurcationDiagram bifurcation_sweep(double a, double l2, double l1_lo, double l1_hi, std::size_t samples,
                                     const SweepOptions& opts = {});

struct ParameterSample {
    double value = 0.0;
    std::vector<EquilibriumReport> equilibria;
    bool fixed_x_axis = false;
};

/// Equilibria of F2(a, l1, l2) on x = -1 as a sweeps [a_lo, a_hi].
std::vector<ParameterSample> a_sweep(double l1, double l2, double a_lo, double a_hi, std::size_t samples,
                                     const RootOptions& opts = {});

}  // namespace martinet
