#include "martinet/dynamics.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <algorithm>
#include <cmath>
#include <future>
#include <ostream>
#include <thread>

namespace martinet {

namespace {

PortraitCurve trace_seed(const PlanarMuField<double>& field, std::size_t index, Vec2 seed,
                         const PortraitOptions& opts, bool& failed)
{
    PortraitCurve curve;
    curve.seed_index = index;
    curve.seed = seed;

    TrajectoryOptions topts;
    topts.step = opts.step;
    topts.box = opts.window;
    topts.max_steps = opts.max_steps;
    topts.record_every = opts.record_every;
    topts.t_end = opts.step * static_cast<double>(opts.max_steps);
    const PlanarFn fn = [&field](double x, double y) { return field(x, y); };

    const Trajectory forward = integrate_trajectory(fn, seed, topts);
    topts.t_end = -topts.t_end;
    const Trajectory backward = integrate_trajectory(fn, seed, topts);
    failed = forward.status == TrajectoryStatus::non_finite || backward.status == TrajectoryStatus::non_finite;

    for (std::size_t i = backward.points.size(); i-- > 1;) {
        curve.times.push_back(backward.times[i]);
        curve.points.push_back(backward.points[i]);
    }
    curve.times.insert(curve.times.end(), forward.times.begin(), forward.times.end());
    curve.points.insert(curve.points.end(), forward.points.begin(), forward.points.end());
    return curve;
}

}  // namespace

Portrait phase_portrait(const Jet<double>& f, const PortraitOptions& opts)
{
    const Box& w = opts.window;
    if (!(w.x_lo < w.x_hi && w.y_lo < w.y_hi) || !std::isfinite(w.x_lo) || !std::isfinite(w.x_hi) ||
        !std::isfinite(w.y_lo) || !std::isfinite(w.y_hi)) {
        throw Error(ErrorCode::invalid_argument, "portrait window must be a finite, non-empty rectangle");
    }
    if (opts.grid == 0) {
        throw Error(ErrorCode::invalid_argument, "portrait seed grid must be positive");
    }

    Portrait portrait;
    portrait.window = w;
    RootOptions roots;
    roots.lo = w.y_lo;
    roots.hi = w.y_hi;
    portrait.fixed_lines = fixed_line_detect(f, roots);
    if (w.x_lo <= -1.0 && -1.0 <= w.x_hi && !f.is_zero()) {
        portrait.equilibria = equilibria_on_line(f, roots);
    }

    const std::size_t n = opts.grid;
    portrait.seeds = n * n;
    std::vector<Vec2> seeds;
    seeds.reserve(portrait.seeds);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            // Cell centres keep seeds off the window boundary.
            const double x = w.x_lo + (w.x_hi - w.x_lo) * (static_cast<double>(i) + 0.5) / static_cast<double>(n);
            const double y = w.y_lo + (w.y_hi - w.y_lo) * (static_cast<double>(j) + 0.5) / static_cast<double>(n);
            seeds.push_back({x, y});
        }
    }

    portrait.curves.resize(seeds.size());
    if (portrait.fixed_lines && portrait.fixed_lines->everywhere) {
        for (std::size_t s = 0; s < seeds.size(); ++s) {
            portrait.curves[s] = PortraitCurve{s, seeds[s], {0.0}, {seeds[s]}};
        }
        return portrait;
    }

    const PlanarMuField<double> field(f);
    std::vector<char> failed(seeds.size(), 0);
    unsigned workers = opts.threads != 0 ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, seeds.size()));
    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t s = begin; s < end; ++s) {
            bool bad = false;
            portrait.curves[s] = trace_seed(field, s, seeds[s], opts, bad);
            failed[s] = bad ? 1 : 0;
        }
    };
    if (workers <= 1) {
        work(0, seeds.size());
    } else {
        std::vector<std::future<void>> jobs;
        const std::size_t chunk = (seeds.size() + workers - 1) / workers;
        for (std::size_t begin = 0; begin < seeds.size(); begin += chunk) {
            jobs.push_back(std::async(std::launch::async, work, begin, std::min(seeds.size(), begin + chunk)));
        }
        for (auto& job : jobs) {
            job.get();
        }
    }
    portrait.failed_seeds = static_cast<std::size_t>(std::count(failed.begin(), failed.end(), 1));
    if (portrait.failed_seeds > 0) {
        std::vector<PortraitCurve> kept;
        for (std::size_t s = 0; s < seeds.size(); ++s) {
            if (!failed[s]) {
                kept.push_back(std::move(portrait.curves[s]));
            }
        }
        portrait.curves = std::move(kept);
    }
    return portrait;
}

namespace {

constexpr double viewport = 800.0;

struct ViewMap {
    Box w;
    double sx(double x) const { return (x - w.x_lo) / (w.x_hi - w.x_lo) * viewport; }
    double sy(double y) const { return (w.y_hi - y) / (w.y_hi - w.y_lo) * viewport; }
};

std::string_view marker_colour(EquilibriumType type)
{
    switch (type) {
    case EquilibriumType::saddle: return "red";
    case EquilibriumType::node: return "blue";
    case EquilibriumType::focus: return "green";
    case EquilibriumType::degenerate:
    case EquilibriumType::on_fixed_line: return "black";
    }
    return "black";
}

}  // namespace

void write_svg(const Portrait& portrait, std::ostream& out)
{
    const ViewMap map{portrait.window};
    fmt::print(out,
               "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" viewBox=\"0 0 800 800\">\n");
    fmt::print(out, "<rect x=\"0\" y=\"0\" width=\"800\" height=\"800\" fill=\"white\"/>\n");

    const auto& w = portrait.window;
    if (w.x_lo <= -1.0 && -1.0 <= w.x_hi) {
        fmt::print(out,
                   "<line class=\"invariant-line\" x1=\"{0:.3f}\" y1=\"0\" x2=\"{0:.3f}\" y2=\"800\" "
                   "stroke=\"gray\" stroke-width=\"1\" stroke-dasharray=\"8,4\"/>\n",
                   map.sx(-1.0));
    }

    fmt::print(out, "<g class=\"trajectories\" fill=\"none\" stroke=\"steelblue\" stroke-width=\"0.8\">\n");
    for (const auto& curve : portrait.curves) {
        if (curve.points.size() < 2) {
            fmt::print(out, "<circle cx=\"{:.3f}\" cy=\"{:.3f}\" r=\"1.5\" fill=\"steelblue\"/>\n",
                       map.sx(curve.seed[0]), map.sy(curve.seed[1]));
            continue;
        }
        fmt::print(out, "<polyline points=\"");
        double last_x = 0.0;
        double last_y = 0.0;
        for (std::size_t i = 0; i < curve.points.size(); ++i) {
            const double px = map.sx(curve.points[i][0]);
            const double py = map.sy(curve.points[i][1]);
            const bool endpoint = i == 0 || i + 1 == curve.points.size();
            if (!endpoint && std::hypot(px - last_x, py - last_y) < 0.5) {
                continue;
            }
            fmt::print(out, "{}{:.3f},{:.3f}", i == 0 ? "" : " ", px, py);
            last_x = px;
            last_y = py;
        }
        fmt::print(out, "\"/>\n");
    }
    fmt::print(out, "</g>\n");

    if (portrait.fixed_lines) {
        for (double y : portrait.fixed_lines->y_values) {
            fmt::print(out,
                       "<line class=\"fixed-line\" x1=\"0\" y1=\"{0:.3f}\" x2=\"800\" y2=\"{0:.3f}\" "
                       "stroke=\"black\" stroke-width=\"2\" stroke-dasharray=\"2,4\"/>\n",
                       map.sy(y));
        }
    }
    for (const auto& eq : portrait.equilibria) {
        fmt::print(out, "<circle class=\"equilibrium {}\" cx=\"{:.3f}\" cy=\"{:.3f}\" r=\"5\" fill=\"{}\"/>\n",
                   to_string(eq.type), map.sx(eq.point[0]), map.sy(eq.point[1]), marker_colour(eq.type));
    }
    fmt::print(out, "</svg>\n");
}

void write_csv(const Portrait& portrait, std::ostream& out)
{
    fmt::print(out, "curve,t,x,y\n");
    for (const auto& curve : portrait.curves) {
        for (std::size_t i = 0; i < curve.points.size(); ++i) {
            fmt::print(out, "{},{:.17g},{:.17g},{:.17g}\n", curve.seed_index, curve.times[i], curve.points[i][0],
                       curve.points[i][1]);
        }
    }
}

}  // namespace martinet
