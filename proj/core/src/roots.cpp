#include "martinet/roots.hpp"

#include <algorithm>
#include <cmath>

namespace martinet {

double evaluate_polynomial(std::span<const double> coeffs, double y)
{
    double acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        acc = acc * y + *it;
    }
    return acc;
}

std::vector<double> derivative_coefficients(std::span<const double> coeffs)
{
    std::vector<double> d;
    for (std::size_t i = 1; i < coeffs.size(); ++i) {
        d.push_back(static_cast<double>(i) * coeffs[i]);
    }
    return d;
}

namespace {

std::vector<double> trimmed(std::span<const double> coeffs)
{
    std::vector<double> c(coeffs.begin(), coeffs.end());
    while (!c.empty() && c.back() == 0.0) {
        c.pop_back();
    }
    return c;
}

double bisect(std::span<const double> p, double lo, double hi)
{
    double plo = evaluate_polynomial(p, lo);
    for (int it = 0; it < 400; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (!(mid > lo && mid < hi)) {
            break;
        }
        const double pm = evaluate_polynomial(p, mid);
        if (pm == 0.0) {
            return mid;
        }
        if ((pm < 0) == (plo < 0)) {
            lo = mid;
            plo = pm;
        } else {
            hi = mid;
        }
    }
    return std::abs(evaluate_polynomial(p, lo)) <= std::abs(evaluate_polynomial(p, hi)) ? lo : hi;
}

/// One Newton step, kept only if it stays in [lo, hi] and lowers |p|.
double polish(std::span<const double> p, double r, double lo, double hi)
{
    const double dp = evaluate_polynomial(derivative_coefficients(p), r);
    if (dp == 0.0) {
        return r;
    }
    const double next = r - evaluate_polynomial(p, r) / dp;
    if (next >= lo && next <= hi && std::abs(evaluate_polynomial(p, next)) < std::abs(evaluate_polynomial(p, r))) {
        return next;
    }
    return r;
}

/// Root locations only; multiplicities are assigned by the caller.
std::vector<double> locate(const std::vector<double>& p, const RootOptions& opts)
{
    const std::size_t degree = p.size() - 1;
    if (degree == 0) {
        return {};
    }
    if (degree == 1) {
        const double r = -p[0] / p[1];
        return (r >= opts.lo && r <= opts.hi) ? std::vector<double>{r} : std::vector<double>{};
    }
    const auto dp = trimmed(derivative_coefficients(p));
    const auto critical = locate(dp, opts);

    std::vector<double> roots;
    for (double c : critical) {
        if (std::abs(evaluate_polynomial(p, c)) <= opts.root_tol) {
            roots.push_back(c);
        }
    }
    auto is_root = [&](double v) { return std::find(roots.begin(), roots.end(), v) != roots.end(); };

    std::vector<double> breaks{opts.lo};
    breaks.insert(breaks.end(), critical.begin(), critical.end());
    breaks.push_back(opts.hi);
    for (double b : {opts.lo, opts.hi}) {
        if (std::abs(evaluate_polynomial(p, b)) <= opts.root_tol && !is_root(b)) {
            roots.push_back(b);
        }
    }
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        const double u = breaks[i];
        const double v = breaks[i + 1];
        if (!(u < v)) {
            continue;
        }
        const double pu = evaluate_polynomial(p, u);
        const double pv = evaluate_polynomial(p, v);
        if (std::abs(pu) <= opts.root_tol || std::abs(pv) <= opts.root_tol) {
            continue;
        }
        if ((pu < 0) != (pv < 0)) {
            roots.push_back(polish(p, bisect(p, u, v), u, v));
        }
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

}  // namespace

std::vector<RealRoot> real_roots(std::span<const double> coeffs, const RootOptions& opts)
{
    const auto p = trimmed(coeffs);
    if (p.empty()) {
        return {};
    }
    std::vector<RealRoot> out;
    for (double r : locate(p, opts)) {
        RealRoot root{r, 1, std::abs(evaluate_polynomial(p, r))};
        auto d = derivative_coefficients(p);
        while (!d.empty() && std::abs(evaluate_polynomial(d, r)) < opts.multiplicity_tol) {
            ++root.multiplicity;
            d = derivative_coefficients(d);
        }
        out.push_back(root);
    }
    return out;
}

}  // namespace martinet
