#include "cli.hpp"

#include "martinet/martinet.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>
#include <nlohmann/json.hpp>

#include <fstream>
#include <optional>
#include <stdexcept>

namespace martinet::cli {

namespace {

using nlohmann::json;

/// A bad value for a specific flag; reported with exit status 2.
struct UsageError : std::runtime_error {
    UsageError(const std::string& flag, const std::string& what) : std::runtime_error(flag + ": " + what) {}
};

/// Without an explicit order the jet keeps every given coefficient, padded up to the default order.
template <Scalar T>
Jet<T> jet_option(const std::string& flag, const std::string& text, std::optional<std::size_t> order)
{
    try {
        if (!order) {
            const auto natural = parse_jet<T>(text);
            return natural.with_order(std::max(natural.order(), default_order));
        }
        return parse_jet<T>(text, order);
    } catch (const std::invalid_argument& e) {
        throw UsageError(flag, e.what());
    }
}

template <Scalar T>
std::vector<T> list_option(const std::string& flag, const std::string& text)
{
    try {
        return parse_list<T>(text);
    } catch (const std::invalid_argument& e) {
        throw UsageError(flag, e.what());
    }
}

template <Scalar T>
T scalar_option(const std::string& flag, const std::string& text)
{
    try {
        return parse_scalar<T>(text);
    } catch (const std::invalid_argument& e) {
        throw UsageError(flag, e.what());
    }
}

std::vector<double> split_numbers(const std::string& flag, const std::string& text, std::size_t count)
{
    std::vector<double> out;
    std::size_t start = 0;
    while (true) {
        const auto colon = text.find(':', start);
        const auto piece = text.substr(start, colon == std::string::npos ? std::string::npos : colon - start);
        out.push_back(scalar_option<double>(flag, piece));
        if (colon == std::string::npos) {
            break;
        }
        start = colon + 1;
    }
    if (out.size() != count) {
        throw UsageError(flag, fmt::format("expected {} colon-separated numbers, got {}", count, out.size()));
    }
    return out;
}

Box window_option(const std::string& flag, const std::string& text)
{
    const auto v = split_numbers(flag, text, 4);
    if (!(v[0] < v[1] && v[2] < v[3])) {
        throw UsageError(flag, "window must satisfy x0 < x1 and y0 < y1");
    }
    return {v[0], v[1], v[2], v[3]};
}

json poly_json(const auto& p)
{
    json terms = json::array();
    for (const auto& [e, c] : p.terms()) {
        terms.push_back({{"x", e[0]}, {"y", e[1]}, {"c", scalar_to_json(c)}});
    }
    return terms;
}

json complex_json(std::complex<double> z) { return json::array({scalar_to_json(z.real()), scalar_to_json(z.imag())}); }

json equilibrium_json(const EquilibriumReport& e)
{
    return {{"x", scalar_to_json(e.point[0])},
            {"y", scalar_to_json(e.point[1])},
            {"type", to_string(e.type)},
            {"eigenvalues", json::array({complex_json(e.eigenvalues[0]), complex_json(e.eigenvalues[1])})},
            {"residual", e.residual},
            {"multiplicity", e.multiplicity}};
}

json fixed_lines_json(const std::optional<FixedLines>& lines)
{
    if (!lines) {
        return nullptr;
    }
    return {{"everywhere", lines->everywhere}, {"y", lines->y_values}};
}

std::ofstream open_output(const std::string& path)
{
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw UsageError("--out", "cannot open " + path + " for writing");
    }
    return file;
}

struct Options {
    bool exact = false;
    std::size_t order = default_order;
    bool order_given = false;
    double zero_tol = default_zero_tol;

    std::string jet;
    std::string psi;
    std::string g;

    double tol = 1e-8;
    std::string box = "-0.5:0.5:-0.1:0.1";
    std::size_t box_grid = 10;

    std::size_t k = 2;
    std::string a = "1";
    std::string lambda;

    double lo = -10.0;
    double hi = 10.0;
    double root_tol = 1e-10;

    std::string family = "f2";
    std::string window = "-2:1:-2:2";
    std::size_t grid = 20;
    double step = 1e-2;
    std::size_t max_steps = 2000;
    unsigned threads = 0;
    std::string format;
    std::string out;

    double l2 = 1.0;
    std::string l1;
};

std::optional<std::size_t> order_of(const Options& o)
{
    return o.order_given ? std::optional<std::size_t>(o.order) : std::nullopt;
}

template <Scalar T>
json classify_cmd(const Options& o)
{
    const Jet<T> f = jet_option<T>("--jet", o.jet, order_of(o));
    const auto c = classify_field(field_from_function(f), ClassifyOptions{o.zero_tol});
    const auto& g = c.germ;
    json j{{"type", to_string(g.type)},
           {"k", g.k},
           {"a", scalar_to_json(g.a)},
           {"d", g.type == GermType::degenerate ? scalar_to_json(g.d) : json(nullptr)},
           {"order", g.order},
           {"psi", to_json(g.psi)},
           {"normal_form", to_json(normal_form(g))},
           {"label", c.label},
           {"model", c.model}};
    if (c.jacobian) {
        const auto& m = *c.jacobian;
        j["jacobian"] = json::array({json::array({scalar_to_json(m[0][0]), scalar_to_json(m[0][1])}),
                                     json::array({scalar_to_json(m[1][0]), scalar_to_json(m[1][1])})});
        // upper triangular: the diagonal holds the eigenvalues
        j["eigenvalues"] = json::array({scalar_to_json(m[0][0]), scalar_to_json(m[1][1])});
    }
    return j;
}

/// psi keeps all of its given coefficients; it is only padded up to the working order.
template <Scalar T>
Jet<T> psi_option(const Options& o)
{
    const Jet<T> natural = jet_option<T>("--psi", o.psi, std::nullopt);
    return natural.with_order(std::max(natural.order(), o.order_given ? o.order : default_order));
}

template <Scalar T>
MuDiffeo<T> diffeo_option(const Options& o)
{
    try {
        return mu_diffeo(psi_option<T>(o));
    } catch (const Error& e) {
        throw UsageError("--psi", e.what());
    }
}

template <Scalar T>
json conjugate_cmd(const Options& o)
{
    const Jet<T> f = jet_option<T>("--jet", o.jet, order_of(o));
    const Jet<T> g = pushforward(f, diffeo_option<T>(o));
    return {{"g", to_json(g)}, {"order", g.order()}};
}

template <Scalar T>
json verify_cmd(const Options& o)
{
    const Jet<T> f = jet_option<T>("--jet", o.jet, order_of(o));
    const Jet<T> g = jet_option<T>("--g", o.g, order_of(o));
    const auto b = split_numbers("--box", o.box, 4);
    if (!(b[0] < b[1] && b[2] < b[3])) {
        throw UsageError("--box", "box must satisfy x0 < x1 and y0 < y1");
    }
    const SampleBox box{b[0], b[1], b[2], b[3], o.box_grid, o.box_grid};
    const auto r = verify_conjugacy(f, g, diffeo_option<T>(o), box, o.tol);
    return {{"pass", r.passed},
            {"max_residual", r.max_residual},
            {"worst_point", r.worst_point},
            {"samples", r.samples},
            {"tol", r.tol}};
}

template <Scalar T>
json unfold_cmd(const Options& o)
{
    const T a = scalar_option<T>("--a", o.a);
    const auto lambdas = list_option<T>("--lambda", o.lambda);
    const auto field = unfold_planar(o.k, a, lambdas);
    json l = json::array();
    for (const auto& v : lambdas) {
        l.push_back(scalar_to_json(v));
    }
    return {{"k", o.k},
            {"a", scalar_to_json(a)},
            {"lambdas", l},
            {"generator", to_json(unfold_1d(o.k, a, lambdas))},
            {"x_component", poly_json(field[0])},
            {"y_component", poly_json(field[1])}};
}

RootOptions root_options(const Options& o)
{
    if (!(o.lo < o.hi)) {
        throw UsageError("--lo", "search interval must satisfy lo < hi");
    }
    return {o.lo, o.hi, o.root_tol, RootOptions{}.multiplicity_tol};
}

/// The generator selected by --jet, or by --k/--a/--lambda.
Jet<double> generator_option(const Options& o)
{
    if (!o.jet.empty()) {
        return jet_option<double>("--jet", o.jet, std::nullopt);
    }
    if (o.lambda.empty()) {
        throw UsageError("--lambda", "required unless --jet is given");
    }
    return unfold_1d(o.k, scalar_option<double>("--a", o.a), list_option<double>("--lambda", o.lambda));
}

json equilibria_cmd(const Options& o)
{
    const auto f = generator_option(o);
    const auto opts = root_options(o);
    json eq = json::array();
    for (const auto& e : equilibria_on_line(f, opts)) {
        eq.push_back(equilibrium_json(e));
    }
    return {{"generator", to_json(f)}, {"equilibria", eq}, {"fixed_lines", fixed_lines_json(fixed_line_detect(f, opts))}};
}

json portrait_cmd(const Options& o)
{
    Jet<double> f;
    if (o.family == "f2") {
        const auto l = list_option<double>("--lambda", o.lambda.empty() ? "0,1" : o.lambda);
        if (l.size() != 2) {
            throw UsageError("--lambda", "the f2 family takes exactly two parameters");
        }
        f = f2_generator(scalar_option<double>("--a", o.a), l[0], l[1]);
    } else if (o.family == "unfold") {
        if (o.lambda.empty()) {
            throw UsageError("--lambda", "required for --family unfold");
        }
        f = unfold_1d(o.k, scalar_option<double>("--a", o.a), list_option<double>("--lambda", o.lambda));
    } else {
        if (o.jet.empty()) {
            throw UsageError("--jet", "required for --family jet");
        }
        f = jet_option<double>("--jet", o.jet, std::nullopt);
    }

    std::string format = o.format;
    if (format.empty()) {
        format = o.out.ends_with(".csv") ? "csv" : o.out.ends_with(".svg") ? "svg" : "";
        if (format.empty()) {
            throw UsageError("--out", "cannot infer the format from the extension; pass --format svg|csv");
        }
    }

    PortraitOptions opts;
    opts.window = window_option("--window", o.window);
    opts.grid = o.grid;
    opts.step = o.step;
    opts.max_steps = o.max_steps;
    opts.threads = o.threads;
    const Portrait p = phase_portrait(f, opts);
    auto file = open_output(o.out);
    if (format == "svg") {
        write_svg(p, file);
    } else {
        write_csv(p, file);
    }
    json eq = json::array();
    for (const auto& e : p.equilibria) {
        eq.push_back(equilibrium_json(e));
    }
    return {{"out", o.out},
            {"format", format},
            {"seeds", p.seeds},
            {"curves", p.curves.size()},
            {"failed_seeds", p.failed_seeds},
            {"equilibria", eq},
            {"fixed_lines", fixed_lines_json(p.fixed_lines)}};
}

json sweep_cmd(const Options& o)
{
    const auto r = split_numbers("--l1", o.l1, 3);
    if (!(r[0] < r[1])) {
        throw UsageError("--l1", "range must satisfy LO < HI");
    }
    if (r[2] < 2 || r[2] != std::floor(r[2])) {
        throw UsageError("--l1", "sample count must be an integer >= 2");
    }
    SweepOptions opts;
    opts.roots = root_options(o);
    const double a = scalar_option<double>("--a", o.a);
    const auto d = bifurcation_sweep(a, o.l2, r[0], r[1], static_cast<std::size_t>(r[2]), opts);
    auto file = open_output(o.out);
    fmt::print(file, "l1,count\n");
    for (std::size_t i = 0; i < d.l1.size(); ++i) {
        fmt::print(file, "{:.17g},{}\n", d.l1[i], d.counts[i]);
    }
    return {{"out", o.out}, {"a", a}, {"l2", o.l2}, {"samples", d.l1.size()}, {"critical", d.critical}};
}

bool is_validation(ErrorCode code)
{
    return code == ErrorCode::invalid_argument || code == ErrorCode::bad_arity ||
           code == ErrorCode::inadmissible_psi;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Normal forms, unfoldings and phase portraits of mu-preserving planar fields", "martinet"};
    app.require_subcommand(1);
    Options o;

    auto exact_flag = [&](CLI::App* sub) { sub->add_flag("--exact", o.exact, "Use exact rational arithmetic"); };
    auto order_flag = [&](CLI::App* sub) {
        sub->add_option("--order", o.order, "Truncation order N")->check(CLI::Range(0, 4096))->each([&](const std::string&) {
            o.order_given = true;
        });
    };
    auto unfolding_flags = [&](CLI::App* sub, bool required) {
        sub->add_option("--k", o.k, "Codimension k >= 2")->capture_default_str();
        sub->add_option("--a", o.a, "Leading coefficient a")->capture_default_str();
        auto* l = sub->add_option("--lambda", o.lambda, "Parameters l1,...,lk");
        if (required) {
            l->required();
        }
    };
    auto root_flags = [&](CLI::App* sub) {
        sub->add_option("--lo", o.lo, "Lower end of the root search interval")->capture_default_str();
        sub->add_option("--hi", o.hi, "Upper end of the root search interval")->capture_default_str();
        sub->add_option("--root-tol", o.root_tol, "Root residual tolerance")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
    };

    auto* classify = app.add_subcommand("classify", "Classify a germ and build its normalizing psi");
    classify->add_option("--jet", o.jet, "Coefficients c0,c1,... of f")->required();
    order_flag(classify);
    exact_flag(classify);
    classify->add_option("--zero-tol", o.zero_tol, "Zero threshold in floating mode")->capture_default_str();

    auto* conjugate = app.add_subcommand("conjugate", "Push f forward along the diffeomorphism given by psi");
    conjugate->add_option("--jet", o.jet, "Coefficients of f")->required();
    conjugate->add_option("--psi", o.psi, "Coefficients of psi, with psi(0)=0 and psi'(0)=1")->required();
    order_flag(conjugate);
    exact_flag(conjugate);

    auto* verify = app.add_subcommand("verify", "Check that psi conjugates X_f to X_g on a sample grid");
    verify->add_option("--jet", o.jet, "Coefficients of f")->required();
    verify->add_option("--g", o.g, "Coefficients of g")->required();
    verify->add_option("--psi", o.psi, "Coefficients of psi")->required();
    verify->add_option("--tol", o.tol, "Residual tolerance")->check(CLI::PositiveNumber)->capture_default_str();
    verify->add_option("--box", o.box, "Sample box x0:x1:y0:y1")->capture_default_str();
    verify->add_option("--grid", o.box_grid, "Samples per axis")->check(CLI::Range(1, 10000))->capture_default_str();
    order_flag(verify);
    exact_flag(verify);

    auto* unfold = app.add_subcommand("unfold", "Versal unfolding of the degenerate model");
    unfolding_flags(unfold, true);
    exact_flag(unfold);

    auto* equilibria = app.add_subcommand("equilibria", "Equilibria on the invariant line x = -1");
    unfolding_flags(equilibria, false);
    equilibria->add_option("--jet", o.jet, "Generator coefficients, instead of --k/--a/--lambda");
    root_flags(equilibria);

    auto* portrait = app.add_subcommand("portrait", "Phase portrait as SVG or CSV");
    portrait->add_option("--family", o.family, "Field family")
        ->check(CLI::IsMember({"f2", "unfold", "jet"}))
        ->capture_default_str();
    unfolding_flags(portrait, false);
    portrait->add_option("--jet", o.jet, "Generator coefficients for --family jet");
    portrait->add_option("--window", o.window, "Window x0:x1:y0:y1")->capture_default_str();
    portrait->add_option("--grid", o.grid, "Seeds per axis")->check(CLI::Range(1, 1000))->capture_default_str();
    portrait->add_option("--step", o.step, "RK4 step")->check(CLI::PositiveNumber)->capture_default_str();
    portrait->add_option("--max-steps", o.max_steps, "Steps per time direction")
        ->check(CLI::Range(1, 10000000))
        ->capture_default_str();
    portrait->add_option("--threads", o.threads, "Worker threads, 0 for all cores")->capture_default_str();
    portrait->add_option("--format", o.format, "svg or csv; inferred from --out")->check(CLI::IsMember({"svg", "csv"}));
    portrait->add_option("--out", o.out, "Output file")->required();

    auto* sweep = app.add_subcommand("sweep", "Equilibrium counts of F2 across l1");
    sweep->add_option("--a", o.a, "Coefficient a")->capture_default_str();
    sweep->add_option("--l2", o.l2, "Parameter l2")->capture_default_str();
    sweep->add_option("--l1", o.l1, "Range LO:HI:SAMPLES")->required();
    root_flags(sweep);
    sweep->add_option("--out", o.out, "Output CSV")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        fmt::print(err, "error: {}\n", e.what());
        return 2;
    }

    try {
        json result;
        if (*classify) {
            result = o.exact ? classify_cmd<Rational>(o) : classify_cmd<double>(o);
        } else if (*conjugate) {
            result = o.exact ? conjugate_cmd<Rational>(o) : conjugate_cmd<double>(o);
        } else if (*verify) {
            result = o.exact ? verify_cmd<Rational>(o) : verify_cmd<double>(o);
        } else if (*unfold) {
            result = o.exact ? unfold_cmd<Rational>(o) : unfold_cmd<double>(o);
        } else if (*equilibria) {
            result = equilibria_cmd(o);
        } else if (*portrait) {
            result = portrait_cmd(o);
        } else if (*sweep) {
            result = sweep_cmd(o);
        }
        out << result.dump(2) << '\n';
        return 0;
    } catch (const UsageError& e) {
        fmt::print(err, "error: {}\n", e.what());
        return 2;
    } catch (const Error& e) {
        fmt::print(err, "error: {}\n", e.what());
        return is_validation(e.code()) ? 2 : 1;
    } catch (const std::exception& e) {
        fmt::print(err, "error: {}\n", e.what());
        return 1;
    }
}

}  // namespace martinet::cli
