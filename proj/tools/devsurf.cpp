#include "devsurf/model_io.hpp"
#include "devsurf/surface.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

using namespace devsurf;

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;
constexpr int kNotDevelopable = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string input = "-";
    std::string output = "-";
    double tol = kDefaultTolerance;
    bool exact = false;
    int samples = 65;
    int nt = 64;
    int nv = 8;
    std::string format = "json";
    std::string lambda, mu, nu, d0;
    int degree = -1;
    std::string knot;
    int multiplicity = 1;
};

std::string read_all(const std::string& path) {
    if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

void write_all(const std::string& path, const std::string& data) {
    if (path == "-") {
        std::cout << data << std::flush;
        if (!std::cout) throw IoError("cannot write to stdout");
        return;
    }
    std::ofstream out(path, std::ios::binary);
    out << data;
    out.close();
    if (!out) throw IoError("cannot write " + path);
}

template <Scalar S>
S number_arg(const std::string& text, const std::string& flag) {
    try {
        return parse_number<S>(text);
    } catch (const SchemaError& e) {
        throw UsageError(flag + ": " + e.what());
    }
}

// Comma separated values, or @path to a file of comma/whitespace separated values.
template <Scalar S>
std::vector<S> number_list(const std::string& arg, const std::string& flag) {
    std::string text = arg;
    if (!text.empty() && text.front() == '@') {
        text = read_all(text.substr(1));
        for (char& ch : text)
            if (std::isspace(static_cast<unsigned char>(ch))) ch = ',';
    }
    std::vector<S> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(number_arg<S>(item, flag));
    }
    if (out.empty()) throw UsageError(flag + ": empty coefficient list");
    return out;
}

template <Scalar S>
BernsteinPoly<S> poly_arg(const std::string& arg, const std::string& flag) {
    const auto v = number_list<S>(arg, flag);
    typename BernsteinPoly<S>::Coeffs c(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) c(static_cast<Eigen::Index>(i)) = v[i];
    return BernsteinPoly<S>(c);
}

template <Scalar S>
NurbsCurve<S> as_nurbs(const CurveDocument<S>& c) {
    if (const auto* b = std::get_if<RationalBezierCurve<S>>(&c)) return NurbsCurve<S>::from_bezier(*b);
    return std::get<NurbsCurve<S>>(c);
}

// Either a single Bezier patch or a piecewise one.
template <Scalar S>
struct LoadedPatch {
    std::optional<RuledPatch<S>> bezier;
    std::optional<NurbsRuledPatch<S>> nurbs;
};

template <Scalar S>
LoadedPatch<S> load_patch(const Options& o) {
    const auto doc = parse_patch<S>(read_all(o.input));
    const auto* c = std::get_if<RationalBezierCurve<S>>(&doc.directrix_c);
    const auto* d = std::get_if<RationalBezierCurve<S>>(&doc.directrix_d);
    if (c && d) return {RuledPatch<S>(*c, *d), std::nullopt};
    return {std::nullopt, NurbsRuledPatch<S>(as_nurbs(doc.directrix_c), as_nurbs(doc.directrix_d))};
}

template <Scalar S>
DevelopabilityReport<S> report_for(const LoadedPatch<S>& p, double tol) {
    return p.bezier ? check(*p.bezier, tol) : check_nurbs(*p.nurbs, tol);
}

template <Scalar S>
int run_check(const Options& o) {
    const auto report = report_for(load_patch<S>(o), o.tol);
    write_all(o.output, serialize(report, o.tol));
    return report.verdict ? kOk : kNotDevelopable;
}

template <Scalar S>
int run_classify(const Options& o) {
    const auto p = load_patch<S>(o);
    std::optional<Classification<S>> kind;
    if (p.bezier) {
        kind = classify(*p.bezier, o.tol);
    } else {
        kind = check_nurbs(*p.nurbs, o.tol).classification;
    }
    write_all(o.output, serialize_classification(kind));
    return kind && kind->kind == SurfaceKind::NonDevelopable ? kNotDevelopable : kOk;
}

template <Scalar S>
int run_construct(const Options& o) {
    const auto doc = parse_curve<S>(read_all(o.input));
    const auto* base = std::get_if<RationalBezierCurve<S>>(&doc);
    if (!base) throw DomainError("construct needs a rational_bezier base curve");
    const auto d0 = number_list<S>(o.d0, "--d0");
    if (d0.size() != 4) throw UsageError("--d0: expected w,x,y,z");
    const auto d = construct_directrix(*base, poly_arg<S>(o.lambda, "--lambda"), poly_arg<S>(o.mu, "--mu"),
                                       poly_arg<S>(o.nu, "--nu"), Vec4<S>(d0[0], d0[1], d0[2], d0[3]), o.tol);
    write_all(o.output, serialize(PatchDocument<S>{*base, d}));
    return kOk;
}

template <Scalar S>
int run_regression(const Options& o) {
    const auto p = load_patch<S>(o);
    std::vector<RegressionSample<S>> samples;
    if (p.bezier) {
        samples = edge_of_regression(*p.bezier, o.samples, o.tol);
    } else {
        for (const auto& span : p.nurbs->spans()) {
            auto part = edge_of_regression(span.patch, o.samples, o.tol);
            for (auto& s : part) s.t = span.start + s.t * (span.end - span.start);
            // neighbouring spans share their end sample
            if (!samples.empty()) part.erase(part.begin());
            samples.insert(samples.end(), part.begin(), part.end());
        }
    }
    write_all(o.output, serialize(samples));
    return kOk;
}

template <Scalar S>
std::vector<RuledPatch<double>> float_pieces(const LoadedPatch<S>& p) {
    std::vector<RuledPatch<double>> out;
    if (p.bezier) {
        out.push_back(convert<double>(*p.bezier));
    } else {
        for (const auto& span : p.nurbs->spans()) out.push_back(convert<double>(span.patch));
    }
    return out;
}

template <Scalar S>
int run_mesh(const Options& o) {
    TriangleMesh mesh;
    for (const auto& piece : float_pieces(load_patch<S>(o))) append_mesh(mesh, tessellate(piece, o.nt, o.nv, o.tol).mesh);
    std::ostringstream out;
    write_obj(out, mesh);
    write_all(o.output, out.str());
    return kOk;
}

template <Scalar S>
int run_unroll(const Options& o) {
    const auto p = load_patch<S>(o);
    if (!report_for(p, o.tol).verdict) throw NotDevelopable("refusing to unroll a non-developable patch");
    FlatPattern pattern;
    if (p.bezier) {
        pattern = unroll(convert<double>(*p.bezier), o.nt, o.tol);
    } else {
        // stations spread over the whole knot range, so the strip stays connected
        const auto c = convert<double>(p.nurbs->directrix_c());
        const auto d = convert<double>(p.nurbs->directrix_d());
        std::vector<double> ts(static_cast<std::size_t>(o.nt));
        std::vector<Eigen::Vector3d> cs(ts.size()), ds(ts.size());
        for (int i = 0; i < o.nt; ++i) {
            const double t = c.domain_start() + (c.domain_end() - c.domain_start()) * i / (o.nt - 1);
            ts[i] = t;
            cs[i] = nurbs_eval(c, t);
            ds[i] = nurbs_eval(d, t);
        }
        pattern = develop_strip(ts, cs, ds);
    }
    if (o.format == "svg") {
        std::ostringstream out;
        write_svg(out, pattern);
        write_all(o.output, out.str());
    } else {
        write_all(o.output, serialize(pattern));
    }
    return kOk;
}

template <Scalar S>
int run_elevate(const Options& o) {
    const auto doc = parse_curve<S>(read_all(o.input));
    const auto* c = std::get_if<RationalBezierCurve<S>>(&doc);
    if (!c) throw DomainError("elevate needs a rational_bezier curve");
    write_all(o.output, serialize(CurveDocument<S>(elevate_degree(*c, o.degree))));
    return kOk;
}

template <Scalar S>
int run_insert_knot(const Options& o) {
    const auto curve = as_nurbs(parse_curve<S>(read_all(o.input)));
    const auto refined = insert_knot(curve, number_arg<S>(o.knot, "--knot"), o.multiplicity);
    write_all(o.output, serialize(CurveDocument<S>(refined)));
    return kOk;
}

template <Scalar S>
int dispatch(const std::string& command, const Options& o) {
    if (command == "check") return run_check<S>(o);
    if (command == "classify") return run_classify<S>(o);
    if (command == "construct") return run_construct<S>(o);
    if (command == "regression") return run_regression<S>(o);
    if (command == "mesh") return run_mesh<S>(o);
    if (command == "unroll") return run_unroll<S>(o);
    if (command == "elevate") return run_elevate<S>(o);
    return run_insert_knot<S>(o);
}

}  // namespace

int main(int argc, char** argv) {
    Options o;
    if (const char* env = std::getenv("DEVSURF_TOL")) {
        try {
            o.tol = parse_number<double>(env);
        } catch (const SchemaError&) {
            std::cerr << "devsurf: DEVSURF_TOL is not a number: " << env << "\n";
            return kUsage;
        }
    }

    CLI::App app{"Developability checks and tools for rational ruled surfaces", "devsurf"};
    app.require_subcommand(1);
    const auto common = [&](CLI::App* sub, const std::string& what) {
        sub->add_option("input", o.input, what + " ('-' for stdin)")->required();
        sub->add_option("-o,--output", o.output, "output path ('-' for stdout)");
        sub->add_option("--tol", o.tol, "zero tolerance on normalized coefficients")->check(CLI::NonNegativeNumber);
        sub->add_flag("--exact", o.exact, "rational arithmetic");
    };

    common(app.add_subcommand("check", "developability report; exit 3 when not developable"), "patch JSON");
    common(app.add_subcommand("classify", "surface kind of a developable patch"), "patch JSON");

    auto* construct = app.add_subcommand("construct", "build the second directrix of a developable patch");
    common(construct, "base curve JSON");
    construct->add_option("--lambda", o.lambda, "Bernstein coefficients of lambda, comma separated or @file")->required();
    construct->add_option("--mu", o.mu, "Bernstein coefficients of mu")->required();
    construct->add_option("--nu", o.nu, "Bernstein coefficients of nu")->required();
    construct->add_option("--d0", o.d0, "initial homogeneous point w,x,y,z")->required();

    auto* regression = app.add_subcommand("regression", "sample the edge of regression");
    common(regression, "patch JSON");
    regression->add_option("--samples", o.samples, "samples per span")->check(CLI::Range(2, 1000000));

    auto* mesh = app.add_subcommand("mesh", "triangulate to OBJ");
    common(mesh, "patch JSON");
    mesh->add_option("--nt", o.nt, "stations along the directrices")->check(CLI::Range(2, 1000000));
    mesh->add_option("--nv", o.nv, "stations along the rulings")->check(CLI::Range(2, 1000000));

    auto* unroll_cmd = app.add_subcommand("unroll", "plane development of a developable patch");
    common(unroll_cmd, "patch JSON");
    unroll_cmd->add_option("--nt", o.nt, "stations along the directrices")->check(CLI::Range(2, 1000000));
    unroll_cmd->add_option("--format", o.format, "json or svg")->check(CLI::IsMember({"json", "svg"}));

    auto* elevate = app.add_subcommand("elevate", "raise the degree of a Bezier curve");
    common(elevate, "curve JSON");
    elevate->add_option("--degree", o.degree, "target degree")->required()->check(CLI::NonNegativeNumber);

    auto* insert = app.add_subcommand("insert-knot", "insert a knot into a NURBS curve");
    common(insert, "curve JSON");
    insert->add_option("--knot", o.knot, "knot value")->required();
    insert->add_option("--multiplicity", o.multiplicity, "times to insert")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        return o.exact ? dispatch<Rational>(command, o) : dispatch<double>(command, o);
    } catch (const UsageError& e) {
        std::cerr << "devsurf: " << e.what() << "\n";
        return kUsage;
    } catch (const NotDevelopable& e) {
        std::cerr << "devsurf: " << e.what() << "\n";
        return kNotDevelopable;
    } catch (const std::exception& e) {
        std::cerr << "devsurf: " << e.what() << "\n";
        return kFailure;
    }
}
