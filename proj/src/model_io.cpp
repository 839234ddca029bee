#include "devsurf/model_io.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <sstream>

namespace devsurf {

namespace {

using json = nlohmann::json;

// DOM builder that keeps the source text of every floating literal (stored
// as a binary value, which JSON text can never produce).
class LiteralKeepingBuilder : public nlohmann::detail::json_sax_dom_parser<json> {
   public:
    using Base = nlohmann::detail::json_sax_dom_parser<json>;
    explicit LiteralKeepingBuilder(json& root) : Base(root, true) {}

    bool number_float(number_float_t /*val*/, const string_t& literal) {
        binary_t bytes(std::vector<std::uint8_t>(literal.begin(), literal.end()));
        return Base::binary(bytes);
    }
};

std::string child(const std::string& path, const std::string& key) { return path + "/" + key; }
std::string child(const std::string& path, std::size_t i) { return path + "/" + std::to_string(i); }

json parse_json(std::string_view bytes, bool keep_literals) {
    try {
        if (!keep_literals) return json::parse(bytes);
        json root;
        LiteralKeepingBuilder builder(root);
        json::sax_parse(bytes, &builder);
        return root;
    } catch (const json::exception& e) {
        throw SchemaError("", std::string("invalid JSON: ") + e.what());
    }
}

Rational parse_integer_text(const std::string& text, const std::string& path) {
    try {
        return Rational(boost::multiprecision::mpz_int(text));
    } catch (const std::exception&) {
        throw SchemaError(path, "not an integer: " + text);
    }
}

// Exact value of a JSON decimal literal such as -1.25e-3.
Rational decimal_to_rational(const std::string& lit, const std::string& path) {
    std::size_t i = 0;
    bool negative = false;
    if (i < lit.size() && (lit[i] == '-' || lit[i] == '+')) negative = lit[i++] == '-';
    std::string digits;
    long exponent = 0;
    while (i < lit.size() && std::isdigit(static_cast<unsigned char>(lit[i]))) digits += lit[i++];
    if (i < lit.size() && lit[i] == '.') {
        ++i;
        while (i < lit.size() && std::isdigit(static_cast<unsigned char>(lit[i]))) {
            digits += lit[i++];
            --exponent;
        }
    }
    if (i < lit.size() && (lit[i] == 'e' || lit[i] == 'E')) {
        ++i;
        try {
            exponent += std::stol(lit.substr(i));
        } catch (const std::exception&) {
            throw SchemaError(path, "malformed number " + lit);
        }
        i = lit.size();
    }
    if (digits.empty() || i != lit.size()) throw SchemaError(path, "malformed number " + lit);
    if (std::labs(exponent) > 100000) throw SchemaError(path, "number out of range: " + lit);
    Rational value = parse_integer_text(digits, path);
    const Rational ten_power(boost::multiprecision::pow(boost::multiprecision::mpz_int(10), static_cast<unsigned>(std::labs(exponent))));
    value = exponent >= 0 ? Rational(value * ten_power) : Rational(value / ten_power);
    return negative ? Rational(-value) : value;
}

// Correctly rounded when numerator and denominator are exact doubles.
double nearest_double(const Rational& r) {
    const auto num = boost::multiprecision::numerator(r);
    const auto den = boost::multiprecision::denominator(r);
    const boost::multiprecision::mpz_int limit = boost::multiprecision::mpz_int(1) << 53;
    if (abs(num) <= limit && den <= limit) return num.convert_to<double>() / den.convert_to<double>();
    return r.convert_to<double>();
}

Rational integer_field(const json& j, const std::string& path) {
    if (j.is_number_integer()) {
        return j.is_number_unsigned() ? Rational(j.get<std::uint64_t>()) : Rational(j.get<std::int64_t>());
    }
    if (j.is_string()) return parse_integer_text(j.get<std::string>(), path);
    throw SchemaError(path, "expected an integer");
}

template <Scalar S>
S read_scalar(const json& j, const std::string& path) {
    Rational exact;
    if (j.is_object()) {
        if (j.size() != 2 || !j.contains("num") || !j.contains("den")) {
            throw SchemaError(path, "rational must be {\"num\", \"den\"}");
        }
        const Rational num = integer_field(j.at("num"), child(path, "num"));
        const Rational den = integer_field(j.at("den"), child(path, "den"));
        if (den == 0) throw SchemaError(child(path, "den"), "zero denominator");
        exact = num / den;
    } else if (j.is_binary()) {
        const auto& b = j.get_binary();
        exact = decimal_to_rational(std::string(b.begin(), b.end()), path);
    } else if (j.is_number_integer()) {
        exact = integer_field(j, path);
    } else if (j.is_number_float()) {
        const double x = j.get<double>();
        if (!std::isfinite(x)) throw SchemaError(path, "number out of range");
        if constexpr (is_exact_v<S>) {
            return Rational(x);
        } else {
            return x;
        }
    } else {
        throw SchemaError(path, "expected a number");
    }
    if constexpr (is_exact_v<S>) {
        return exact;
    } else {
        const double x = nearest_double(exact);
        if (!std::isfinite(x)) throw SchemaError(path, "number out of range");
        return x;
    }
}

const json& require(const json& obj, const char* key, const std::string& path) {
    if (!obj.contains(key)) throw SchemaError(child(path, key), "missing required field");
    return obj.at(key);
}

const json& require_array(const json& obj, const char* key, const std::string& path) {
    const json& a = require(obj, key, path);
    if (!a.is_array()) throw SchemaError(child(path, key), "expected an array");
    return a;
}

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed, const std::string& path) {
    for (const auto& [key, value] : obj.items()) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || key == a;
        if (!ok) throw SchemaError(child(path, key), "unknown field");
    }
}

template <Scalar S>
Eigen::Matrix<S, 3, Eigen::Dynamic> read_points(const json& a, const std::string& path) {
    Eigen::Matrix<S, 3, Eigen::Dynamic> pts(3, static_cast<Eigen::Index>(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto p = child(path, i);
        if (!a[i].is_array() || a[i].size() != 3) throw SchemaError(p, "point must be [x, y, z]");
        for (std::size_t k = 0; k < 3; ++k) pts(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i)) = read_scalar<S>(a[i][k], child(p, k));
    }
    return pts;
}

template <Scalar S>
Eigen::Matrix<S, 1, Eigen::Dynamic> read_row(const json& a, const std::string& path) {
    Eigen::Matrix<S, 1, Eigen::Dynamic> row(static_cast<Eigen::Index>(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i) row(static_cast<Eigen::Index>(i)) = read_scalar<S>(a[i], child(path, i));
    return row;
}

int read_degree(const json& obj, const std::string& path) {
    const json& d = require(obj, "degree", path);
    if (!d.is_number_integer() || d.get<std::int64_t>() < 0 || d.get<std::int64_t>() > 1000) {
        throw SchemaError(child(path, "degree"), "expected a non-negative integer");
    }
    return d.get<int>();
}

template <Scalar S>
CurveDocument<S> curve_from_json(const json& obj, const std::string& path) {
    if (!obj.is_object()) throw SchemaError(path, "curve must be an object");
    const json& type = require(obj, "type", path);
    if (!type.is_string()) throw SchemaError(child(path, "type"), "expected a string");
    const std::string tag = type.get<std::string>();
    const int degree = read_degree(obj, path);
    const json& pts_json = require_array(obj, "points", path);
    auto pts = read_points<S>(pts_json, child(path, "points"));
    Eigen::Matrix<S, 1, Eigen::Dynamic> weights = Eigen::Matrix<S, 1, Eigen::Dynamic>::Ones(pts.cols());
    if (obj.contains("weights")) {
        const json& w = require_array(obj, "weights", path);
        if (w.size() != pts_json.size()) throw SchemaError(child(path, "weights"), "length differs from points");
        weights = read_row<S>(w, child(path, "weights"));
        for (Eigen::Index i = 0; i < weights.cols(); ++i) {
            if (weights(i) == 0) throw SchemaError(child(child(path, "weights"), static_cast<std::size_t>(i)), "weight must be nonzero");
        }
    }
    if (tag == "rational_bezier") {
        reject_unknown(obj, {"type", "degree", "points", "weights"}, path);
        if (static_cast<int>(pts_json.size()) != degree + 1) {
            throw SchemaError(child(path, "points"), "expected degree + 1 control points");
        }
        try {
            return RationalBezierCurve<S>(std::move(pts), std::move(weights));
        } catch (const Error& e) {
            throw SchemaError(path, e.what());
        }
    }
    if (tag == "nurbs") {
        reject_unknown(obj, {"type", "degree", "points", "weights", "knots"}, path);
        const json& k = require_array(obj, "knots", path);
        std::vector<S> knots;
        for (std::size_t i = 0; i < k.size(); ++i) knots.push_back(read_scalar<S>(k[i], child(child(path, "knots"), i)));
        try {
            return NurbsCurve<S>(degree, std::move(knots), std::move(pts), std::move(weights));
        } catch (const KnotError& e) {
            throw SchemaError(child(path, "knots"), e.what());
        } catch (const Error& e) {
            throw SchemaError(path, e.what());
        }
    }
    throw SchemaError(child(path, "type"), "unknown curve type '" + tag + "'");
}

template <Scalar S>
PatchDocument<S> patch_from_json(const json& obj) {
    if (obj.contains("type") && obj.at("type") != "ruled_patch") throw SchemaError("/type", "expected 'ruled_patch'");
    reject_unknown(obj, {"type", "directrix_c", "directrix_d"}, "");
    return {curve_from_json<S>(require(obj, "directrix_c", ""), "/directrix_c"),
            curve_from_json<S>(require(obj, "directrix_d", ""), "/directrix_d")};
}

// ---- writing -------------------------------------------------------------

json integer_json(const boost::multiprecision::mpz_int& z) {
    if (z >= std::numeric_limits<std::int64_t>::min() && z <= std::numeric_limits<std::int64_t>::max()) {
        return z.convert_to<std::int64_t>();
    }
    return z.str();
}

template <Scalar S>
json scalar_json(const S& x) {
    if constexpr (is_exact_v<S>) {
        return json{{"num", integer_json(boost::multiprecision::numerator(x))},
                    {"den", integer_json(boost::multiprecision::denominator(x))}};
    } else {
        return x;
    }
}

template <Scalar S, int R>
json row_json(const Eigen::Matrix<S, R, Eigen::Dynamic>& m, int row) {
    json a = json::array();
    for (Eigen::Index i = 0; i < m.cols(); ++i) a.push_back(scalar_json<S>(m(row, i)));
    return a;
}

template <Scalar S>
json vec3_json(const Vec3<S>& v) {
    return json::array({scalar_json<S>(v(0)), scalar_json<S>(v(1)), scalar_json<S>(v(2))});
}

template <Scalar S>
json points_json(const Eigen::Matrix<S, 3, Eigen::Dynamic>& pts) {
    json a = json::array();
    for (Eigen::Index i = 0; i < pts.cols(); ++i) a.push_back(vec3_json<S>(pts.col(i)));
    return a;
}

template <Scalar S>
json poly_json(const BernsteinPoly<S>& p) {
    return row_json<S, 1>(p.coeffs(), 0);
}

template <Scalar S>
json curve_json(const CurveDocument<S>& doc) {
    return std::visit(
        [](const auto& c) -> json {
            using T = std::decay_t<decltype(c)>;
            json j;
            j["degree"] = c.degree();
            j["points"] = points_json<S>(c.points());
            j["weights"] = row_json<S, 1>(c.weights(), 0);
            if constexpr (std::is_same_v<T, NurbsCurve<S>>) {
                j["type"] = "nurbs";
                json k = json::array();
                for (const S& u : c.knots()) k.push_back(scalar_json<S>(u));
                j["knots"] = k;
            } else {
                j["type"] = "rational_bezier";
            }
            return j;
        },
        doc);
}

std::string format_double(double x) {
    if (x == 0.0) return std::signbit(x) ? "-0.0" : "0";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

bool is_scalar_array(const json& j) {
    for (const auto& e : j) {
        if (e.is_array() || (e.is_object() && !(e.size() == 2 && e.contains("num")))) return false;
    }
    return true;
}

void write_canonical(std::ostringstream& out, const json& j, int indent) {
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
    switch (j.type()) {
        case json::value_t::object: {
            if (j.empty()) {
                out << "{}";
                return;
            }
            if (j.size() == 2 && j.contains("num") && j.contains("den")) {
                out << "{\"den\": ";
                write_canonical(out, j.at("den"), 0);
                out << ", \"num\": ";
                write_canonical(out, j.at("num"), 0);
                out << "}";
                return;
            }
            out << "{\n";
            bool first = true;
            for (const auto& [key, value] : j.items()) {  // std::map: sorted
                if (!first) out << ",\n";
                first = false;
                out << inner << json(key).dump() << ": ";
                write_canonical(out, value, indent + 1);
            }
            out << "\n" << pad << "}";
            return;
        }
        case json::value_t::array: {
            if (j.empty()) {
                out << "[]";
                return;
            }
            if (is_scalar_array(j)) {
                out << "[";
                for (std::size_t i = 0; i < j.size(); ++i) {
                    if (i) out << ", ";
                    write_canonical(out, j[i], 0);
                }
                out << "]";
                return;
            }
            out << "[\n";
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i) out << ",\n";
                out << inner;
                write_canonical(out, j[i], indent + 1);
            }
            out << "\n" << pad << "]";
            return;
        }
        case json::value_t::number_float:
            out << format_double(j.get<double>());
            return;
        default:
            out << j.dump();
            return;
    }
}

std::string canonical(const json& j) {
    std::ostringstream out;
    write_canonical(out, j, 0);
    out << "\n";
    return out.str();
}

template <Scalar S>
json classification_json(const std::optional<Classification<S>>& c, json& apex) {
    apex = nullptr;
    if (!c) return nullptr;
    if (c->apex) apex = vec3_json<S>(*c->apex);
    return std::string(to_string(c->kind));
}

}  // namespace

template <Scalar S>
S parse_number(std::string_view text) {
    const std::string t(text);
    if (const auto slash = t.find('/'); slash != std::string::npos) {
        const Rational num = parse_integer_text(t.substr(0, slash), "");
        const Rational den = parse_integer_text(t.substr(slash + 1), "");
        if (den == 0) throw SchemaError("", "zero denominator in " + t);
        if constexpr (is_exact_v<S>) {
            return num / den;
        } else {
            return nearest_double(num / den);
        }
    }
    if constexpr (is_exact_v<S>) {
        return decimal_to_rational(t, "");
    } else {
        decimal_to_rational(t, "");
        const double x = std::strtod(t.c_str(), nullptr);
        if (!std::isfinite(x)) throw SchemaError("", "number out of range: " + t);
        return x;
    }
}

template <Scalar S>
Document<S> parse(std::string_view bytes) {
    const json root = parse_json(bytes, is_exact_v<S>);
    if (!root.is_object()) throw SchemaError("", "document must be a JSON object");
    if (root.contains("directrix_c") || root.contains("directrix_d") ||
        (root.contains("type") && root.at("type") == "ruled_patch")) {
        return patch_from_json<S>(root);
    }
    return curve_from_json<S>(root, "");
}

template <Scalar S>
CurveDocument<S> parse_curve(std::string_view bytes) {
    auto doc = parse<S>(bytes);
    if (auto* c = std::get_if<CurveDocument<S>>(&doc)) return std::move(*c);
    throw SchemaError("", "expected a curve document, found a patch");
}

template <Scalar S>
PatchDocument<S> parse_patch(std::string_view bytes) {
    auto doc = parse<S>(bytes);
    if (auto* p = std::get_if<PatchDocument<S>>(&doc)) return std::move(*p);
    throw SchemaError("", "expected a patch document, found a curve");
}

template <Scalar S>
std::string serialize(const CurveDocument<S>& curve) {
    return canonical(curve_json<S>(curve));
}

template <Scalar S>
std::string serialize(const PatchDocument<S>& patch) {
    json j;
    j["type"] = "ruled_patch";
    j["directrix_c"] = curve_json<S>(patch.directrix_c);
    j["directrix_d"] = curve_json<S>(patch.directrix_d);
    return canonical(j);
}

template <Scalar S>
std::string serialize(const DevelopabilityReport<S>& report, double tol) {
    json j;
    j["type"] = "developability_report";
    j["mode"] = ScalarTraits<S>::name;
    j["tolerance"] = tol;
    j["verdict"] = report.verdict;
    j["max_normalized_coeff"] = report.max_normalized_coeff;
    json apex;
    j["classification"] = classification_json<S>(report.classification, apex);
    if (!report.classification && report.verdict && !report.spans.empty() && report.spans.front().classification) {
        j["classification"] = "Mixed";
    }
    j["apex"] = apex;
    json spans = json::array();
    for (const auto& s : report.spans) {
        json o;
        o["interval"] = json::array({scalar_json<S>(s.start), scalar_json<S>(s.end)});
        o["defect"] = poly_json<S>(s.defect);
        o["verdict"] = s.verdict;
        o["max_normalized_coeff"] = s.max_normalized_coeff;
        json span_apex;
        o["classification"] = classification_json<S>(s.classification, span_apex);
        o["apex"] = span_apex;
        spans.push_back(o);
    }
    j["spans"] = spans;
    if (report.coefficients) {
        j["coefficients"] = {{"lambda", poly_json<S>(report.coefficients->lambda)},
                             {"mu", poly_json<S>(report.coefficients->mu)},
                             {"nu", poly_json<S>(report.coefficients->nu)}};
    } else {
        j["coefficients"] = nullptr;
    }
    return canonical(j);
}

template <Scalar S>
std::string serialize(const std::vector<RegressionSample<S>>& samples) {
    json j;
    j["type"] = "edge_of_regression";
    json a = json::array();
    for (const auto& s : samples) {
        json o;
        o["t"] = scalar_json<S>(s.t);
        o["singular"] = s.singular;
        o["point"] = s.singular ? json(nullptr) : vec3_json<S>(s.point);
        a.push_back(o);
    }
    j["samples"] = a;
    return canonical(j);
}

template <Scalar S>
std::string serialize_classification(const std::optional<Classification<S>>& c) {
    json j;
    json apex;
    j["type"] = "classification";
    j["classification"] = c ? classification_json<S>(c, apex) : json("Mixed");
    j["apex"] = apex;
    return canonical(j);
}

std::string serialize(const FlatPattern& pattern) {
    json j;
    j["type"] = "flat_pattern";
    json a = json::array();
    for (const auto& r : pattern.rulings) {
        a.push_back({{"t", r.t}, {"c", {r.c.x(), r.c.y()}}, {"d", {r.d.x(), r.d.y()}}});
    }
    j["rulings"] = a;
    return canonical(j);
}

#define DEVSURF_INSTANTIATE(S)                                                       \
    template S parse_number<S>(std::string_view);                                    \
    template Document<S> parse<S>(std::string_view);                                 \
    template CurveDocument<S> parse_curve<S>(std::string_view);                      \
    template PatchDocument<S> parse_patch<S>(std::string_view);                      \
    template std::string serialize<S>(const CurveDocument<S>&);                      \
    template std::string serialize<S>(const PatchDocument<S>&);                      \
    template std::string serialize<S>(const DevelopabilityReport<S>&, double);       \
    template std::string serialize<S>(const std::vector<RegressionSample<S>>&);      \
    template std::string serialize_classification<S>(const std::optional<Classification<S>>&);

DEVSURF_INSTANTIATE(double)
DEVSURF_INSTANTIATE(Rational)

#undef DEVSURF_INSTANTIATE

}  // namespace devsurf
