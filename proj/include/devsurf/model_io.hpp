#pragma once

#include "devsurf/developable.hpp"
#include "devsurf/surface.hpp"

#include <string>
#include <string_view>
#include <variant>

namespace devsurf {

template <Scalar S>
using CurveDocument = std::variant<RationalBezierCurve<S>, NurbsCurve<S>>;

template <Scalar S>
struct PatchDocument {
    CurveDocument<S> directrix_c;
    CurveDocument<S> directrix_d;
};

template <Scalar S>
using Document = std::variant<CurveDocument<S>, PatchDocument<S>>;

/// Parses a curve or patch document. In exact mode decimal literals become
/// the exact ratio they denote; {"num", "den"} objects are accepted in both
/// modes. Errors are SchemaError with a JSON pointer path.
template <Scalar S>
Document<S> parse(std::string_view bytes);

/// A single number: decimal literal or p/q. Exact mode keeps decimals exact.
template <Scalar S>
S parse_number(std::string_view text);

template <Scalar S>
CurveDocument<S> parse_curve(std::string_view bytes);

template <Scalar S>
PatchDocument<S> parse_patch(std::string_view bytes);

// Canonical output: sorted keys, 17 significant digits, LF line endings.
template <Scalar S>
std::string serialize(const CurveDocument<S>& curve);

template <Scalar S>
std::string serialize(const PatchDocument<S>& patch);

template <Scalar S>
std::string serialize(const DevelopabilityReport<S>& report, double tol);

template <Scalar S>
std::string serialize(const std::vector<RegressionSample<S>>& samples);

/// Unset classification (spans disagree) is written as "Mixed".
template <Scalar S>
std::string serialize_classification(const std::optional<Classification<S>>& c);

std::string serialize(const FlatPattern& pattern);

template <Scalar S>
bool operator==(const PatchDocument<S>& a, const PatchDocument<S>& b) {
    return a.directrix_c == b.directrix_c && a.directrix_d == b.directrix_d;
}

}  // namespace devsurf
