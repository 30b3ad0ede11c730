#pragma once

#include "arithmos/schottky.hpp"

#include "json.hpp"

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace arithmos::io {

using json = nlohmann::ordered_json;
using cplx = std::complex<double>;

constexpr const char* schema = "arithmos/1";
constexpr const char* library_version = "1.0.0";

// JSON has no infinities or NaN; those become the strings "inf", "-inf", "nan".
json number(double x);
// {"re": x, "im": y}
json complex_json(cplx z);
json complex_list(const std::vector<cplx>& zs);

// Accepts "2", "-0.5", "0.5+0.2i", "1e-3-2i", "i", "-i", "3i", and "a,b" as
// real and imaginary parts. Throws std::invalid_argument on anything else.
cplx parse_complex(const std::string& text);
// As parse_complex, plus "inf" for the point at infinity.
schottky::Point parse_point(const std::string& text);
// "p;q" -> two points
schottky::PointPair parse_point_pair(const std::string& text);

// A complex entry in a group file: a number, [re, im], or a string accepted
// by parse_complex.
cplx complex_from_json(const json& j);

// Group file: either a bare list of 2x2 matrices [[a, b], [c, d]], or
// {"generators": [...], "circles": [{"center": z, "radius": r}, ...]}.
schottky::SchottkyGroup load_group(const json& j, schottky::GroupOptions opt = {});
schottky::SchottkyGroup load_group_file(const std::string& path, schottky::GroupOptions opt = {});

struct Envelope {
    std::string command;
    json parameters = json::object();
    json result = json::object();
    json error_estimate;                // number or "exact"
    std::optional<std::uint64_t> seed;  // stochastic commands only
    std::optional<double> wall_time;    // only on request, so default output is reproducible
};
json to_json(const Envelope& e);

json error_json(const std::string& command, const std::string& message);

}  // namespace arithmos::io
