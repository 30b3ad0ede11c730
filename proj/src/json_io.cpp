#include "arithmos/json_io.hpp"

#include <cmath>
#include <fstream>
#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace arithmos::io {

json number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return x;
}

json complex_json(cplx z) { return json{{"re", number(z.real())}, {"im", number(z.imag())}}; }

json complex_list(const std::vector<cplx>& zs) {
    json out = json::array();
    for (const auto& z : zs) out.push_back(complex_json(z));
    return out;
}

namespace {

double to_double(const std::string& s, const std::string& whole) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("not a complex number: '" + whole + "'");
    }
    if (used != s.size()) throw std::invalid_argument("not a complex number: '" + whole + "'");
    return v;
}

std::string strip(std::string s) {
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
    return s;
}

}  // namespace

cplx parse_complex(const std::string& text) {
    const std::string s = strip(text);
    if (s.empty()) throw std::invalid_argument("empty complex number");
    if (auto comma = s.find(','); comma != std::string::npos)
        return {to_double(s.substr(0, comma), text), to_double(s.substr(comma + 1), text)};
    if (s.back() != 'i') return {to_double(s, text), 0.0};

    // find the sign that separates real and imaginary parts, skipping exponent signs
    const std::string body = s.substr(0, s.size() - 1);
    std::size_t split = std::string::npos;
    for (std::size_t k = body.size(); k-- > 1;)
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            split = k;
            break;
        }
    auto imag = [&](const std::string& t) {
        if (t.empty() || t == "+") return 1.0;
        if (t == "-") return -1.0;
        return to_double(t, text);
    };
    if (split == std::string::npos) return {0.0, imag(body)};
    return {to_double(body.substr(0, split), text), imag(body.substr(split))};
}

schottky::Point parse_point(const std::string& text) {
    const std::string s = strip(text);
    if (s == "inf" || s == "infinity") return schottky::Point::infinity();
    return schottky::Point::finite(parse_complex(s));
}

schottky::PointPair parse_point_pair(const std::string& text) {
    const auto semi = text.find(';');
    if (semi == std::string::npos) throw std::invalid_argument("expected two points 'p;q', got '" + text + "'");
    return {parse_point(text.substr(0, semi)), parse_point(text.substr(semi + 1))};
}

cplx complex_from_json(const json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    if (j.is_string()) return parse_complex(j.get<std::string>());
    if (j.is_object() && j.contains("re")) return {j.at("re").get<double>(), j.value("im", 0.0)};
    throw std::invalid_argument("not a complex entry: " + j.dump());
}

schottky::SchottkyGroup load_group(const json& j, schottky::GroupOptions opt) {
    const json& gens = j.is_array() ? j : j.at("generators");
    if (!gens.is_array() || gens.empty()) throw std::invalid_argument("group file: need a non-empty list of generators");
    std::vector<schottky::MoebiusMap> maps;
    for (const auto& m : gens) {
        if (!m.is_array() || m.size() != 2 || !m[0].is_array() || m[0].size() != 2 || !m[1].is_array() || m[1].size() != 2)
            throw std::invalid_argument("group file: each generator must be [[a, b], [c, d]]");
        maps.emplace_back(complex_from_json(m[0][0]), complex_from_json(m[0][1]), complex_from_json(m[1][0]),
                          complex_from_json(m[1][1]));
    }
    std::vector<schottky::Circle> circles;
    if (j.is_object() && j.contains("circles"))
        for (const auto& c : j.at("circles")) circles.push_back({complex_from_json(c.at("center")), c.at("radius").get<double>()});
    return schottky::SchottkyGroup(std::move(maps), std::move(circles), opt);
}

schottky::SchottkyGroup load_group_file(const std::string& path, schottky::GroupOptions opt) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open group file '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::runtime_error("group file '" + path + "': " + e.what());
    }
    return load_group(j, opt);
}

json to_json(const Envelope& e) {
    json out;
    out["schema"] = schema;
    out["version"] = library_version;
    out["command"] = e.command;
    out["parameters"] = e.parameters;
    out["result"] = e.result;
    out["error_estimate"] = e.error_estimate.is_null() ? json("exact") : e.error_estimate;
    if (e.seed) out["seed"] = *e.seed;
    if (e.wall_time) out["wall_time"] = *e.wall_time;
    return out;
}

json error_json(const std::string& command, const std::string& message) {
    json out;
    out["schema"] = schema;
    out["command"] = command;
    out["error"] = message;
    return out;
}

}  // namespace arithmos::io
