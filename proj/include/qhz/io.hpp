#pragma once

#include <json.hpp>

#include <cctype>
#include <stdexcept>
#include <string>
#include <vector>

#include "qhz/chain.hpp"
#include "qhz/interpolation.hpp"
#include "qhz/matrix.hpp"
#include "qhz/polynomial.hpp"
#include "qhz/quaternion.hpp"
#include "qhz/series.hpp"

namespace qhz::io {

using json = nlohmann::json;

/// Input rejection with the offending JSON path, e.g. "/chains/0/1".
struct ParseError : std::runtime_error {
    std::string path;
    ParseError(std::string p, const std::string& what)
        : std::runtime_error(p + ": " + what), path(std::move(p)) {}
};

namespace detail {

inline bool plain_integer(const std::string& s) {
    std::size_t t = s.empty() ? 0 : (s[0] == '-' ? 1 : 0);
    if (t >= s.size()) return false;
    for (; t < s.size(); ++t)
        if (!std::isdigit(static_cast<unsigned char>(s[t]))) return false;
    return true;
}

inline bool rational_literal(const std::string& s) {
    const auto slash = s.find('/');
    if (slash == std::string::npos) return plain_integer(s);
    return plain_integer(s.substr(0, slash)) && plain_integer(s.substr(slash + 1)) &&
           s.substr(slash + 1) != "0" && s[slash + 1] != '-';
}

}  // namespace detail

template <class S>
S parse_scalar(const json& j, const std::string& path);

template <>
inline Rational parse_scalar<Rational>(const json& j, const std::string& path) {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (!detail::rational_literal(s))
            throw ParseError(path, "expected an integer or \"p/q\" string, got \"" + s + "\"");
        return Rational(s);
    }
    throw ParseError(path, "exact backend scalars must be integers or \"p/q\" strings");
}

template <>
inline double parse_scalar<double>(const json& j, const std::string& path) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (detail::rational_literal(s)) return Rational(s).convert_to<double>();
    }
    throw ParseError(path, "expected a number");
}

template <class S>
json scalar_to_json(const S& v);

template <>
inline json scalar_to_json<Rational>(const Rational& v) {
    if (denominator(v) == 1) return to_string(numerator(v));
    return to_string(numerator(v)) + "/" + to_string(denominator(v));
}

template <>
inline json scalar_to_json<double>(const double& v) { return v; }

/// Text form "x0 + x1 i + x2 j + x3 k", the inverse of to_text().
template <class S>
Quaternion<S> parse_quaternion_text(const std::string& s, const std::string& path) {
    std::vector<std::string> parts;
    std::size_t pos = 0;
    for (;;) {
        const std::size_t next = s.find(" + ", pos);
        if (next == std::string::npos) {
            parts.push_back(s.substr(pos));
            break;
        }
        parts.push_back(s.substr(pos, next - pos));
        pos = next + 3;
    }
    if (parts.size() != 4)
        throw ParseError(path, "text form must have four '+'-separated components");
    const char units[3] = {'i', 'j', 'k'};
    S comps[4];
    for (std::size_t t = 0; t < 4; ++t) {
        std::string piece = parts[t];
        if (t > 0) {
            if (piece.size() < 2 || piece.back() != units[t - 1] ||
                piece[piece.size() - 2] != ' ')
                throw ParseError(path, std::string("component ") + std::to_string(t) +
                                           " must end with ' " + units[t - 1] + "'");
            piece = piece.substr(0, piece.size() - 2);
        }
        comps[t] = parse_scalar<S>(json(piece), path);
    }
    return Quaternion<S>(comps[0], comps[1], comps[2], comps[3]);
}

/// Structured form [x0, x1, x2, x3] or the text form as a string.
template <class S>
Quaternion<S> parse_quaternion(const json& j, const std::string& path) {
    if (j.is_string()) return parse_quaternion_text<S>(j.get<std::string>(), path);
    if (!j.is_array() || j.size() != 4)
        throw ParseError(path, "expected [x0, x1, x2, x3] or a text-form string");
    return Quaternion<S>(parse_scalar<S>(j[0], path + "/0"), parse_scalar<S>(j[1], path + "/1"),
                         parse_scalar<S>(j[2], path + "/2"), parse_scalar<S>(j[3], path + "/3"));
}

template <class S>
json quaternion_to_json(const Quaternion<S>& q) {
    return json::array({scalar_to_json<S>(q.x0), scalar_to_json<S>(q.x1),
                        scalar_to_json<S>(q.x2), scalar_to_json<S>(q.x3)});
}

template <class S>
QPolynomial<S> parse_polynomial(const json& j, const std::string& path) {
    if (!j.is_array()) throw ParseError(path, "expected a coefficient array");
    std::vector<Quaternion<S>> coeffs;
    for (std::size_t t = 0; t < j.size(); ++t)
        coeffs.push_back(parse_quaternion<S>(j[t], path + "/" + std::to_string(t)));
    return QPolynomial<S>(std::move(coeffs));
}

template <class S>
json polynomial_to_json(const QPolynomial<S>& f) {
    json out = json::array();
    for (const auto& c : f.coeffs()) out.push_back(quaternion_to_json<S>(c));
    return out;
}

template <class S>
std::vector<Quaternion<S>> parse_tuple(const json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) throw ParseError(path, "expected a nonempty node array");
    std::vector<Quaternion<S>> nodes;
    for (std::size_t t = 0; t < j.size(); ++t)
        nodes.push_back(parse_quaternion<S>(j[t], path + "/" + std::to_string(t)));
    return nodes;
}

template <class S>
SphericalChain<S> parse_chain(const json& j, const std::string& path) {
    json nodes = j;
    if (j.is_object()) {
        for (const auto& [key, _] : j.items())
            if (key != "label" && key != "nodes")
                throw ParseError(path + "/" + key, "unknown field");
        if (!j.contains("nodes")) throw ParseError(path, "missing field 'nodes'");
        nodes = j["nodes"];
    }
    auto tuple = parse_tuple<S>(nodes, path);
    const auto v = SphericalChain<S>::check(tuple);
    if (!v.ok) throw ParseError(path, v.message());
    return SphericalChain<S>::validate(std::move(tuple));
}

template <class S>
ChainFamily<S> parse_family(const json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) throw ParseError(path, "expected a nonempty chain array");
    ChainFamily<S> fam;
    for (std::size_t t = 0; t < j.size(); ++t)
        fam.push_back(parse_chain<S>(j[t], path + "/" + std::to_string(t)));
    return fam;
}

template <class S>
json chain_to_json(const SphericalChain<S>& c) {
    json out = json::array();
    for (const auto& n : c.nodes()) out.push_back(quaternion_to_json<S>(n));
    return out;
}

template <class S>
json family_to_json(const ChainFamily<S>& fam) {
    json out = json::array();
    for (const auto& c : fam) out.push_back(chain_to_json<S>(c));
    return out;
}

template <class S>
json matrix_to_json(const QMatrix<S>& m) {
    json out = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(quaternion_to_json<S>(m(i, j)));
        out.push_back(std::move(row));
    }
    return out;
}

template <class S>
json series_to_json(const TruncatedSeries<S>& f) {
    json out;
    out["coeffs"] = json::array();
    for (const auto& c : f.coeffs) out["coeffs"].push_back(quaternion_to_json<S>(c));
    out["order"] = f.order();
    out["tail_sq"] = f.tail_finite ? scalar_to_json<S>(f.tail_sq) : json("infinite");
    return out;
}

template <class S>
std::vector<std::vector<Quaternion<S>>> parse_targets(const json& j, const std::string& path) {
    if (!j.is_array()) throw ParseError(path, "expected an array of target rows");
    std::vector<std::vector<Quaternion<S>>> targets;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string row_path = path + "/" + std::to_string(i);
        if (!j[i].is_array()) throw ParseError(row_path, "expected a target array");
        std::vector<Quaternion<S>> row;
        for (std::size_t t = 0; t < j[i].size(); ++t)
            row.push_back(parse_quaternion<S>(j[i][t], row_path + "/" + std::to_string(t)));
        targets.push_back(std::move(row));
    }
    return targets;
}

inline void reject_unknown_fields(const json& j, const std::vector<std::string>& allowed,
                                  const std::string& path) {
    for (const auto& [key, _] : j.items()) {
        bool ok = false;
        for (const auto& a : allowed) ok = ok || key == a;
        if (!ok) throw ParseError(path + "/" + key, "unknown field");
    }
}

}  // namespace qhz::io
