#pragma once

// JSON run configuration: field, curve, geometric data, window and command
// options.  Parse errors throw ConfigError naming the offending field.
// Prime-field scalars serialize as canonical residues, rationals as
// "num/den" strings; exactness survives the round trip.

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>

#include "skly/geom.hpp"

namespace skly {

using json = nlohmann::json;

struct FieldSpec {
    bool rational = false;
    std::uint64_t p = 0;

    std::string name() const { return rational ? "Q" : "F" + std::to_string(p); }
};

struct WindowSpec {
    int m0 = 0, m1 = 2, amax = 4;
};

struct WitnessSpec {
    int n = 1;
    int Nmax = 5;
    int base_index = 0;
};

struct RunConfig {
    FieldSpec field;
    std::string kind;                       // "quadratic" | "cubic"
    json curve;                             // {"a":..., "b":...}
    json t;                                 // point or "O"
    json d0;                                // array of points
    json points;                            // array of points (may be empty)
    WindowSpec window;
    int truncation = 0;
    WitnessSpec witness;
    std::uint64_t seed = 1;
    int runs = 20;
    json raw;                               // normalized config echo
};

inline FieldSpec parse_field(const json& j) {
    FieldSpec f;
    if (j.is_string()) {
        std::string s = j.get<std::string>();
        if (s == "Q" || s == "q") {
            f.rational = true;
            return f;
        }
        try {
            f.p = std::stoull(s);
        } catch (...) {
            throw ConfigError("field", "expected a prime or \"Q\"");
        }
    } else if (j.is_number_unsigned() || j.is_number_integer()) {
        long long v = j.get<long long>();
        if (v <= 0) throw ConfigError("field", "prime must be positive");
        f.p = static_cast<std::uint64_t>(v);
    } else {
        throw ConfigError("field", "expected a prime or \"Q\"");
    }
    if (f.p <= 3 || f.p >= (1ull << 31) || !is_prime_u64(f.p))
        throw ConfigError("field", "modulus must be a prime with 3 < p < 2^31");
    return f;
}

template <class K>
K parse_scalar(const json& j, const typename K::Desc& d, const std::string& where);

template <>
inline Fp parse_scalar<Fp>(const json& j, const FpDesc& d, const std::string& where) {
    if (j.is_number_integer() || j.is_number_unsigned())
        return Fp::from_int(j.get<long long>(), d.p);
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        try {
            if (!s.empty() && s[0] == '-') return Fp::from_int(std::stoll(s), d.p);
            return Fp(std::stoull(s), d.p);
        } catch (const std::exception&) {
            throw ConfigError(where, "bad integer literal '" + s + "'");
        }
    }
    throw ConfigError(where, "expected an integer");
}

template <>
inline Rat parse_scalar<Rat>(const json& j, const RatDesc&, const std::string& where) {
    if (j.is_number_integer() || j.is_number_unsigned())
        return Rat::from_int(j.get<long long>());
    if (j.is_string()) {
        try {
            return Rat::parse(j.get<std::string>());
        } catch (const std::exception&) {
            throw ConfigError(where, "bad rational literal '" + j.get<std::string>() + "'");
        }
    }
    throw ConfigError(where, "expected an integer or \"num/den\"");
}

template <class K>
CurvePoint<K> parse_point(const json& j, const Curve<K>& c, const std::string& where) {
    if (j.is_string() && j.get<std::string>() == "O") return CurvePoint<K>::infinity();
    if (!j.is_object() || !j.contains("x") || !j.contains("y"))
        throw ConfigError(where, "expected {\"x\":...,\"y\":...} or \"O\"");
    CurvePoint<K> p(parse_scalar<K>(j.at("x"), c.desc(), where + ".x"),
                    parse_scalar<K>(j.at("y"), c.desc(), where + ".y"));
    if (!c.contains(p)) throw ConfigError(where, "point is not on the curve");
    return p;
}

inline RunConfig parse_config(const json& j) {
    if (!j.is_object()) throw ConfigError("(root)", "config must be a JSON object");
    RunConfig cfg;
    if (!j.contains("field")) throw ConfigError("field", "missing");
    cfg.field = parse_field(j.at("field"));
    if (!j.contains("kind")) throw ConfigError("kind", "missing");
    cfg.kind = j.at("kind").get<std::string>();
    if (cfg.kind != "quadratic" && cfg.kind != "cubic")
        throw ConfigError("kind", "expected \"quadratic\" or \"cubic\"");
    if (!j.contains("curve") || !j.at("curve").is_object() || !j.at("curve").contains("a") ||
        !j.at("curve").contains("b"))
        throw ConfigError("curve", "expected {\"a\":...,\"b\":...}");
    cfg.curve = j.at("curve");
    if (!j.contains("t")) throw ConfigError("t", "missing");
    cfg.t = j.at("t");
    if (!j.contains("D0") || !j.at("D0").is_array()) throw ConfigError("D0", "expected an array of points");
    cfg.d0 = j.at("D0");
    cfg.points = j.value("points", json::array());
    if (!cfg.points.is_array()) throw ConfigError("points", "expected an array of points");
    if (j.contains("window")) {
        const json& w = j.at("window");
        cfg.window.m0 = w.value("m0", 0);
        cfg.window.m1 = w.value("m1", 2);
        cfg.window.amax = w.value("amax", 4);
        if (cfg.window.m0 > cfg.window.m1 || cfg.window.amax < 0 || cfg.window.amax > 16)
            throw ConfigError("window", "need m0 <= m1 and 0 <= amax <= 16");
    }
    cfg.truncation = j.value("truncation", 0);
    if (cfg.truncation < 0 || cfg.truncation > 40)
        throw ConfigError("truncation", "out of range [0, 40]");
    if (j.contains("witness")) {
        const json& w = j.at("witness");
        cfg.witness.n = w.value("n", 1);
        cfg.witness.Nmax = w.value("Nmax", 5);
        cfg.witness.base_index = w.value("i", 0);
        if (cfg.witness.n < 1 || cfg.witness.Nmax < 1 || cfg.witness.Nmax > 10)
            throw ConfigError("witness", "need n >= 1 and 1 <= Nmax <= 10");
    }
    cfg.seed = j.value("seed", 1ull);
    cfg.runs = j.value("runs", 20);
    if (cfg.runs < 0 || cfg.runs > 10000) throw ConfigError("runs", "out of range [0, 10000]");
    cfg.raw = j;
    return cfg;
}

/// Geometric data over a concrete field from the parsed config.
template <class K>
GeometricData<K> build_geometric_data(const RunConfig& cfg, const typename K::Desc& d) {
    GeometricData<K> gd;
    gd.kind = cfg.kind == "quadratic" ? AlgebraKind::quadratic : AlgebraKind::cubic;
    K a = parse_scalar<K>(cfg.curve.at("a"), d, "curve.a");
    K b = parse_scalar<K>(cfg.curve.at("b"), d, "curve.b");
    try {
        gd.curve = Curve<K>(a, b);
    } catch (const Error& e) {
        throw ConfigError("curve", e.what());
    }
    gd.t = parse_point<K>(cfg.t, gd.curve, "t");
    Divisor<K> d0;
    for (size_t i = 0; i < cfg.d0.size(); ++i)
        d0.add(parse_point<K>(cfg.d0[i], gd.curve, "D0[" + std::to_string(i) + "]"), 1);
    gd.line_bundle = d0;
    if (d0.degree() != gd.r())
        throw ConfigError("D0", "expected " + std::to_string(gd.r()) + " points for " + cfg.kind +
                                    " data");
    gd.validate_basic();
    return gd;
}

template <class K>
Divisor<K> build_points(const RunConfig& cfg, const Curve<K>& c) {
    Divisor<K> d;
    for (size_t i = 0; i < cfg.points.size(); ++i)
        d.add(parse_point<K>(cfg.points[i], c, "points[" + std::to_string(i) + "]"), 1);
    return d;
}

// serialization helpers -----------------------------------------------------

inline json scalar_json(const Fp& v) { return std::to_string(v.value()); }
inline json scalar_json(const Rat& v) { return v.str(); }

template <class K>
json point_json(const CurvePoint<K>& p) {
    if (p.inf) return "O";
    return json{{"x", scalar_json(p.x)}, {"y", scalar_json(p.y)}};
}

template <class K>
json divisor_json(const Divisor<K>& d) {
    json a = json::array();
    for (const auto& [p, m] : d.entries()) a.push_back(json{{"point", point_json(p)}, {"mult", m}});
    return a;
}

template <class K>
json pic_json(const PicClass<K>& c) {
    return json{{"degree", c.degree}, {"sum", point_json(c.sum)}};
}

template <class K>
json coords_json(const std::vector<K>& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(scalar_json(x));
    return a;
}

/// FNV-1a over the canonical dump; embedded in every report.
inline std::string config_hash(const json& j) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : j.dump()) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[19];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

}  // namespace skly
