#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace skly {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed input configuration; `field` names the offending entry.
struct ConfigError : Error {
    std::string field;
    ConfigError(std::string f, const std::string& msg)
        : Error("config field '" + f + "': " + msg), field(std::move(f)) {}
};

/// Geometric data violates a genericity hypothesis; `clauses` are the named checks.
struct GenericityError : Error {
    std::vector<std::string> clauses;
    explicit GenericityError(std::vector<std::string> cs)
        : Error("genericity violation: " + join(cs)), clauses(std::move(cs)) {}

  private:
    static std::string join(const std::vector<std::string>& cs) {
        std::string s;
        for (const auto& c : cs) {
            if (!s.empty()) s += ", ";
            s += c;
        }
        return s;
    }
};

/// A point division (n*u = P) could not be completed over the base field.
struct TorsionSearchError : Error {
    explicit TorsionSearchError(const std::string& msg) : Error(msg) {}
};

/// Requested data lies beyond the materialized degree bound.
struct TruncationError : Error {
    explicit TruncationError(const std::string& msg) : Error(msg) {}
};

}  // namespace skly
