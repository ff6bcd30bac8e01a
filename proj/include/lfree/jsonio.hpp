#pragma once

#include <json.hpp>

#include "lfree/numeric.hpp"

namespace lfree {

// Integers beyond 2^53 are emitted as decimal strings so that JSON consumers
// with double-backed numbers never lose precision.
inline nlohmann::json int_json(const Int& v) {
    static const Int kLimit = Int(1) << 53;
    if (v <= kLimit && v >= -kLimit) return static_cast<std::int64_t>(v);
    return v.str();
}

inline Int int_from_json(const nlohmann::json& j) {
    if (j.is_string()) return Int(j.get<std::string>());
    return Int(j.get<std::int64_t>());
}

inline nlohmann::json int_array_json(const std::vector<Int>& xs) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& x : xs) a.push_back(int_json(x));
    return a;
}

inline nlohmann::json rat_json(const Rat& r) {
    nlohmann::json j;
    j["num"] = int_json(num(r));
    j["den"] = int_json(den(r));
    return j;
}

}  // namespace lfree
