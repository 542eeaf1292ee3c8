#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <variant>
#include <vector>

#include "dpe/common.hpp"

namespace dpe::minilang {

using Int = std::int64_t;

// The minimum int doubles as the -inf sentinel and renders as "-inf".
inline constexpr Int kNegInf = std::numeric_limits<Int>::min();

struct Bottom {
    bool operator==(const Bottom&) const = default;
};

using IntArray = std::vector<Int>;

// Runtime value. Bottom marks a declared-but-unassigned variable; the
// interpreter rejects it as an operand.
class Value {
public:
    Value() : v_(Bottom{}) {}
    Value(Int i) : v_(i) {}
    Value(bool b) : v_(b) {}
    Value(std::string s) : v_(std::move(s)) {}
    Value(IntArray a) : v_(std::move(a)) {}

    static Value bottom() { return Value(); }

    bool is_bottom() const { return std::holds_alternative<Bottom>(v_); }
    bool is_int() const { return std::holds_alternative<Int>(v_); }
    bool is_bool() const { return std::holds_alternative<bool>(v_); }
    bool is_str() const { return std::holds_alternative<std::string>(v_); }
    bool is_array() const { return std::holds_alternative<IntArray>(v_); }

    Int as_int() const { return std::get<Int>(v_); }
    bool as_bool() const { return std::get<bool>(v_); }
    const std::string& as_str() const { return std::get<std::string>(v_); }
    const IntArray& as_array() const { return std::get<IntArray>(v_); }
    IntArray& as_array() { return std::get<IntArray>(v_); }

    bool operator==(const Value& o) const = default;

    const char* type_name() const {
        if (is_bottom()) return "bottom";
        if (is_int()) return "int";
        if (is_bool()) return "bool";
        if (is_str()) return "str";
        return "int[]";
    }

private:
    std::variant<Bottom, Int, bool, std::string, IntArray> v_;
};

inline std::string render_int(Int i) {
    if (i == kNegInf) return "-inf";
    return std::to_string(i);
}

inline std::string escape_str(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    out += '"';
    for (char c : s) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        case '\r': out += "\\r"; break;
        default: out += c;
        }
    }
    out += '"';
    return out;
}

// Canonical trace rendering: total and injective over non-Bottom values.
// Ints are decimal ("-inf" for the sentinel), bools bare words, strings
// quoted with escapes, arrays bracketed with no spaces.
inline std::string render_value(const Value& v) {
    if (v.is_bottom()) fail(errc::internal, "render_value on Bottom");
    if (v.is_int()) return render_int(v.as_int());
    if (v.is_bool()) return v.as_bool() ? "true" : "false";
    if (v.is_str()) return escape_str(v.as_str());
    std::string out = "[";
    const auto& a = v.as_array();
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i) out += ',';
        out += render_int(a[i]);
    }
    out += ']';
    return out;
}

// Display rendering used by print(): like render_value but strings are raw.
inline std::string display_value(const Value& v) {
    if (v.is_str()) return v.as_str();
    return render_value(v);
}

} // namespace dpe::minilang
