#pragma once

#include <charconv>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>

#include "subprof/error.hpp"

namespace subprof::detail {

// Shortest representation that reads back to the same double.
inline void put_double(std::ostream& out, double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    out.write(buf, ptr - buf);
}

inline std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

inline double parse_double(std::string_view token) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc() || ptr != token.data() + token.size())
        throw Error(Errc::MalformedInput, "bad number: " + std::string(token));
    return v;
}

inline double get_double(std::istream& in) {
    std::string token;
    if (!(in >> token)) throw Error(Errc::MalformedInput, "unexpected end of input");
    return parse_double(token);
}

// Fixed-point with `digits` decimals, independent of stream locale state.
inline std::string fixed(double v, int digits = 4) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, digits);
    return std::string(buf, ptr);
}

}  // namespace subprof::detail
