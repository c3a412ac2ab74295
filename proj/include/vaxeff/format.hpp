#pragma once

#include <charconv>
#include <string>

namespace vaxeff {

/// Shortest round-trip form in %g style, '.' separator regardless of locale.
inline std::string format_number(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general);
    return std::string(buf, res.ptr);
}

}  // namespace vaxeff
