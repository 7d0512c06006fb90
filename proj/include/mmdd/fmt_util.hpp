#pragma once

#include <charconv>
#include <cstddef>
#include <string>

namespace mmdd {

// Shortest round-trip decimal form. Used for config rendering and CSV output
// so identical runs produce byte-identical files.
inline std::string fmt_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

} // namespace mmdd
