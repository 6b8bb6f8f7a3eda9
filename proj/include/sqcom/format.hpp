#pragma once

#include <cmath>
#include <cstdio>
#include <string>

namespace sqcom {

/// 17 significant digits, enough to round-trip any double.
inline std::string format_number(double x) {
    if (std::isnan(x)) return "";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace sqcom
