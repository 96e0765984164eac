#pragma once

#include <algorithm>
#include <cmath>
#include <string>

// Reference exponents are rounded to the digits shown. A computed value
// matches a printed one when it lies within 1e-4 or within half a unit of
// the last printed digit, whichever is wider.
inline double printed_tolerance(const std::string& printed) {
    const auto dot = printed.find('.');
    const int decimals = dot == std::string::npos ? 0 : static_cast<int>(printed.size() - dot - 1);
    return std::max(1e-4, 0.5 * std::pow(10.0, -decimals));
}

inline bool matches_printed(double computed, const std::string& printed) {
    return std::fabs(computed - std::stod(printed)) <= printed_tolerance(printed);
}
