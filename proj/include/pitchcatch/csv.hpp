#pragma once

#include <cstdio>
#include <string>

namespace pitchcatch {

/// Deterministic numeric formatting for CSV output: 12 significant digits,
/// locale-independent, byte-stable across runs.
inline std::string csv_num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

}  // namespace pitchcatch
