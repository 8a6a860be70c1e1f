#include <fogflow/format.hpp>

#include <cstdio>

namespace fogflow {

std::string format_number(double value) {
    if (value == 0.0) {
        value = 0.0; // drop the sign of -0
    }
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.6g", value);
    return buffer;
}

} // namespace fogflow
