#pragma once

#include <string>

namespace fogflow {

// Six significant digits, shortest of fixed/scientific, locale independent.
std::string format_number(double value);

} // namespace fogflow
