#pragma once

#include <string>

namespace fqed {

/// Shortest decimal that reads back to the same double; "nan", "inf", "-inf".
std::string format_double(double v);

} // namespace fqed
