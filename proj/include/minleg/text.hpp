#pragma once

#include <string>

namespace minleg {

/// printf("%.17g"); exact decimal round trip for doubles. Non-finite values
/// become JSON null.
std::string format_number(double x);

/// JSON string literal with escapes.
std::string quote_json(const std::string& s);

}  // namespace minleg
