#pragma once

#include <iosfwd>
#include <string>

namespace semiradius {

/// Exit codes: 0 ok, 1 numerical violation or inadmissible operator, 2 usage
/// or parse error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// %.12g, with ".0" appended to integral values ("1.0", "0.5").
std::string format_number(double v);

}  // namespace semiradius
