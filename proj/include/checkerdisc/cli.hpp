#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace checkerdisc {

/// Entry point of the command-line tool. args[0] is the program name.
/// Returns the process exit code; messages go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Decimal with 12 significant digits; magnitudes below 0.5e-12 print as
/// "0.000000000000".
std::string format_disc_value(double v);

}  // namespace checkerdisc
