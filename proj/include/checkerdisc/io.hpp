#pragma once

#include <string>
#include <string_view>

namespace checkerdisc {

/// Shortest decimal string that parses back to exactly v.
std::string format_shortest(double v);

/// Writes `content` to a temporary file beside `path`, then renames it over
/// `path`. Throws std::runtime_error on failure; no partial file is left.
void write_atomic(const std::string& path, std::string_view content);

std::string read_file(const std::string& path);

}  // namespace checkerdisc
