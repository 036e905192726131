#pragma once

#include <initializer_list>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace sparse_sense::csv {

/// RFC-4180 field quoting: fields containing a comma, quote, CR or LF are
/// wrapped in quotes with embedded quotes doubled.
std::string quote(std::string_view field);

void write_row(std::ostream& out, const std::vector<std::string>& fields);

/// Shortest text that reads back to the same double ("%.17g", trimmed).
std::string format_double(double v);

/// Splits one CSV record (no embedded newlines) honouring quotes.
std::vector<std::string> parse_row(std::string_view line);

}  // namespace sparse_sense::csv
