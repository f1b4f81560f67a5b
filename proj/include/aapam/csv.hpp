#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace aapam::csv {

// Quotes a field if it contains a comma, quote, or newline; doubles any
// embedded quotes. Fields without those characters pass through untouched.
std::string escape(std::string_view field);

std::string join(const std::vector<std::string>& fields);

// Reads one CSV record, honoring quoted fields with embedded commas, quotes,
// and newlines. `line_no` is advanced past the record and reports the line
// the record started on via `record_line`. Returns false at end of input.
// Throws ParseError on an unterminated quoted field.
bool read_record(std::istream& in, std::vector<std::string>& fields,
                 std::size_t& line_no, std::size_t& record_line);

// Splits a single line that is known to contain no embedded newlines.
std::vector<std::string> split_line(const std::string& line);

}  // namespace aapam::csv
