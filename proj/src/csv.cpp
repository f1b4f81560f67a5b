#include "aapam/csv.hpp"

#include <istream>
#include <sstream>

#include "aapam/errors.hpp"

namespace aapam::csv {

std::string escape(std::string_view field) {
  const bool needs_quotes =
      field.find_first_of(",\"\n\r") != std::string_view::npos;
  if (!needs_quotes) {
    return std::string(field);
  }
  std::string out;
  out.reserve(field.size() + 2);
  out.push_back('"');
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string join(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out.push_back(',');
    out += escape(fields[i]);
  }
  return out;
}

bool read_record(std::istream& in, std::vector<std::string>& fields,
                 std::size_t& line_no, std::size_t& record_line) {
  fields.clear();
  int c = in.get();
  // Skip a bare empty line between records.
  while (c == '\n') {
    ++line_no;
    c = in.get();
  }
  if (c == std::istream::traits_type::eof()) {
    return false;
  }
  record_line = line_no;

  std::string field;
  bool in_quotes = false;
  bool saw_any = false;
  while (true) {
    if (c == std::istream::traits_type::eof()) {
      if (in_quotes) {
        throw ParseError("unterminated quoted field starting at line " +
                         std::to_string(record_line));
      }
      break;
    }
    const char ch = static_cast<char>(c);
    saw_any = true;
    if (in_quotes) {
      if (ch == '"') {
        if (in.peek() == '"') {
          in.get();
          field.push_back('"');
        } else {
          in_quotes = false;
        }
      } else {
        if (ch == '\n') ++line_no;
        field.push_back(ch);
      }
    } else if (ch == '"' && field.empty()) {
      in_quotes = true;
    } else if (ch == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else if (ch == '\n') {
      ++line_no;
      break;
    } else if (ch == '\r') {
      // swallow; a following '\n' ends the record
    } else {
      field.push_back(ch);
    }
    c = in.get();
  }
  if (!saw_any) {
    return false;
  }
  fields.push_back(std::move(field));
  return true;
}

std::vector<std::string> split_line(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> fields;
  std::size_t line_no = 1;
  std::size_t record_line = 0;
  if (!read_record(in, fields, line_no, record_line)) {
    return {};
  }
  return fields;
}

}  // namespace aapam::csv
