#include "aapam/store.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "aapam/csv.hpp"
#include "aapam/errors.hpp"

namespace aapam {
namespace {

std::ifstream open_for_read(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open " + path.string());
  }
  return in;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot write " + path.string());
  }
  return out;
}

double parse_component(const std::string& text, const std::string& context) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || text.empty() ||
      !std::isfinite(value)) {
    throw ParseError(context + ": bad numeric value '" + text + "'");
  }
  return value;
}

}  // namespace

std::string format_component(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", value);
  return std::string(buf);
}

void save_profiles(const std::map<std::string, EmotionVector>& profiles,
                   const std::filesystem::path& path) {
  std::ofstream out = open_for_write(path);
  out << kProfileHeader << "\n";
  for (const auto& [id, vec] : profiles) {
    out << csv::escape(id);
    for (double component : vec.values) {
      out << ',' << format_component(component);
    }
    out << "\n";
  }
  if (!out) {
    throw IoError("write failed for " + path.string());
  }
}

std::map<std::string, EmotionVector> load_profiles(
    const std::filesystem::path& path) {
  std::ifstream in = open_for_read(path);
  std::map<std::string, EmotionVector> profiles;

  std::vector<std::string> fields;
  std::size_t line_no = 1;
  std::size_t record_line = 0;
  if (!csv::read_record(in, fields, line_no, record_line) ||
      csv::join(fields) != kProfileHeader) {
    throw ParseError(path.string() + ": expected header '" +
                     kProfileHeader + "'");
  }
  while (csv::read_record(in, fields, line_no, record_line)) {
    const std::string context =
        path.string() + " row " + std::to_string(record_line);
    if (fields.size() != 1 + kEmotionCount) {
      throw ParseError(context + ": expected " +
                       std::to_string(1 + kEmotionCount) + " fields, got " +
                       std::to_string(fields.size()));
    }
    if (fields[0].empty()) {
      throw ParseError(context + ": empty id");
    }
    EmotionVector vec;
    for (std::size_t i = 0; i < kEmotionCount; ++i) {
      vec.values[i] = parse_component(fields[i + 1], context);
    }
    auto [it, inserted] = profiles.emplace(fields[0], vec);
    if (!inserted) {
      throw DuplicateId(context + ": id '" + fields[0] + "' repeated");
    }
  }
  return profiles;
}

void save_links(std::span<const PacLink> links,
                const std::filesystem::path& path) {
  std::ofstream out = open_for_write(path);
  out << kLinkHeader << "\n";
  char aii[32];
  for (const PacLink& link : links) {
    std::snprintf(aii, sizeof(aii), "%.6f", link.aii.value());
    out << csv::escape(link.source.dataset) << ','
        << csv::escape(link.source.raw) << ','
        << csv::escape(link.target.dataset) << ','
        << csv::escape(link.target.raw) << ',' << aii << ','
        << to_string(link.kind) << "\n";
  }
  if (!out) {
    throw IoError("write failed for " + path.string());
  }
}

std::vector<PacLink> load_links(const std::filesystem::path& path) {
  std::ifstream in = open_for_read(path);
  std::vector<PacLink> links;

  std::vector<std::string> fields;
  std::size_t line_no = 1;
  std::size_t record_line = 0;
  if (!csv::read_record(in, fields, line_no, record_line) ||
      csv::join(fields) != kLinkHeader) {
    throw ParseError(path.string() + ": expected header '" + kLinkHeader +
                     "'");
  }
  while (csv::read_record(in, fields, line_no, record_line)) {
    const std::string context =
        path.string() + " row " + std::to_string(record_line);
    if (fields.size() != 6) {
      throw ParseError(context + ": expected 6 fields, got " +
                       std::to_string(fields.size()));
    }
    PacLink link;
    link.source = ScopedId{fields[0], fields[1]};
    link.target = ScopedId{fields[2], fields[3]};
    link.aii = Aii(parse_component(fields[4], context));
    const auto kind = parse_pac_kind(fields[5]);
    if (!kind.has_value()) {
      throw ParseError(context + ": unknown link kind '" + fields[5] + "'");
    }
    link.kind = *kind;
    links.push_back(std::move(link));
  }
  return links;
}

void save_id_map(const IdMap& map, const std::filesystem::path& path) {
  std::ofstream out = open_for_write(path);
  out << kIdMapHeader << "\n";
  for (const auto& [numeric, raw] : map.entries()) {
    out << numeric << ',' << csv::escape(raw) << "\n";
  }
  if (!out) {
    throw IoError("write failed for " + path.string());
  }
}

IdMap load_id_map(const std::filesystem::path& path) {
  std::ifstream in = open_for_read(path);
  IdMap map;

  std::vector<std::string> fields;
  std::size_t line_no = 1;
  std::size_t record_line = 0;
  if (!csv::read_record(in, fields, line_no, record_line) ||
      csv::join(fields) != kIdMapHeader) {
    throw ParseError(path.string() + ": expected header '" +
                     std::string(kIdMapHeader) + "'");
  }
  while (csv::read_record(in, fields, line_no, record_line)) {
    const std::string context =
        path.string() + " row " + std::to_string(record_line);
    if (fields.size() != 2) {
      throw ParseError(context + ": expected 2 fields, got " +
                       std::to_string(fields.size()));
    }
    std::int64_t numeric = 0;
    const char* first = fields[0].data();
    const char* last = first + fields[0].size();
    auto [ptr, ec] = std::from_chars(first, last, numeric);
    if (ec != std::errc() || ptr != last || fields[0].empty()) {
      throw ParseError(context + ": bad numeric id '" + fields[0] + "'");
    }
    map.insert(numeric, fields[1]);
  }
  return map;
}

}  // namespace aapam
