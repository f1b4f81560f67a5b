#include "aapam/ingestion.hpp"

#include <cassert>
#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "aapam/csv.hpp"
#include "aapam/errors.hpp"
#include "aapam/log.hpp"

namespace aapam {
namespace {

using nlohmann::json;

std::ifstream open_or_throw(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open " + path.string());
  }
  return in;
}

bool parse_double(const std::string& text, double& out) {
  const char* first = text.data();
  const char* last = first + text.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && !text.empty();
}

bool parse_int(const std::string& text, std::int64_t& out) {
  const char* first = text.data();
  const char* last = first + text.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && !text.empty();
}

bool has_json_extension(const std::filesystem::path& path) {
  const std::string ext = path.extension().string();
  return ext == ".json" || ext == ".jsonl" || ext == ".ndjson";
}

}  // namespace

RatingsIngest read_ratings_table(const std::filesystem::path& path,
                                 const DatasetId& dataset,
                                 const RatingScale& scale) {
  std::ifstream in = open_or_throw(path);
  RatingsIngest out;

  std::vector<std::string> fields;
  std::size_t line_no = 1;
  std::size_t record_line = 0;
  if (!csv::read_record(in, fields, line_no, record_line) ||
      fields != std::vector<std::string>{"userId", "movieId", "rating",
                                         "timestamp"}) {
    throw ParseError(path.string() +
                     ": expected header userId,movieId,rating,timestamp");
  }

  while (csv::read_record(in, fields, line_no, record_line)) {
    if (fields.size() != 4) {
      out.rejects.push_back({record_line, "ParseError: expected 4 fields, got " +
                                              std::to_string(fields.size())});
      continue;
    }
    double rating = 0.0;
    std::int64_t timestamp = 0;
    if (fields[0].empty() || fields[1].empty()) {
      out.rejects.push_back({record_line, "ParseError: empty id field"});
      continue;
    }
    if (!parse_double(fields[2], rating)) {
      out.rejects.push_back(
          {record_line, "ParseError: bad rating '" + fields[2] + "'"});
      continue;
    }
    if (!scale.contains(rating)) {
      std::ostringstream reason;
      reason << "ScaleViolation: rating " << fields[2] << " outside ["
             << scale.min << ", " << scale.max << "]";
      out.rejects.push_back({record_line, reason.str()});
      continue;
    }
    if (!parse_int(fields[3], timestamp) || timestamp < 0) {
      out.rejects.push_back(
          {record_line, "ParseError: bad timestamp '" + fields[3] + "'"});
      continue;
    }
    RatingEvent event;
    event.user = ScopedId{dataset.name, fields[0]};
    event.item = ScopedId{dataset.name, fields[1]};
    event.score = rating;
    event.timestamp = timestamp;
    out.events.push_back(std::move(event));
  }
  return out;
}

RatingsIngest read_amazon_reviews(const std::filesystem::path& path,
                                  const DatasetId& dataset,
                                  const RatingScale& scale) {
  std::ifstream in = open_or_throw(path);
  RatingsIngest out;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;

    json record = json::parse(line, nullptr, false);
    if (record.is_discarded() || !record.is_object()) {
      out.rejects.push_back({line_no, "ParseError: invalid JSON object"});
      continue;
    }

    const char* missing = nullptr;
    if (!record.contains("reviewerID") || !record["reviewerID"].is_string()) {
      missing = "reviewerID";
    } else if (!record.contains("asin") || !record["asin"].is_string()) {
      missing = "asin";
    } else if (!record.contains("overall") ||
               !record["overall"].is_number()) {
      missing = "overall";
    }
    if (missing != nullptr) {
      out.rejects.push_back(
          {line_no, std::string("MissingField: ") + missing});
      continue;
    }

    const double score = record["overall"].get<double>();
    if (!scale.contains(score)) {
      std::ostringstream reason;
      reason << "ScaleViolation: overall " << score << " outside ["
             << scale.min << ", " << scale.max << "]";
      out.rejects.push_back({line_no, reason.str()});
      continue;
    }

    std::string reviewer_name;
    if (record.contains("reviewerName") && record["reviewerName"].is_string()) {
      reviewer_name = record["reviewerName"].get<std::string>();
    }

    RatingEvent event;
    event.user = ScopedId{
        dataset.name, record["reviewerID"].get<std::string>() + "|" +
                          reviewer_name};
    event.item = ScopedId{dataset.name, record["asin"].get<std::string>()};
    event.score = score;
    if (record.contains("unixReviewTime") &&
        record["unixReviewTime"].is_number_integer()) {
      event.timestamp = record["unixReviewTime"].get<std::int64_t>();
    }
    if (record.contains("reviewText") && record["reviewText"].is_string()) {
      event.review_text = record["reviewText"].get<std::string>();
    }
    if (record.contains("summary") && record["summary"].is_string()) {
      event.summary = record["summary"].get<std::string>();
    }
    out.events.push_back(std::move(event));
  }
  return out;
}

namespace {

// Column lookup by header name; `itemId` and `movieId` are both accepted for
// the id column.
struct ItemColumns {
  std::size_t id = SIZE_MAX;
  std::size_t title = SIZE_MAX;
  std::size_t overview = SIZE_MAX;
  std::size_t vote_count = SIZE_MAX;
  std::size_t vote_average = SIZE_MAX;
  std::size_t tmdb_id = SIZE_MAX;
};

ItemColumns resolve_item_columns(const std::vector<std::string>& header,
                                 const std::filesystem::path& path) {
  ItemColumns cols;
  for (std::size_t i = 0; i < header.size(); ++i) {
    const std::string& name = header[i];
    if (name == "itemId" || name == "movieId") cols.id = i;
    else if (name == "title") cols.title = i;
    else if (name == "overview") cols.overview = i;
    else if (name == "vote_count") cols.vote_count = i;
    else if (name == "vote_average") cols.vote_average = i;
    else if (name == "tmdbId") cols.tmdb_id = i;
  }
  if (cols.id == SIZE_MAX || cols.title == SIZE_MAX) {
    throw ParseError(path.string() +
                     ": item metadata header needs itemId (or movieId) and "
                     "title columns");
  }
  return cols;
}

ItemsIngest read_items_csv(const std::filesystem::path& path,
                           const DatasetId& dataset) {
  std::ifstream in = open_or_throw(path);
  ItemsIngest out;

  std::vector<std::string> fields;
  std::size_t line_no = 1;
  std::size_t record_line = 0;
  if (!csv::read_record(in, fields, line_no, record_line)) {
    throw ParseError(path.string() + ": empty item metadata file");
  }
  const ItemColumns cols = resolve_item_columns(fields, path);
  const std::size_t width = fields.size();

  while (csv::read_record(in, fields, line_no, record_line)) {
    if (fields.size() != width) {
      out.rejects.push_back(
          {record_line, "ParseError: expected " + std::to_string(width) +
                            " fields, got " + std::to_string(fields.size())});
      continue;
    }
    if (fields[cols.id].empty()) {
      out.rejects.push_back({record_line, "ParseError: empty item id"});
      continue;
    }
    ItemRecord item;
    item.item = ScopedId{dataset.name, fields[cols.id]};
    item.title = fields[cols.title];
    if (cols.overview != SIZE_MAX && !fields[cols.overview].empty()) {
      item.overview = fields[cols.overview];
    }
    if (cols.vote_count != SIZE_MAX && !fields[cols.vote_count].empty()) {
      std::int64_t count = 0;
      if (!parse_int(fields[cols.vote_count], count) || count < 0) {
        out.rejects.push_back({record_line, "ParseError: bad vote_count '" +
                                                fields[cols.vote_count] + "'"});
        continue;
      }
      item.vote_count = count;
    }
    if (cols.vote_average != SIZE_MAX && !fields[cols.vote_average].empty()) {
      double avg = 0.0;
      if (!parse_double(fields[cols.vote_average], avg)) {
        out.rejects.push_back({record_line, "ParseError: bad vote_average '" +
                                                fields[cols.vote_average] +
                                                "'"});
        continue;
      }
      item.vote_average = avg;
    }
    if (cols.tmdb_id != SIZE_MAX && !fields[cols.tmdb_id].empty()) {
      item.tmdb_id = fields[cols.tmdb_id];
    }
    out.items.push_back(std::move(item));
  }
  return out;
}

ItemsIngest read_items_jsonl(const std::filesystem::path& path,
                             const DatasetId& dataset) {
  std::ifstream in = open_or_throw(path);
  ItemsIngest out;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json record = json::parse(line, nullptr, false);
    if (record.is_discarded() || !record.is_object()) {
      out.rejects.push_back({line_no, "ParseError: invalid JSON object"});
      continue;
    }
    std::string raw_id;
    for (const char* key : {"itemId", "movieId", "asin"}) {
      if (record.contains(key) && record[key].is_string()) {
        raw_id = record[key].get<std::string>();
        break;
      }
      if (record.contains(key) && record[key].is_number_integer()) {
        raw_id = std::to_string(record[key].get<std::int64_t>());
        break;
      }
    }
    if (raw_id.empty()) {
      out.rejects.push_back({line_no, "MissingField: itemId"});
      continue;
    }
    ItemRecord item;
    item.item = ScopedId{dataset.name, raw_id};
    if (record.contains("title") && record["title"].is_string()) {
      item.title = record["title"].get<std::string>();
    }
    for (const char* key : {"overview", "description"}) {
      if (record.contains(key) && record[key].is_string()) {
        item.overview = record[key].get<std::string>();
        break;
      }
    }
    if (record.contains("vote_count") &&
        record["vote_count"].is_number_integer()) {
      const std::int64_t count = record["vote_count"].get<std::int64_t>();
      if (count < 0) {
        out.rejects.push_back({line_no, "ParseError: negative vote_count"});
        continue;
      }
      item.vote_count = count;
    }
    if (record.contains("vote_average") &&
        record["vote_average"].is_number()) {
      item.vote_average = record["vote_average"].get<double>();
    }
    if (record.contains("tmdbId")) {
      if (record["tmdbId"].is_string()) {
        item.tmdb_id = record["tmdbId"].get<std::string>();
      } else if (record["tmdbId"].is_number_integer()) {
        item.tmdb_id = std::to_string(record["tmdbId"].get<std::int64_t>());
      }
    }
    out.items.push_back(std::move(item));
  }
  return out;
}

}  // namespace

ItemsIngest read_item_metadata(const std::filesystem::path& path,
                               const DatasetId& dataset) {
  ItemsIngest out = has_json_extension(path) ? read_items_jsonl(path, dataset)
                                             : read_items_csv(path, dataset);
  std::unordered_map<std::string, std::size_t> seen;
  for (const ItemRecord& item : out.items) {
    auto [it, inserted] = seen.emplace(item.item.raw, 0);
    if (!inserted) {
      throw DuplicateId(path.string() + ": item id '" + item.item.raw +
                        "' appears more than once");
    }
  }
  return out;
}

void write_reject_report(const std::filesystem::path& input,
                         std::span<const RejectedRecord> rejects) {
  if (rejects.empty()) return;
  const std::filesystem::path report =
      input.string() + ".rejects.txt";
  std::ofstream out(report, std::ios::binary);
  if (!out) {
    throw IoError("cannot write " + report.string());
  }
  for (const RejectedRecord& r : rejects) {
    out << "line " << r.line << ": " << r.reason << "\n";
  }
  log::warn(std::to_string(rejects.size()) + " record(s) rejected from " +
            input.string() + "; see " + report.string());
}

std::int64_t IdMap::to_numeric_id(const std::string& raw) {
  auto it = by_raw_.find(raw);
  if (it != by_raw_.end()) {
    return it->second;
  }
  const std::int64_t numeric = next_++;
  by_raw_.emplace(raw, numeric);
  by_numeric_.emplace(numeric, raw);
  assert(by_raw_.size() == by_numeric_.size());
  return numeric;
}

const std::string& IdMap::to_raw_id(std::int64_t numeric) const {
  auto it = by_numeric_.find(numeric);
  if (it == by_numeric_.end()) {
    throw UnknownNumericId("numeric id " + std::to_string(numeric) +
                           " was never assigned");
  }
  return it->second;
}

std::optional<std::int64_t> IdMap::find_numeric(const std::string& raw) const {
  auto it = by_raw_.find(raw);
  if (it == by_raw_.end()) return std::nullopt;
  return it->second;
}

void IdMap::insert(std::int64_t numeric, const std::string& raw) {
  if (by_numeric_.contains(numeric)) {
    throw DuplicateId("numeric id " + std::to_string(numeric) +
                      " already bound");
  }
  if (by_raw_.contains(raw)) {
    throw DuplicateId("raw id '" + raw + "' already bound");
  }
  by_raw_.emplace(raw, numeric);
  by_numeric_.emplace(numeric, raw);
  next_ = std::max(next_, numeric + 1);
  assert(by_raw_.size() == by_numeric_.size());
}

}  // namespace aapam
