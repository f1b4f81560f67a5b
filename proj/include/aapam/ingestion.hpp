#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "aapam/ids.hpp"

namespace aapam {

struct RatingScale {
  double min = 0.5;
  double max = 5.0;

  bool contains(double score) const { return score >= min && score <= max; }
};

// One user-item interaction.
struct RatingEvent {
  ScopedId user;
  ScopedId item;
  double score = 0.0;
  std::int64_t timestamp = 0;
  std::optional<std::string> review_text;
  std::optional<std::string> summary;
};

struct ItemRecord {
  ScopedId item;
  std::string title;
  std::optional<std::string> overview;
  std::optional<std::int64_t> vote_count;
  std::optional<double> vote_average;
  std::optional<std::string> tmdb_id;
};

// A record the reader skipped, with the 1-based source line and the reason.
// Readers skip-and-report bad records instead of aborting; only structural
// failures (unreadable file, bad header) throw.
struct RejectedRecord {
  std::size_t line = 0;
  std::string reason;
};

struct RatingsIngest {
  std::vector<RatingEvent> events;  // source order
  std::vector<RejectedRecord> rejects;
};

struct ItemsIngest {
  std::vector<ItemRecord> items;
  std::vector<RejectedRecord> rejects;
};

// Reads a `userId,movieId,rating,timestamp` table. Throws IoError if the file
// cannot be opened and ParseError if the header is wrong; bad rows (wrong
// field count, unparsable numbers, out-of-scale rating, negative timestamp)
// are rejected with their line number.
RatingsIngest read_ratings_table(const std::filesystem::path& path,
                                 const DatasetId& dataset,
                                 const RatingScale& scale);

// Reads one-JSON-object-per-line review data. Required fields: reviewerID,
// asin, overall. The user id is reviewerID and reviewerName joined with '|'
// (absent name leaves an empty component). timestamp is unixReviewTime or 0.
RatingsIngest read_amazon_reviews(const std::filesystem::path& path,
                                  const DatasetId& dataset,
                                  const RatingScale& scale);

// Reads item metadata from CSV or JSON-lines, auto-detected by extension
// (.json/.jsonl/.ndjson vs anything else). Quoting is honored, so overviews
// round-trip verbatim. A repeated item id raises DuplicateId.
ItemsIngest read_item_metadata(const std::filesystem::path& path,
                               const DatasetId& dataset);

// Writes `<input>.rejects.txt` next to the input, one line per rejection.
// No file is written when there is nothing to report.
void write_reject_report(const std::filesystem::path& input,
                         std::span<const RejectedRecord> rejects);

// Bijective alphanumeric <-> numeric id mapping. Fresh ids are assigned
// densely in first-seen order starting at 0; a map loaded from disk keeps its
// stored pairs and continues from max+1.
class IdMap {
 public:
  // Returns the numeric id for `raw`, assigning the next counter value on
  // first sight. Idempotent.
  std::int64_t to_numeric_id(const std::string& raw);

  // Reverse lookup. Throws UnknownNumericId for a never-assigned value.
  const std::string& to_raw_id(std::int64_t numeric) const;

  std::optional<std::int64_t> find_numeric(const std::string& raw) const;

  // Installs an existing pair (used when loading a persisted map). Throws
  // DuplicateId if either side is already bound to something else.
  void insert(std::int64_t numeric, const std::string& raw);

  std::size_t size() const { return by_numeric_.size(); }

  // Pairs sorted by numeric id, for persistence.
  const std::map<std::int64_t, std::string>& entries() const {
    return by_numeric_;
  }

 private:
  std::unordered_map<std::string, std::int64_t> by_raw_;
  std::map<std::int64_t, std::string> by_numeric_;
  std::int64_t next_ = 0;
};

}  // namespace aapam
