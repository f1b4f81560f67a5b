#pragma once

#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "aapam/ids.hpp"
#include "aapam/ingestion.hpp"
#include "aapam/recommend.hpp"

namespace aapam {

struct HitRate {
  double exact_percent = 0.0;  // kept unrounded for downstream math
  int display_percent = 0;     // rounded half-up for the report

  friend bool operator==(const HitRate&, const HitRate&) = default;
};

// 100 * |recommended ∩ relevant| / |recommended|.
// Throws EmptyRecommendations on an empty list.
HitRate hit_rate(std::span<const Recommendation> recs,
                 const std::set<ScopedId>& relevant);

struct ReportMeta {
  std::vector<std::string> datasets;
  double tau = 0.0;
  int top_n = 0;
};

// Side-by-side top-N lists for one probe user, one column per recommender,
// closed by a hit-percentage row.
struct EvaluationReport {
  ScopedId user;
  ReportMeta meta;
  std::vector<std::string> recommender_names;
  std::vector<std::vector<ScopedId>> columns;  // all the same length
  std::vector<HitRate> hits;
};

// Columns appear in the order given. Every list must have the same length;
// otherwise ColumnLengthMismatch.
EvaluationReport build_report(
    const ScopedId& user,
    std::span<const std::pair<std::string, std::vector<Recommendation>>>
        outputs,
    const std::set<ScopedId>& relevant, const ReportMeta& meta);

std::string render_report_csv(const EvaluationReport& report);
std::string render_report_text(const EvaluationReport& report);

struct HoldoutSplit {
  std::vector<RatingEvent> train;
  std::vector<RatingEvent> heldout;
};

// Splits one user's events by time: the last `heldout_fraction` of them (at
// least one, never all) become the relevance set. Events are ordered by
// timestamp with the original order preserved among equal timestamps.
// Throws EmptyInput when there are fewer than 2 events.
HoldoutSplit split_holdout_by_time(std::span<const RatingEvent> user_events,
                                   double heldout_fraction);

}  // namespace aapam
