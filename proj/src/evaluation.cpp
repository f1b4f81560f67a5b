#include "aapam/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "aapam/csv.hpp"
#include "aapam/errors.hpp"

namespace aapam {

HitRate hit_rate(std::span<const Recommendation> recs,
                 const std::set<ScopedId>& relevant) {
  if (recs.empty()) {
    throw EmptyRecommendations("hit_rate needs a nonempty list");
  }
  std::size_t hits = 0;
  for (const Recommendation& rec : recs) {
    if (relevant.contains(rec.item)) ++hits;
  }
  HitRate rate;
  rate.exact_percent =
      100.0 * static_cast<double>(hits) / static_cast<double>(recs.size());
  rate.display_percent = static_cast<int>(std::floor(rate.exact_percent + 0.5));
  return rate;
}

EvaluationReport build_report(
    const ScopedId& user,
    std::span<const std::pair<std::string, std::vector<Recommendation>>>
        outputs,
    const std::set<ScopedId>& relevant, const ReportMeta& meta) {
  if (outputs.empty()) {
    throw EmptyRecommendations("build_report needs at least one recommender");
  }
  EvaluationReport report;
  report.user = user;
  report.meta = meta;
  const std::size_t length = outputs.front().second.size();
  for (const auto& [name, recs] : outputs) {
    if (recs.size() != length) {
      throw ColumnLengthMismatch(
          "recommender '" + name + "' returned " +
          std::to_string(recs.size()) + " items, expected " +
          std::to_string(length));
    }
    report.recommender_names.push_back(name);
    std::vector<ScopedId> column;
    column.reserve(recs.size());
    for (const Recommendation& rec : recs) {
      column.push_back(rec.item);
    }
    report.columns.push_back(std::move(column));
    report.hits.push_back(hit_rate(recs, relevant));
  }
  return report;
}

namespace {

std::string meta_line(const EvaluationReport& report) {
  std::ostringstream out;
  out << "# user=" << report.user.str() << " datasets=";
  for (std::size_t i = 0; i < report.meta.datasets.size(); ++i) {
    if (i > 0) out << '+';
    out << report.meta.datasets[i];
  }
  char tau[32];
  std::snprintf(tau, sizeof(tau), "%.6f", report.meta.tau);
  out << " tau=" << tau << " top_n=" << report.meta.top_n;
  return out.str();
}

}  // namespace

std::string render_report_csv(const EvaluationReport& report) {
  std::ostringstream out;
  out << meta_line(report) << "\n";
  out << "rank";
  for (const std::string& name : report.recommender_names) {
    out << ',' << csv::escape(name);
  }
  out << "\n";
  const std::size_t length =
      report.columns.empty() ? 0 : report.columns.front().size();
  for (std::size_t row = 0; row < length; ++row) {
    out << (row + 1);
    for (const auto& column : report.columns) {
      out << ',' << csv::escape(column[row].raw);
    }
    out << "\n";
  }
  out << "hit_pct";
  for (const HitRate& hit : report.hits) {
    out << ',' << hit.display_percent;
  }
  out << "\n";
  return out.str();
}

std::string render_report_text(const EvaluationReport& report) {
  const std::size_t length =
      report.columns.empty() ? 0 : report.columns.front().size();

  std::vector<std::size_t> widths;
  for (std::size_t c = 0; c < report.columns.size(); ++c) {
    std::size_t width = report.recommender_names[c].size();
    for (const ScopedId& id : report.columns[c]) {
      width = std::max(width, id.raw.size());
    }
    widths.push_back(std::max<std::size_t>(width, 4));
  }

  std::ostringstream out;
  out << meta_line(report) << "\n";
  auto pad = [](const std::string& text, std::size_t width) {
    std::string padded = text;
    padded.resize(std::max(width, text.size()), ' ');
    return padded;
  };
  out << pad("rank", 7);
  for (std::size_t c = 0; c < report.columns.size(); ++c) {
    out << "  " << pad(report.recommender_names[c], widths[c]);
  }
  out << "\n";
  for (std::size_t row = 0; row < length; ++row) {
    out << pad(std::to_string(row + 1), 7);
    for (std::size_t c = 0; c < report.columns.size(); ++c) {
      out << "  " << pad(report.columns[c][row].raw, widths[c]);
    }
    out << "\n";
  }
  out << pad("hit_pct", 7);
  for (std::size_t c = 0; c < report.hits.size(); ++c) {
    out << "  " << pad(std::to_string(report.hits[c].display_percent) + "%",
                       widths[c]);
  }
  out << "\n";
  return out.str();
}

HoldoutSplit split_holdout_by_time(std::span<const RatingEvent> user_events,
                                   double heldout_fraction) {
  if (user_events.size() < 2) {
    throw EmptyInput("holdout split needs at least 2 events, got " +
                     std::to_string(user_events.size()));
  }
  if (!(heldout_fraction > 0.0) || heldout_fraction >= 1.0) {
    throw InvalidArgument("heldout_fraction must be in (0, 1)");
  }
  std::vector<RatingEvent> ordered(user_events.begin(), user_events.end());
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const RatingEvent& a, const RatingEvent& b) {
                     return a.timestamp < b.timestamp;
                   });
  std::size_t held = static_cast<std::size_t>(
      std::floor(static_cast<double>(ordered.size()) * heldout_fraction));
  held = std::clamp<std::size_t>(held, 1, ordered.size() - 1);

  HoldoutSplit split;
  split.train.assign(ordered.begin(), ordered.end() - held);
  split.heldout.assign(ordered.end() - held, ordered.end());
  return split;
}

}  // namespace aapam
