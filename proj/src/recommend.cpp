#include "aapam/recommend.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "aapam/csv.hpp"
#include "aapam/errors.hpp"

namespace aapam {
namespace {

void check_top_n(int n) {
  if (n < 1) {
    throw InvalidArgument("top-n must be >= 1, got " + std::to_string(n));
  }
}

struct Scored {
  ScopedId item;
  double score = 0.0;
};

// score descending, item id ascending; the one tie rule for every ranked list.
bool ranked_order(const Scored& a, const Scored& b) {
  if (a.score != b.score) return a.score > b.score;
  return a.item < b.item;
}

std::vector<Recommendation> to_recommendations(std::vector<Scored> scored,
                                               int n,
                                               const std::string& tag) {
  std::sort(scored.begin(), scored.end(), ranked_order);
  if (scored.size() > static_cast<std::size_t>(n)) {
    scored.resize(static_cast<std::size_t>(n));
  }
  std::vector<Recommendation> recs;
  recs.reserve(scored.size());
  for (std::size_t i = 0; i < scored.size(); ++i) {
    Recommendation rec;
    rec.rank = static_cast<int>(i) + 1;
    rec.item = scored[i].item;
    rec.score = scored[i].score;
    rec.recommender = tag;
    recs.push_back(std::move(rec));
  }
  return recs;
}

// Cosine between two sparse vectors held as sorted maps. The dot walks `a` in
// ascending key order so summation order is a function of the data alone.
double sparse_cosine(const RatingMatrix::Row& a, const RatingMatrix::Row& b) {
  double dot = 0.0;
  for (const auto& [key, value] : a) {
    auto it = b.find(key);
    if (it != b.end()) {
      dot += value * it->second;
    }
  }
  if (dot == 0.0) return 0.0;
  double norm_a = 0.0;
  for (const auto& [key, value] : a) norm_a += value * value;
  double norm_b = 0.0;
  for (const auto& [key, value] : b) norm_b += value * value;
  return dot / (std::sqrt(norm_a) * std::sqrt(norm_b));
}

}  // namespace

RatingMatrix RatingMatrix::from_events(std::span<const RatingEvent> events) {
  // Per-cell winner: latest timestamp, then highest score.
  struct Cell {
    std::int64_t timestamp;
    double score;
  };
  std::map<std::pair<ScopedId, ScopedId>, Cell> cells;
  for (const RatingEvent& event : events) {
    const auto key = std::make_pair(event.user, event.item);
    auto it = cells.find(key);
    if (it == cells.end()) {
      cells.emplace(key, Cell{event.timestamp, event.score});
    } else if (event.timestamp > it->second.timestamp ||
               (event.timestamp == it->second.timestamp &&
                event.score > it->second.score)) {
      it->second = Cell{event.timestamp, event.score};
    }
  }
  RatingMatrix matrix;
  for (const auto& [key, cell] : cells) {
    matrix.rows_[key.first][key.second] = cell.score;
    matrix.cols_[key.second][key.first] = cell.score;
  }
  return matrix;
}

std::vector<Recommendation> ibcf_recommend(const ScopedId& user,
                                           const RatingMatrix& matrix, int n) {
  check_top_n(n);
  const auto row_it = matrix.rows().find(user);
  if (row_it == matrix.rows().end() || row_it->second.empty()) {
    throw ColdStartUser("user " + user.str() + " has no ratings");
  }
  const RatingMatrix::Row& rated = row_it->second;

  std::vector<Scored> scored;
  for (const auto& [candidate, candidate_col] : matrix.cols()) {
    if (rated.contains(candidate)) continue;
    double numerator = 0.0;
    double denominator = 0.0;
    for (const auto& [rated_item, user_score] : rated) {
      const double sim =
          sparse_cosine(candidate_col, matrix.cols().at(rated_item));
      if (sim > 0.0) {
        numerator += sim * user_score;
        denominator += sim;
      }
    }
    if (denominator > 0.0) {
      scored.push_back(Scored{candidate, numerator / denominator});
    }
  }
  return to_recommendations(std::move(scored), n, "ibcf");
}

std::vector<Recommendation> ubcf_recommend(const ScopedId& user,
                                           const RatingMatrix& matrix, int n,
                                           int k_neighbors) {
  check_top_n(n);
  if (k_neighbors < 1) {
    throw InvalidArgument("k_neighbors must be >= 1, got " +
                          std::to_string(k_neighbors));
  }
  const auto row_it = matrix.rows().find(user);
  if (row_it == matrix.rows().end() || row_it->second.empty()) {
    throw ColdStartUser("user " + user.str() + " has no ratings");
  }
  const RatingMatrix::Row& rated = row_it->second;

  struct Neighbor {
    ScopedId user;
    double sim;
  };
  std::vector<Neighbor> neighbors;
  for (const auto& [other, other_row] : matrix.rows()) {
    if (other == user) continue;
    const double sim = sparse_cosine(rated, other_row);
    if (sim > 0.0) {
      neighbors.push_back(Neighbor{other, sim});
    }
  }
  if (neighbors.empty()) {
    throw NoNeighbors("user " + user.str() +
                      " has no positive-similarity neighbor");
  }
  std::sort(neighbors.begin(), neighbors.end(),
            [](const Neighbor& a, const Neighbor& b) {
              if (a.sim != b.sim) return a.sim > b.sim;
              return a.user < b.user;
            });
  if (neighbors.size() > static_cast<std::size_t>(k_neighbors)) {
    neighbors.resize(static_cast<std::size_t>(k_neighbors));
  }

  // Candidate items: anything a neighbor rated that the user has not.
  std::set<ScopedId> candidates;
  for (const Neighbor& neighbor : neighbors) {
    for (const auto& [item, score] : matrix.rows().at(neighbor.user)) {
      if (!rated.contains(item)) candidates.insert(item);
    }
  }

  std::vector<Scored> scored;
  for (const ScopedId& candidate : candidates) {
    double numerator = 0.0;
    double denominator = 0.0;
    for (const Neighbor& neighbor : neighbors) {
      const RatingMatrix::Row& neighbor_row = matrix.rows().at(neighbor.user);
      auto it = neighbor_row.find(candidate);
      if (it != neighbor_row.end()) {
        numerator += neighbor.sim * it->second;
        denominator += neighbor.sim;
      }
    }
    if (denominator > 0.0) {
      scored.push_back(Scored{candidate, numerator / denominator});
    }
  }
  return to_recommendations(std::move(scored), n, "ubcf");
}

std::vector<Recommendation> ear_recommend(
    const UserProfile& user, std::span<const ItemProfile> item_profiles, int n,
    const std::set<ScopedId>& exclude) {
  check_top_n(n);
  if (item_profiles.empty()) {
    throw NoCandidates("no item profiles to rank for user " +
                       user.user.str());
  }
  std::vector<Scored> scored;
  std::vector<const ItemProfile*> by_item;
  for (const ItemProfile& item : item_profiles) {
    if (exclude.contains(item.item)) continue;
    scored.push_back(
        Scored{item.item, cosine_similarity(user.uvec, item.mvec).value()});
    by_item.push_back(&item);
  }
  std::vector<Recommendation> recs =
      to_recommendations(std::move(scored), n, "ear");
  for (Recommendation& rec : recs) {
    for (const ItemProfile* item : by_item) {
      if (item->item == rec.item) {
        rec.explanation = affective_description(item->mvec, rec.item.raw);
        break;
      }
    }
  }
  return recs;
}

std::vector<Recommendation> cross_domain_recommend(
    const ScopedId& source_user, const PacLink& link,
    std::span<const RatingEvent> target_events, int n) {
  check_top_n(n);
  if (link.source != source_user) {
    throw InvalidArgument("link source " + link.source.str() +
                          " does not belong to user " + source_user.str());
  }
  std::vector<const RatingEvent*> twin_events;
  for (const RatingEvent& event : target_events) {
    if (event.user == link.target) {
      twin_events.push_back(&event);
    }
  }
  if (twin_events.empty()) {
    throw EmptyTargetHistory("PAC twin " + link.target.str() +
                             " has no events in the target dataset");
  }
  double max_score = twin_events.front()->score;
  for (const RatingEvent* event : twin_events) {
    max_score = std::max(max_score, event->score);
  }

  char aii[32];
  std::snprintf(aii, sizeof(aii), "%.6f", link.aii.value());
  const std::string link_note = "via PAC " + link.source.str() + " -> " +
                                link.target.str() + " (aii " + aii + ")";

  std::vector<Recommendation> recs;
  std::set<ScopedId> seen;
  for (const RatingEvent* event : twin_events) {
    if (event->score != max_score) continue;
    if (!seen.insert(event->item).second) continue;  // repeated review
    if (recs.size() == static_cast<std::size_t>(n)) break;
    Recommendation rec;
    rec.rank = static_cast<int>(recs.size()) + 1;
    rec.item = event->item;
    rec.score = event->score;
    rec.recommender = "cross_domain";
    rec.explanation = link_note;
    rec.link_aii = link.aii.value();
    recs.push_back(std::move(rec));
  }
  return recs;
}

std::string format_recommendations_csv(
    std::span<const Recommendation> recs) {
  std::ostringstream out;
  out << "rank,item_id,score,recommender,aii_of_link\n";
  char buf[32];
  for (const Recommendation& rec : recs) {
    std::snprintf(buf, sizeof(buf), "%.6f", rec.score);
    out << rec.rank << ',' << csv::escape(rec.item.raw) << ',' << buf << ','
        << rec.recommender << ',';
    if (rec.link_aii.has_value()) {
      std::snprintf(buf, sizeof(buf), "%.6f", *rec.link_aii);
      out << buf;
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace aapam
