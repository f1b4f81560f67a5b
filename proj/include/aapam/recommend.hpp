#pragma once

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "aapam/ids.hpp"
#include "aapam/ingestion.hpp"
#include "aapam/pac.hpp"
#include "aapam/profiles.hpp"

namespace aapam {

struct Recommendation {
  int rank = 0;  // 1-based, consecutive within a list
  ScopedId item;
  double score = 0.0;
  std::string recommender;
  std::optional<std::string> explanation;
  std::optional<double> link_aii;  // set by the cross-domain recommender
};

// Sparse user x item score matrix. When several events land on one cell the
// latest timestamp wins, then the highest score. Iteration order over rows
// and columns is sorted, so every consumer sees one deterministic order.
class RatingMatrix {
 public:
  using Row = std::map<ScopedId, double>;

  static RatingMatrix from_events(std::span<const RatingEvent> events);

  const std::map<ScopedId, Row>& rows() const { return rows_; }  // user -> items
  const std::map<ScopedId, Row>& cols() const { return cols_; }  // item -> users

  bool has_user(const ScopedId& user) const { return rows_.contains(user); }
  std::size_t user_count() const { return rows_.size(); }
  std::size_t item_count() const { return cols_.size(); }

 private:
  std::map<ScopedId, Row> rows_;
  std::map<ScopedId, Row> cols_;
};

// Item-based CF. Candidate items are scored as
//   sum_j sim(i, j) * r(u, j) / sum_j sim(i, j)
// over the user's rated items j with positive item-item cosine similarity
// (columns as vectors over users). Items the user rated are excluded; ties
// break by ascending item id. Throws ColdStartUser when the user has no
// ratings.
std::vector<Recommendation> ibcf_recommend(const ScopedId& user,
                                           const RatingMatrix& matrix, int n);

// User-based CF: the k nearest positive-similarity users vote; a candidate's
// score is the similarity-weighted mean of the neighbors' ratings. k larger
// than the population uses everyone. Throws ColdStartUser / NoNeighbors.
std::vector<Recommendation> ubcf_recommend(const ScopedId& user,
                                           const RatingMatrix& matrix, int n,
                                           int k_neighbors);

// Emotion-aware ranking: score = cosine(uvec, mvec), consumed items excluded,
// each pick explained by the item's affective description. Throws
// NoCandidates when no item profiles were supplied at all.
std::vector<Recommendation> ear_recommend(
    const UserProfile& user, std::span<const ItemProfile> item_profiles, int n,
    const std::set<ScopedId>& exclude);

// Cross-domain recommendation over a PAC link: the link target's items at the
// maximum score they gave, in the order their reviews appear in the source
// data, duplicates collapsed. Each pick cites the link and its AII. Throws
// EmptyTargetHistory when the twin has no events.
std::vector<Recommendation> cross_domain_recommend(
    const ScopedId& source_user, const PacLink& link,
    std::span<const RatingEvent> target_events, int n);

// `rank,item_id,score,recommender,aii_of_link` rows, scores to 6 decimals,
// final column empty for recommenders without a link.
std::string format_recommendations_csv(std::span<const Recommendation> recs);

}  // namespace aapam
