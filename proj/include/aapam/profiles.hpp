#pragma once

#include <cstdint>
#include <functional>
#include <set>
#include <span>
#include <string_view>

#include "aapam/classifier.hpp"
#include "aapam/emotion.hpp"
#include "aapam/ids.hpp"
#include "aapam/ingestion.hpp"

namespace aapam {

// An item's emotion profile. Immutable once built: the same source text and
// classifier always reproduce the same mvec, and re-ingestion never rewrites
// an existing profile.
struct ItemProfile {
  ScopedId item;
  EmotionVector mvec;
  ClassifierId classifier;
  std::uint64_t source_hash = 0;
};

// A user's emotion profile: the running mean of the distinct items the user
// consumed. Evolves with every new consumption.
struct UserProfile {
  ScopedId user;
  EmotionVector uvec;
  std::int64_t item_count = 0;
  std::set<ScopedId> consumed;  // contributing item ids
};

// An item-level vector read as the average profile of the group of users who
// rated the item.
struct GroupProfile {
  ScopedId item;
  EmotionVector group_uvec;
  std::int64_t vote_count = 0;
};

using ClassifyFn = std::function<EmotionVector(std::string_view)>;

// Classifies the item's overview/description. Throws NoText when the item has
// no usable text; such items stay out of emotion-based flows entirely.
ItemProfile build_item_profile(const ItemRecord& item,
                               const ClassifyFn& classify_fn,
                               const ClassifierId& classifier);

// uvec = mean of the consumed items' mvecs. Repeated entries for one item
// contribute once. Throws NoConsumption when nothing contributes.
UserProfile build_user_profile(const ScopedId& user,
                               std::span<const ItemProfile> consumed_items);

// Folds one new item into the running mean:
//   uvec' = (uvec * item_count + mvec) / (item_count + 1).
// Throws DuplicateConsumption if the item already contributed.
UserProfile update_user_profile(const UserProfile& profile,
                                const ItemProfile& new_item);

// States what the caller is handing in: a raw per-voter sum, or an already
// normalized item vector. The two need different treatment and guessing from
// the values is not reliable.
enum class GroupVectorKind {
  kAggregateSum,    // sum over voters; divided by vote_count, then normalized
  kNormalizedMean,  // already a distribution; passes through unchanged
};

// Throws ZeroVotes when vote_count < 1.
GroupProfile make_group_profile(const ScopedId& item, const EmotionVector& vec,
                                GroupVectorKind kind, std::int64_t vote_count);

}  // namespace aapam
