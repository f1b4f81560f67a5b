#include "aapam/profiles.hpp"

#include <algorithm>
#include <cctype>
#include <vector>

#include "aapam/digest.hpp"
#include "aapam/errors.hpp"

namespace aapam {
namespace {

bool is_blank(std::string_view text) {
  return std::all_of(text.begin(), text.end(), [](unsigned char c) {
    return std::isspace(c) != 0;
  });
}

}  // namespace

ItemProfile build_item_profile(const ItemRecord& item,
                               const ClassifyFn& classify_fn,
                               const ClassifierId& classifier) {
  if (!item.overview.has_value() || is_blank(*item.overview)) {
    throw NoText("item " + item.item.str() + " has no overview/description");
  }
  ItemProfile profile;
  profile.item = item.item;
  profile.mvec = classify_fn(*item.overview);
  profile.classifier = classifier;
  profile.source_hash = fnv1a64(*item.overview);
  return profile;
}

UserProfile build_user_profile(const ScopedId& user,
                               std::span<const ItemProfile> consumed_items) {
  UserProfile profile;
  profile.user = user;
  std::vector<EmotionVector> contributing;
  contributing.reserve(consumed_items.size());
  for (const ItemProfile& item : consumed_items) {
    if (profile.consumed.insert(item.item).second) {
      contributing.push_back(item.mvec);
    }
  }
  if (contributing.empty()) {
    throw NoConsumption("user " + user.str() + " consumed no profiled items");
  }
  profile.uvec = mean(contributing);
  profile.item_count = static_cast<std::int64_t>(contributing.size());
  return profile;
}

UserProfile update_user_profile(const UserProfile& profile,
                                const ItemProfile& new_item) {
  if (profile.consumed.contains(new_item.item)) {
    throw DuplicateConsumption("item " + new_item.item.str() +
                               " already counted for user " +
                               profile.user.str());
  }
  UserProfile updated = profile;
  const double count = static_cast<double>(profile.item_count);
  for (std::size_t i = 0; i < kEmotionCount; ++i) {
    updated.uvec.values[i] =
        (profile.uvec.values[i] * count + new_item.mvec.values[i]) /
        (count + 1.0);
  }
  updated.item_count = profile.item_count + 1;
  updated.consumed.insert(new_item.item);
  return updated;
}

GroupProfile make_group_profile(const ScopedId& item, const EmotionVector& vec,
                                GroupVectorKind kind,
                                std::int64_t vote_count) {
  if (vote_count < 1) {
    throw ZeroVotes("item " + item.str() + " has vote_count " +
                    std::to_string(vote_count));
  }
  GroupProfile group;
  group.item = item;
  group.vote_count = vote_count;
  if (kind == GroupVectorKind::kAggregateSum) {
    EmotionVector averaged = vec;
    for (double& v : averaged.values) {
      v /= static_cast<double>(vote_count);
    }
    group.group_uvec = normalize_distribution(averaged);
  } else {
    group.group_uvec = vec;
  }
  return group;
}

}  // namespace aapam
