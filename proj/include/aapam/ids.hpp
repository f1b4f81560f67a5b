#pragma once

#include <compare>
#include <string>

namespace aapam {

// A dataset declaration. Raw entity ids are only meaningful inside one
// dataset: id 123 in dataset A and id 123 in dataset B are unrelated.
struct DatasetId {
  std::string name;
  std::string domain_tag;

  friend bool operator==(const DatasetId&, const DatasetId&) = default;
};

// An entity id scoped by the dataset it came from. Two ScopedIds compare
// equal only when both the dataset and the raw id match.
struct ScopedId {
  std::string dataset;
  std::string raw;

  friend auto operator<=>(const ScopedId&, const ScopedId&) = default;

  std::string str() const { return dataset + "/" + raw; }
};

}  // namespace aapam
