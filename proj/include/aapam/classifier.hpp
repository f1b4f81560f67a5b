#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "aapam/emotion.hpp"

namespace aapam {

// Identifies which classifier produced a profile; recorded as provenance in
// every ItemProfile.
struct ClassifierId {
  std::string name;
  std::string version;

  std::string str() const { return name + "-" + version; }

  friend bool operator==(const ClassifierId&, const ClassifierId&) = default;
};

// A bag-of-words emotion lexicon: seven pairwise-disjoint word sets plus a
// smoothing constant. Immutable after construction, so classify() can run
// from any number of threads.
class EmotionLexicon {
 public:
  // Throws InvalidArgument if alpha <= 0; ParseError if a word appears under
  // two labels or a label ends up with no words.
  EmotionLexicon(
      const std::vector<std::pair<EmotionLabel, std::string>>& entries,
      double smoothing_alpha = 1.0);

  // Loads the `label<TAB>word` file format. Blank lines and lines starting
  // with '#' are ignored; words are lowercased on read.
  static EmotionLexicon load(const std::filesystem::path& path,
                             double smoothing_alpha = 1.0);

  double smoothing_alpha() const { return alpha_; }
  std::optional<EmotionLabel> label_of(std::string_view token) const;
  std::size_t word_count() const { return words_.size(); }

 private:
  std::unordered_map<std::string, EmotionLabel> words_;
  double alpha_ = 1.0;
};

// Lowercases and splits on runs of non-alphanumeric bytes.
std::vector<std::string> tokenize(std::string_view text);

// Bag-of-words classification: per-label token counts, Laplace-smoothed by
// the lexicon's alpha, normalized to a distribution. Pure and deterministic.
EmotionVector classify(std::string_view text, const EmotionLexicon& lexicon);

// Loads externally produced profiles (the profile file layout from the store
// module). Rows that are off normalization are renormalized with a warning;
// a row with no mass at all or a repeated id is an error.
std::map<std::string, EmotionVector> load_precomputed(
    const std::filesystem::path& path);

}  // namespace aapam
