#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace aapam {

inline constexpr std::size_t kEmotionCount = 7;

// Canonical label order. Component i of every emotion vector, and column i of
// every profile file, refers to label i in this order. Nothing may reorder it.
enum class EmotionLabel : int {
  kNeutral = 0,
  kHappiness = 1,
  kSadness = 2,
  kHate = 3,
  kAnger = 4,
  kDisgust = 5,
  kSurprise = 6,
};

inline constexpr std::array<EmotionLabel, kEmotionCount> kAllEmotionLabels = {
    EmotionLabel::kNeutral,  EmotionLabel::kHappiness, EmotionLabel::kSadness,
    EmotionLabel::kHate,     EmotionLabel::kAnger,     EmotionLabel::kDisgust,
    EmotionLabel::kSurprise,
};

std::string_view to_string(EmotionLabel label);

// Parses a label name. Besides the canonical names, accepts the aliases that
// show up in source data ("joy"/"happy" -> happiness, "sad" -> sadness,
// "fear" -> hate). Aliases are accepted on input only; output always uses the
// canonical names.
std::optional<EmotionLabel> parse_emotion_label(std::string_view text);

// A 7-component emotion profile. Plain value storage; whether the components
// form a probability distribution is checked with is_normalized().
struct EmotionVector {
  std::array<double, kEmotionCount> values{};

  static constexpr std::size_t index(EmotionLabel label) {
    return static_cast<std::size_t>(label);
  }

  double operator[](EmotionLabel label) const { return values[index(label)]; }
  double& operator[](EmotionLabel label) { return values[index(label)]; }

  friend bool operator==(const EmotionVector&, const EmotionVector&) = default;
};

// Affective index indicator: the cosine similarity between two emotion
// vectors. Always finite, so comparisons are total.
class Aii {
 public:
  Aii() = default;
  explicit Aii(double value);  // rejects NaN

  double value() const { return value_; }

  friend auto operator<=>(const Aii&, const Aii&) = default;

 private:
  double value_ = 0.0;
};

// Norms at or below this are treated as "no emotional signal" and rejected
// rather than letting NaN propagate.
inline constexpr double kZeroNormEpsilon = 1e-12;

double inner(const EmotionVector& x, const EmotionVector& y);

double norm(const EmotionVector& x);

// inner(x, y) / (||x|| * ||y||), clamped to [-1, 1] to absorb rounding.
// Throws ZeroVector if either norm is <= kZeroNormEpsilon.
Aii cosine_similarity(const EmotionVector& x, const EmotionVector& y);

// Clamps negative components to zero and rescales so the components sum to 1.
// Throws DegenerateInput when no mass is left after clamping.
EmotionVector normalize_distribution(const EmotionVector& raw);

// Component-wise arithmetic mean. Throws EmptyInput on an empty list.
EmotionVector mean(std::span<const EmotionVector> vectors);

bool is_normalized(const EmotionVector& v, double tolerance = 1e-6);

// All 7 labels sorted by component value descending; ties broken by canonical
// label order. The first entry is the dominant mood.
std::vector<std::pair<EmotionLabel, double>> rank_moods(const EmotionVector& v);

EmotionLabel dominant_mood(const EmotionVector& v);

// Deterministic one-sentence narration of rank_moods(v): the dominant mood
// leads, the weakest closes, and every label appears exactly once.
std::string affective_description(const EmotionVector& v,
                                  std::string_view subject);

}  // namespace aapam
