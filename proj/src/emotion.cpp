#include "aapam/emotion.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "aapam/errors.hpp"

namespace aapam {

std::string_view to_string(EmotionLabel label) {
  switch (label) {
    case EmotionLabel::kNeutral:   return "neutral";
    case EmotionLabel::kHappiness: return "happiness";
    case EmotionLabel::kSadness:   return "sadness";
    case EmotionLabel::kHate:      return "hate";
    case EmotionLabel::kAnger:     return "anger";
    case EmotionLabel::kDisgust:   return "disgust";
    case EmotionLabel::kSurprise:  return "surprise";
  }
  return "invalid";
}

std::optional<EmotionLabel> parse_emotion_label(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "neutral") return EmotionLabel::kNeutral;
  if (lower == "happiness" || lower == "happy" || lower == "joy")
    return EmotionLabel::kHappiness;
  if (lower == "sadness" || lower == "sad") return EmotionLabel::kSadness;
  if (lower == "hate" || lower == "fear") return EmotionLabel::kHate;
  if (lower == "anger") return EmotionLabel::kAnger;
  if (lower == "disgust") return EmotionLabel::kDisgust;
  if (lower == "surprise") return EmotionLabel::kSurprise;
  return std::nullopt;
}

Aii::Aii(double value) : value_(value) {
  if (std::isnan(value)) {
    throw Error("Aii: value is NaN");
  }
}

double inner(const EmotionVector& x, const EmotionVector& y) {
  double sum = 0.0;
  for (std::size_t i = 0; i < kEmotionCount; ++i) {
    sum += x.values[i] * y.values[i];
  }
  return sum;
}

double norm(const EmotionVector& x) { return std::sqrt(inner(x, x)); }

Aii cosine_similarity(const EmotionVector& x, const EmotionVector& y) {
  const double nx = norm(x);
  const double ny = norm(y);
  if (nx <= kZeroNormEpsilon || ny <= kZeroNormEpsilon) {
    throw ZeroVector("cosine_similarity: vector norm below " +
                     std::to_string(kZeroNormEpsilon));
  }
  const double raw = inner(x, y) / (nx * ny);
  return Aii(std::clamp(raw, -1.0, 1.0));
}

EmotionVector normalize_distribution(const EmotionVector& raw) {
  EmotionVector clamped;
  double sum = 0.0;
  for (std::size_t i = 0; i < kEmotionCount; ++i) {
    clamped.values[i] = std::max(raw.values[i], 0.0);
    sum += clamped.values[i];
  }
  if (sum <= 0.0) {
    throw DegenerateInput("normalize_distribution: no positive component");
  }
  for (double& v : clamped.values) {
    v /= sum;
  }
  return clamped;
}

EmotionVector mean(std::span<const EmotionVector> vectors) {
  if (vectors.empty()) {
    throw EmptyInput("mean: no vectors");
  }
  EmotionVector out;
  for (const EmotionVector& v : vectors) {
    for (std::size_t i = 0; i < kEmotionCount; ++i) {
      out.values[i] += v.values[i];
    }
  }
  const double count = static_cast<double>(vectors.size());
  for (double& v : out.values) {
    v /= count;
  }
  return out;
}

bool is_normalized(const EmotionVector& v, double tolerance) {
  double sum = 0.0;
  for (double c : v.values) {
    if (c < 0.0 || !std::isfinite(c)) return false;
    sum += c;
  }
  return std::abs(sum - 1.0) <= tolerance;
}

std::vector<std::pair<EmotionLabel, double>> rank_moods(const EmotionVector& v) {
  std::vector<std::pair<EmotionLabel, double>> ranked;
  ranked.reserve(kEmotionCount);
  for (EmotionLabel label : kAllEmotionLabels) {
    ranked.emplace_back(label, v[label]);
  }
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  return ranked;
}

EmotionLabel dominant_mood(const EmotionVector& v) {
  return rank_moods(v).front().first;
}

std::string affective_description(const EmotionVector& v,
                                  std::string_view subject) {
  const auto ranked = rank_moods(v);
  std::ostringstream out;
  out << subject << " plays as " << to_string(ranked[0].first)
      << " above all, shading into " << to_string(ranked[1].first) << " and "
      << to_string(ranked[2].first) << "; " << to_string(ranked[3].first)
      << " and " << to_string(ranked[4].first) << " sit in the middle, while "
      << to_string(ranked[5].first) << " and " << to_string(ranked[6].first)
      << " barely register.";
  return out.str();
}

}  // namespace aapam
