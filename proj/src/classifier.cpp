#include "aapam/classifier.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "aapam/errors.hpp"
#include "aapam/log.hpp"
#include "aapam/store.hpp"

namespace aapam {
namespace {

std::string to_lower(std::string_view text) {
  std::string out(text);
  for (char& c : out) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

}  // namespace

EmotionLexicon::EmotionLexicon(
    const std::vector<std::pair<EmotionLabel, std::string>>& entries,
    double smoothing_alpha)
    : alpha_(smoothing_alpha) {
  if (!(alpha_ > 0.0)) {
    throw InvalidArgument("lexicon smoothing alpha must be > 0");
  }
  std::array<std::size_t, kEmotionCount> per_label{};
  for (const auto& [label, word] : entries) {
    const std::string lowered = to_lower(word);
    if (lowered.empty()) {
      throw ParseError("empty lexicon word");
    }
    auto [it, inserted] = words_.emplace(lowered, label);
    if (!inserted) {
      if (it->second != label) {
        throw ParseError("word '" + lowered +
                         "' is listed under two labels; sets must be disjoint");
      }
      continue;  // harmless repeat under the same label
    }
    ++per_label[EmotionVector::index(label)];
  }
  for (EmotionLabel label : kAllEmotionLabels) {
    if (per_label[EmotionVector::index(label)] == 0) {
      throw ParseError("lexicon has no words for label '" +
                       std::string(to_string(label)) + "'");
    }
  }
}

EmotionLexicon EmotionLexicon::load(const std::filesystem::path& path,
                                    double smoothing_alpha) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open lexicon " + path.string());
  }
  std::vector<std::pair<EmotionLabel, std::string>> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos || line[start] == '#') continue;
    const std::size_t tab = line.find('\t', start);
    if (tab == std::string::npos) {
      throw ParseError(path.string() + ":" + std::to_string(line_no) +
                       ": expected label<TAB>word");
    }
    const std::string label_text = line.substr(start, tab - start);
    const std::string word = line.substr(tab + 1);
    const auto label = parse_emotion_label(label_text);
    if (!label.has_value()) {
      throw ParseError(path.string() + ":" + std::to_string(line_no) +
                       ": unknown label '" + label_text + "'");
    }
    entries.emplace_back(*label, word);
  }
  return EmotionLexicon(entries, smoothing_alpha);
}

std::optional<EmotionLabel> EmotionLexicon::label_of(
    std::string_view token) const {
  auto it = words_.find(std::string(token));
  if (it == words_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (char raw : text) {
    const unsigned char c = static_cast<unsigned char>(raw);
    if (std::isalnum(c)) {
      current.push_back(static_cast<char>(std::tolower(c)));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) {
    tokens.push_back(std::move(current));
  }
  return tokens;
}

EmotionVector classify(std::string_view text, const EmotionLexicon& lexicon) {
  EmotionVector counts;
  for (const std::string& token : tokenize(text)) {
    if (const auto label = lexicon.label_of(token)) {
      counts[*label] += 1.0;
    }
  }
  for (double& c : counts.values) {
    c += lexicon.smoothing_alpha();
  }
  return normalize_distribution(counts);
}

std::map<std::string, EmotionVector> load_precomputed(
    const std::filesystem::path& path) {
  std::map<std::string, EmotionVector> profiles = load_profiles(path);
  for (auto& [id, vec] : profiles) {
    double sum = 0.0;
    double positive = 0.0;
    for (double c : vec.values) {
      sum += c;
      positive += std::max(c, 0.0);
    }
    if (positive <= 0.0) {
      throw ParseError(path.string() + ": profile '" + id +
                       "' has no positive mass");
    }
    // Rows are rescaled to an exact unit sum; a warning is only worth raising
    // when the stored row was materially off.
    if (!is_normalized(vec)) {
      std::ostringstream msg;
      msg << "profile '" << id << "' in " << path.string()
          << " renormalized (component sum was " << sum << ")";
      log::warn(msg.str());
    }
    vec = normalize_distribution(vec);
  }
  return profiles;
}

}  // namespace aapam
