#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aapam/classifier.hpp"
#include "aapam/cli/config.hpp"
#include "aapam/evaluation.hpp"
#include "aapam/pac.hpp"
#include "aapam/profiles.hpp"
#include "aapam/recommend.hpp"

namespace aapam::cli {

enum class Stage {
  kIngest,
  kClassify,
  kProfile,
  kPac,
  kRecommend,
  kEvaluate,
  kPipeline,
};

std::optional<Stage> parse_stage(std::string_view name);

// Runs the configured flow up to and including `stage`, writing that stage's
// artifacts under the output directory (`pipeline` writes everything). All
// prerequisite stages execute in memory. The whole run is a pure function of
// the input files and the config: artifact bytes never vary between runs.
class Pipeline {
 public:
  explicit Pipeline(RunConfig config);

  void run(Stage stage);

 private:
  struct Dataset {
    DatasetConfig cfg;
    std::vector<RatingEvent> events;  // source order
    std::vector<RejectedRecord> rejects;
    std::vector<ItemRecord> items;
    IdMap user_ids;
    IdMap item_ids;
    std::map<std::string, ItemProfile> item_profiles;  // by raw item id
    std::vector<std::string> item_skips;               // items with no text
    std::map<std::string, UserProfile> built_users;    // by raw user id
    std::vector<std::string> user_skips;  // users with no profiled items
    std::map<std::string, EmotionVector> user_vecs;    // probe/pool vectors
    std::vector<GroupProfile> groups;
    std::vector<std::string> group_skips;
  };

  Dataset& dataset(const std::string& name);
  const EmotionLexicon& lexicon();
  EmotionVector classify_text(std::string_view text);

  void ensure_ingested();
  void ensure_classified();
  void ensure_profiled();

  void write_ingest_artifacts();
  void write_classify_artifacts();
  void write_profile_artifacts();
  void run_pac(bool write, bool required);
  void run_recommend(bool write, bool required);
  void run_evaluate(bool write, bool required);

  std::vector<Recommendation> recommend_for(
      const std::string& recommender, Dataset& ds, const ScopedId& user,
      const RatingMatrix& matrix, const UserProfile* profile,
      const std::set<ScopedId>& exclude, int k_neighbors);

  RunConfig config_;
  std::optional<EmotionLexicon> lexicon_;
  std::vector<Dataset> datasets_;
  bool ingested_ = false;
  bool classified_ = false;
  bool profiled_ = false;
};

}  // namespace aapam::cli
