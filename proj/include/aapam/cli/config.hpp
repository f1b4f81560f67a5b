#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "aapam/ingestion.hpp"
#include "aapam/profiles.hpp"

namespace aapam::cli {

// One dataset declaration from the config file. Which fields apply depends on
// `format`:
//   movielens — `ratings` (userId,movieId,rating,timestamp CSV), optional
//               `items` metadata
//   amazon    — `reviews` (JSON lines), items synthesized from review text
//   none      — no interaction data; profile files and/or `items` only
// `user_profiles` / `item_profiles` point at precomputed profile files and
// short-circuit classification for that dataset.
struct DatasetConfig {
  std::string name;
  std::string domain;
  std::string format = "none";
  std::optional<std::filesystem::path> ratings;
  std::optional<std::filesystem::path> reviews;
  std::optional<std::filesystem::path> items;
  std::optional<std::filesystem::path> user_profiles;
  std::optional<std::filesystem::path> item_profiles;
  RatingScale scale;
  // Build group profiles from item vote counts; the kind states whether item
  // vectors are per-voter sums or already-normalized distributions.
  std::optional<GroupVectorKind> group_input;
};

struct LexiconConfig {
  std::filesystem::path path;
  double alpha = 1.0;
};

struct PacSection {
  std::string probe_dataset;
  std::vector<std::string> probe_users;  // empty = every probe-dataset user
  std::vector<std::string> pool_datasets;
  bool emit_groups = false;
  std::optional<std::string> groups_dataset;  // one-to-many user->group links
};

struct RecommendSection {
  std::string dataset;
  std::vector<std::string> users;
  std::vector<std::string> recommenders;  // ibcf | ubcf | ear | cross_domain
  int k_neighbors = 10;
  std::vector<std::string> cross_domain_targets;
};

struct EvaluateSection {
  std::string dataset;
  std::vector<std::string> users;
  double holdout_fraction = 0.2;
  std::vector<std::string> recommenders;  // ibcf | ubcf | ear
  int k_neighbors = 10;
};

struct RunConfig {
  std::filesystem::path base_dir;  // directory of the config file
  std::vector<DatasetConfig> datasets;
  std::optional<LexiconConfig> lexicon;
  double tau = 0.98;
  int top_n = 20;
  std::filesystem::path output_dir = "out";
  std::string format = "csv";  // csv | text
  std::optional<PacSection> pac;
  std::optional<RecommendSection> recommend;
  std::optional<EvaluateSection> evaluate;
};

// Parses the JSON config. Relative paths inside the file resolve against the
// config file's directory. Throws ConfigError on anything malformed.
RunConfig load_run_config(const std::filesystem::path& config_path);

struct Overrides {
  std::optional<double> tau;
  std::optional<int> top_n;
  std::optional<std::filesystem::path> output_dir;
  std::optional<std::string> format;
};

// Command-line flags win over config file values.
void apply_overrides(RunConfig& config, const Overrides& overrides);

// Validates invariants that need the filesystem: referenced paths exist,
// tau in (0,1], top_n >= 1, dataset names unique and cross-references valid.
void validate(const RunConfig& config);

}  // namespace aapam::cli
