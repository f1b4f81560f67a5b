#include "aapam/cli/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "aapam/errors.hpp"

namespace aapam::cli {
namespace {

using nlohmann::json;

std::filesystem::path resolve(const std::filesystem::path& base,
                              const std::string& value) {
  std::filesystem::path p(value);
  return p.is_absolute() ? p : base / p;
}

std::string require_string(const json& node, const char* key,
                           const std::string& where) {
  if (!node.contains(key) || !node[key].is_string() ||
      node[key].get<std::string>().empty()) {
    throw ConfigError(where + ": missing or empty '" + key + "'");
  }
  return node[key].get<std::string>();
}

DatasetConfig parse_dataset(const json& node,
                            const std::filesystem::path& base) {
  if (!node.is_object()) {
    throw ConfigError("dataset entries must be objects");
  }
  DatasetConfig ds;
  ds.name = require_string(node, "name", "dataset");
  const std::string where = "dataset '" + ds.name + "'";
  ds.domain = node.value("domain", std::string("unspecified"));
  ds.format = node.value("format", std::string("none"));
  if (ds.format != "movielens" && ds.format != "amazon" &&
      ds.format != "none") {
    throw ConfigError(where + ": unknown format '" + ds.format +
                      "' (movielens|amazon|none)");
  }

  auto path_field = [&](const char* key) -> std::optional<std::filesystem::path> {
    if (!node.contains(key)) return std::nullopt;
    if (!node[key].is_string()) {
      throw ConfigError(where + ": '" + key + "' must be a path string");
    }
    return resolve(base, node[key].get<std::string>());
  };
  ds.ratings = path_field("ratings");
  ds.reviews = path_field("reviews");
  ds.items = path_field("items");
  ds.user_profiles = path_field("user_profiles");
  ds.item_profiles = path_field("item_profiles");

  if (node.contains("rating_scale")) {
    const json& scale = node["rating_scale"];
    if (!scale.is_array() || scale.size() != 2 || !scale[0].is_number() ||
        !scale[1].is_number()) {
      throw ConfigError(where + ": rating_scale must be [min, max]");
    }
    ds.scale.min = scale[0].get<double>();
    ds.scale.max = scale[1].get<double>();
    if (!(ds.scale.min < ds.scale.max)) {
      throw ConfigError(where + ": rating_scale min must be below max");
    }
  } else if (ds.format == "amazon") {
    ds.scale = RatingScale{1.0, 5.0};
  }

  if (node.contains("group_input")) {
    const std::string kind = node["group_input"].get<std::string>();
    if (kind == "aggregate") {
      ds.group_input = GroupVectorKind::kAggregateSum;
    } else if (kind == "normalized") {
      ds.group_input = GroupVectorKind::kNormalizedMean;
    } else {
      throw ConfigError(where + ": group_input must be 'aggregate' or "
                        "'normalized'");
    }
  }

  if (ds.format == "movielens" && !ds.ratings.has_value()) {
    throw ConfigError(where + ": movielens format needs a 'ratings' path");
  }
  if (ds.format == "amazon" && !ds.reviews.has_value()) {
    throw ConfigError(where + ": amazon format needs a 'reviews' path");
  }
  return ds;
}

std::vector<std::string> string_list(const json& node, const char* key,
                                     const std::string& where) {
  std::vector<std::string> out;
  if (!node.contains(key)) return out;
  if (!node[key].is_array()) {
    throw ConfigError(where + ": '" + key + "' must be a list of strings");
  }
  for (const json& entry : node[key]) {
    if (!entry.is_string()) {
      throw ConfigError(where + ": '" + key + "' must be a list of strings");
    }
    out.push_back(entry.get<std::string>());
  }
  return out;
}

}  // namespace

RunConfig load_run_config(const std::filesystem::path& config_path) {
  std::ifstream in(config_path);
  if (!in) {
    throw ConfigError("cannot open config " + config_path.string());
  }
  json root = json::parse(in, nullptr, false);
  if (root.is_discarded() || !root.is_object()) {
    throw ConfigError(config_path.string() + " is not a JSON object");
  }

  RunConfig config;
  config.base_dir = config_path.has_parent_path()
                        ? config_path.parent_path()
                        : std::filesystem::path(".");

  if (!root.contains("datasets") || !root["datasets"].is_array() ||
      root["datasets"].empty()) {
    throw ConfigError(config_path.string() +
                      ": 'datasets' must be a nonempty list");
  }
  for (const json& entry : root["datasets"]) {
    config.datasets.push_back(parse_dataset(entry, config.base_dir));
  }

  if (root.contains("classifier")) {
    const json& cls = root["classifier"];
    if (!cls.is_object() || !cls.contains("lexicon")) {
      throw ConfigError("classifier section needs a 'lexicon' path");
    }
    LexiconConfig lex;
    lex.path = resolve(config.base_dir, cls["lexicon"].get<std::string>());
    lex.alpha = cls.value("alpha", 1.0);
    if (!(lex.alpha > 0.0)) {
      throw ConfigError("classifier alpha must be > 0");
    }
    config.lexicon = lex;
  }

  config.tau = root.value("tau", 0.98);
  config.top_n = root.value("top_n", 20);
  config.format = root.value("format", std::string("csv"));
  if (root.contains("output_dir")) {
    config.output_dir = root["output_dir"].get<std::string>();
  }

  if (root.contains("pac")) {
    const json& node = root["pac"];
    PacSection pac;
    pac.probe_dataset = require_string(node, "probe_dataset", "pac");
    pac.probe_users = string_list(node, "probe_users", "pac");
    pac.pool_datasets = string_list(node, "pool_datasets", "pac");
    pac.emit_groups = node.value("emit_groups", false);
    if (node.contains("groups_dataset")) {
      pac.groups_dataset = node["groups_dataset"].get<std::string>();
    }
    if (pac.pool_datasets.empty() && !pac.groups_dataset.has_value()) {
      throw ConfigError("pac: needs pool_datasets and/or groups_dataset");
    }
    config.pac = std::move(pac);
  }

  if (root.contains("recommend")) {
    const json& node = root["recommend"];
    RecommendSection rec;
    rec.dataset = require_string(node, "dataset", "recommend");
    rec.users = string_list(node, "users", "recommend");
    rec.recommenders = string_list(node, "recommenders", "recommend");
    rec.k_neighbors = node.value("k_neighbors", 10);
    rec.cross_domain_targets =
        string_list(node, "cross_domain_targets", "recommend");
    if (rec.users.empty()) {
      throw ConfigError("recommend: 'users' must list at least one user");
    }
    if (rec.recommenders.empty()) {
      throw ConfigError("recommend: 'recommenders' must not be empty");
    }
    config.recommend = std::move(rec);
  }

  if (root.contains("evaluate")) {
    const json& node = root["evaluate"];
    EvaluateSection ev;
    ev.dataset = require_string(node, "dataset", "evaluate");
    ev.users = string_list(node, "users", "evaluate");
    ev.holdout_fraction = node.value("holdout_fraction", 0.2);
    ev.recommenders = string_list(node, "recommenders", "evaluate");
    ev.k_neighbors = node.value("k_neighbors", 10);
    if (ev.users.empty()) {
      throw ConfigError("evaluate: 'users' must list at least one user");
    }
    if (ev.recommenders.empty()) {
      throw ConfigError("evaluate: 'recommenders' must not be empty");
    }
    if (!(ev.holdout_fraction > 0.0) || ev.holdout_fraction >= 1.0) {
      throw ConfigError("evaluate: holdout_fraction must be in (0, 1)");
    }
    config.evaluate = std::move(ev);
  }

  return config;
}

void apply_overrides(RunConfig& config, const Overrides& overrides) {
  if (overrides.tau.has_value()) config.tau = *overrides.tau;
  if (overrides.top_n.has_value()) config.top_n = *overrides.top_n;
  if (overrides.output_dir.has_value()) config.output_dir = *overrides.output_dir;
  if (overrides.format.has_value()) config.format = *overrides.format;
}

void validate(const RunConfig& config) {
  if (!(config.tau > 0.0) || config.tau > 1.0) {
    std::ostringstream msg;
    msg << "tau " << config.tau << " outside (0, 1]";
    throw ConfigError(msg.str());
  }
  if (config.top_n < 1) {
    throw ConfigError("top_n must be >= 1");
  }
  if (config.format != "csv" && config.format != "text") {
    throw ConfigError("format must be 'csv' or 'text'");
  }

  std::set<std::string> names;
  for (const DatasetConfig& ds : config.datasets) {
    if (!names.insert(ds.name).second) {
      throw ConfigError("dataset name '" + ds.name + "' declared twice");
    }
    for (const auto& path : {ds.ratings, ds.reviews, ds.items,
                             ds.user_profiles, ds.item_profiles}) {
      if (path.has_value() && !std::filesystem::is_regular_file(*path)) {
        throw ConfigError("dataset '" + ds.name + "': no such file " +
                          path->string());
      }
    }
    if (ds.group_input.has_value() && !ds.items.has_value() &&
        !ds.item_profiles.has_value()) {
      throw ConfigError("dataset '" + ds.name +
                        "': group_input needs item metadata or item profiles");
    }
  }
  if (config.lexicon.has_value() &&
      !std::filesystem::is_regular_file(config.lexicon->path)) {
    throw ConfigError("no such lexicon file " +
                      config.lexicon->path.string());
  }

  auto check_dataset_ref = [&](const std::string& name,
                               const std::string& where) {
    if (!names.contains(name)) {
      throw ConfigError(where + " references unknown dataset '" + name + "'");
    }
  };
  if (config.pac.has_value()) {
    check_dataset_ref(config.pac->probe_dataset, "pac.probe_dataset");
    for (const std::string& name : config.pac->pool_datasets) {
      check_dataset_ref(name, "pac.pool_datasets");
    }
    if (config.pac->groups_dataset.has_value()) {
      check_dataset_ref(*config.pac->groups_dataset, "pac.groups_dataset");
    }
  }
  if (config.recommend.has_value()) {
    check_dataset_ref(config.recommend->dataset, "recommend.dataset");
    for (const std::string& name : config.recommend->cross_domain_targets) {
      check_dataset_ref(name, "recommend.cross_domain_targets");
    }
    if (config.recommend->k_neighbors < 1) {
      throw ConfigError("recommend.k_neighbors must be >= 1");
    }
  }
  if (config.evaluate.has_value()) {
    check_dataset_ref(config.evaluate->dataset, "evaluate.dataset");
    if (config.evaluate->k_neighbors < 1) {
      throw ConfigError("evaluate.k_neighbors must be >= 1");
    }
  }
}

}  // namespace aapam::cli
