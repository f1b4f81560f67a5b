#include "aapam/cli/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "aapam/csv.hpp"
#include "aapam/errors.hpp"
#include "aapam/log.hpp"
#include "aapam/store.hpp"

namespace aapam::cli {
namespace {

std::string format_score(double score) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", score);
  return std::string(buf);
}

// Raw ids can contain path separators; artifact names must not.
std::string path_safe(const std::string& raw) {
  std::string out = raw;
  for (char& c : out) {
    if (c == '/' || c == '\\') c = '_';
  }
  return out;
}

void write_text_file(const std::filesystem::path& path,
                     const std::string& content) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot write " + path.string());
  }
  out << content;
  if (!out) {
    throw IoError("write failed for " + path.string());
  }
}

void write_skip_report(const std::filesystem::path& path,
                       const std::vector<std::string>& skipped,
                       const std::string& reason) {
  if (skipped.empty()) return;
  std::ostringstream out;
  for (const std::string& id : skipped) {
    out << id << ": " << reason << "\n";
  }
  write_text_file(path, out.str());
}

}  // namespace

std::optional<Stage> parse_stage(std::string_view name) {
  if (name == "ingest") return Stage::kIngest;
  if (name == "classify") return Stage::kClassify;
  if (name == "profile") return Stage::kProfile;
  if (name == "pac") return Stage::kPac;
  if (name == "recommend") return Stage::kRecommend;
  if (name == "evaluate") return Stage::kEvaluate;
  if (name == "pipeline") return Stage::kPipeline;
  return std::nullopt;
}

Pipeline::Pipeline(RunConfig config) : config_(std::move(config)) {
  validate(config_);
  for (const DatasetConfig& cfg : config_.datasets) {
    Dataset ds;
    ds.cfg = cfg;
    datasets_.push_back(std::move(ds));
  }
}

Pipeline::Dataset& Pipeline::dataset(const std::string& name) {
  for (Dataset& ds : datasets_) {
    if (ds.cfg.name == name) return ds;
  }
  throw ConfigError("unknown dataset '" + name + "'");
}

const EmotionLexicon& Pipeline::lexicon() {
  if (!lexicon_.has_value()) {
    if (!config_.lexicon.has_value()) {
      throw ConfigError(
          "a classifier.lexicon is required to classify item text");
    }
    lexicon_ = EmotionLexicon::load(config_.lexicon->path,
                                    config_.lexicon->alpha);
  }
  return *lexicon_;
}

EmotionVector Pipeline::classify_text(std::string_view text) {
  return classify(text, lexicon());
}

void Pipeline::ensure_ingested() {
  if (ingested_) return;
  for (Dataset& ds : datasets_) {
    const DatasetId dataset_id{ds.cfg.name, ds.cfg.domain};
    if (ds.cfg.format == "movielens") {
      RatingsIngest ingest =
          read_ratings_table(*ds.cfg.ratings, dataset_id, ds.cfg.scale);
      ds.events = std::move(ingest.events);
      ds.rejects = std::move(ingest.rejects);
      write_reject_report(*ds.cfg.ratings, ds.rejects);
    } else if (ds.cfg.format == "amazon") {
      RatingsIngest ingest =
          read_amazon_reviews(*ds.cfg.reviews, dataset_id, ds.cfg.scale);
      ds.events = std::move(ingest.events);
      ds.rejects = std::move(ingest.rejects);
      write_reject_report(*ds.cfg.reviews, ds.rejects);
    }
    if (ds.cfg.items.has_value()) {
      ItemsIngest items = read_item_metadata(*ds.cfg.items, dataset_id);
      ds.items = std::move(items.items);
      write_reject_report(*ds.cfg.items, items.rejects);
    }
    for (const RatingEvent& event : ds.events) {
      ds.user_ids.to_numeric_id(event.user.raw);
      ds.item_ids.to_numeric_id(event.item.raw);
    }
    for (const ItemRecord& item : ds.items) {
      ds.item_ids.to_numeric_id(item.item.raw);
    }
    log::info("dataset " + ds.cfg.name + ": " +
              std::to_string(ds.events.size()) + " events, " +
              std::to_string(ds.items.size()) + " item records, " +
              std::to_string(ds.rejects.size()) + " rejections");
  }
  ingested_ = true;
}

void Pipeline::ensure_classified() {
  ensure_ingested();
  if (classified_) return;
  for (Dataset& ds : datasets_) {
    if (ds.cfg.item_profiles.has_value()) {
      const ClassifierId provenance{"precomputed", "1"};
      for (const auto& [raw, vec] : load_precomputed(*ds.cfg.item_profiles)) {
        ItemProfile profile;
        profile.item = ScopedId{ds.cfg.name, raw};
        profile.mvec = vec;
        profile.classifier = provenance;
        ds.item_profiles.emplace(raw, std::move(profile));
      }
      continue;
    }

    std::vector<ItemRecord> records = ds.items;
    if (records.empty() && ds.cfg.format == "amazon") {
      // Review-only data carries no item metadata; an item's text is the
      // concatenation of its reviews, in source order.
      std::map<std::string, std::string> texts;
      std::vector<std::string> order;
      for (const RatingEvent& event : ds.events) {
        if (!event.review_text.has_value()) continue;
        auto [it, inserted] = texts.emplace(event.item.raw, "");
        if (inserted) order.push_back(event.item.raw);
        if (!it->second.empty()) it->second += "\n";
        it->second += *event.review_text;
      }
      for (const std::string& raw : order) {
        ItemRecord record;
        record.item = ScopedId{ds.cfg.name, raw};
        record.overview = texts.at(raw);
        records.push_back(std::move(record));
      }
    }
    if (records.empty()) continue;

    const ClassifierId provenance{"lexicon", "1"};
    const auto classify_fn = [this](std::string_view text) {
      return classify_text(text);
    };
    for (const ItemRecord& record : records) {
      try {
        ItemProfile profile =
            build_item_profile(record, classify_fn, provenance);
        ds.item_profiles.emplace(record.item.raw, std::move(profile));
      } catch (const NoText&) {
        ds.item_skips.push_back(record.item.raw);
      }
    }
    std::sort(ds.item_skips.begin(), ds.item_skips.end());
  }
  classified_ = true;
}

void Pipeline::ensure_profiled() {
  ensure_classified();
  if (profiled_) return;
  for (Dataset& ds : datasets_) {
    if (ds.cfg.user_profiles.has_value()) {
      ds.user_vecs = load_precomputed(*ds.cfg.user_profiles);
    } else if (!ds.events.empty()) {
      // Consumption lists per user, in source order.
      std::map<std::string, std::vector<const ItemProfile*>> consumed;
      for (const RatingEvent& event : ds.events) {
        auto it = ds.item_profiles.find(event.item.raw);
        if (it == ds.item_profiles.end()) continue;
        consumed[event.user.raw].push_back(&it->second);
      }
      std::set<std::string> all_users;
      for (const RatingEvent& event : ds.events) {
        all_users.insert(event.user.raw);
      }
      for (const std::string& raw : all_users) {
        auto it = consumed.find(raw);
        if (it == consumed.end()) {
          ds.user_skips.push_back(raw);
          continue;
        }
        std::vector<ItemProfile> items;
        items.reserve(it->second.size());
        for (const ItemProfile* p : it->second) items.push_back(*p);
        UserProfile profile =
            build_user_profile(ScopedId{ds.cfg.name, raw}, items);
        ds.user_vecs.emplace(raw, profile.uvec);
        ds.built_users.emplace(raw, std::move(profile));
      }
    }

    if (ds.cfg.group_input.has_value()) {
      for (const ItemRecord& item : ds.items) {
        auto profile_it = ds.item_profiles.find(item.item.raw);
        if (profile_it == ds.item_profiles.end()) continue;
        if (!item.vote_count.has_value() || *item.vote_count < 1) {
          ds.group_skips.push_back(item.item.raw);
          continue;
        }
        ds.groups.push_back(make_group_profile(item.item,
                                               profile_it->second.mvec,
                                               *ds.cfg.group_input,
                                               *item.vote_count));
      }
    }
  }
  profiled_ = true;
}

void Pipeline::write_ingest_artifacts() {
  const std::filesystem::path dir = config_.output_dir / "ingest";
  for (Dataset& ds : datasets_) {
    if (!ds.events.empty()) {
      std::ostringstream out;
      out << "user_id,item_id,score,timestamp\n";
      for (const RatingEvent& event : ds.events) {
        out << csv::escape(event.user.raw) << ',' << csv::escape(event.item.raw)
            << ',' << format_score(event.score) << ',' << event.timestamp
            << "\n";
      }
      write_text_file(dir / (ds.cfg.name + ".events.csv"), out.str());
      save_id_map(ds.user_ids, dir / (ds.cfg.name + ".users.idmap.csv"));
    }
    if (ds.item_ids.size() > 0) {
      save_id_map(ds.item_ids, dir / (ds.cfg.name + ".items.idmap.csv"));
    }
  }
}

void Pipeline::write_classify_artifacts() {
  const std::filesystem::path dir = config_.output_dir / "profiles";
  for (Dataset& ds : datasets_) {
    if (!ds.item_profiles.empty()) {
      std::map<std::string, EmotionVector> vecs;
      for (const auto& [raw, profile] : ds.item_profiles) {
        vecs.emplace(raw, profile.mvec);
      }
      save_profiles(vecs, dir / (ds.cfg.name + ".items.csv"));
    }
    write_skip_report(dir / (ds.cfg.name + ".items.skipped.txt"),
                      ds.item_skips, "NoText");
  }
}

void Pipeline::write_profile_artifacts() {
  const std::filesystem::path dir = config_.output_dir / "profiles";
  for (Dataset& ds : datasets_) {
    if (!ds.user_vecs.empty() && !ds.cfg.user_profiles.has_value()) {
      save_profiles(ds.user_vecs, dir / (ds.cfg.name + ".users.csv"));
    }
    write_skip_report(dir / (ds.cfg.name + ".users.skipped.txt"),
                      ds.user_skips, "NoConsumption");
    if (!ds.groups.empty()) {
      std::map<std::string, EmotionVector> vecs;
      for (const GroupProfile& group : ds.groups) {
        vecs.emplace(group.item.raw, group.group_uvec);
      }
      save_profiles(vecs, dir / (ds.cfg.name + ".groups.csv"));
    }
    write_skip_report(dir / (ds.cfg.name + ".groups.skipped.txt"),
                      ds.group_skips, "ZeroVotes");
  }
}

void Pipeline::run_pac(bool write, bool required) {
  ensure_profiled();
  if (!config_.pac.has_value()) {
    if (required) {
      throw ConfigError("the pac stage needs a 'pac' config section");
    }
    return;
  }
  const PacSection& section = *config_.pac;
  Dataset& probe_ds = dataset(section.probe_dataset);

  std::vector<std::string> probes = section.probe_users;
  if (probes.empty()) {
    for (const auto& [raw, vec] : probe_ds.user_vecs) {
      probes.push_back(raw);
    }
  } else {
    std::sort(probes.begin(), probes.end());
  }

  std::vector<PacLink> links;
  std::vector<PacScanRecord> scan_records;

  if (!section.pool_datasets.empty()) {
    std::string pool_label;
    for (const std::string& name : section.pool_datasets) {
      if (!pool_label.empty()) pool_label += "+";
      pool_label += name;
    }
    CandidatePool pool(pool_label);
    for (const std::string& name : section.pool_datasets) {
      Dataset& pool_ds = dataset(name);
      for (const auto& [raw, vec] : pool_ds.user_vecs) {
        pool.add(ScopedId{name, raw}, vec);
      }
    }
    pool.freeze();
    if (pool.empty()) {
      throw EmptyPool("pac pool '" + pool_label + "' has no user profiles");
    }

    for (const std::string& raw : probes) {
      auto vec_it = probe_ds.user_vecs.find(raw);
      if (vec_it == probe_ds.user_vecs.end()) {
        throw ConfigError("pac: probe user '" + raw + "' not found in '" +
                          section.probe_dataset + "'");
      }
      const ScopedId probe{section.probe_dataset, raw};
      const std::vector<ScanHit> hits = aii_scan(vec_it->second, pool);
      scan_records.push_back(record_scan(probe, pool, hits));
      links.push_back(PacLink{probe, hits.front().entity, hits.front().aii,
                              PacKind::kOneToOne});
      if (section.emit_groups) {
        for (const ScanHit& hit : hits) {
          if (hit.aii.value() < config_.tau) break;
          links.push_back(
              PacLink{probe, hit.entity, hit.aii, PacKind::kGroupMember});
        }
      }
    }
  }

  if (section.groups_dataset.has_value()) {
    Dataset& groups_ds = dataset(*section.groups_dataset);
    if (groups_ds.groups.empty()) {
      throw EmptyPool("dataset '" + *section.groups_dataset +
                      "' has no group profiles (set group_input)");
    }
    for (const std::string& raw : probes) {
      auto vec_it = probe_ds.user_vecs.find(raw);
      if (vec_it == probe_ds.user_vecs.end()) {
        throw ConfigError("pac: probe user '" + raw + "' not found in '" +
                          section.probe_dataset + "'");
      }
      const ScopedId probe{section.probe_dataset, raw};
      const std::vector<PacLink> group_links = pac_cross_domain_user_to_groups(
          probe, vec_it->second, groups_ds.groups, config_.tau);
      links.insert(links.end(), group_links.begin(), group_links.end());
    }
  }

  if (write) {
    const std::filesystem::path dir = config_.output_dir / "pac";
    save_links(links, dir / "links.csv");
    write_text_file(dir / "run_report.txt", format_run_report(scan_records));
  }
}

std::vector<Recommendation> Pipeline::recommend_for(
    const std::string& recommender, Dataset& ds, const ScopedId& user,
    const RatingMatrix& matrix, const UserProfile* profile,
    const std::set<ScopedId>& exclude, int k_neighbors) {
  if (recommender == "ibcf") {
    return ibcf_recommend(user, matrix, config_.top_n);
  }
  if (recommender == "ubcf") {
    return ubcf_recommend(user, matrix, config_.top_n, k_neighbors);
  }
  if (recommender == "ear") {
    if (profile == nullptr) {
      throw NoConsumption("user " + user.str() +
                          " has no emotion profile for ear");
    }
    std::vector<ItemProfile> profiles;
    profiles.reserve(ds.item_profiles.size());
    for (const auto& [raw, item_profile] : ds.item_profiles) {
      profiles.push_back(item_profile);
    }
    return ear_recommend(*profile, profiles, config_.top_n, exclude);
  }
  throw ConfigError("unknown recommender '" + recommender + "'");
}

void Pipeline::run_recommend(bool write, bool required) {
  ensure_profiled();
  if (!config_.recommend.has_value()) {
    if (required) {
      throw ConfigError("the recommend stage needs a 'recommend' section");
    }
    return;
  }
  const RecommendSection& section = *config_.recommend;
  Dataset& ds = dataset(section.dataset);
  const RatingMatrix matrix = RatingMatrix::from_events(ds.events);
  const std::filesystem::path dir = config_.output_dir / "recommend";

  for (const std::string& user_raw : section.users) {
    const ScopedId user{section.dataset, user_raw};

    const UserProfile* profile = nullptr;
    auto profile_it = ds.built_users.find(user_raw);
    if (profile_it != ds.built_users.end()) {
      profile = &profile_it->second;
    }
    std::set<ScopedId> exclude;
    if (profile != nullptr) {
      exclude = profile->consumed;
    }
    auto row_it = matrix.rows().find(user);
    if (row_it != matrix.rows().end()) {
      for (const auto& [item, score] : row_it->second) {
        exclude.insert(item);
      }
    }

    for (const std::string& recommender : section.recommenders) {
      if (recommender == "cross_domain") {
        for (const std::string& target_name : section.cross_domain_targets) {
          Dataset& target = dataset(target_name);
          CandidatePool pool(target_name);
          for (const auto& [raw, vec] : target.user_vecs) {
            pool.add(ScopedId{target_name, raw}, vec);
          }
          pool.freeze();
          auto vec_it = ds.user_vecs.find(user_raw);
          if (vec_it == ds.user_vecs.end()) {
            throw NoConsumption("user " + user.str() +
                                " has no emotion profile for cross_domain");
          }
          const PacLink link = pac_top_match(user, vec_it->second, pool);
          const std::vector<Recommendation> recs = cross_domain_recommend(
              user, link, target.events, config_.top_n);
          if (write) {
            write_text_file(dir / (section.dataset + "." +
                                   path_safe(user_raw) + ".cross_" +
                                   target_name + ".csv"),
                            format_recommendations_csv(recs));
          }
        }
        continue;
      }
      const std::vector<Recommendation> recs = recommend_for(
          recommender, ds, user, matrix, profile, exclude,
          section.k_neighbors);
      if (write) {
        write_text_file(dir / (section.dataset + "." + path_safe(user_raw) +
                               "." + recommender + ".csv"),
                        format_recommendations_csv(recs));
      }
    }
  }
}

void Pipeline::run_evaluate(bool write, bool required) {
  ensure_profiled();
  if (!config_.evaluate.has_value()) {
    if (required) {
      throw ConfigError("the evaluate stage needs an 'evaluate' section");
    }
    return;
  }
  const EvaluateSection& section = *config_.evaluate;
  Dataset& ds = dataset(section.dataset);
  const std::filesystem::path dir = config_.output_dir / "evaluate";

  for (const std::string& user_raw : section.users) {
    const ScopedId user{section.dataset, user_raw};

    std::vector<RatingEvent> user_events;
    std::vector<RatingEvent> other_events;
    for (const RatingEvent& event : ds.events) {
      if (event.user == user) {
        user_events.push_back(event);
      } else {
        other_events.push_back(event);
      }
    }
    if (user_events.empty()) {
      throw ColdStartUser("evaluate: user " + user.str() + " has no events");
    }
    const HoldoutSplit split =
        split_holdout_by_time(user_events, section.holdout_fraction);

    std::set<ScopedId> relevant;
    for (const RatingEvent& event : split.heldout) {
      relevant.insert(event.item);
    }

    std::vector<RatingEvent> train_events = other_events;
    train_events.insert(train_events.end(), split.train.begin(),
                        split.train.end());
    const RatingMatrix matrix = RatingMatrix::from_events(train_events);

    // The probe profile is rebuilt from the training slice only.
    std::vector<ItemProfile> train_consumed;
    std::set<ScopedId> exclude;
    for (const RatingEvent& event : split.train) {
      exclude.insert(event.item);
      auto it = ds.item_profiles.find(event.item.raw);
      if (it != ds.item_profiles.end()) {
        train_consumed.push_back(it->second);
      }
    }
    std::optional<UserProfile> profile;
    if (!train_consumed.empty()) {
      profile = build_user_profile(user, train_consumed);
    }

    std::vector<std::pair<std::string, std::vector<Recommendation>>> outputs;
    for (const std::string& recommender : section.recommenders) {
      outputs.emplace_back(
          recommender,
          recommend_for(recommender, ds, user, matrix,
                        profile.has_value() ? &*profile : nullptr, exclude,
                        section.k_neighbors));
    }

    ReportMeta meta;
    meta.datasets = {section.dataset};
    meta.tau = config_.tau;
    meta.top_n = config_.top_n;
    const EvaluationReport report = build_report(user, outputs, relevant, meta);

    if (write) {
      const std::string stem =
          section.dataset + "." + path_safe(user_raw) + ".report";
      if (config_.format == "text") {
        write_text_file(dir / (stem + ".txt"), render_report_text(report));
      } else {
        write_text_file(dir / (stem + ".csv"), render_report_csv(report));
      }
    }
  }
}

void Pipeline::run(Stage stage) {
  const bool all = stage == Stage::kPipeline;
  ensure_ingested();
  if (all || stage == Stage::kIngest) write_ingest_artifacts();
  if (stage == Stage::kIngest) return;

  ensure_classified();
  if (all || stage == Stage::kClassify) write_classify_artifacts();
  if (stage == Stage::kClassify) return;

  ensure_profiled();
  if (all || stage == Stage::kProfile) write_profile_artifacts();
  if (stage == Stage::kProfile) return;

  if (all || stage == Stage::kPac) {
    run_pac(/*write=*/true, /*required=*/stage == Stage::kPac);
  }
  if (stage == Stage::kPac) return;

  if (all || stage == Stage::kRecommend) {
    run_recommend(/*write=*/true, /*required=*/stage == Stage::kRecommend);
  }
  if (stage == Stage::kRecommend) return;

  if (all || stage == Stage::kEvaluate) {
    run_evaluate(/*write=*/true, /*required=*/stage == Stage::kEvaluate);
  }
}

}  // namespace aapam::cli
