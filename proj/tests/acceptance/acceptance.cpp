// Acceptance suite: every release-gating behavior, one pass/fail line each.
// Run through ctest or directly:
//   aapam_acceptance --cli <aapam binary> --data <repo data dir> [--work DIR]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "aapam/classifier.hpp"
#include "aapam/emotion.hpp"
#include "aapam/errors.hpp"
#include "aapam/evaluation.hpp"
#include "aapam/ingestion.hpp"
#include "aapam/pac.hpp"
#include "aapam/profiles.hpp"
#include "aapam/recommend.hpp"
#include "aapam/store.hpp"

#include "../oracles.hpp"

namespace fs = std::filesystem;
using namespace aapam;

namespace {

struct CheckFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define ACCEPT(cond)                                                        \
  do {                                                                      \
    if (!(cond)) {                                                          \
      std::ostringstream msg_;                                              \
      msg_ << #cond << " (at " << __FILE__ << ":" << __LINE__ << ")";       \
      throw CheckFailure(msg_.str());                                       \
    }                                                                       \
  } while (0)

fs::path g_cli;
fs::path g_data;
fs::path g_work;

fs::path fixture(const std::string& relative) {
  return g_data / "fixtures" / relative;
}

EmotionVector random_distribution(std::mt19937& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  EmotionVector v;
  double sum = 0.0;
  do {
    sum = 0.0;
    for (double& c : v.values) {
      c = unit(rng);
      sum += c;
    }
  } while (sum <= 0.0);
  for (double& c : v.values) c /= sum;
  return v;
}

int run_cli(const std::string& args) {
  const std::string command = "\"" + g_cli.string() + "\" " + args;
  const int status = std::system(command.c_str());
  if (status == -1) throw CheckFailure("failed to spawn: " + command);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CheckFailure("cannot read " + path.string());
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

std::map<fs::path, std::string> tree_bytes(const fs::path& root) {
  std::map<fs::path, std::string> out;
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (entry.is_regular_file()) {
      out.emplace(fs::relative(entry.path(), root), slurp(entry.path()));
    }
  }
  return out;
}

// --- criterion 1: cross-dataset AII reproduction -------------------------

void criterion_aii_reproduction() {
  const auto mlsm = load_profiles(fixture("pac_users/mlsm.users.csv"));
  const auto ml20m = load_profiles(fixture("pac_users/ml20m.users.csv"));
  const auto ml25m = load_profiles(fixture("pac_users/ml25m.users.csv"));
  const auto ml27m = load_profiles(fixture("pac_users/ml27m.users.csv"));

  const double close =
      cosine_similarity(mlsm.at("400"), ml20m.at("66274")).value();
  ACCEPT(std::abs(close - 0.99992) <= 1e-4);

  // These two partner columns carry the probe's own digits.
  const double same_25 =
      cosine_similarity(mlsm.at("400"), ml25m.at("95459")).value();
  const double same_27 =
      cosine_similarity(mlsm.at("400"), ml27m.at("89195")).value();
  ACCEPT(std::abs(same_25 - 1.0) <= 1e-12);
  ACCEPT(std::abs(same_27 - 1.0) <= 1e-12);
}

// --- criterion 2: dominant moods ------------------------------------------

void criterion_dominant_moods() {
  const auto movies = load_profiles(fixture("movie_moods/tmdb.items.csv"));
  ACCEPT(rank_moods(movies.at("4470")).front().first ==
         EmotionLabel::kDisgust);
  ACCEPT(rank_moods(movies.at("189111")).front().first == EmotionLabel::kHate);
}

// --- criterion 3: cross-domain max-score rule ------------------------------

void criterion_cross_domain_rule() {
  const RatingScale scale{1.0, 5.0};

  const RatingsIngest music = read_amazon_reviews(
      fixture("amazon_reviews/digital_music.reviews.jsonl"),
      DatasetId{"digital_music", "music"}, scale);
  PacLink music_link;
  music_link.source = ScopedId{"mlsm", "414"};
  music_link.target = ScopedId{"digital_music", "A3CBNR1SZJJJDE|"};
  music_link.aii = Aii(0.99485);
  const auto music_recs = cross_domain_recommend(
      ScopedId{"mlsm", "414"}, music_link, music.events, 5);
  ACCEPT(!music_recs.empty());
  ACCEPT(music_recs[0].item.raw == "9714721180");
  ACCEPT(music_recs.size() == 1);  // only one 5-score review

  const RatingsIngest toys = read_amazon_reviews(
      fixture("amazon_reviews/toys_and_games.reviews.jsonl"),
      DatasetId{"toys_and_games", "toys"}, scale);
  PacLink toys_link;
  toys_link.source = ScopedId{"mlsm", "414"};
  toys_link.target = ScopedId{"toys_and_games", "A81TG97437QX|T. Okafor"};
  toys_link.aii = Aii(0.99961);
  const auto toys_recs = cross_domain_recommend(ScopedId{"mlsm", "414"},
                                                toys_link, toys.events, 5);
  ACCEPT(!toys_recs.empty());
  ACCEPT(toys_recs[0].item.raw == "6301935063");
}

// --- criterion 4: threshold grouping ---------------------------------------

void criterion_threshold_group() {
  const auto mlsm = load_precomputed(fixture("user_groups/mlsm.users.csv"));
  const std::vector<std::pair<std::string, std::string>> partners = {
      {"ml20m", "125022"},
      {"ml25m", "131662"},
      {"ml27m", "236165"},
      {"digital_music", "10354"},
      {"toys_and_games", "97437"},
  };
  CandidatePool pool("partners");
  for (const auto& [dataset, user] : partners) {
    const auto profiles =
        load_precomputed(fixture("user_groups/" + dataset + ".users.csv"));
    pool.add(ScopedId{dataset, user}, profiles.at(user));
  }
  pool.freeze();

  const auto group = pac_threshold_group(ScopedId{"mlsm", "414"},
                                         mlsm.at("414"), pool, 0.98);
  ACCEPT(group.size() == 5);
  for (const PacLink& link : group) {
    ACCEPT(link.aii.value() >= 0.98);
    ACCEPT(link.kind == PacKind::kGroupMember);
  }
}

// --- criterion 5: oracle equivalence ---------------------------------------

void criterion_oracle_equivalence() {
  std::mt19937 rng(501);
  int instances = 0;

  // aii_scan, pools up to 1000 vectors
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t size =
        (trial % 10 == 0) ? 1000 : 1 + rng() % 200;
    std::vector<std::pair<std::string, EmotionVector>> entries;
    for (std::size_t i = 0; i < size; ++i) {
      entries.emplace_back("e" + std::to_string(i), random_distribution(rng));
    }
    CandidatePool pool("p");
    for (const auto& [id, vec] : entries) {
      pool.add(ScopedId{"p", id}, vec);
    }
    pool.freeze();
    const EmotionVector probe = random_distribution(rng);
    const auto hits = aii_scan(probe, pool);
    const auto expected = oracle::scan(probe, entries);
    ACCEPT(hits.size() == expected.size());
    for (std::size_t i = 0; i < hits.size(); ++i) {
      ACCEPT(hits[i].entity.raw == expected[i].id);
      ACCEPT(hits[i].aii.value() == expected[i].score);
    }
    ++instances;
  }

  // pac_top_match
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::pair<std::string, EmotionVector>> entries;
    const std::size_t size = 1 + rng() % 100;
    for (std::size_t i = 0; i < size; ++i) {
      entries.emplace_back("e" + std::to_string(i), random_distribution(rng));
    }
    CandidatePool pool("p");
    for (const auto& [id, vec] : entries) pool.add(ScopedId{"p", id}, vec);
    pool.freeze();
    const EmotionVector probe = random_distribution(rng);
    const PacLink link = pac_top_match(ScopedId{"s", "u"}, probe, pool);
    const oracle::RankedEntity expected = oracle::top_match(probe, entries);
    ACCEPT(link.target.raw == expected.id);
    ACCEPT(link.aii.value() == expected.score);
    ++instances;
  }

  // ibcf + ubcf on matrices up to 20x20
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (int trial = 0; trial < 150; ++trial) {
    const int users = 2 + static_cast<int>(rng() % 19);
    const int items = 2 + static_cast<int>(rng() % 19);
    std::vector<std::tuple<std::string, std::string, double>> cells;
    std::vector<RatingEvent> events;
    for (int u = 0; u < users; ++u) {
      for (int i = 0; i < items; ++i) {
        if (coin(rng) < 0.4) {
          char user[16];
          char item[16];
          std::snprintf(user, sizeof(user), "u%02d", u);
          std::snprintf(item, sizeof(item), "m%02d", i);
          const double score = 0.5 * (1 + static_cast<int>(rng() % 10));
          cells.emplace_back(user, item, score);
          RatingEvent event;
          event.user = ScopedId{"ds", user};
          event.item = ScopedId{"ds", item};
          event.score = score;
          events.push_back(std::move(event));
        }
      }
    }
    if (cells.empty()) continue;
    const RatingMatrix matrix = RatingMatrix::from_events(events);
    const oracle::DenseRatings dense = oracle::DenseRatings::build(cells);
    const std::string probe = std::get<0>(cells[rng() % cells.size()]);
    const int n = 1 + static_cast<int>(rng() % 10);
    const int k = 1 + static_cast<int>(rng() % 8);

    const auto ibcf = ibcf_recommend(ScopedId{"ds", probe}, matrix, n);
    const auto ibcf_expected = oracle::ibcf(dense, probe, n);
    ACCEPT(ibcf.size() == ibcf_expected.size());
    for (std::size_t i = 0; i < ibcf.size(); ++i) {
      ACCEPT(ibcf[i].item.raw == ibcf_expected[i].id);
      ACCEPT(ibcf[i].score == ibcf_expected[i].score);
    }

    try {
      const auto ubcf = ubcf_recommend(ScopedId{"ds", probe}, matrix, n, k);
      const auto ubcf_expected = oracle::ubcf(dense, probe, n, k);
      ACCEPT(ubcf.size() == ubcf_expected.size());
      for (std::size_t i = 0; i < ubcf.size(); ++i) {
        ACCEPT(ubcf[i].item.raw == ubcf_expected[i].id);
        ACCEPT(ubcf[i].score == ubcf_expected[i].score);
      }
    } catch (const NoNeighbors&) {
      // a probe sharing no items with anyone has no neighborhood
    }
    ++instances;
  }

  // ear
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t size = 1 + rng() % 300;
    std::vector<ItemProfile> profiles;
    std::vector<std::pair<std::string, EmotionVector>> entries;
    std::set<std::string> exclude_raw;
    std::set<ScopedId> exclude;
    for (std::size_t i = 0; i < size; ++i) {
      ItemProfile p;
      p.item = ScopedId{"ds", "m" + std::to_string(i)};
      p.mvec = random_distribution(rng);
      entries.emplace_back(p.item.raw, p.mvec);
      if (rng() % 5 == 0) {
        exclude_raw.insert(p.item.raw);
        exclude.insert(p.item);
      }
      profiles.push_back(std::move(p));
    }
    UserProfile user;
    user.user = ScopedId{"ds", "u"};
    user.uvec = random_distribution(rng);
    user.item_count = 1;
    const int n = 1 + static_cast<int>(rng() % 25);
    const auto recs = ear_recommend(user, profiles, n, exclude);
    const auto expected =
        oracle::rank_by_cosine(user.uvec, entries, exclude_raw, n);
    ACCEPT(recs.size() == expected.size());
    for (std::size_t i = 0; i < recs.size(); ++i) {
      ACCEPT(recs[i].item.raw == expected[i].id);
      ACCEPT(recs[i].score == expected[i].score);
    }
    ++instances;
  }

  ACCEPT(instances >= 500);
}

// --- criterion 6: incremental vs batch UVEC --------------------------------

void criterion_incremental_uvec() {
  std::mt19937 rng(601);
  for (int sequence = 0; sequence < 100; ++sequence) {
    std::vector<ItemProfile> items;
    for (int i = 0; i < 50; ++i) {
      ItemProfile p;
      p.item = ScopedId{"ds", "i" + std::to_string(i)};
      p.mvec = random_distribution(rng);
      items.push_back(std::move(p));
    }
    UserProfile incremental = build_user_profile(
        ScopedId{"ds", "u"}, std::vector<ItemProfile>{items[0]});
    for (std::size_t i = 1; i < items.size(); ++i) {
      incremental = update_user_profile(incremental, items[i]);
    }
    const UserProfile batch = build_user_profile(ScopedId{"ds", "u"}, items);
    ACCEPT(incremental.item_count == 50);
    for (std::size_t c = 0; c < kEmotionCount; ++c) {
      ACCEPT(std::abs(incremental.uvec.values[c] - batch.uvec.values[c]) <=
             1e-12);
    }
  }
}

// --- criterion 7: classifier distribution fuzz ------------------------------

void criterion_classifier_fuzz() {
  const EmotionLexicon lexicon =
      EmotionLexicon::load(g_data / "lexicon" / "default.lex");
  std::mt19937 rng(701);
  static const std::vector<std::string> pool = {
      "joyful", "grief",  "terror",   "rage",   "vile",   "twist",
      "plain",  "kazoo",  "zzz",      "42",     "!!",     "\t",
      "—",      "naïve",  "UPPER",    "MiXeD",  "a",      "",
      "laughter", "putrid", "uncanny", "wrath", "forlorn", "dread",
  };
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::uniform_int_distribution<int> words(0, 60);
  for (int text_index = 0; text_index < 10000; ++text_index) {
    std::string text;
    const int count = words(rng);
    for (int w = 0; w < count; ++w) {
      text += pool[pick(rng)];
      text += (w % 7 == 3) ? '\n' : ' ';
    }
    const EmotionVector v = classify(text, lexicon);
    double sum = 0.0;
    for (double c : v.values) {
      ACCEPT(c >= 0.0);
      sum += c;
    }
    ACCEPT(std::abs(sum - 1.0) <= 1e-9);
  }
}

// --- criterion 8: round-trip persistence ------------------------------------

void criterion_round_trip() {
  std::mt19937 rng(801);
  const fs::path dir = g_work / "roundtrip";
  fs::create_directories(dir);

  std::map<std::string, EmotionVector> profiles;
  for (int i = 0; i < 1000; ++i) {
    profiles.emplace("entity" + std::to_string(i), random_distribution(rng));
  }
  save_profiles(profiles, dir / "profiles_a.csv");
  save_profiles(profiles, dir / "profiles_b.csv");
  ACCEPT(slurp(dir / "profiles_a.csv") == slurp(dir / "profiles_b.csv"));
  const auto loaded = load_profiles(dir / "profiles_a.csv");
  ACCEPT(loaded.size() == profiles.size());
  for (const auto& [id, vec] : profiles) {
    for (std::size_t c = 0; c < kEmotionCount; ++c) {
      ACCEPT(std::abs(loaded.at(id).values[c] - vec.values[c]) <= 1e-9);
    }
  }

  std::vector<PacLink> links;
  std::uniform_real_distribution<double> aii(0.0, 1.0);
  const PacKind kinds[] = {PacKind::kOneToOne, PacKind::kGroupMember,
                           PacKind::kOneToMany};
  for (int i = 0; i < 100; ++i) {
    PacLink link;
    link.source = ScopedId{"src", "u" + std::to_string(i)};
    link.target = ScopedId{"dst" + std::to_string(i % 3),
                           "v" + std::to_string(rng() % 500)};
    link.aii = Aii(aii(rng));
    link.kind = kinds[rng() % 3];
    links.push_back(std::move(link));
  }
  save_links(links, dir / "links_a.csv");
  save_links(links, dir / "links_b.csv");
  ACCEPT(slurp(dir / "links_a.csv") == slurp(dir / "links_b.csv"));
  const auto loaded_links = load_links(dir / "links_a.csv");
  ACCEPT(loaded_links.size() == links.size());
  for (std::size_t i = 0; i < links.size(); ++i) {
    ACCEPT(loaded_links[i].source == links[i].source);
    ACCEPT(loaded_links[i].target == links[i].target);
    ACCEPT(loaded_links[i].kind == links[i].kind);
    ACCEPT(std::abs(loaded_links[i].aii.value() - links[i].aii.value()) <=
           1e-6);
  }
}

// --- criterion 9: end-to-end CLI determinism --------------------------------

void criterion_cli_determinism() {
  // Two fully separate copies of the bundled corpus; reject reports land
  // next to the copied inputs, never in the repository.
  const fs::path run_a = g_work / "run_a";
  const fs::path run_b = g_work / "run_b";
  fs::create_directories(run_a);
  fs::create_directories(run_b);
  fs::copy(fixture("pipeline"), run_a / "inputs",
           fs::copy_options::recursive);
  fs::copy(fixture("pipeline"), run_b / "inputs",
           fs::copy_options::recursive);
  fs::create_directories(run_a / "inputs" / "lexicon");
  fs::create_directories(run_b / "inputs" / "lexicon");
  fs::copy_file(g_data / "lexicon" / "default.lex",
                run_a / "inputs" / "lexicon" / "default.lex");
  fs::copy_file(g_data / "lexicon" / "default.lex",
                run_b / "inputs" / "lexicon" / "default.lex");
  for (const fs::path& root : {run_a, run_b}) {
    const fs::path config = root / "inputs" / "config.json";
    std::string text = slurp(config);
    const std::string needle = "../../lexicon/default.lex";
    const std::size_t pos = text.find(needle);
    ACCEPT(pos != std::string::npos);
    text.replace(pos, needle.size(), "lexicon/default.lex");
    std::ofstream out(config, std::ios::binary);
    out << text;
  }

  ACCEPT(run_cli("pipeline --config \"" + (run_a / "inputs" / "config.json").string() +
                 "\" --out \"" + (run_a / "out").string() + "\" 2>/dev/null") == 0);
  ACCEPT(run_cli("pipeline --config \"" + (run_b / "inputs" / "config.json").string() +
                 "\" --out \"" + (run_b / "out").string() + "\" 2>/dev/null") == 0);

  const auto tree_a = tree_bytes(run_a / "out");
  const auto tree_b = tree_bytes(run_b / "out");
  ACCEPT(!tree_a.empty());
  ACCEPT(tree_a == tree_b);

  // Reject reports were written beside the copied inputs, identically.
  ACCEPT(fs::exists(run_a / "inputs" / "mlsm.ratings.csv.rejects.txt"));
  ACCEPT(slurp(run_a / "inputs" / "mlsm.ratings.csv.rejects.txt") ==
         slurp(run_b / "inputs" / "mlsm.ratings.csv.rejects.txt"));

  // The pac subcommand on the four-dataset fixture: the top link row targets
  // the candidate whose profile digits equal the probe's.
  const fs::path pac_out = g_work / "pac_out";
  ACCEPT(run_cli("pac --config \"" + fixture("pac_users/pac.json").string() +
                 "\" --out \"" + pac_out.string() + "\" 2>/dev/null") == 0);
  const std::string links = slurp(pac_out / "pac" / "links.csv");
  const std::size_t first_row = links.find('\n') + 1;
  const std::size_t row_end = links.find('\n', first_row);
  ACCEPT(links.substr(first_row, row_end - first_row) ==
         "mlsm,400,ml25m,95459,1.000000,one_to_one");

  // A config pointing at a dataset directory with nothing in it fails fast
  // with a nonzero exit.
  const fs::path empty_dir = g_work / "empty_inputs";
  fs::create_directories(empty_dir);
  std::ofstream bad_config(empty_dir / "config.json");
  bad_config << R"({"datasets": [{"name": "x", "format": "movielens",)"
             << R"( "ratings": "ratings.csv"}]})";
  bad_config.close();
  ACCEPT(run_cli("pipeline --config \"" +
                 (empty_dir / "config.json").string() + "\" 2>/dev/null") != 0);
}

struct Criterion {
  int id;
  const char* title;
  std::function<void()> body;
};

}  // namespace

int main(int argc, char** argv) {
  for (int i = 1; i + 1 < argc; i += 2) {
    const std::string flag = argv[i];
    if (flag == "--cli") g_cli = argv[i + 1];
    else if (flag == "--data") g_data = argv[i + 1];
    else if (flag == "--work") g_work = argv[i + 1];
  }
  if (g_cli.empty() || g_data.empty()) {
    std::cerr << "usage: aapam_acceptance --cli <binary> --data <dir> "
                 "[--work <dir>]\n";
    return 2;
  }
  if (g_work.empty()) {
    g_work = fs::temp_directory_path() / "aapam_acceptance";
  }
  std::error_code ec;
  fs::remove_all(g_work, ec);
  fs::create_directories(g_work);

  const std::vector<Criterion> criteria = {
      {1, "cross-dataset AII reproduction from printed profile digits",
       criterion_aii_reproduction},
      {2, "dominant moods of the bundled movie profiles",
       criterion_dominant_moods},
      {3, "cross-domain max-score recommendation rule",
       criterion_cross_domain_rule},
      {4, "five-partner threshold group at tau 0.98",
       criterion_threshold_group},
      {5, "scan/match/CF/EAR equal brute-force oracles on 500+ instances",
       criterion_oracle_equivalence},
      {6, "incremental UVEC updates equal batch rebuilds",
       criterion_incremental_uvec},
      {7, "10k-text classifier fuzz yields valid distributions",
       criterion_classifier_fuzz},
      {8, "profile and link files round-trip at stated precision",
       criterion_round_trip},
      {9, "byte-identical pipeline reruns and CLI behavior",
       criterion_cli_determinism},
  };

  int failures = 0;
  for (const Criterion& criterion : criteria) {
    const auto start = std::chrono::steady_clock::now();
    try {
      criterion.body();
      const auto elapsed_ms =
          std::chrono::duration_cast<std::chrono::milliseconds>(
              std::chrono::steady_clock::now() - start)
              .count();
      std::printf("[PASS] criterion %d: %s (%lld ms)\n", criterion.id,
                  criterion.title, static_cast<long long>(elapsed_ms));
    } catch (const std::exception& e) {
      ++failures;
      std::printf("[FAIL] criterion %d: %s — %s\n", criterion.id,
                  criterion.title, e.what());
    }
    std::fflush(stdout);
  }
  if (failures > 0) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all %zu criteria passed\n", criteria.size());
  return 0;
}
