#pragma once

#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "aapam/emotion.hpp"
#include "aapam/ids.hpp"
#include "aapam/profiles.hpp"

namespace aapam {

enum class PacKind {
  kOneToOne,    // top match between two entities
  kGroupMember, // member of a threshold group
  kOneToMany,   // user matched to a group-of-users profile
};

std::string_view to_string(PacKind kind);
std::optional<PacKind> parse_pac_kind(std::string_view text);

// A pseudo-association edge between entities of two datasets, carrying the
// affective index it was created at.
struct PacLink {
  ScopedId source;
  ScopedId target;
  Aii aii;
  PacKind kind = PacKind::kOneToOne;

  friend bool operator==(const PacLink&, const PacLink&) = default;
};

struct PoolEntry {
  ScopedId entity;
  EmotionVector vec;
};

// The candidate side of a scan. Entries may come from several datasets (pool
// datasets are routinely concatenated into one testing pool); each entry
// keeps its own origin so links point at the true dataset. Freeze before
// scanning; a frozen pool is immutable and safe to scan concurrently.
class CandidatePool {
 public:
  explicit CandidatePool(std::string label) : label_(std::move(label)) {}

  // Throws DuplicateId on a repeated (dataset, id) pair, InvalidArgument if
  // the vector is not normalized, and Error if the pool is already frozen.
  void add(const ScopedId& entity, const EmotionVector& vec);

  void freeze() { frozen_ = true; }
  bool frozen() const { return frozen_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  std::span<const PoolEntry> entries() const { return entries_; }
  const std::string& label() const { return label_; }

 private:
  std::string label_;
  std::vector<PoolEntry> entries_;
  std::set<ScopedId> seen_;
  bool frozen_ = false;
};

struct ScanHit {
  ScopedId entity;
  Aii aii;

  friend bool operator==(const ScanHit&, const ScanHit&) = default;
};

// Total order on scan results: AII descending, then raw id ascending, then
// dataset name ascending. Shared by every ranked PAC operation.
bool scan_order(const ScanHit& a, const ScanHit& b);

// Cosine of the probe against every pool entry, in scan_order. Exact full
// pass; large pools are chunked across threads and merged deterministically.
// Throws EmptyPool on an empty pool and Error on an unfrozen one.
std::vector<ScanHit> aii_scan(const EmotionVector& probe,
                              const CandidatePool& pool);

// The head of the scan as a one-to-one link.
PacLink pac_top_match(const ScopedId& probe, const EmotionVector& probe_vec,
                      const CandidatePool& pool);

// Every pool member with AII >= tau, as group_member links in scan order.
// tau must lie in (0, 1]; the group may be empty.
std::vector<PacLink> pac_threshold_group(const ScopedId& probe,
                                         const EmotionVector& probe_vec,
                                         const CandidatePool& pool,
                                         double tau);

// One-to-many links from a user to every group profile with AII >= tau,
// sorted by AII descending.
std::vector<PacLink> pac_cross_domain_user_to_groups(
    const UserProfile& user, std::span<const GroupProfile> groups, double tau);
std::vector<PacLink> pac_cross_domain_user_to_groups(
    const ScopedId& user, const EmotionVector& uvec,
    std::span<const GroupProfile> groups, double tau);

// One scan's evidence for the run report: who was probed, against how many
// candidates, and the five best hits.
struct PacScanRecord {
  ScopedId probe;
  std::string pool_label;
  std::size_t pool_size = 0;
  std::vector<ScanHit> top_hits;
};

PacScanRecord record_scan(const ScopedId& probe, const CandidatePool& pool,
                          std::span<const ScanHit> hits);

std::string format_run_report(std::span<const PacScanRecord> records);

}  // namespace aapam
