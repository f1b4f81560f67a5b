#include "aapam/pac.hpp"

#include <algorithm>
#include <cstdio>
#include <future>
#include <set>
#include <sstream>
#include <thread>

#include "aapam/errors.hpp"

namespace aapam {
namespace {

// Pools below this size are scanned on the calling thread.
constexpr std::size_t kParallelScanThreshold = 4096;

void check_tau(double tau) {
  if (!(tau > 0.0) || tau > 1.0) {
    std::ostringstream msg;
    msg << "tau " << tau << " outside (0, 1]";
    throw InvalidTau(msg.str());
  }
}

}  // namespace

std::string_view to_string(PacKind kind) {
  switch (kind) {
    case PacKind::kOneToOne:    return "one_to_one";
    case PacKind::kGroupMember: return "group_member";
    case PacKind::kOneToMany:   return "one_to_many";
  }
  return "invalid";
}

std::optional<PacKind> parse_pac_kind(std::string_view text) {
  if (text == "one_to_one") return PacKind::kOneToOne;
  if (text == "group_member") return PacKind::kGroupMember;
  if (text == "one_to_many") return PacKind::kOneToMany;
  return std::nullopt;
}

void CandidatePool::add(const ScopedId& entity, const EmotionVector& vec) {
  if (frozen_) {
    throw Error("pool '" + label_ + "' is frozen");
  }
  if (!is_normalized(vec)) {
    throw InvalidArgument("pool entry " + entity.str() +
                          " is not a normalized emotion vector");
  }
  if (!seen_.insert(entity).second) {
    throw DuplicateId("pool entry " + entity.str() + " added twice");
  }
  entries_.push_back(PoolEntry{entity, vec});
}

bool scan_order(const ScanHit& a, const ScanHit& b) {
  if (a.aii.value() != b.aii.value()) return a.aii.value() > b.aii.value();
  if (a.entity.raw != b.entity.raw) return a.entity.raw < b.entity.raw;
  return a.entity.dataset < b.entity.dataset;
}

std::vector<ScanHit> aii_scan(const EmotionVector& probe,
                              const CandidatePool& pool) {
  if (!pool.frozen()) {
    throw Error("pool '" + pool.label() + "' must be frozen before scanning");
  }
  if (pool.empty()) {
    throw EmptyPool("pool '" + pool.label() + "' is empty");
  }
  const auto entries = pool.entries();
  std::vector<ScanHit> hits(entries.size());

  auto scan_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      hits[i] = ScanHit{entries[i].entity,
                        cosine_similarity(probe, entries[i].vec)};
    }
  };

  if (entries.size() < kParallelScanThreshold) {
    scan_range(0, entries.size());
  } else {
    const std::size_t workers =
        std::max<std::size_t>(1, std::min<std::size_t>(
                                     8, std::thread::hardware_concurrency()));
    const std::size_t chunk = (entries.size() + workers - 1) / workers;
    std::vector<std::future<void>> tasks;
    for (std::size_t begin = 0; begin < entries.size(); begin += chunk) {
      const std::size_t end = std::min(begin + chunk, entries.size());
      tasks.push_back(std::async(std::launch::async, scan_range, begin, end));
    }
    for (auto& task : tasks) task.get();
  }

  // Per-pair results do not depend on chunking; the sort fixes one total
  // order no matter how the work was split.
  std::sort(hits.begin(), hits.end(), scan_order);
  return hits;
}

PacLink pac_top_match(const ScopedId& probe, const EmotionVector& probe_vec,
                      const CandidatePool& pool) {
  const std::vector<ScanHit> hits = aii_scan(probe_vec, pool);
  return PacLink{probe, hits.front().entity, hits.front().aii,
                 PacKind::kOneToOne};
}

std::vector<PacLink> pac_threshold_group(const ScopedId& probe,
                                         const EmotionVector& probe_vec,
                                         const CandidatePool& pool,
                                         double tau) {
  check_tau(tau);
  const std::vector<ScanHit> hits = aii_scan(probe_vec, pool);
  std::vector<PacLink> group;
  for (const ScanHit& hit : hits) {
    if (hit.aii.value() >= tau) {
      group.push_back(PacLink{probe, hit.entity, hit.aii,
                              PacKind::kGroupMember});
    } else {
      break;  // hits are sorted descending
    }
  }
  return group;
}

std::vector<PacLink> pac_cross_domain_user_to_groups(
    const ScopedId& user, const EmotionVector& uvec,
    std::span<const GroupProfile> groups, double tau) {
  check_tau(tau);
  if (groups.empty()) {
    throw EmptyPool("no group profiles to match against");
  }
  std::vector<ScanHit> hits;
  for (const GroupProfile& group : groups) {
    const Aii aii = cosine_similarity(uvec, group.group_uvec);
    if (aii.value() >= tau) {
      hits.push_back(ScanHit{group.item, aii});
    }
  }
  std::sort(hits.begin(), hits.end(), scan_order);
  std::vector<PacLink> links;
  links.reserve(hits.size());
  for (const ScanHit& hit : hits) {
    links.push_back(PacLink{user, hit.entity, hit.aii, PacKind::kOneToMany});
  }
  return links;
}

std::vector<PacLink> pac_cross_domain_user_to_groups(
    const UserProfile& user, std::span<const GroupProfile> groups, double tau) {
  return pac_cross_domain_user_to_groups(user.user, user.uvec, groups, tau);
}

PacScanRecord record_scan(const ScopedId& probe, const CandidatePool& pool,
                          std::span<const ScanHit> hits) {
  PacScanRecord record;
  record.probe = probe;
  record.pool_label = pool.label();
  record.pool_size = pool.size();
  const std::size_t keep = std::min<std::size_t>(5, hits.size());
  record.top_hits.assign(hits.begin(), hits.begin() + keep);
  return record;
}

std::string format_run_report(std::span<const PacScanRecord> records) {
  std::ostringstream out;
  for (const PacScanRecord& record : records) {
    out << "probe " << record.probe.str() << " vs pool '" << record.pool_label
        << "' (" << record.pool_size << " candidates)\n";
    for (std::size_t i = 0; i < record.top_hits.size(); ++i) {
      char aii[32];
      std::snprintf(aii, sizeof(aii), "%.6f", record.top_hits[i].aii.value());
      out << "  " << (i + 1) << ". " << record.top_hits[i].entity.str()
          << "  aii " << aii << "\n";
    }
  }
  return out.str();
}

}  // namespace aapam
