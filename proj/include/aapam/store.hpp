#pragma once

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "aapam/emotion.hpp"
#include "aapam/ingestion.hpp"
#include "aapam/pac.hpp"

namespace aapam {

// Profile file column order; identical to the canonical label order.
inline constexpr const char* kProfileHeader =
    "id,neutral,happiness,sadness,hate,anger,disgust,surprise";

inline constexpr const char* kLinkHeader =
    "source_dataset,source_id,target_dataset,target_id,aii,kind";

inline constexpr const char* kIdMapHeader = "numeric_id,raw_id";

// Writes one row per entity, sorted by id, components with 10 significant
// digits. Identical data always produces identical bytes.
void save_profiles(const std::map<std::string, EmotionVector>& profiles,
                   const std::filesystem::path& path);

// Loads rows verbatim (no renormalization; see classifier::load_precomputed
// for the tolerant loader). Throws ParseError with the offending row number,
// DuplicateId on a repeated id, IoError when the file cannot be read.
std::map<std::string, EmotionVector> load_profiles(
    const std::filesystem::path& path);

// Link rows in the given order, AII printed to 6 decimal places.
void save_links(std::span<const PacLink> links,
                const std::filesystem::path& path);

std::vector<PacLink> load_links(const std::filesystem::path& path);

// Pairs sorted by numeric id.
void save_id_map(const IdMap& map, const std::filesystem::path& path);

IdMap load_id_map(const std::filesystem::path& path);

// Formats a double with 10 significant digits (profile file precision).
std::string format_component(double value);

}  // namespace aapam
