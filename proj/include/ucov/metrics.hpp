#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ucov/suf.hpp"
#include "ucov/sum.hpp"

namespace ucov {

enum class CoverageLevel { Full, Partial, None };

std::string_view coverage_level_name(CoverageLevel level);

struct CoverageReport {
  std::string label;
  std::set<SymbolKey> covered_symbols;    // C_A
  std::set<UniqueUse> covered_uses;       // C_M
  std::set<SymbolKey> uncovered_symbols;  // A \ C_A
  std::set<UniqueUse> uncovered_uses;     // M \ C_M
  std::map<SymbolKey, CoverageLevel> levels;
  double symbol_coverage = 0.0;
  double use_coverage = 0.0;
  std::size_t api_symbols = 0;
  std::size_t legal_uses = 0;
  std::size_t total_uses = 0;
};

/// Both ratios are 1.0 for an empty API. Throws ModelMismatch if `f` is not
/// governed by `sum`.
CoverageReport compute_coverage(const UsageModel& sum, const Footprint& f);

/// Throws UnknownSymbol if `symbol` is not in the API.
CoverageLevel coverage_level(const SymbolKey& symbol, const UsageModel& sum, const Footprint& f);

enum class PopularityKey { Symbol, SymbolUse };

struct PopularityEntry {
  SymbolKey symbol;
  std::optional<UseKind> use;  // set when keyed by SymbolUse
  std::size_t count = 0;

  friend bool operator==(const PopularityEntry&, const PopularityEntry&) = default;
};

/// Triple counts, highest first; ties in (symbol, use) order.
std::vector<PopularityEntry> popularity(const Footprint& f, PopularityKey by);

enum class ProfileBasis { LegalUses, ActualUniqueUses };

struct ProfileDistribution {
  ProfileBasis basis = ProfileBasis::LegalUses;
  std::map<UseKind, double> weights;  // every kind, zero when absent
  std::size_t total = 0;              // size of the basis set
};

ProfileDistribution profile(const UsageModel& sum);
ProfileDistribution profile(const Footprint& f);

struct Region {
  std::vector<std::string> members;  // in label order
  std::size_t count = 0;

  friend bool operator==(const Region&, const Region&) = default;
};

struct IntersectionRegions {
  std::vector<std::string> labels;
  std::vector<Region> regions;  // all non-empty label subsets, by size then label order
};

/// Partitions the union of unique uses by the exact set of footprints that
/// contain each use. Needs at least two footprints with distinct labels.
IntersectionRegions exclusive_regions(const std::vector<Footprint>& footprints);

}  // namespace ucov
