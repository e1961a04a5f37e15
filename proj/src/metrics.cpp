#include "ucov/metrics.hpp"

#include <algorithm>

#include <spdlog/spdlog.h>

#include "ucov/errors.hpp"

namespace ucov {

std::string_view coverage_level_name(CoverageLevel level) {
  switch (level) {
    case CoverageLevel::Full: return "Full";
    case CoverageLevel::Partial: return "Partial";
    case CoverageLevel::None: return "None";
  }
  return "None";
}

namespace {

CoverageLevel level_of(const SumEntry& entry, const std::set<UniqueUse>& covered) {
  std::size_t hit = 0;
  for (UseKind u : entry.uses) hit += covered.count({entry.symbol.key, u});
  if (hit == 0) return CoverageLevel::None;
  return hit == entry.uses.size() ? CoverageLevel::Full : CoverageLevel::Partial;
}

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 1.0 : static_cast<double>(num) / static_cast<double>(den);
}

ProfileDistribution distribution(ProfileBasis basis, const std::map<UseKind, std::size_t>& counts,
                                 std::size_t total) {
  ProfileDistribution d;
  d.basis = basis;
  d.total = total;
  for (UseKind k : kAllUseKinds) {
    auto it = counts.find(k);
    const std::size_t n = it == counts.end() ? 0 : it->second;
    d.weights[k] = total == 0 ? 0.0 : static_cast<double>(n) / static_cast<double>(total);
  }
  return d;
}

}  // namespace

CoverageReport compute_coverage(const UsageModel& sum, const Footprint& f) {
  check_governed(f, sum);
  CoverageReport r;
  r.label = f.label;
  r.covered_uses = f.unique_uses();
  for (const auto& [key, _] : r.covered_uses) r.covered_symbols.insert(key);
  for (const auto& [key, entry] : sum.entries) {
    if (r.covered_symbols.count(key) == 0) r.uncovered_symbols.insert(key);
    for (UseKind u : entry.uses)
      if (r.covered_uses.count({key, u}) == 0) r.uncovered_uses.insert({key, u});
    r.levels[key] = level_of(entry, r.covered_uses);
  }
  r.api_symbols = sum.entries.size();
  r.legal_uses = sum.legal_use_count();
  r.total_uses = f.triples.size();
  if (r.api_symbols == 0)
    spdlog::warn("library '{}' exports no symbols; coverage of '{}' is trivially 1.0",
                 sum.library_name, f.label);
  r.symbol_coverage = ratio(r.covered_symbols.size(), r.api_symbols);
  r.use_coverage = ratio(r.covered_uses.size(), r.legal_uses);
  return r;
}

CoverageLevel coverage_level(const SymbolKey& symbol, const UsageModel& sum, const Footprint& f) {
  const SumEntry* entry = sum.find(symbol);
  if (entry == nullptr) throw UnknownSymbol(symbol.display() + " is not an API symbol");
  return level_of(*entry, f.unique_uses());
}

std::vector<PopularityEntry> popularity(const Footprint& f, PopularityKey by) {
  std::map<std::pair<SymbolKey, std::optional<UseKind>>, std::size_t> counts;
  for (const auto& t : f.triples) {
    std::optional<UseKind> use;
    if (by == PopularityKey::SymbolUse) use = t.use;
    ++counts[{t.symbol, use}];
  }
  std::vector<PopularityEntry> out;
  for (const auto& [key, n] : counts) out.push_back({key.first, key.second, n});
  std::stable_sort(out.begin(), out.end(),
                   [](const PopularityEntry& a, const PopularityEntry& b) { return a.count > b.count; });
  return out;
}

ProfileDistribution profile(const UsageModel& sum) {
  std::map<UseKind, std::size_t> counts;
  for (const auto& [_, entry] : sum.entries)
    for (UseKind u : entry.uses) ++counts[u];
  return distribution(ProfileBasis::LegalUses, counts, sum.legal_use_count());
}

ProfileDistribution profile(const Footprint& f) {
  std::map<UseKind, std::size_t> counts;
  const auto unique = f.unique_uses();
  for (const auto& [_, u] : unique) ++counts[u];
  return distribution(ProfileBasis::ActualUniqueUses, counts, unique.size());
}

IntersectionRegions exclusive_regions(const std::vector<Footprint>& footprints) {
  if (footprints.size() < 2) throw Error("intersection regions need at least two footprints");
  if (footprints.size() > 16) throw Error("intersection regions support at most 16 footprints");
  IntersectionRegions out;
  for (const auto& f : footprints) {
    if (f.library != footprints.front().library)
      throw ModelMismatch("footprints '" + footprints.front().label + "' and '" + f.label +
                          "' belong to different libraries");
    if (std::find(out.labels.begin(), out.labels.end(), f.label) != out.labels.end())
      throw Error("duplicate footprint label '" + f.label + "'");
    out.labels.push_back(f.label);
  }

  std::map<UniqueUse, unsigned> membership;
  for (std::size_t i = 0; i < footprints.size(); ++i)
    for (const auto& u : footprints[i].unique_uses()) membership[u] |= 1u << i;
  std::map<unsigned, std::size_t> counts;
  for (const auto& [_, mask] : membership) ++counts[mask];

  const unsigned n = static_cast<unsigned>(footprints.size());
  std::vector<unsigned> masks;
  for (unsigned mask = 1; mask < (1u << n); ++mask) masks.push_back(mask);
  // Same-size subsets compare by their ascending member indices.
  auto indices = [n](unsigned mask) {
    std::vector<unsigned> v;
    for (unsigned i = 0; i < n; ++i)
      if (mask & (1u << i)) v.push_back(i);
    return v;
  };
  std::sort(masks.begin(), masks.end(), [&](unsigned a, unsigned b) {
    auto ia = indices(a), ib = indices(b);
    if (ia.size() != ib.size()) return ia.size() < ib.size();
    return ia < ib;
  });
  for (unsigned mask : masks) {
    Region r;
    for (unsigned i : indices(mask)) r.members.push_back(out.labels[i]);
    auto it = counts.find(mask);
    r.count = it == counts.end() ? 0 : it->second;
    out.regions.push_back(std::move(r));
  }
  return out;
}

}  // namespace ucov
