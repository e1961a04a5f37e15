#pragma once

// Deterministic JSON encodings of models, footprints and reports. Object
// keys are sorted, arrays are in the documented orders, and every document
// ends with a newline.

#include <string>
#include <string_view>
#include <vector>

#include "ucov/metrics.hpp"
#include "ucov/suf.hpp"
#include "ucov/sum.hpp"

namespace ucov {

std::string write_sum(const UsageModel& sum);
/// Throws Error on malformed documents.
UsageModel read_sum(std::string_view text);

std::string write_suf(const Footprint& f);
Footprint read_suf(std::string_view text);

/// Ratios rounded to four decimals.
double round4(double x);

/// One report per footprint plus the report of their union.
std::string write_coverage(const std::vector<CoverageReport>& per_footprint,
                           const CoverageReport& merged);
/// Fixed-width table with one column per footprint and one for the union.
std::string coverage_table(const std::vector<CoverageReport>& per_footprint,
                           const CoverageReport& merged);

std::string write_regions(const IntersectionRegions& regions);
std::string write_profile(const ProfileDistribution& profile);
std::string write_popularity(const std::vector<PopularityEntry>& entries);

}  // namespace ucov
