#pragma once

#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ucov/binder.hpp"
#include "ucov/sum.hpp"
#include "ucov/symbol_table.hpp"

namespace ucov {

struct UseTriple {
  SymbolKey symbol;
  UseKind use = UseKind::TypeReference;
  Location location;

  friend auto operator<=>(const UseTriple&, const UseTriple&) = default;
  friend bool operator==(const UseTriple&, const UseTriple&) = default;
};

using UniqueUse = std::pair<SymbolKey, UseKind>;

struct Footprint {
  std::string label;
  std::string library;
  std::set<UseTriple> triples;
  std::vector<Diagnostic> diagnostics;

  [[nodiscard]] std::set<UniqueUse> unique_uses() const;

  friend bool operator==(const Footprint&, const Footprint&) = default;
};

/// True if `derived` (declared in a subtype) overrides `base`: same name and
/// arity, and each parameter type equal or matched by a type variable of
/// `base`. Private, package-private and static bases are never overridden.
bool overrides(const MemberInfo& derived, const MemberInfo& base);

/// Triples of one bound client unit. `table` is the library table with the
/// client declarations overlaid.
Footprint extract_bound(const BoundUnit& bound, const UsageModel& sum, const SymbolTable& table);

/// Overlays `client_units` on `library_table`, then binds and extracts every
/// unit. Diagnostics are sorted and deduplicated.
Footprint extract_uses(const std::vector<std::shared_ptr<const SourceUnit>>& client_units,
                       const UsageModel& sum, const SymbolTable& library_table,
                       std::string label = {});

/// Set union; label defaults to `a.label+b.label`. Throws ModelMismatch.
Footprint merge(const Footprint& a, const Footprint& b);
Footprint merge(const Footprint& a, const Footprint& b, std::string label);

/// Triples of `a` whose (symbol, use) does not occur in `b`. Throws
/// ModelMismatch.
Footprint diff(const Footprint& a, const Footprint& b);

/// Throws ModelMismatch unless every triple is legal in `sum`.
void check_governed(const Footprint& f, const UsageModel& sum);

}  // namespace ucov
