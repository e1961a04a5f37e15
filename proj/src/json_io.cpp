#include "ucov/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "ucov/errors.hpp"

namespace ucov {

using nlohmann::json;

namespace {

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json signature_json(const SymbolKey& k) { return k.signature ? json(*k.signature) : json(nullptr); }

json use_ref(const SymbolKey& k, UseKind u) {
  return {{"fqn", k.fqn}, {"signature", signature_json(k)}, {"use", use_kind_name(u)}};
}

json parse(std::string_view text, std::string_view what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error("malformed " + std::string(what) + ": " + e.what());
  }
}

template <class T>
T field(const json& j, const char* key, std::string_view what) {
  if (!j.is_object() || !j.contains(key))
    throw Error("malformed " + std::string(what) + ": missing \"" + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw Error("malformed " + std::string(what) + ": bad \"" + key + "\"");
  }
}

std::optional<std::string> signature_field(const json& j, std::string_view what) {
  if (!j.contains("signature") || j.at("signature").is_null()) return std::nullopt;
  return field<std::string>(j, "signature", what);
}

UseKind use_field(const json& j, std::string_view what) {
  auto name = field<std::string>(j, "use", what);
  auto use = use_kind_from_name(name);
  if (!use) throw Error("malformed " + std::string(what) + ": unknown use kind " + name);
  return *use;
}

std::string declaring_of(const SymbolKey& key, SymbolKind kind) {
  if (kind == SymbolKind::Class || kind == SymbolKind::Interface) return "";
  if (kind == SymbolKind::Constructor) return key.fqn;
  auto dot = key.fqn.rfind('.');
  return dot == std::string::npos ? "" : key.fqn.substr(0, dot);
}

json coverage_json(const CoverageReport& r) {
  json levels = json::object();
  for (const auto& [key, level] : r.levels) levels[key.display()] = coverage_level_name(level);
  json uncovered = json::array();
  for (const auto& [key, use] : r.uncovered_uses) {
    json u = use_ref(key, use);
    uncovered.push_back(u);
  }
  std::sort(uncovered.begin(), uncovered.end(), [](const json& a, const json& b) {
    return std::tie(a["fqn"], a["signature"], a["use"]) < std::tie(b["fqn"], b["signature"], b["use"]);
  });
  return {
      {"label", r.label},
      {"symbol_coverage", round4(r.symbol_coverage)},
      {"use_coverage", round4(r.use_coverage)},
      {"totals",
       {{"api_symbols", r.api_symbols},
        {"legal_uses", r.legal_uses},
        {"symbols_used", r.covered_symbols.size()},
        {"unique_uses", r.covered_uses.size()},
        {"total_uses", r.total_uses}}},
      {"levels", levels},
      {"uncovered_uses", uncovered},
  };
}

}  // namespace

double round4(double x) { return std::round(x * 10000.0) / 10000.0; }

std::string write_sum(const UsageModel& sum) {
  json symbols = json::array();
  for (const auto& [key, entry] : sum.entries) {
    std::vector<std::string> uses;
    for (UseKind u : entry.uses) uses.emplace_back(use_kind_name(u));
    std::sort(uses.begin(), uses.end());
    symbols.push_back({{"fqn", key.fqn},
                       {"kind", symbol_kind_name(entry.symbol.kind)},
                       {"signature", signature_json(key)},
                       {"modifiers", entry.symbol.modifiers.names()},
                       {"uses", uses}});
  }
  json doc{{"library", sum.library_name}, {"symbols", symbols}};
  if (!sum.root.empty()) doc["root"] = sum.root;
  return dump(doc);
}

UsageModel read_sum(std::string_view text) {
  constexpr std::string_view what = "SUM";
  const json doc = parse(text, what);
  UsageModel sum;
  sum.library_name = field<std::string>(doc, "library", what);
  if (doc.contains("root")) sum.root = field<std::string>(doc, "root", what);
  for (const auto& s : field<json>(doc, "symbols", what)) {
    Symbol sym;
    sym.key = {field<std::string>(s, "fqn", what), signature_field(s, what)};
    auto kind = symbol_kind_from_name(field<std::string>(s, "kind", what));
    if (!kind) throw Error("malformed SUM: unknown symbol kind");
    sym.kind = *kind;
    sym.declaring = declaring_of(sym.key, sym.kind);
    sym.exported = true;
    for (const auto& m : field<std::vector<std::string>>(s, "modifiers", what)) {
      auto mod = modifier_from_name(m);
      if (!mod) throw Error("malformed SUM: unknown modifier " + m);
      sym.modifiers.add(*mod);
    }
    SumEntry entry{sym, {}};
    for (const auto& u : field<std::vector<std::string>>(s, "uses", what)) {
      auto use = use_kind_from_name(u);
      if (!use) throw Error("malformed SUM: unknown use kind " + u);
      entry.uses.insert(*use);
    }
    if (!sum.entries.emplace(sym.key, std::move(entry)).second)
      throw Error("malformed SUM: duplicate symbol " + sym.key.display());
  }
  return sum;
}

std::string write_suf(const Footprint& f) {
  std::vector<const UseTriple*> order;
  for (const auto& t : f.triples) order.push_back(&t);
  std::sort(order.begin(), order.end(), [](const UseTriple* a, const UseTriple* b) {
    return std::make_tuple(std::cref(a->symbol), use_kind_name(a->use), std::cref(a->location)) <
           std::make_tuple(std::cref(b->symbol), use_kind_name(b->use), std::cref(b->location));
  });
  json uses = json::array();
  for (const UseTriple* t : order) {
    json u = use_ref(t->symbol, t->use);
    u["file"] = t->location.file;
    u["line"] = t->location.line;
    u["col"] = t->location.column;
    uses.push_back(std::move(u));
  }
  json diagnostics = json::array();
  for (const auto& d : f.diagnostics)
    diagnostics.push_back({{"kind", diagnostic_kind_name(d.kind)},
                           {"file", d.location.file},
                           {"line", d.location.line},
                           {"col", d.location.column},
                           {"message", d.message}});
  return dump({{"label", f.label}, {"library", f.library}, {"uses", uses}, {"diagnostics", diagnostics}});
}

Footprint read_suf(std::string_view text) {
  constexpr std::string_view what = "SUF";
  const json doc = parse(text, what);
  Footprint f;
  f.label = field<std::string>(doc, "label", what);
  f.library = field<std::string>(doc, "library", what);
  for (const auto& u : field<json>(doc, "uses", what)) {
    Location loc{field<std::string>(u, "file", what), field<int>(u, "line", what),
                 field<int>(u, "col", what)};
    f.triples.insert({{field<std::string>(u, "fqn", what), signature_field(u, what)},
                      use_field(u, what),
                      loc});
  }
  if (doc.contains("diagnostics")) {
    for (const auto& d : field<json>(doc, "diagnostics", what)) {
      auto kind = diagnostic_kind_from_name(field<std::string>(d, "kind", what));
      if (!kind) throw Error("malformed SUF: unknown diagnostic kind");
      f.diagnostics.push_back({{field<std::string>(d, "file", what), field<int>(d, "line", what),
                                field<int>(d, "col", what)},
                               *kind,
                               field<std::string>(d, "message", what)});
    }
  }
  return f;
}

std::string write_coverage(const std::vector<CoverageReport>& per_footprint,
                           const CoverageReport& merged) {
  json reports = json::array();
  for (const auto& r : per_footprint) reports.push_back(coverage_json(r));
  return dump({{"footprints", reports}, {"all", coverage_json(merged)}});
}

std::string coverage_table(const std::vector<CoverageReport>& per_footprint,
                           const CoverageReport& merged) {
  std::vector<const CoverageReport*> cols;
  for (const auto& r : per_footprint) cols.push_back(&r);
  cols.push_back(&merged);

  std::vector<std::string> headers;
  for (const auto& r : per_footprint) headers.push_back(r.label);
  headers.emplace_back("All");

  auto fixed4 = [](double v) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(4) << round4(v);
    return s.str();
  };
  const std::vector<std::pair<std::string, std::function<std::string(const CoverageReport&)>>> rows{
      {"API symbols", [](const CoverageReport& r) { return std::to_string(r.api_symbols); }},
      {"Legal uses", [](const CoverageReport& r) { return std::to_string(r.legal_uses); }},
      {"Symbols used", [](const CoverageReport& r) { return std::to_string(r.covered_symbols.size()); }},
      {"Unique uses", [](const CoverageReport& r) { return std::to_string(r.covered_uses.size()); }},
      {"Total uses", [](const CoverageReport& r) { return std::to_string(r.total_uses); }},
      {"Symbol coverage", [&](const CoverageReport& r) { return fixed4(r.symbol_coverage); }},
      {"Use coverage", [&](const CoverageReport& r) { return fixed4(r.use_coverage); }},
  };

  std::size_t label_width = 0;
  for (const auto& [name, _] : rows) label_width = std::max(label_width, name.size());
  std::vector<std::size_t> widths;
  for (std::size_t c = 0; c < cols.size(); ++c) {
    std::size_t w = headers[c].size();
    for (const auto& [_, get] : rows) w = std::max(w, get(*cols[c]).size());
    widths.push_back(w);
  }

  std::ostringstream out;
  out << std::left << std::setw(static_cast<int>(label_width)) << "";
  for (std::size_t c = 0; c < cols.size(); ++c)
    out << "  " << std::right << std::setw(static_cast<int>(widths[c])) << headers[c];
  out << "\n";
  for (const auto& [name, get] : rows) {
    out << std::left << std::setw(static_cast<int>(label_width)) << name;
    for (std::size_t c = 0; c < cols.size(); ++c)
      out << "  " << std::right << std::setw(static_cast<int>(widths[c])) << get(*cols[c]);
    out << "\n";
  }
  return out.str();
}

std::string write_regions(const IntersectionRegions& regions) {
  json rs = json::array();
  for (const auto& r : regions.regions) rs.push_back({{"members", r.members}, {"count", r.count}});
  return dump({{"labels", regions.labels}, {"regions", rs}});
}

std::string write_profile(const ProfileDistribution& profile) {
  json weights = json::object();
  for (const auto& [kind, w] : profile.weights) weights[std::string(use_kind_name(kind))] = w;
  return dump({{"basis", profile.basis == ProfileBasis::LegalUses ? "LegalUses" : "ActualUniqueUses"},
               {"total", profile.total},
               {"weights", weights}});
}

std::string write_popularity(const std::vector<PopularityEntry>& entries) {
  json out = json::array();
  for (const auto& e : entries) {
    json j{{"fqn", e.symbol.fqn}, {"signature", signature_json(e.symbol)}, {"count", e.count}};
    if (e.use) j["use"] = use_kind_name(*e.use);
    out.push_back(std::move(j));
  }
  return dump({{"entries", out}});
}

}  // namespace ucov
