#include "ucov/corpus.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>
#include <spdlog/spdlog.h>

#include "ucov/errors.hpp"
#include "ucov/parser.hpp"

namespace ucov {

namespace fs = std::filesystem;
using Units = std::vector<std::shared_ptr<const SourceUnit>>;

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  if (n == 0) return;
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t threads =
      std::min<std::size_t>(n, std::max(1u, std::thread::hardware_concurrency()));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

std::vector<fs::path> discover_sources(const std::vector<fs::path>& roots) {
  std::vector<fs::path> out;
  for (const auto& root : roots) {
    std::error_code ec;
    if (!fs::exists(root, ec)) throw Error("no such file or directory: " + root.generic_string());
    if (!fs::is_directory(root, ec)) {
      out.push_back(root);
      continue;
    }
    std::vector<fs::path> found;
    for (const auto& entry : fs::recursive_directory_iterator(root))
      if (entry.is_regular_file() && entry.path().extension() == ".java")
        found.push_back(entry.path());
    std::sort(found.begin(), found.end());
    out.insert(out.end(), found.begin(), found.end());
  }
  return out;
}

LoadedSources load_sources(const std::vector<fs::path>& roots, bool lenient) {
  const auto files = discover_sources(roots);
  std::vector<std::shared_ptr<const SourceUnit>> parsed(files.size());
  std::vector<std::optional<ParseError>> failed(files.size());
  parallel_for(files.size(), [&](std::size_t i) {
    const std::string text = read_file(files[i]);
    try {
      parsed[i] = std::make_shared<const SourceUnit>(parse_unit(text, files[i].generic_string()));
    } catch (const ParseError& e) {
      failed[i] = e;
    }
  });
  LoadedSources out;
  for (std::size_t i = 0; i < files.size(); ++i) {
    if (parsed[i]) {
      out.units.push_back(parsed[i]);
      continue;
    }
    if (!lenient) throw *failed[i];
    spdlog::warn("skipping {}", failed[i]->what());
    out.failures.push_back({failed[i]->location(), DiagnosticKind::ParseFailure, failed[i]->message()});
  }
  return out;
}

namespace {

// Keeps the longest prefix-greedy subset of `units` that `build` accepts.
// The full set is tried first, so the common case costs one build.
template <class Build>
SymbolTable build_lenient(const Units& units, const Build& build, std::vector<Diagnostic>& diags) {
  try {
    return build(units);
  } catch (const DuplicateSymbol&) {
  } catch (const CyclicHierarchy&) {
  }
  Units accepted;
  for (const auto& unit : units) {
    Units trial = accepted;
    trial.push_back(unit);
    try {
      build(trial);
      accepted = std::move(trial);
    } catch (const DuplicateSymbol& e) {
      spdlog::warn("skipping {}: {}", unit->path, e.what());
      diags.push_back({{unit->path, 1, 1}, DiagnosticKind::ParseFailure, e.what()});
    } catch (const CyclicHierarchy& e) {
      spdlog::warn("skipping {}: {}", unit->path, e.what());
      diags.push_back({{unit->path, 1, 1}, DiagnosticKind::ParseFailure, e.what()});
    }
  }
  return build(accepted);
}

Units units_in(const SymbolTable& table, const Units& candidates) {
  std::set<const SourceUnit*> present;
  for (const auto& u : table.units()) present.insert(u.get());
  Units out;
  for (const auto& u : candidates)
    if (present.count(u.get()) != 0) out.push_back(u);
  return out;
}

void normalize(std::vector<Diagnostic>& diags) {
  std::sort(diags.begin(), diags.end());
  diags.erase(std::unique(diags.begin(), diags.end()), diags.end());
}

}  // namespace

Library load_library(const fs::path& root, std::optional<std::string> name, bool lenient) {
  std::error_code ec;
  if (!fs::is_directory(root, ec))
    throw Error("library root is not a directory: " + root.generic_string());
  LoadedSources sources = load_sources({root}, lenient);
  Library lib;
  lib.diagnostics = std::move(sources.failures);
  auto build = [](const Units& units) { return build_symbol_table(units); };
  lib.table = lenient ? build_lenient(sources.units, build, lib.diagnostics) : build(sources.units);
  if (!name) {
    fs::path base = fs::weakly_canonical(fs::absolute(root));
    if (base.filename().empty()) base = base.parent_path();
    name = base.filename().string();
  }
  lib.sum = build_sum(lib.table, *name);
  lib.sum.root = fs::weakly_canonical(fs::absolute(root)).generic_string();
  normalize(lib.diagnostics);
  return lib;
}

Footprint footprint_of_sources(const std::vector<fs::path>& roots, const std::string& label,
                               const UsageModel& sum, const SymbolTable& library_table,
                               bool lenient) {
  LoadedSources sources = load_sources(roots, lenient);
  std::vector<Diagnostic> diags = std::move(sources.failures);
  auto build = [&](const Units& units) { return overlay_symbol_table(library_table, units); };
  const SymbolTable table =
      lenient ? build_lenient(sources.units, build, diags) : build(sources.units);
  const Units units = lenient ? units_in(table, sources.units) : sources.units;

  std::vector<Footprint> parts(units.size());
  parallel_for(units.size(), [&](std::size_t i) {
    parts[i] = extract_bound(bind_unit(*units[i], table), sum, table);
  });

  Footprint out;
  out.label = label;
  out.library = sum.library_name;
  for (auto& part : parts) {
    out.triples.merge(part.triples);
    diags.insert(diags.end(), part.diagnostics.begin(), part.diagnostics.end());
  }
  normalize(diags);
  out.diagnostics = std::move(diags);
  return out;
}

std::map<std::string, Footprint> footprint_of_corpus(const CorpusGroups& groups,
                                                     const UsageModel& sum,
                                                     const SymbolTable& library_table, bool lenient) {
  std::map<std::string, Footprint> out;
  for (const auto& [label, roots] : groups) {
    if (label.empty()) throw Error("footprint labels must not be empty");
    if (out.count(label) != 0) throw Error("duplicate footprint label '" + label + "'");
    out.emplace(label, footprint_of_sources(roots, label, sum, library_table, lenient));
  }
  return out;
}

CorpusConfig read_corpus_config(std::string_view text, const fs::path& base_dir) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(std::string("malformed corpus config: ") + e.what());
  }
  auto bad = [](const std::string& what) { return Error("malformed corpus config: " + what); };
  auto resolve = [&](const std::string& p) {
    fs::path path(p);
    return path.is_absolute() ? path : base_dir / path;
  };
  if (!doc.is_object()) throw bad("expected an object");
  CorpusConfig cfg;
  if (!doc.contains("library_root") || !doc["library_root"].is_string())
    throw bad("\"library_root\" must be a string");
  cfg.library_root = resolve(doc["library_root"].get<std::string>());
  if (doc.contains("library_name")) {
    if (!doc["library_name"].is_string()) throw bad("\"library_name\" must be a string");
    cfg.library_name = doc["library_name"].get<std::string>();
  }
  if (doc.contains("lenient")) {
    if (!doc["lenient"].is_boolean()) throw bad("\"lenient\" must be a boolean");
    cfg.lenient = doc["lenient"].get<bool>();
  }
  if (!doc.contains("groups") || !doc["groups"].is_object())
    throw bad("\"groups\" must be an object");
  for (const auto& [label, paths] : doc["groups"].items()) {
    std::vector<fs::path> roots;
    if (paths.is_string()) {
      roots.push_back(resolve(paths.get<std::string>()));
    } else if (paths.is_array()) {
      for (const auto& p : paths) {
        if (!p.is_string()) throw bad("group '" + label + "' has a non-string path");
        roots.push_back(resolve(p.get<std::string>()));
      }
    } else {
      throw bad("group '" + label + "' must list paths");
    }
    cfg.groups.emplace_back(label, std::move(roots));
  }
  if (cfg.groups.empty()) throw bad("no groups");
  return cfg;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.generic_string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file_atomic(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.generic_string());
    out << content;
    out.close();
    if (!out) throw Error("cannot write " + tmp.generic_string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw Error("cannot write " + path.generic_string() + ": " + ec.message());
  }
}

}  // namespace ucov
