#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ucov/binder.hpp"
#include "ucov/suf.hpp"
#include "ucov/sum.hpp"
#include "ucov/symbol_table.hpp"

namespace ucov {

/// Runs fn(0..n-1) on a small thread pool. Results must be written to
/// per-index slots; the first exception (by index) is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

/// `*.java` files under each root (a root may itself be a file), each root
/// sorted by path. Throws Error if a root does not exist.
std::vector<std::filesystem::path> discover_sources(const std::vector<std::filesystem::path>& roots);

struct LoadedSources {
  std::vector<std::shared_ptr<const SourceUnit>> units;  // discovery order
  std::vector<Diagnostic> failures;                      // lenient mode only
};

/// Parses every discovered file. Strict mode rethrows the first ParseError
/// in discovery order; lenient mode skips the file with a ParseFailure
/// diagnostic.
LoadedSources load_sources(const std::vector<std::filesystem::path>& roots, bool lenient);

struct Library {
  SymbolTable table;
  UsageModel sum;
  std::vector<Diagnostic> diagnostics;
};

/// Builds the table and SUM of the library under `root`. The name defaults
/// to the root directory's base name.
Library load_library(const std::filesystem::path& root, std::optional<std::string> name,
                     bool lenient);

/// Footprint of client sources against a library. In lenient mode files
/// that fail to parse, or whose declarations collide with already loaded
/// ones, are skipped with a diagnostic.
Footprint footprint_of_sources(const std::vector<std::filesystem::path>& roots,
                               const std::string& label, const UsageModel& sum,
                               const SymbolTable& library_table, bool lenient);

using CorpusGroups = std::vector<std::pair<std::string, std::vector<std::filesystem::path>>>;

/// One footprint per label, in label order. Throws Error on empty or
/// duplicate labels.
std::map<std::string, Footprint> footprint_of_corpus(const CorpusGroups& groups,
                                                     const UsageModel& sum,
                                                     const SymbolTable& library_table, bool lenient);

struct CorpusConfig {
  std::filesystem::path library_root;
  std::optional<std::string> library_name;
  CorpusGroups groups;  // conventional labels: clients, tests, samples
  bool lenient = false;
};

/// Reads `{"library_root", "library_name"?, "groups": {label: [paths]},
/// "lenient"?}`. Relative paths are resolved against `base_dir`.
CorpusConfig read_corpus_config(std::string_view text, const std::filesystem::path& base_dir);

std::string read_file(const std::filesystem::path& path);
/// Writes via a temporary file in the same directory, then renames.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace ucov
