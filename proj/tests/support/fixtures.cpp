#include "support/fixtures.hpp"

#include <unistd.h>

#include "ucov/corpus.hpp"
#include "ucov/parser.hpp"

namespace ucov::testing {

namespace fs = std::filesystem;

fs::path fixture(const std::string& relative) { return fs::path(UCOV_FIXTURES) / relative; }

std::shared_ptr<const SourceUnit> unit(const std::string& text, const std::string& path) {
  return std::make_shared<const SourceUnit>(parse_unit(text, path));
}

Units units_in(const std::string& relative) { return load_sources({fixture(relative)}, false).units; }

Lib library(const Units& units, const std::string& name) {
  Lib lib{build_symbol_table(units), {}, units};
  lib.sum = build_sum(lib.table, name);
  return lib;
}

Lib library_at(const std::string& relative) {
  return library(units_in(relative), fs::path(relative).filename().string());
}

Footprint footprint(const Lib& lib, const Units& clients, const std::string& label) {
  return extract_uses(clients, lib.sum, lib.table, label);
}

Footprint footprint(const Lib& lib, const std::string& client_text, const std::string& label) {
  return footprint(lib, Units{unit(client_text, "Client.java")}, label);
}

std::set<UseTriple> with_basenames(const std::set<UseTriple>& triples) {
  std::set<UseTriple> out;
  for (UseTriple t : triples) {
    t.location.file = fs::path(t.location.file).filename().string();
    out.insert(std::move(t));
  }
  return out;
}

fs::path temp_dir(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / ("ucov-test-" + std::to_string(::getpid()) + "-" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace ucov::testing
