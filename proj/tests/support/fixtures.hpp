#pragma once

#include <filesystem>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "ucov/ast.hpp"
#include "ucov/suf.hpp"
#include "ucov/sum.hpp"
#include "ucov/symbol_table.hpp"

namespace ucov::testing {

std::filesystem::path fixture(const std::string& relative);

using Units = std::vector<std::shared_ptr<const SourceUnit>>;

std::shared_ptr<const SourceUnit> unit(const std::string& text, const std::string& path = "T.java");
/// Every `.java` file under the fixture directory, strictly parsed.
Units units_in(const std::string& relative);

struct Lib {
  SymbolTable table;
  UsageModel sum;
  Units units;
};

Lib library(const Units& units, const std::string& name = "lib");
Lib library_at(const std::string& relative);

Footprint footprint(const Lib& lib, const Units& clients, const std::string& label = "f");
Footprint footprint(const Lib& lib, const std::string& client_text, const std::string& label = "f");

/// The triples with each location's file reduced to its base name.
std::set<UseTriple> with_basenames(const std::set<UseTriple>& triples);

/// Fresh empty directory under the system temp dir.
std::filesystem::path temp_dir(const std::string& name);

}  // namespace ucov::testing
