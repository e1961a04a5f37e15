#include "ucov/cli.hpp"

#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include "ucov/corpus.hpp"
#include "ucov/errors.hpp"
#include "ucov/json_io.hpp"
#include "ucov/metrics.hpp"

namespace ucov {

namespace fs = std::filesystem;

namespace {

class UsageError : public Error {
 public:
  using Error::Error;
};

// Routes the default logger to `err` for the duration of one command.
class LogScope {
 public:
  explicit LogScope(std::ostream& err) : previous_(spdlog::default_logger()) {
    auto sink = std::make_shared<spdlog::sinks::ostream_sink_mt>(err, true);
    auto logger = std::make_shared<spdlog::logger>("ucov", sink);
    logger->set_pattern("ucov: %l: %v");
    auto level = spdlog::level::warn;
    std::optional<std::string> bad;
    if (const char* env = std::getenv("UCOV_LOG"); env != nullptr && *env != '\0') {
      const std::string name = env;
      if (name == "error" || name == "warn" || name == "info" || name == "debug")
        level = spdlog::level::from_str(name);
      else
        bad = name;
    }
    logger->set_level(level);
    spdlog::set_default_logger(logger);
    if (bad) spdlog::warn("ignoring unknown UCOV_LOG level '{}'", *bad);
  }
  ~LogScope() {
    spdlog::default_logger()->flush();
    spdlog::set_default_logger(previous_);
  }
  LogScope(const LogScope&) = delete;
  LogScope& operator=(const LogScope&) = delete;

 private:
  std::shared_ptr<spdlog::logger> previous_;
};

struct Options {
  std::string lib;
  std::string output;
  std::string name;
  std::string config;
  std::string sum;
  std::string label;
  std::string lib_root;
  std::string suf;
  std::string format = "json";
  std::string by = "symbol";
  std::vector<std::string> inputs;
  bool lenient = false;
};

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty())
    out << text;
  else
    write_file_atomic(path, text);
}

std::optional<CorpusConfig> config_of(const std::string& path) {
  if (path.empty()) return std::nullopt;
  return read_corpus_config(read_file(path), fs::path(path).parent_path());
}

UsageModel load_sum(const std::string& path) { return read_sum(read_file(path)); }

Footprint load_suf(const std::string& path, const UsageModel& sum) {
  Footprint f = read_suf(read_file(path));
  check_governed(f, sum);
  return f;
}

void summarize(const std::string& what, const std::vector<Diagnostic>& diags, std::ostream& err) {
  if (diags.empty()) return;
  std::map<std::string_view, std::size_t> counts;
  for (const auto& d : diags) {
    ++counts[diagnostic_kind_name(d.kind)];
    spdlog::info("{}: {}: {}", to_string(d.location), diagnostic_kind_name(d.kind), d.message);
  }
  err << what << ": " << diags.size() << " diagnostic" << (diags.size() == 1 ? "" : "s") << " (";
  bool first = true;
  for (const auto& [kind, n] : counts) {
    err << (first ? "" : ", ") << kind << " " << n;
    first = false;
  }
  err << ")\n";
}

Footprint merged_of(const std::vector<Footprint>& footprints) {
  Footprint all = footprints.front();
  all.label = "All";
  for (std::size_t i = 1; i < footprints.size(); ++i) all = merge(all, footprints[i], "All");
  return all;
}

std::vector<CoverageReport> reports_of(const UsageModel& sum, const std::vector<Footprint>& fs) {
  std::vector<CoverageReport> out;
  for (const auto& f : fs) out.push_back(compute_coverage(sum, f));
  return out;
}

ProfileDistribution footprint_profile(const Footprint& f) {
  if (f.triples.empty()) spdlog::warn("footprint '{}' has no uses; all weights are zero", f.label);
  return profile(f);
}

int cmd_sum(const Options& o, std::ostream& out, std::ostream& err) {
  const auto config = config_of(o.config);
  fs::path root = o.lib;
  if (root.empty() && config) root = config->library_root;
  if (root.empty()) throw UsageError("sum: no library root given");
  std::optional<std::string> name;
  if (!o.name.empty())
    name = o.name;
  else if (config)
    name = config->library_name;
  const Library lib = load_library(root, name, o.lenient || (config && config->lenient));
  summarize(lib.sum.library_name, lib.diagnostics, err);
  emit(o.output, write_sum(lib.sum), out);
  out << "symbols: " << lib.sum.entries.size() << ", legal uses: " << lib.sum.legal_use_count()
      << "\n";
  return kExitOk;
}

// Rebuilds the library behind a serialized model. The sources must yield
// exactly the same model.
Library library_for(const UsageModel& sum, const std::string& lib_flag,
                    const std::optional<CorpusConfig>& config, bool lenient) {
  fs::path root = lib_flag;
  if (root.empty() && config) root = config->library_root;
  if (root.empty()) root = sum.root;
  if (root.empty()) throw UsageError("no library sources: pass --lib or --config");
  Library lib = load_library(root, sum.library_name, lenient);
  if (!(lib.sum == sum))
    throw ModelMismatch("model '" + sum.library_name + "' does not match the library sources at " +
                        root.generic_string());
  return lib;
}

int cmd_suf(const Options& o, std::ostream& out, std::ostream& err) {
  const auto config = config_of(o.config);
  const bool lenient = o.lenient || (config && config->lenient);
  const UsageModel sum = load_sum(o.sum);
  std::vector<fs::path> roots(o.inputs.begin(), o.inputs.end());
  if (roots.empty() && config)
    for (const auto& [label, paths] : config->groups)
      if (label == o.label) roots = paths;
  if (roots.empty()) throw UsageError("suf: no client sources for label '" + o.label + "'");
  const Library lib = library_for(sum, o.lib_root, config, lenient);
  const Footprint f = footprint_of_sources(roots, o.label, sum, lib.table, lenient);
  summarize(o.label, f.diagnostics, err);
  emit(o.output, write_suf(f), out);
  out << "unique uses: " << f.unique_uses().size() << ", total uses: " << f.triples.size() << "\n";
  return kExitOk;
}

int cmd_coverage(const Options& o, std::ostream& out) {
  const UsageModel sum = load_sum(o.sum);
  std::vector<Footprint> footprints;
  for (const auto& p : o.inputs) footprints.push_back(load_suf(p, sum));
  const auto reports = reports_of(sum, footprints);
  const auto all = compute_coverage(sum, merged_of(footprints));
  emit(o.output, o.format == "text" ? coverage_table(reports, all) : write_coverage(reports, all), out);
  return kExitOk;
}

int cmd_compare(const Options& o, std::ostream& out) {
  if (o.inputs.size() < 2) throw UsageError("compare: needs at least two footprints");
  const UsageModel sum = load_sum(o.sum);
  std::vector<Footprint> footprints;
  for (const auto& p : o.inputs) footprints.push_back(load_suf(p, sum));
  emit(o.output, write_regions(exclusive_regions(footprints)), out);
  return kExitOk;
}

int cmd_profile(const Options& o, std::ostream& out) {
  const UsageModel sum = load_sum(o.sum);
  const ProfileDistribution d = o.suf.empty() ? profile(sum) : footprint_profile(load_suf(o.suf, sum));
  emit(o.output, write_profile(d), out);
  return kExitOk;
}

int cmd_popularity(const Options& o, std::ostream& out) {
  const UsageModel sum = load_sum(o.sum);
  const Footprint f = load_suf(o.suf, sum);
  const auto key = o.by == "use" ? PopularityKey::SymbolUse : PopularityKey::Symbol;
  emit(o.output, write_popularity(popularity(f, key)), out);
  return kExitOk;
}

bool file_safe(const std::string& label) {
  if (label.empty() || label == "." || label == "..") return false;
  for (char c : label)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.'))
      return false;
  return true;
}

int cmd_run(const Options& o, std::ostream& out, std::ostream& err) {
  const CorpusConfig config = *config_of(o.config);
  for (const auto& [label, _] : config.groups)
    if (!file_safe(label)) throw UsageError("run: label '" + label + "' is not usable as a file name");
  const fs::path dir = o.output;
  const Library lib = load_library(config.library_root, config.library_name, config.lenient);
  summarize(lib.sum.library_name, lib.diagnostics, err);
  write_file_atomic(dir / "sum.json", write_sum(lib.sum));
  write_file_atomic(dir / "profile.json", write_profile(profile(lib.sum)));
  out << "symbols: " << lib.sum.entries.size() << ", legal uses: " << lib.sum.legal_use_count()
      << "\n";

  const auto by_label = footprint_of_corpus(config.groups, lib.sum, lib.table, config.lenient);
  std::vector<Footprint> footprints;
  for (const auto& [label, f] : by_label) {
    summarize(label, f.diagnostics, err);
    write_file_atomic(dir / ("suf-" + label + ".json"), write_suf(f));
    write_file_atomic(dir / ("profile-" + label + ".json"), write_profile(footprint_profile(f)));
    write_file_atomic(dir / ("popularity-" + label + ".json"),
                      write_popularity(popularity(f, PopularityKey::Symbol)));
    out << label << ": unique uses: " << f.unique_uses().size() << ", total uses: " << f.triples.size()
        << "\n";
    footprints.push_back(f);
  }
  const auto reports = reports_of(lib.sum, footprints);
  const auto all = compute_coverage(lib.sum, merged_of(footprints));
  write_file_atomic(dir / "coverage.json", write_coverage(reports, all));
  write_file_atomic(dir / "coverage.txt", coverage_table(reports, all));
  if (footprints.size() >= 2)
    write_file_atomic(dir / "regions.json", write_regions(exclusive_regions(footprints)));
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  LogScope log(err);
  Options o;
  CLI::App app{"API usage coverage analysis", "ucov"};
  app.require_subcommand(1);

  auto* sum = app.add_subcommand("sum", "Build the usage model of a library");
  sum->add_option("lib", o.lib, "Library source root");
  sum->add_option("-o,--output", o.output, "SUM output file")->required();
  sum->add_option("--name", o.name, "Library name (default: root directory name)");
  sum->add_option("--config", o.config, "Corpus config");
  sum->add_flag("--lenient", o.lenient, "Skip files that fail to parse");

  auto* suf = app.add_subcommand("suf", "Extract the usage footprint of client code");
  suf->add_option("--sum", o.sum, "SUM file")->required();
  suf->add_option("--label", o.label, "Footprint label")->required();
  suf->add_option("roots", o.inputs, "Client source roots");
  suf->add_option("-o,--output", o.output, "SUF output file")->required();
  suf->add_option("--lib", o.lib_root, "Library source root (default: recorded in the SUM)");
  suf->add_option("--config", o.config, "Corpus config");
  suf->add_flag("--lenient", o.lenient, "Skip files that fail to parse");

  auto* coverage = app.add_subcommand("coverage", "Coverage of each footprint and of their union");
  coverage->add_option("--sum", o.sum, "SUM file")->required();
  coverage->add_option("sufs", o.inputs, "SUF files")->required();
  coverage->add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  coverage->add_option("-o,--output", o.output, "Output file (default: stdout)");

  auto* compare = app.add_subcommand("compare", "Exclusive intersection regions of footprints");
  compare->add_option("--sum", o.sum, "SUM file")->required();
  compare->add_option("sufs", o.inputs, "SUF files");
  compare->add_option("-o,--output", o.output, "Output file (default: stdout)");

  auto* prof = app.add_subcommand("profile", "Distribution of use kinds");
  prof->add_option("--sum", o.sum, "SUM file")->required();
  prof->add_option("--suf", o.suf, "SUF file (default: legal uses of the SUM)");
  prof->add_option("-o,--output", o.output, "Output file (default: stdout)");

  auto* pop = app.add_subcommand("popularity", "Most used symbols of a footprint");
  pop->add_option("--sum", o.sum, "SUM file")->required();
  pop->add_option("--suf", o.suf, "SUF file")->required();
  pop->add_option("--by", o.by, "symbol or use")->check(CLI::IsMember({"symbol", "use"}));
  pop->add_option("-o,--output", o.output, "Output file (default: stdout)");

  auto* run = app.add_subcommand("run", "Run every analysis of a corpus config");
  run->add_option("--config", o.config, "Corpus config")->required();
  run->add_option("-o,--output", o.output, "Output directory")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (sum->parsed()) return cmd_sum(o, out, err);
    if (suf->parsed()) return cmd_suf(o, out, err);
    if (coverage->parsed()) return cmd_coverage(o, out);
    if (compare->parsed()) return cmd_compare(o, out);
    if (prof->parsed()) return cmd_profile(o, out);
    if (pop->parsed()) return cmd_popularity(o, out);
    if (run->parsed()) return cmd_run(o, out, err);
  } catch (const ParseError& e) {
    err << "ucov: error: " << e.what() << "\n";
    return kExitParse;
  } catch (const Error& e) {
    err << "ucov: error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const fs::filesystem_error& e) {
    err << "ucov: error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "ucov: internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}

}  // namespace ucov
