#include "support/pipeline.hpp"

#include <map>
#include <sstream>

#include "support/fixtures.hpp"
#include "ucov/cli.hpp"
#include "ucov/corpus.hpp"

namespace ucov::testing {

namespace fs = std::filesystem;

CliResult cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> run_every_command(const fs::path& dir) {
  const fs::path corpus = fixture("corpora/cli");
  const std::string sum = (dir / "sum.json").string();
  auto at = [&](const std::string& name) { return (dir / name).string(); };
  std::vector<std::vector<std::string>> commands{
      {"sum", (corpus / "lib").string(), "--name", "cli", "-o", sum},
  };
  for (const char* label : {"clients", "tests", "samples"})
    commands.push_back({"suf", "--sum", sum, "--label", label, (corpus / label).string(), "-o",
                        at(std::string("suf-") + label + ".json")});
  const std::vector<std::string> sufs{at("suf-clients.json"), at("suf-tests.json"), at("suf-samples.json")};
  auto with_sufs = [&](std::vector<std::string> head) {
    head.insert(head.end(), sufs.begin(), sufs.end());
    return head;
  };
  commands.push_back(with_sufs({"coverage", "--sum", sum, "-o", at("coverage.json")}));
  commands.push_back(with_sufs({"coverage", "--sum", sum, "--format", "text", "-o", at("coverage.txt")}));
  commands.push_back(with_sufs({"coverage", "--sum", sum}));
  commands.push_back(with_sufs({"compare", "--sum", sum, "-o", at("regions.json")}));
  commands.push_back({"profile", "--sum", sum, "-o", at("profile.json")});
  commands.push_back({"profile", "--sum", sum, "--suf", sufs[0], "-o", at("profile-clients.json")});
  commands.push_back({"popularity", "--sum", sum, "--suf", sufs[0], "--by", "symbol", "-o", at("pop-symbol.json")});
  commands.push_back({"popularity", "--sum", sum, "--suf", sufs[1], "--by", "use", "-o", at("pop-use.json")});
  commands.push_back({"run", "--config", (corpus / "corpus.json").string(), "-o", at("run")});
  commands.push_back({"suf", "--sum", sum, "--label", "clients", "--config", (corpus / "corpus.json").string(), "-o",
                      at("suf-from-config.json")});

  std::vector<std::string> failed;
  std::string transcript;
  for (const auto& args : commands) {
    const CliResult r = cli(args);
    transcript += args[0] + " -> " + std::to_string(r.code) + "\n" + r.out + r.err;
    if (r.code != 0) failed.push_back(args[0] + ": " + r.err);
  }
  write_file_atomic(dir / "transcript.txt", transcript);
  return failed;
}

namespace {

std::map<std::string, std::string> tree(const fs::path& root) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(root))
    if (e.is_regular_file()) out[fs::relative(e.path(), root).generic_string()] = read_file(e.path());
  return out;
}

}  // namespace

std::vector<std::string> differing_files(const fs::path& a, const fs::path& b) {
  const auto ta = tree(a), tb = tree(b);
  std::vector<std::string> out;
  for (const auto& [name, content] : ta) {
    auto it = tb.find(name);
    if (it == tb.end() || it->second != content) out.push_back(name);
  }
  for (const auto& [name, _] : tb)
    if (ta.count(name) == 0) out.push_back(name);
  return out;
}

}  // namespace ucov::testing
