// geolrc: build, analyze and repair codes from curves and surfaces.
//
// Exit status: 0 success, 1 validation error, 2 construction or locality
// failure, 3 reproduction mismatch.

#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "geolrc/codeio.hpp"
#include "geolrc/config.hpp"
#include "geolrc/reproduce.hpp"

namespace {

using namespace geolrc;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitConstruction = 2;

Config load_config_or_builtin(const std::string& what) {
  if (std::filesystem::exists(what)) return load_config(what);
  if (auto text = builtin_config_text(what)) return parse_config(*text, what);
  throw ConfigError("no config file or built-in example named '" + what + "'");
}

void print_report(const ConstructionReport& rep, bool json) {
  if (json)
    std::cout << rep.to_json() << "\n";
  else
    std::cout << rep.to_text();
}

struct PolicyFlags {
  std::optional<std::uint64_t> exact_budget;
  std::optional<int> low_weight;

  void add(CLI::App* cmd) {
    cmd->add_option("--exact-budget", exact_budget, "largest q^k swept exhaustively");
    cmd->add_option("--low-weight", low_weight, "w_max for the parity-check search (0 disables)")
        ->check(CLI::NonNegativeNumber);
  }
  // An explicit budget on its own turns the low-weight search off.
  void apply(DistancePolicy& p) const {
    if (exact_budget) p.exact_budget = *exact_budget;
    if (low_weight) p.low_weight = *low_weight;
    else if (exact_budget) p.low_weight = 0;
  }
};

int cmd_build(const std::string& source, const std::string& out, bool force, bool json, const PolicyFlags& flags) {
  Config cfg = load_config_or_builtin(source);
  flags.apply(cfg.policy);
  const LinearCode code = build_from_config(cfg, force);
  if (!out.empty()) save_code(out, code);
  const ConstructionReport rep = make_report(code, cfg.policy);
  print_report(rep, json);
  return rep.locality_pass && rep.distance_used() >= 1 ? kExitOk : kExitConstruction;
}

int cmd_analyze(const std::string& path, bool json, const PolicyFlags& flags) {
  const LinearCode code = load_code(path);
  DistancePolicy policy;
  flags.apply(policy);
  const ConstructionReport rep = make_report(code, policy);
  print_report(rep, json);
  return rep.locality_pass ? kExitOk : kExitConstruction;
}

Word parse_word(const Field& f, const std::vector<std::string>& args, std::size_t n) {
  Word word;
  for (const auto& arg : args) {
    std::string text = arg;
    for (char& ch : text)
      if (ch == ',') ch = ' ';
    std::istringstream in(text);
    for (std::string tok; in >> tok;) {
      if (tok == "?")
        word.push_back(std::nullopt);
      else
        word.push_back(f.parse_literal(tok));
    }
  }
  if (word.size() != n)
    throw ConfigError("word has " + std::to_string(word.size()) + " symbols, the code has n = " + std::to_string(n));
  return word;
}

int cmd_recover(const std::string& path, const std::vector<std::string>& symbols, int partition) {
  const LinearCode code = load_code(path);
  if (partition < 1 || static_cast<std::size_t>(partition) > code.partitions.size())
    throw ConfigError("partition must lie in [1, " + std::to_string(code.partitions.size()) + "]");
  const Word word = parse_word(*code.field, symbols, code.n);
  const std::vector<Elem> filled = recover_erasures(code, word, static_cast<std::size_t>(partition - 1));
  for (std::size_t i = 0; i < filled.size(); ++i) std::cout << (i ? " " : "") << code.field->format(filled[i]);
  std::cout << "\n";
  return kExitOk;
}

int cmd_reproduce(const std::string& id) {
  const auto rows = reproduce(id);
  std::cout << format_rows(rows);
  return reproduce_exit_code(rows);
}

int cmd_families() {
  std::cout << "families:\n";
  for (const auto& fam : families()) {
    std::cout << "  " << fam.tag << ": " << fam.summary << "\n    required:";
    for (const auto& k : fam.required) std::cout << " " << k;
    if (!fam.optional.empty()) {
      std::cout << "\n    optional:";
      for (const auto& k : fam.optional) std::cout << " " << k;
    }
    std::cout << "\n";
  }
  std::cout << "built-in configs:\n";
  for (const auto& id : builtin_config_ids()) std::cout << "  " << id << "\n";
  std::cout << "reproduce ids:\n";
  for (const auto& id : reproduce_ids()) std::cout << "  " << id << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Locally recoverable codes from curves and surfaces"};
  app.require_subcommand(1);

  std::string source, out, code_path, repro_id;
  bool force = false, json = false;
  int partition = 1;
  std::vector<std::string> symbols;
  PolicyFlags build_flags, analyze_flags;

  auto* build = app.add_subcommand("build", "build a code from a config file or built-in id");
  build->add_option("config", source, "config path or built-in id")->required();
  build->add_option("-o,--output", out, "write the code file here");
  build->add_flag("--force", force, "accept a nonpositive designed distance");
  build->add_flag("--json", json, "print the report as JSON");
  build_flags.add(build);

  auto* analyze = app.add_subcommand("analyze", "report on a code file");
  analyze->add_option("code", code_path, "code file")->required();
  analyze->add_flag("--json", json, "print the report as JSON");
  analyze_flags.add(analyze);

  auto* recover = app.add_subcommand("recover", "fill erased symbols ('?') of a word");
  recover->add_option("code", code_path, "code file")->required();
  recover->add_option("word", symbols, "n field literals or '?'")->required();
  recover->add_option("--partition", partition, "preferred helper partition")->check(CLI::Range(1, 2));

  auto* repro = app.add_subcommand("reproduce", "check built-in examples against expected parameters");
  repro->add_option("id", repro_id, "example id or 'all'")->required();

  auto* fams = app.add_subcommand("families", "list families and built-in configs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (*build) return cmd_build(source, out, force, json, build_flags);
    if (*analyze) return cmd_analyze(code_path, json, analyze_flags);
    if (*recover) return cmd_recover(code_path, symbols, partition);
    if (*repro) return cmd_reproduce(repro_id);
    if (*fams) return cmd_families();
  } catch (const ConstructionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConstruction;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitInvalid;
}
