// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// widgetcalc command-line tool.
//
// Exit codes: 0 success, 1 counterexample, 2 input error, 3 theorem
// violation, 4 config or generation error.

#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "widgetcalc/certificate.h"
#include "widgetcalc/checkers.h"
#include "widgetcalc/errors.h"
#include "widgetcalc/exact_linalg.h"
#include "widgetcalc/generators.h"
#include "widgetcalc/harness.h"
#include "widgetcalc/json_io.h"
#include "widgetcalc/proof_engine.h"
#include "widgetcalc/widget.h"

namespace widgetcalc {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitCounterexample = 1;
constexpr int kExitInput = 2;
constexpr int kExitTheorem = 3;
constexpr int kExitConfig = 4;

// Thrown for bad options of gen/fuzz/census.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Field ParseField(const std::string& s) {
  if (s == "rational" || s == "Q") return Field::Rational();
  static const std::regex re("(?:gf|GF):([0-9]+)");
  std::smatch m;
  if (std::regex_match(s, m, re)) {
    std::uint64_t p = 0;
    try {
      p = std::stoull(m[1]);
    } catch (const std::exception&) {
      throw ConfigError("field modulus out of range: " + s);
    }
    try {
      return Field::Prime(p);
    } catch (const InputError& e) {
      throw ConfigError(e.what());
    }
  }
  throw ConfigError("bad field '" + s + "' (expected rational or gf:P)");
}

// "a" or "a..b".
std::pair<std::size_t, std::size_t> ParseRange(const std::string& s,
                                               const std::string& what) {
  static const std::regex re("([0-9]+)(?:\\.\\.([0-9]+))?");
  std::smatch m;
  if (!std::regex_match(s, m, re)) {
    throw ConfigError("bad " + what + " range '" + s + "'");
  }
  std::size_t lo = std::stoul(m[1]);
  std::size_t hi = m[2].matched ? std::stoul(m[2]) : lo;
  if (hi < lo) throw ConfigError("empty " + what + " range '" + s + "'");
  return {lo, hi};
}

std::string SectionString(const Section& s) {
  std::string out;
  for (Choice c : s.choices) {
    if (!out.empty()) out += ' ';
    out += c == Choice::kPlus ? '+' : c == Choice::kMinus ? '-' : '.';
  }
  return out;
}

std::string LabelList(const SubwidgetSel& sel) {
  std::string out = "[";
  for (std::size_t label : sel.Labels()) {
    if (out.size() > 1) out += ", ";
    out += std::to_string(label);
  }
  return out + "]";
}

void PrintJson(const nlohmann::ordered_json& j) {
  std::cout << j.dump(2) << "\n";
}

void WriteOrPrint(const std::optional<std::string>& path,
                  const std::string& text) {
  if (path) {
    WriteTextFile(*path, text);
  } else {
    std::cout << text;
  }
}

std::string Describe(const Widget& w) {
  return "n=" + std::to_string(w.size()) +
         " d=" + std::to_string(w.ambient_dim()) +
         " field=" + w.field().ToString();
}

int CmdCheck(const std::string& file, bool json) {
  const Widget w = ReadWidgetFile(file);
  const Certificate cert = IsValid(w);
  if (json) {
    PrintJson(CertificateToJson(cert));
    return kExitOk;
  }
  WidgetRanks ranks(w);
  std::vector<std::size_t> all(w.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  std::cout << "widget: " << Describe(w) << "\n";
  if (cert.verdict == Verdict::kNotLegal) {
    std::cout << "legal: no (section " << SectionString(*cert.witness_section)
              << " spans " << ranks.SectionRank(*cert.witness_section)
              << ")\n";
  } else {
    std::cout << "legal: yes\n";
  }
  const std::size_t span = ranks.PairsRank(all);
  std::cout << "full: " << (span >= w.size() ? "yes" : "no") << " (span "
            << span << ")\n";
  std::cout << "verdict: " << VerdictName(cert.verdict) << "\n";
  return kExitOk;
}

int CmdFind(const std::string& file, const std::string& mode_name,
            bool json) {
  const Widget w = ReadWidgetFile(file);
  if (w.size() > 12) {
    std::cerr << "warning: n = " << w.size()
              << " makes the exponential search slow\n";
  }
  SearchMode mode = SearchMode::kMinimal;
  if (mode_name == "all") mode = SearchMode::kAll;
  if (mode_name == "first") mode = SearchMode::kFirst;
  const std::vector<SubwidgetSel> found = FindLegalSubwidget(w, mode);
  if (json) {
    nlohmann::ordered_json j;
    j["mode"] = mode_name;
    nlohmann::ordered_json list = nlohmann::ordered_json::array();
    for (const SubwidgetSel& s : found) list.push_back(s.Labels());
    j["legal_subwidgets"] = list;
    PrintJson(j);
    return kExitOk;
  }
  if (found.empty()) {
    std::cout << "no legal subwidget\n";
  }
  for (const SubwidgetSel& s : found) {
    std::cout << "legal subwidget " << LabelList(s) << "\n";
  }
  return kExitOk;
}

int CmdProve(const std::string& file, bool trace, bool proof_route,
             bool json) {
  const Widget w = ReadWidgetFile(file);
  Certificate cert;
  try {
    cert = ExtractLegalSubwidget(w, EngineOptions{!proof_route});
  } catch (const FieldTooSmall& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (w.field().is_rational()) std::cerr << "report this instance\n";
    return kExitTheorem;
  }
  const bool violation = cert.verdict == Verdict::kTheoremViolation;
  if (!trace && !violation) cert.trace.reset();
  if (json) {
    PrintJson(CertificateToJson(cert));
  } else {
    std::cout << "verdict: " << VerdictName(cert.verdict) << "\n";
    if (cert.subwidget) {
      std::cout << "legal subwidget: " << LabelList(*cert.subwidget) << "\n";
    }
    if (cert.witness_section) {
      std::cout << "illegal section: " << SectionString(*cert.witness_section)
                << "\n";
    }
    if (cert.trace) {
      for (const ProofStep& step : *cert.trace) {
        std::cout << "  " << ProofStepToJson(step).dump() << "\n";
      }
    }
  }
  if (violation) {
    std::cerr << "theorem violation";
    if (w.field().is_rational()) std::cerr << ": report this instance";
    std::cerr << "\n";
    return kExitTheorem;
  }
  return kExitOk;
}

struct GenOptions {
  std::string kind = "valid_planted";
  std::size_t n = 3;
  std::size_t d = 3;
  std::optional<std::size_t> sub_k;
  std::string field = "rational";
  std::int64_t bound = 3;
  std::uint64_t seed = 0;
  std::optional<std::string> out;
};

std::string Postcondition(GenKind k) {
  switch (k) {
    case GenKind::kValidPlanted:
    case GenKind::kValidRejection:
      return "Valid";
    case GenKind::kLegalNotFull:
      return "legal and not full";
    case GenKind::kFullNotLegal:
      return "full and not legal";
    case GenKind::kUniformRandom:
      return "none";
  }
  return "none";
}

int CmdGen(const GenOptions& o) {
  GenConfig cfg;
  try {
    cfg.kind = ParseGenKind(o.kind);
  } catch (const InputError& e) {
    throw ConfigError(e.what());
  }
  cfg.n = o.n;
  cfg.d = o.d;
  cfg.plant_k = o.sub_k;
  cfg.field = ParseField(o.field);
  cfg.bound = o.bound;
  cfg.seed = o.seed;
  GenStats stats;
  const Widget w = Generate(cfg, &stats);
  WriteOrPrint(o.out, SerializeWidget(w));
  std::ostream& info = o.out ? std::cout : std::cerr;
  info << "generated " << GenKindName(cfg.kind) << " " << Describe(w)
       << " seed=" << cfg.seed << " attempts=" << stats.attempts
       << "; postcondition asserted: " << Postcondition(cfg.kind) << "\n";
  return kExitOk;
}

struct FuzzOptions {
  std::uint64_t trials = 1000;
  std::string n = "2..6";
  std::string dim = "+0..+2";
  std::string field = "rational";
  std::int64_t bound = 3;
  std::uint64_t seed = 0;
  std::string kinds = "valid_planted,valid_rejection";
  bool no_proof_route = false;
  std::optional<std::string> report;
};

int CmdFuzz(const FuzzOptions& o) {
  FuzzConfig cfg;
  std::tie(cfg.n_min, cfg.n_max) = ParseRange(o.n, "n");
  if (cfg.n_min < 1) throw ConfigError("n must be positive");
  if (!o.dim.empty() && o.dim[0] == '+') {
    std::string rel = std::regex_replace(o.dim, std::regex("\\+"), "");
    std::tie(cfg.d_extra_min, cfg.d_extra_max) = ParseRange(rel, "dim");
  } else {
    auto [lo, hi] = ParseRange(o.dim, "dim");
    if (lo != hi) throw ConfigError("absolute dim must be a single value");
    cfg.d_fixed = lo;
  }
  cfg.field = ParseField(o.field);
  cfg.bound = o.bound;
  cfg.seed = o.seed;
  cfg.proof_route = !o.no_proof_route;
  cfg.kinds.clear();
  std::stringstream ss(o.kinds);
  std::string name;
  while (std::getline(ss, name, ',')) {
    try {
      cfg.kinds.emplace_back(ParseGenKind(name), 1u);
    } catch (const InputError& e) {
      throw ConfigError(e.what());
    }
  }
  if (cfg.kinds.empty()) throw ConfigError("no generator kinds");

  const FuzzReport r = FuzzTheorem(cfg, o.trials);
  const std::string text = FuzzReportToJson(r).dump(2) + "\n";
  if (o.report) WriteTextFile(*o.report, text);
  std::cout << "trials: " << r.trials << "\n"
            << "generation errors: " << r.generation_errors << "\n"
            << "valid: " << r.valid_count << "\n"
            << "theorem holds: " << r.theorem_holds_count << "\n"
            << "corollary agreements: " << r.corollary_agreements << "\n"
            << "engine/oracle agreements: " << r.engine_oracle_agreements
            << "\n"
            << "counterexamples: " << r.counterexamples.size() << "\n";
  if (!cfg.field.is_rational()) {
    std::cout << "findings: " << r.findings.size() << "\n";
    if (!r.findings.empty()) {
      std::cout << "==== FINDINGS over " << cfg.field.ToString() << ": "
                << r.findings.size()
                << " instance(s) where an infinite-field statement fails "
                   "====\n";
    }
  }
  for (const Counterexample& c : r.counterexamples) {
    std::cout << "counterexample at trial " << c.trial << ":";
    for (const std::string& reason : c.reasons) std::cout << " " << reason << ";";
    std::cout << "\n";
  }
  return r.counterexamples.empty() ? kExitOk : kExitCounterexample;
}

int CmdCensus(std::uint64_t p, std::size_t n, std::size_t d,
              bool proof_route, const std::optional<std::string>& report) {
  try {
    CensusSize(p, n, d);
  } catch (const InputError& e) {
    throw ConfigError(e.what());
  }
  const CensusReport r = RunCensus(p, n, d, proof_route);
  const std::string text = CensusReportToJson(r).dump(2) + "\n";
  if (report) WriteTextFile(*report, text);
  std::cout << "GF(" << p << ") n=" << n << " d=" << d << ": " << r.total
            << " widgets\n"
            << "legal: " << r.legal << "\n"
            << "full: " << r.full << "\n"
            << "valid: " << r.valid << "\n"
            << "has legal subwidget: " << r.has_legal_subwidget << "\n"
            << "theorem violations: " << r.theorem_violations << "\n"
            << "engine field-too-small: " << r.engine_field_too_small << "\n"
            << "inconsistencies: " << r.inconsistencies_count << "\n";
  if (r.findings_count > 0) {
    std::cout << "==== FINDINGS: " << r.findings_count
              << " instance(s) where an infinite-field statement fails ====\n";
  }
  return r.inconsistencies_count == 0 ? kExitOk : kExitCounterexample;
}

int Main(int argc, char** argv) {
  CLI::App app{"Exact widget calculus: checking, search, proofs, fuzzing"};
  app.require_subcommand(1);

  std::string file;
  bool json = false;

  auto* check = app.add_subcommand("check", "Decide legality, fullness and validity");
  check->add_option("file", file, "Widget file")->required();
  check->add_flag("--json", json, "Print the certificate as JSON");

  std::string mode = "minimal";
  auto* find = app.add_subcommand("find-subwidget", "Brute-force legal subwidget search");
  find->add_option("file", file, "Widget file")->required();
  auto* mode_group = find->add_option_group("mode");
  mode_group->add_flag_callback("--minimal", [&] { mode = "minimal"; },
                                "Smallest first hit (default)");
  mode_group->add_flag_callback("--all", [&] { mode = "all"; },
                                "Every legal subwidget");
  mode_group->add_flag_callback("--first", [&] { mode = "first"; },
                                "First hit in bitmask order");
  mode_group->require_option(0, 1);
  find->add_flag("--json", json, "Print JSON");

  bool trace = false;
  bool proof_route = false;
  auto* prove = app.add_subcommand("prove", "Run the proof engine");
  prove->add_option("file", file, "Widget file")->required();
  prove->add_flag("--trace", trace, "Embed the proof steps");
  prove->add_flag("--proof-route", proof_route,
                  "Skip the entry shortcut and run the reduction loop");
  prove->add_flag("--json", json, "Print the certificate as JSON");

  GenOptions gen_opts;
  auto* gen = app.add_subcommand("gen", "Generate a widget file");
  gen->add_option("--kind", gen_opts.kind,
                  "valid_planted|legal_not_full|full_not_legal|"
                  "uniform_random|valid_rejection");
  gen->add_option("--n", gen_opts.n, "Number of pairs");
  gen->add_option("--dim", gen_opts.d, "Ambient dimension");
  gen->add_option("--sub-k", gen_opts.sub_k, "Planted subwidget size");
  gen->add_option("--field", gen_opts.field, "rational or gf:P");
  gen->add_option("--bound", gen_opts.bound, "Coordinate bound")
      ->check(CLI::PositiveNumber);
  gen->add_option("--seed", gen_opts.seed, "Seed");
  gen->add_option("-o,--output", gen_opts.out, "Output file (default stdout)");

  FuzzOptions fuzz_opts;
  auto* fuzz = app.add_subcommand("fuzz", "Fuzz the theorem and its corollaries");
  fuzz->add_option("--trials", fuzz_opts.trials, "Number of trials");
  fuzz->add_option("--n", fuzz_opts.n, "n or lo..hi");
  fuzz->add_option("--dim", fuzz_opts.dim, "D, or +a..+b relative to n");
  fuzz->add_option("--field", fuzz_opts.field, "rational or gf:P");
  fuzz->add_option("--bound", fuzz_opts.bound, "Coordinate bound")
      ->check(CLI::PositiveNumber);
  fuzz->add_option("--seed", fuzz_opts.seed, "Seed");
  fuzz->add_option("--kinds", fuzz_opts.kinds, "Comma-separated generator kinds");
  fuzz->add_flag("--no-proof-route", fuzz_opts.no_proof_route,
                 "Run the engine with the entry shortcut only");
  fuzz->add_option("--report", fuzz_opts.report, "Write the JSON report");

  std::uint64_t prime = 2;
  std::size_t census_n = 2;
  std::size_t census_d = 2;
  bool census_proof_route = false;
  std::optional<std::string> report;
  auto* census = app.add_subcommand("census", "Exhaustive census over GF(p)");
  census->add_option("--prime", prime, "Field size");
  census->add_option("--n", census_n, "Number of pairs");
  census->add_option("--dim", census_d, "Ambient dimension");
  census->add_flag("--proof-route", census_proof_route,
                   "Also run the reduction loop on valid widgets");
  census->add_option("--report", report, "Write the JSON report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*check) return CmdCheck(file, json);
    if (*find) return CmdFind(file, mode, json);
    if (*prove) return CmdProve(file, trace, proof_route, json);
    if (*gen) return CmdGen(gen_opts);
    if (*fuzz) return CmdFuzz(fuzz_opts);
    if (*census) {
      return CmdCensus(prime, census_n, census_d, census_proof_route, report);
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const GenerationError& e) {
    std::cerr << "generation error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}

}  // namespace
}  // namespace widgetcalc

int main(int argc, char** argv) { return widgetcalc::Main(argc, argv); }
