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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails.

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "widgetcalc/certificate.h"
#include "widgetcalc/checkers.h"
#include "widgetcalc/errors.h"
#include "widgetcalc/exact_linalg.h"
#include "widgetcalc/generators.h"
#include "widgetcalc/harness.h"
#include "widgetcalc/json_io.h"
#include "widgetcalc/proof_engine.h"
#include "widgetcalc/rng.h"
#include "widgetcalc/widget.h"

namespace widgetcalc {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void Report(int id, const std::string& name, const Outcome& o) {
  if (!o.pass) ++failures;
  std::printf("criterion %2d %s  %s: %s\n", id, o.pass ? "PASS" : "FAIL",
              name.c_str(), o.detail.c_str());
  std::fflush(stdout);
}

void Run(int id, const std::string& name, const std::function<Outcome()>& fn) {
  Outcome o;
  try {
    o = fn();
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = std::string("exception: ") + e.what();
  }
  Report(id, name, o);
}

std::string Fmt(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f s", s);
  return buf;
}

std::size_t Perturbs(const std::vector<ProofStep>& trace) {
  std::size_t n = 0;
  for (const ProofStep& s : trace) n += s.kind == ProofStep::Kind::kPerturb;
  return n;
}

Widget Fixture(const std::string& name) {
  return ReadWidgetFile(std::string(WIDGETCALC_FIXTURE_DIR) + "/" + name);
}

// The criterion 1 corpus.
FuzzConfig CorpusConfig() {
  FuzzConfig cfg;
  cfg.n_min = 2;
  cfg.n_max = 6;
  cfg.d_extra_min = 0;
  cfg.d_extra_max = 2;
  cfg.bound = 3;
  cfg.seed = 20260101;
  cfg.kinds = {{GenKind::kValidPlanted, 1}, {GenKind::kValidRejection, 1}};
  cfg.proof_route = true;
  return cfg;
}
constexpr std::uint64_t kCorpusTrials = 10000;

Outcome TheoremFuzz() {
  const auto start = Clock::now();
  const FuzzReport r = FuzzTheorem(CorpusConfig(), kCorpusTrials);
  const double t = Seconds(start);
  const bool pass = r.generation_errors == 0 &&
                    r.valid_count == kCorpusTrials &&
                    r.theorem_holds_count == r.valid_count &&
                    r.counterexamples.empty() && t < 300;
  const double rate = r.rejection_attempts == 0
                          ? 0
                          : double(r.rejection_accepted) / r.rejection_attempts;
  std::ostringstream d;
  d << r.valid_count << " valid, " << r.theorem_holds_count
    << " with a legal subwidget, " << r.counterexamples.size()
    << " counterexamples, " << r.generation_errors
    << " generation errors, rejection acceptance " << rate << ", " << Fmt(t)
    << " (limit 300 s)";
  return {pass, d.str()};
}

struct CorpusStats {
  std::uint64_t valid = 0;
  std::uint64_t found = 0;
  std::uint64_t reverified = 0;
  std::uint64_t replayed = 0;
  std::uint64_t within_n = 0;
  std::uint64_t violations = 0;
  std::uint64_t perturb_steps = 0;
  std::uint64_t runs = 0;
  std::uint64_t minimal_not_full = 0;
  std::uint64_t minimal_present = 0;
};

CorpusStats ScanCorpus() {
  CorpusStats s;
  const FuzzConfig cfg = CorpusConfig();
  for (std::uint64_t t = 0; t < kCorpusTrials; ++t) {
    const Widget w = Generate(TrialConfig(cfg, t));
    if (IsValid(w).verdict != Verdict::kValid) continue;
    ++s.valid;
    for (bool shortcut : {true, false}) {
      ++s.runs;
      const ProofRun run = RunProof(w, EngineOptions{shortcut});
      const Certificate& c = run.certificate;
      if (c.verdict == Verdict::kTheoremViolation) ++s.violations;
      if (c.verdict != Verdict::kLegalSubwidgetFound) continue;
      ++s.found;
      if (c.subwidget && IsLegalSubwidget(w, *c.subwidget)) ++s.reverified;
      if (c.trace && ReplayTrace(w, *c.trace) == run.intermediates) {
        ++s.replayed;
      }
      const std::size_t p = c.trace ? Perturbs(*c.trace) : 0;
      s.perturb_steps += p;
      if (p <= w.size()) ++s.within_n;
    }
    const auto minimal = FindLegalSubwidget(w, SearchMode::kMinimal);
    if (!minimal.empty()) {
      ++s.minimal_present;
      const Widget sub = Subwidget(w, minimal.front());
      if (SpanDim(sub.AllPoints()) < sub.size()) ++s.minimal_not_full;
    }
  }
  return s;
}

Outcome EngineSoundness(const CorpusStats& s) {
  const bool pass = s.found == s.runs && s.reverified == s.runs &&
                    s.replayed == s.runs && s.within_n == s.runs &&
                    s.violations == 0 && s.runs == 2 * s.valid;
  std::ostringstream d;
  d << s.runs << " engine runs on " << s.valid
    << " valid widgets (entry shortcut on and off): " << s.found
    << " found, " << s.reverified << " re-verified, " << s.replayed
    << " replayed, " << s.within_n << " with <= n perturbations, "
    << s.violations << " theorem violations, " << s.perturb_steps
    << " perturbation steps in total";
  return {pass, d.str()};
}

Outcome LegalNotFull(const CorpusStats& s) {
  std::ostringstream d;
  d << s.minimal_not_full << "/" << s.valid
    << " minimal legal subwidgets span < k";
  return {s.minimal_present == s.valid && s.minimal_not_full == s.valid,
          d.str()};
}

Outcome Lemma2() {
  SplitMix64 rng(301);
  int count = 0, valid = 0, restored = 0;
  for (; count < 1000; ++count) {
    GenConfig cfg;
    cfg.n = 2 + rng.Index(5);
    cfg.d = cfg.n + rng.Index(3);
    cfg.kind = count % 2 ? GenKind::kValidPlanted : GenKind::kValidRejection;
    cfg.seed = rng.Next();
    const Widget w = Generate(cfg);
    const std::size_t i = rng.Index(w.size());
    const Scalar c = Scalar::FromRational(
        mpq_class(rng.UniformInt(-1000, 1000), rng.UniformInt(1, 97)));
    const Widget moved = Perturb(w, i, c);
    if (IsValid(moved).verdict == Verdict::kValid) ++valid;
    const Widget back = Perturb(moved, i, -c);
    if (back == w && SerializeWidget(back) == SerializeWidget(w)) ++restored;
  }
  std::ostringstream d;
  d << valid << "/" << count << " perturbed widgets valid, " << restored
    << "/" << count << " restored bit-for-bit";
  return {valid == count && restored == count, d.str()};
}

Outcome Biconditional() {
  const GenKind kinds[] = {GenKind::kValidPlanted, GenKind::kLegalNotFull,
                           GenKind::kFullNotLegal, GenKind::kUniformRandom,
                           GenKind::kValidRejection};
  SplitMix64 rng(401);
  int agree = 0, total = 0, valid = 0;
  for (; total < 1000; ++total) {
    GenConfig cfg;
    cfg.kind = kinds[total % 5];
    cfg.n = 2 + rng.Index(4);
    cfg.d = cfg.n + rng.Index(2);
    cfg.bound = 1 + rng.Index(3);
    cfg.seed = rng.Next();
    const Widget w = Generate(cfg);
    const BiconditionalReport r = CheckCorollaryBiconditional(w);
    agree += r.agree();
    valid += r.valid;
  }
  std::ostringstream d;
  d << agree << "/" << total << " agree (" << valid << " valid)";
  return {agree == total, d.str()};
}

Outcome MaximalSufficiency() {
  const auto start = Clock::now();
  SplitMix64 rng(601);
  int agree = 0, total = 0, legal = 0;
  for (; total < 500; ++total) {
    GenConfig cfg;
    cfg.n = 1 + rng.Index(4);
    cfg.d = 1 + rng.Index(4);
    cfg.bound = 1;
    cfg.kind = total % 2 ? GenKind::kUniformRandom : GenKind::kLegalNotFull;
    cfg.seed = rng.Next();
    const Widget w = Generate(cfg);
    const bool maximal = IsLegal(w).legal;
    agree += maximal == IsLegalAllSections(w);
    legal += maximal;
  }
  const double t = Seconds(start);
  std::ostringstream d;
  d << agree << "/" << total << " agree (" << legal << " legal), " << Fmt(t)
    << " (limit 30 s)";
  return {agree == total && t < 30, d.str()};
}

Outcome RankEquivalence() {
  SplitMix64 rng(701);
  int agree = 0, total = 0;
  const Field q = Field::Rational();
  for (; total < 1000; ++total) {
    const std::size_t rows = 1 + rng.Index(8), cols = 1 + rng.Index(8);
    const std::int64_t bound = total % 3 == 0 ? 1 : 20;
    PointMatrix m(q, rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < cols; ++c) {
        m(r, c) = Scalar::FromRational(
            mpq_class(rng.UniformInt(-bound, bound), rng.UniformInt(1, 3)));
      }
    }
    agree += BareissRank(m) == NaiveEchelonRank(m);
  }
  std::ostringstream d;
  d << agree << "/" << total << " matrices agree";
  return {agree == total, d.str()};
}

Outcome Invariance() {
  const GenKind kinds[] = {GenKind::kValidPlanted, GenKind::kLegalNotFull,
                           GenKind::kFullNotLegal, GenKind::kUniformRandom,
                           GenKind::kValidRejection};
  SplitMix64 rng(801);
  int same = 0, total = 0;
  for (; total < 500; ++total) {
    GenConfig cfg;
    cfg.kind = kinds[total % 5];
    cfg.n = 2 + rng.Index(4);
    cfg.d = cfg.n + rng.Index(2);
    cfg.bound = 1 + rng.Index(2);
    cfg.seed = rng.Next();
    const Widget w = Generate(cfg);
    Relabeling r = Relabeling::Identity(w.size());
    rng.Shuffle(r.order);
    for (std::size_t i = 0; i < w.size(); ++i) r.flip[i] = rng.Coin();
    const Widget moved =
        ApplyLinear(Relabel(w, r), RandomInvertible(w.field(), w.ambient_dim(),
                                                    3, rng));
    same += IsLegal(w).legal == IsLegal(moved).legal &&
            IsFull(w) == IsFull(moved) &&
            IsValid(w).verdict == IsValid(moved).verdict;
  }
  std::ostringstream d;
  d << same << "/" << total << " verdict triples unchanged";
  return {same == total, d.str()};
}

Outcome Census() {
  const auto start = Clock::now();
  std::ostringstream d;
  bool pass = true;
  for (auto [n, d_] : {std::pair{2, 2}, std::pair{3, 3}}) {
    const CensusReport r = RunCensus(2, n, d_);
    const std::uint64_t expected = CensusSize(2, n, d_);
    bool reverified = true;
    for (const Counterexample& c : r.findings) {
      for (const std::string& reason : c.reasons) {
        if (reason.find("without a legal subwidget") != std::string::npos &&
            !c.reverified) {
          reverified = false;
        }
      }
    }
    pass = pass && r.total == expected && r.inconsistencies_count == 0 &&
           reverified;
    d << "GF(2) n=" << n << " d=" << d_ << ": " << r.total << "/" << expected
      << " classified, legal " << r.legal << ", full " << r.full
      << ", valid " << r.valid << ", FINDINGS " << r.findings_count
      << ", inconsistencies " << r.inconsistencies_count << "; ";
  }
  const double t = Seconds(start);
  pass = pass && t < 120;
  d << Fmt(t) << " (limit 120 s)";
  return {pass, d.str()};
}

Outcome Boundary() {
  std::ostringstream d;
  bool pass = true;
  for (std::size_t dim : {1u, 2u, 4u}) {
    const CensusReport r = RunCensus(2, 1, dim);
    pass = pass && r.valid == 0 && r.total == CensusSize(2, 1, dim) &&
           r.inconsistencies_count == 0;
    d << "n=1 d=" << dim << ": " << r.valid << " valid of " << r.total
      << "; ";
  }
  const Widget zero = Fixture("zero.json");
  const bool zero_ok = IsValid(zero).verdict == Verdict::kNotFull &&
                       IsLegal(zero).legal && !IsFull(zero) &&
                       CheckCorollaryBiconditional(zero).agree() &&
                       ExtractLegalSubwidget(zero).verdict == Verdict::kNotFull;
  const Widget dup = Fixture("duplicate_pairs.json");
  const Certificate dup_cert = IsValid(dup);
  const bool dup_ok =
      dup_cert.verdict == Verdict::kNotLegal &&
      dup_cert.witness_section &&
      dup_cert.witness_section->choices ==
          std::vector<Choice>{Choice::kPlus, Choice::kPlus} &&
      FindLegalSubwidget(dup, SearchMode::kAll).empty() &&
      !FindLegalNotFullSubwidget(dup) &&
      ExtractLegalSubwidget(dup).verdict == Verdict::kNotLegal;
  const Widget rep = Fixture("repeated_pairs.json");
  const bool rep_ok = IsValid(rep).verdict == Verdict::kNotFull &&
                      IsLegal(rep).legal;
  pass = pass && zero_ok && dup_ok && rep_ok;
  d << "zero widget NotFull " << (zero_ok ? "ok" : "WRONG")
    << ", duplicate-point pairs NotLegal (+,+) " << (dup_ok ? "ok" : "WRONG")
    << ", repeated pairs NotFull " << (rep_ok ? "ok" : "WRONG");
  return {pass, d.str()};
}

struct Proc {
  int code = -1;
  std::string out;
};

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Proc Cli(const std::string& args, const fs::path& dir) {
  const fs::path out = dir / "stdout";
  const std::string cmd = std::string(WIDGETCALC_CLI) + " " + args + " >" +
                          out.string() + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, Slurp(out)};
}

Outcome CliRoundTrip() {
  const fs::path dir = fs::temp_directory_path() /
                       ("widgetcalc_accept_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const char* kinds[] = {"valid_planted", "valid_rejection", "legal_not_full",
                         "full_not_legal", "uniform_random"};
  int agree = 0, identical = 0, total = 0;
  for (; total < 100; ++total) {
    GenConfig cfg;
    cfg.kind = ParseGenKind(kinds[total % 5]);
    cfg.n = 2 + total % 4;
    cfg.d = cfg.n + total % 2;
    cfg.seed = 1000 + total;
    const Widget mem = Generate(cfg);
    const std::string args =
        std::string("gen --kind ") + kinds[total % 5] +
        " --n " + std::to_string(cfg.n) + " --dim " + std::to_string(cfg.d) +
        " --seed " + std::to_string(cfg.seed);
    const fs::path a = dir / "a.json", b = dir / "b.json";
    const Proc g1 = Cli(args + " -o " + a.string(), dir);
    const Proc g2 = Cli(args + " -o " + b.string(), dir);
    const std::string text = Slurp(a);
    if (g1.code == 0 && g2.code == 0 && text == Slurp(b) &&
        text == SerializeWidget(mem)) {
      ++identical;
    }
    const Proc check = Cli("check --json " + a.string(), dir);
    const Proc prove = Cli("prove --json " + a.string(), dir);
    if (check.code != 0 || prove.code != 0) continue;
    const auto cj = nlohmann::json::parse(check.out);
    const auto pj = nlohmann::json::parse(prove.out);
    const nlohmann::ordered_json want_check = CertificateToJson(IsValid(mem));
    Certificate want_prove = ExtractLegalSubwidget(mem);
    want_prove.trace.reset();
    if (cj == nlohmann::json::parse(want_check.dump()) &&
        pj == nlohmann::json::parse(CertificateToJson(want_prove).dump())) {
      ++agree;
    }
  }
  FuzzConfig fc;
  fc.n_max = 4;
  const fs::path r1 = dir / "r1.json", r2 = dir / "r2.json";
  const std::string fuzz = "fuzz --trials 200 --n 2..4 --seed 11 --report ";
  const bool reports_same = Cli(fuzz + r1.string(), dir).code == 0 &&
                            Cli(fuzz + r2.string(), dir).code == 0 &&
                            Slurp(r1) == Slurp(r2) && !Slurp(r1).empty();
  fs::remove_all(dir);
  std::ostringstream d;
  d << identical << "/" << total << " files byte-identical to in-memory and "
    << "across runs, " << agree << "/" << total
    << " check/prove verdicts match, fuzz reports identical: "
    << (reports_same ? "yes" : "no");
  return {identical == total && agree == total && reports_same, d.str()};
}

}  // namespace
}  // namespace widgetcalc

int main() {
  using namespace widgetcalc;
  Run(1, "theorem fuzz (rationals)", TheoremFuzz);
  const CorpusStats corpus = ScanCorpus();
  Run(2, "proof-engine soundness", [&] { return EngineSoundness(corpus); });
  Run(3, "perturbation property", Lemma2);
  Run(4, "corollary biconditional", Biconditional);
  Run(5, "minimal legal subwidget is not full",
      [&] { return LegalNotFull(corpus); });
  Run(6, "maximal-section sufficiency", MaximalSufficiency);
  Run(7, "rank-oracle equivalence", RankEquivalence);
  Run(8, "relabel and basis-change invariance", Invariance);
  Run(9, "exhaustive GF(2) census", Census);
  Run(10, "boundary cases", Boundary);
  Run(11, "CLI round trip", CliRoundTrip);
  std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS",
              failures);
  return failures ? 1 : 0;
}
