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

#include "widgetcalc/harness.h"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "widgetcalc/checkers.h"
#include "widgetcalc/errors.h"
#include "widgetcalc/json_io.h"
#include "widgetcalc/proof_engine.h"
#include "widgetcalc/rng.h"

namespace widgetcalc {
namespace {

using nlohmann::ordered_json;

std::string Labels(const SubwidgetSel& sel) {
  std::string out = "{";
  for (std::size_t label : sel.Labels()) {
    if (out.size() > 1) out += ",";
    out += std::to_string(label);
  }
  return out + "}";
}

// Runs the engine in one mode and folds the outcome into `check`.
std::optional<Certificate> RunEngine(const Widget& w, bool shortcut,
                                     const char* tag, InstanceCheck& check) {
  const std::string mode = tag;
  ProofRun run;
  try {
    run = RunProof(w, EngineOptions{shortcut});
  } catch (const FieldTooSmall& e) {
    check.engine_error = e.what();
    check.field_dependent_failures.push_back(mode + ": " + e.what());
    return std::nullopt;
  } catch (const ContractError& e) {
    check.inconsistencies.push_back(mode + ": contract error: " + e.what());
    return std::nullopt;
  }
  const Certificate& cert = run.certificate;
  const bool valid = check.validity.verdict == Verdict::kValid;

  if (!valid) {
    if (cert.verdict != check.validity.verdict) {
      check.inconsistencies.push_back(mode +
                                      ": engine verdict differs from is_valid");
    }
    return cert;
  }
  switch (cert.verdict) {
    case Verdict::kLegalSubwidgetFound:
      if (!cert.subwidget || !IsLegalSubwidget(w, *cert.subwidget)) {
        check.inconsistencies.push_back(mode +
                                        ": engine subwidget is not legal");
      }
      if (!check.minimal) {
        check.inconsistencies.push_back(
            mode + ": engine found a subwidget the search missed");
      }
      break;
    case Verdict::kTheoremViolation:
      // Reaching k = 0 contradicts validity in any field.
      check.inconsistencies.push_back(mode + ": engine reached k = 0");
      break;
    default:
      check.inconsistencies.push_back(mode + ": unexpected engine verdict " +
                                      VerdictName(cert.verdict));
  }
  if (cert.trace) {
    std::size_t perturbs = 0;
    for (const ProofStep& step : *cert.trace) {
      if (step.kind == ProofStep::Kind::kPerturb) ++perturbs;
      if (step.kind == ProofStep::Kind::kBranchSubwidgetFound &&
          step.direct_check) {
        ++check.direct_checks;
      }
    }
    check.perturb_steps += perturbs;
    if (perturbs > w.size()) {
      check.inconsistencies.push_back(mode + ": more than n perturbations");
    }
    try {
      std::vector<Widget> replayed = ReplayTrace(w, *cert.trace);
      if (replayed != run.intermediates) {
        check.inconsistencies.push_back(mode + ": trace replay differs");
      }
    } catch (const std::exception& e) {
      check.inconsistencies.push_back(mode + ": trace replay failed: " +
                                      e.what());
    }
  } else {
    check.inconsistencies.push_back(mode + ": missing trace");
  }
  return cert;
}

bool SubsetLegalAllSections(const Widget& w,
                            const std::vector<std::size_t>& idx) {
  return IsLegalAllSections(Subwidget(w, SubwidgetSel(idx, w.size())));
}

Certificate FailureCertificate(const InstanceCheck& check) {
  if (check.theorem_fails) {
    Certificate c;
    c.verdict = Verdict::kTheoremViolation;
    const std::optional<Certificate>& e =
        check.engine_proof_route ? check.engine_proof_route : check.engine;
    if (e && e->trace) c.trace = e->trace;
    return c;
  }
  if (check.engine) return *check.engine;
  return check.validity;
}

ordered_json CounterexampleToJson(const Counterexample& c) {
  ordered_json j;
  j["trial"] = c.trial;
  j["kind"] = c.kind;
  j["reasons"] = c.reasons;
  j["reverified"] = c.reverified;
  j["widget"] = WidgetToJson(c.widget);
  j["certificate"] = CertificateToJson(c.certificate);
  return j;
}

ordered_json CounterexamplesToJson(const std::vector<Counterexample>& v) {
  ordered_json a = ordered_json::array();
  for (const Counterexample& c : v) a.push_back(CounterexampleToJson(c));
  return a;
}

}  // namespace

InstanceCheck CheckInstance(const Widget& w, bool proof_route) {
  InstanceCheck check;
  check.validity = IsValid(w);
  const bool valid = check.validity.verdict == Verdict::kValid;
  const bool legal = check.validity.verdict != Verdict::kNotLegal;
  check.full = IsFull(w);
  WidgetRanks ranks(w);

  if (check.validity.verdict == Verdict::kNotLegal) {
    if (!check.validity.witness_section ||
        ranks.SectionRank(*check.validity.witness_section) < w.size()) {
      check.inconsistencies.push_back("NotLegal witness does not span n");
    }
  }
  if (valid != (legal && check.full)) {
    check.inconsistencies.push_back("is_valid disagrees with legal and full");
  }

  std::vector<SubwidgetSel> minimal =
      FindLegalSubwidget(w, SearchMode::kMinimal);
  if (!minimal.empty()) check.minimal = minimal.front();
  check.legal_not_full = FindLegalNotFullSubwidget(w);

  if (check.minimal && !legal) {
    check.inconsistencies.push_back("contains legal subwidget " +
                                    Labels(*check.minimal) +
                                    " but is not legal");
  }
  if (check.minimal.has_value() != check.legal_not_full.has_value()) {
    check.inconsistencies.push_back(
        "legal-not-full search disagrees with subwidget search");
  }
  if (check.minimal) {
    const auto& idx = check.minimal->indices();
    if (ranks.PairsRank(idx) >= idx.size()) {
      check.field_dependent_failures.push_back(
          "minimal legal subwidget " + Labels(*check.minimal) + " is full");
    }
  }
  if (check.legal_not_full) {
    const auto& idx = check.legal_not_full->indices();
    if (!IsLegalSubwidget(w, *check.legal_not_full) ||
        ranks.PairsRank(idx) >= idx.size()) {
      check.inconsistencies.push_back(
          "legal-not-full result is not legal and not full");
    }
  }

  const BiconditionalReport bic = CheckCorollaryBiconditional(w);
  check.biconditional_agrees = bic.agree();
  if (bic.valid != valid || bic.full != check.full ||
      bic.has_legal_subwidget != check.minimal.has_value()) {
    check.inconsistencies.push_back("biconditional report is inconsistent");
  }
  if (!bic.agree()) {
    check.field_dependent_failures.push_back(
        "is_valid disagrees with full and has-legal-subwidget");
  }

  if (valid && !check.minimal) {
    check.theorem_fails = true;
    check.field_dependent_failures.push_back(
        "valid widget without a legal subwidget");
  }

  check.engine = RunEngine(w, true, "engine", check);
  if (proof_route && valid) {
    check.engine_proof_route = RunEngine(w, false, "engine(proof-route)",
                                         check);
  }
  return check;
}

bool ReverifyTheoremViolation(const Widget& w) {
  const std::size_t n = w.size();
  if (n > 12 || !IsLegalAllSections(w) || !IsFull(w)) return false;
  for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << n); ++mask) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1) idx.push_back(i);
    }
    if (SubsetLegalAllSections(w, idx)) return false;
  }
  return true;
}

GenConfig TrialConfig(const FuzzConfig& cfg, std::uint64_t trial) {
  if (cfg.n_min < 1 || cfg.n_max < cfg.n_min) {
    throw InputError("fuzz: bad n range");
  }
  if (!cfg.d_fixed && cfg.d_extra_max < cfg.d_extra_min) {
    throw InputError("fuzz: bad dimension range");
  }
  unsigned total_weight = 0;
  for (const auto& [kind, weight] : cfg.kinds) total_weight += weight;
  if (total_weight == 0) throw InputError("fuzz: no generator kinds");

  SplitMix64 rng = SplitMix64(cfg.seed).Split(trial);
  GenConfig g;
  g.field = cfg.field;
  g.bound = cfg.bound;
  g.n = cfg.n_min + rng.Index(cfg.n_max - cfg.n_min + 1);
  g.d = cfg.d_fixed ? *cfg.d_fixed
                    : g.n + cfg.d_extra_min +
                          rng.Index(cfg.d_extra_max - cfg.d_extra_min + 1);
  std::size_t pick = rng.Index(total_weight);
  for (const auto& [kind, weight] : cfg.kinds) {
    if (pick < weight) {
      g.kind = kind;
      break;
    }
    pick -= weight;
  }
  g.seed = rng.Next();
  return g;
}

FuzzReport FuzzTheorem(
    const FuzzConfig& cfg, std::uint64_t trials,
    const std::function<void(std::uint64_t, std::uint64_t)>& progress) {
  FuzzReport r;
  r.seed = cfg.seed;
  r.field = cfg.field;
  r.trials = trials;
  std::map<std::string, std::uint64_t> kinds;
  const bool rational = cfg.field.is_rational();

  for (std::uint64_t t = 0; t < trials; ++t) {
    if (progress && t % 1000 == 0) progress(t, trials);
    const GenConfig g = TrialConfig(cfg, t);
    ++kinds[GenKindName(g.kind)];
    std::optional<Widget> w;
    GenStats stats;
    try {
      w = Generate(g, &stats);
    } catch (const GenerationError&) {
      ++r.generation_errors;
    }
    if (g.kind == GenKind::kValidRejection) {
      r.rejection_attempts += stats.attempts;
      if (w) ++r.rejection_accepted;
    }
    if (!w) continue;

    const InstanceCheck check = CheckInstance(*w, cfg.proof_route);
    const bool valid = check.validity.verdict == Verdict::kValid;
    if (valid) {
      ++r.valid_count;
      if (check.minimal) ++r.theorem_holds_count;
      if (check.minimal) {
        const auto& idx = check.minimal->indices();
        if (WidgetRanks(*w).PairsRank(idx) < idx.size()) {
          ++r.legal_not_full_holds;
        }
      }
    }
    if (check.biconditional_agrees) ++r.corollary_agreements;
    const bool engine_found =
        check.engine &&
        check.engine->verdict == Verdict::kLegalSubwidgetFound;
    const bool engine_agrees =
        valid ? engine_found == check.minimal.has_value()
              : check.engine &&
                    check.engine->verdict == check.validity.verdict;
    if (engine_agrees) ++r.engine_oracle_agreements;
    r.perturb_steps += check.perturb_steps;
    r.direct_checks += check.direct_checks;

    std::vector<std::string> hard = check.inconsistencies;
    std::vector<std::string> soft = check.field_dependent_failures;
    if (!hard.empty() || !soft.empty()) {
      Counterexample c{t, GenKindName(g.kind), *w, FailureCertificate(check),
                       {}, false};
      if (check.theorem_fails) c.reverified = ReverifyTheoremViolation(*w);
      if (rational || !hard.empty()) {
        c.reasons = hard;
        c.reasons.insert(c.reasons.end(), soft.begin(), soft.end());
        r.counterexamples.push_back(std::move(c));
      } else {
        c.reasons = soft;
        r.findings.push_back(std::move(c));
      }
    }
  }
  if (progress) progress(trials, trials);
  r.kind_counts.assign(kinds.begin(), kinds.end());
  return r;
}

ordered_json FuzzReportToJson(const FuzzReport& r) {
  ordered_json j;
  j["seed"] = r.seed;
  j["field"] = FieldToJson(r.field);
  j["trials"] = r.trials;
  j["generation_errors"] = r.generation_errors;
  j["valid_count"] = r.valid_count;
  j["theorem_holds_count"] = r.theorem_holds_count;
  j["corollary_agreements"] = r.corollary_agreements;
  j["engine_oracle_agreements"] = r.engine_oracle_agreements;
  j["legal_not_full_holds"] = r.legal_not_full_holds;
  j["perturb_steps"] = r.perturb_steps;
  j["direct_checks"] = r.direct_checks;
  ordered_json rej;
  rej["attempts"] = r.rejection_attempts;
  rej["accepted"] = r.rejection_accepted;
  j["rejection_sampling"] = rej;
  ordered_json kinds = ordered_json::object();
  for (const auto& [name, count] : r.kind_counts) kinds[name] = count;
  j["kinds"] = kinds;
  j["counterexamples"] = CounterexamplesToJson(r.counterexamples);
  j["findings"] = CounterexamplesToJson(r.findings);
  return j;
}

std::uint64_t CensusSize(std::uint64_t p, std::size_t n, std::size_t d,
                         std::uint64_t budget) {
  if (!IsPrime(p)) throw InputError("census: " + std::to_string(p) +
                                    " is not prime");
  if (n < 1 || d < 1) throw InputError("census: n and d must be positive");
  const std::uint64_t digits = 2 * std::uint64_t{n} * d;
  std::uint64_t count = 1;
  for (std::uint64_t i = 0; i < digits; ++i) {
    if (count > budget / p) {
      throw InputError("census: " + std::to_string(p) + "^" +
                       std::to_string(digits) + " widgets exceeds the budget of " +
                       std::to_string(budget));
    }
    count *= p;
  }
  if (count > budget) {
    throw InputError("census: " + std::to_string(count) +
                     " widgets exceeds the budget of " +
                     std::to_string(budget));
  }
  return count;
}

Widget CensusWidget(Field field, std::size_t n, std::size_t d,
                    std::uint64_t index) {
  const std::uint64_t p = field.modulus();
  const std::size_t digits = 2 * n * d;
  std::vector<std::uint64_t> v(digits);
  for (std::size_t k = digits; k-- > 0;) {
    v[k] = index % p;
    index /= p;
  }
  std::vector<Pair> pairs(n);
  std::size_t k = 0;
  for (Pair& pair : pairs) {
    for (Point* pt : {&pair.plus, &pair.minus}) {
      pt->reserve(d);
      for (std::size_t c = 0; c < d; ++c) {
        pt->push_back(Scalar::FromResidue(field, v[k++]));
      }
    }
  }
  return Widget(field, d, std::move(pairs));
}

void EnumerateWidgetsGf(std::uint64_t p, std::size_t n, std::size_t d,
                        const std::function<void(const Widget&)>& fn,
                        std::uint64_t budget) {
  const std::uint64_t count = CensusSize(p, n, d, budget);
  const Field field = Field::Prime(p);
  for (std::uint64_t i = 0; i < count; ++i) fn(CensusWidget(field, n, d, i));
}

CensusReport RunCensus(std::uint64_t p, std::size_t n, std::size_t d,
                       bool proof_route, std::uint64_t budget) {
  CensusReport r;
  r.p = p;
  r.n = n;
  r.d = d;
  std::uint64_t index = 0;
  EnumerateWidgetsGf(
      p, n, d,
      [&](const Widget& w) {
        const InstanceCheck check = CheckInstance(w, proof_route);
        ++r.total;
        const Verdict v = check.validity.verdict;
        if (v != Verdict::kNotLegal) ++r.legal;
        if (check.full) ++r.full;
        if (v == Verdict::kValid) ++r.valid;
        if (check.minimal) ++r.has_legal_subwidget;
        if (check.theorem_fails) ++r.theorem_violations;
        if (check.engine_error) {
          ++r.engine_field_too_small;
        } else if (check.engine) {
          if (check.engine->verdict == Verdict::kLegalSubwidgetFound) {
            ++r.engine_found;
          } else if (check.engine->verdict == Verdict::kTheoremViolation) {
            ++r.engine_theorem_violation;
          }
        }
        if (!check.inconsistencies.empty()) {
          ++r.inconsistencies_count;
          if (r.inconsistencies.size() < CensusReport::kMaxStored) {
            r.inconsistencies.push_back({index, "census", w,
                                         FailureCertificate(check),
                                         check.inconsistencies, false});
          }
        } else if (!check.field_dependent_failures.empty()) {
          ++r.findings_count;
          if (r.findings.size() < CensusReport::kMaxStored) {
            Counterexample c{index, "census", w, FailureCertificate(check),
                             check.field_dependent_failures, false};
            if (check.theorem_fails) c.reverified = ReverifyTheoremViolation(w);
            r.findings.push_back(std::move(c));
          }
        }
        ++index;
      },
      budget);
  return r;
}

ordered_json CensusReportToJson(const CensusReport& r) {
  ordered_json j;
  j["prime"] = r.p;
  j["n"] = r.n;
  j["ambient_dim"] = r.d;
  j["total"] = r.total;
  j["legal"] = r.legal;
  j["full"] = r.full;
  j["valid"] = r.valid;
  j["has_legal_subwidget"] = r.has_legal_subwidget;
  j["theorem_violations"] = r.theorem_violations;
  ordered_json engine;
  engine["legal_subwidget_found"] = r.engine_found;
  engine["field_too_small"] = r.engine_field_too_small;
  engine["theorem_violation"] = r.engine_theorem_violation;
  j["engine"] = engine;
  j["findings_count"] = r.findings_count;
  j["inconsistencies_count"] = r.inconsistencies_count;
  j["findings"] = CounterexamplesToJson(r.findings);
  j["inconsistencies"] = CounterexamplesToJson(r.inconsistencies);
  return j;
}

}  // namespace widgetcalc
