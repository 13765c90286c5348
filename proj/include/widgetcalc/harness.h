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

// Fuzz and exhaustive-census harnesses.
//
// Both run every decision procedure on each instance and cross-check them:
// validity vs. the brute-force subwidget search, the proof engine vs. the
// search, and the minimal legal subwidget vs. fullness. Over the rationals
// any disagreement is a counterexample. Over GF(p) a valid widget without a
// legal subwidget is recorded as a finding; only inconsistencies between
// procedures count as counterexamples there.

#ifndef WIDGETCALC_HARNESS_H_
#define WIDGETCALC_HARNESS_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "widgetcalc/certificate.h"
#include "widgetcalc/exact_linalg.h"
#include "widgetcalc/generators.h"
#include "widgetcalc/widget.h"

namespace widgetcalc {

// Everything learned about one widget by running all procedures on it.
struct InstanceCheck {
  Certificate validity;
  bool full = false;
  std::optional<SubwidgetSel> minimal;
  std::optional<SubwidgetSel> legal_not_full;
  bool biconditional_agrees = true;
  // Engine results: default mode, then with the entry shortcut off.
  std::optional<Certificate> engine;
  std::optional<Certificate> engine_proof_route;
  std::size_t perturb_steps = 0;
  std::size_t direct_checks = 0;
  // Set when the engine threw FieldTooSmall.
  std::optional<std::string> engine_error;
  // Valid widget without any legal subwidget.
  bool theorem_fails = false;
  // Failed cross-checks that are inconsistencies in any field.
  std::vector<std::string> inconsistencies;
  // Failed statements that only need to hold over infinite fields.
  std::vector<std::string> field_dependent_failures;
};

// Runs every procedure on w. `proof_route` also runs the engine with the
// entry shortcut disabled.
InstanceCheck CheckInstance(const Widget& w, bool proof_route);

struct Counterexample {
  std::uint64_t trial = 0;
  std::string kind;
  Widget widget;
  Certificate certificate;
  std::vector<std::string> reasons;
  // Theorem failures only: confirmed by the definition-level recheck.
  bool reverified = false;
};

struct FuzzConfig {
  std::size_t n_min = 2;
  std::size_t n_max = 6;
  // d = n + extra with extra in [d_extra_min, d_extra_max], unless d_fixed.
  std::size_t d_extra_min = 0;
  std::size_t d_extra_max = 2;
  std::optional<std::size_t> d_fixed;
  Field field;
  std::int64_t bound = 3;
  std::uint64_t seed = 0;
  // Relative weights of the generator kinds drawn per trial.
  std::vector<std::pair<GenKind, unsigned>> kinds = {
      {GenKind::kValidPlanted, 1}, {GenKind::kValidRejection, 1}};
  bool proof_route = true;
};

// Per-trial generator configuration: trial t uses seed
// SplitMix64(cfg.seed).Split(t), so any trial replays on its own.
GenConfig TrialConfig(const FuzzConfig& cfg, std::uint64_t trial);

struct FuzzReport {
  std::uint64_t seed = 0;
  Field field;
  std::uint64_t trials = 0;
  std::uint64_t generation_errors = 0;
  std::uint64_t valid_count = 0;
  std::uint64_t theorem_holds_count = 0;
  std::uint64_t corollary_agreements = 0;
  std::uint64_t engine_oracle_agreements = 0;
  std::uint64_t legal_not_full_holds = 0;
  std::uint64_t perturb_steps = 0;
  std::uint64_t direct_checks = 0;
  std::uint64_t rejection_attempts = 0;
  std::uint64_t rejection_accepted = 0;
  std::vector<std::pair<std::string, std::uint64_t>> kind_counts;
  std::vector<Counterexample> counterexamples;
  // GF(p) only: valid widgets without a legal subwidget and similar.
  std::vector<Counterexample> findings;
};

// Progress callback receives (trials done, total).
FuzzReport FuzzTheorem(
    const FuzzConfig& cfg, std::uint64_t trials,
    const std::function<void(std::uint64_t, std::uint64_t)>& progress = {});

nlohmann::ordered_json FuzzReportToJson(const FuzzReport& r);

// Census over all widgets in GF(p)^d with n pairs.
inline constexpr std::uint64_t kCensusBudget = std::uint64_t{1} << 28;

// p^(2nd). Throws InputError when it exceeds `budget`.
std::uint64_t CensusSize(std::uint64_t p, std::size_t n, std::size_t d,
                         std::uint64_t budget = kCensusBudget);

// The index-th widget in lexicographic order: the base-p digits of index,
// most significant first, fill p_1^+, p_1^-, p_2^+, ... coordinate by
// coordinate.
Widget CensusWidget(Field field, std::size_t n, std::size_t d,
                    std::uint64_t index);

// Calls fn on every widget in lexicographic order.
void EnumerateWidgetsGf(std::uint64_t p, std::size_t n, std::size_t d,
                        const std::function<void(const Widget&)>& fn,
                        std::uint64_t budget = kCensusBudget);

struct CensusReport {
  std::uint64_t p = 0;
  std::size_t n = 0;
  std::size_t d = 0;
  std::uint64_t total = 0;
  std::uint64_t legal = 0;
  std::uint64_t full = 0;
  std::uint64_t valid = 0;
  std::uint64_t has_legal_subwidget = 0;
  std::uint64_t theorem_violations = 0;
  std::uint64_t engine_found = 0;
  std::uint64_t engine_field_too_small = 0;
  std::uint64_t engine_theorem_violation = 0;
  std::uint64_t findings_count = 0;
  std::uint64_t inconsistencies_count = 0;
  // Up to kMaxStored of each, in enumeration order.
  std::vector<Counterexample> findings;
  std::vector<Counterexample> inconsistencies;

  static constexpr std::size_t kMaxStored = 16;
};

CensusReport RunCensus(std::uint64_t p, std::size_t n, std::size_t d,
                       bool proof_route = false,
                       std::uint64_t budget = kCensusBudget);

nlohmann::ordered_json CensusReportToJson(const CensusReport& r);

// Definition-level re-verification of a finding: legal over all 3^n
// sections, full, and no proper subwidget legal over all of its sections.
bool ReverifyTheoremViolation(const Widget& w);

}  // namespace widgetcalc

#endif  // WIDGETCALC_HARNESS_H_
