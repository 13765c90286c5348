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

// Constructive legal-subwidget extraction by perturbation.
//
// Notation used below, for a widget of n pairs:
//   g    the positive section (every pair contributes its plus point);
//   g_i  g with pair i skipped;
//   s_i  the subwidget obtained by removing pair i;
//   k    the number of g_i spanning fewer than n - 1 dimensions.
//
// Replacing p_i^+ by p_i^+ + c * p_i^- preserves validity. Starting from a
// valid widget in which some g_j spans n - 1, each reduction step either
// exposes a legal s_i (all points of s_i lie in the (n - 2)-space q spanned
// by a deficient g_i) or perturbs one plus point so that a deficient g_i
// reaches n - 1 while no g_m loses dimension. k = 0 together with validity
// is impossible, so the loop ends with a legal subwidget.

#ifndef WIDGETCALC_PROOF_ENGINE_H_
#define WIDGETCALC_PROOF_ENGINE_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "widgetcalc/certificate.h"
#include "widgetcalc/exact_linalg.h"
#include "widgetcalc/widget.h"

namespace widgetcalc {

Section PositiveSection(std::size_t n);
// Throws InputError unless i < n.
Section DeletedPositiveSection(std::size_t n, std::size_t i);

struct KStatistic {
  std::size_t k = 0;
  // section_dims[i] = span_dim(g_i).
  std::vector<std::size_t> section_dims;
};

KStatistic ComputeKStatistic(const Widget& w);

// p_i^+ <- p_i^+ + c * p_i^-. Throws InputError unless i < n and c is in the
// widget's field.
Widget Perturb(const Widget& w, std::size_t i, const Scalar& c);

// t-th constant of the deterministic sweep: 1, -1, 2, -2, ... over the
// rationals; 1, 2, ..., p - 1 over GF(p).
Scalar SweepConstant(Field field, std::uint64_t t);

// Number of sweep constants tried per candidate pair. Over the rationals at
// most n - 2 constants can be rejected for a usable pair, so 2n + 2 is
// never the binding limit; over GF(p) it is p - 1.
std::uint64_t SweepLength(Field field, std::size_t n);

struct StepOutcome {
  enum class Kind { kBranchSubwidgetFound, kPerturbed };

  Kind kind = Kind::kBranchSubwidgetFound;
  // The deficient positive section that was processed.
  std::size_t target_section = 0;
  // Branch: s_{target_section}. Perturbed: empty.
  std::optional<SubwidgetSel> subwidget;
  // Branch: true when the subwidget was confirmed by a direct legality
  // check because no opposite-in-q branch or perturbation applied.
  bool direct_check = false;
  // Perturbed: the pair whose plus point moved, the constant, the result.
  std::optional<std::size_t> perturbed_pair;
  std::optional<Scalar> c;
  std::optional<Widget> widget;
  std::uint64_t rejected_c = 0;
  KStatistic before;
  KStatistic after;
};

// One reduction step. Preconditions: k > 0 and some g_j spans n - 1
// (ContractError otherwise). Throws FieldTooSmall when no pair and sweep
// constant raise a deficient section.
StepOutcome ReduceKStep(const Widget& w);

struct EngineOptions {
  // Return immediately when some s_i is already legal. With the shortcut
  // off the engine relabels from an illegal s_i whenever one exists and runs
  // the reduction loop to completion.
  bool entry_shortcut = true;
};

struct ProofRun {
  Certificate certificate;
  // intermediates[t] is the widget after trace step t.
  std::vector<Widget> intermediates;
};

// Full run. Not-valid inputs return their IsValid certificate. Otherwise
// the result is LegalSubwidgetFound (re-verified against the input) or
// TheoremViolation, always with a trace. FieldTooSmall propagates.
ProofRun RunProof(const Widget& w, EngineOptions options = {});

Certificate ExtractLegalSubwidget(const Widget& w, EngineOptions options = {});

// Re-applies the Relabel and Perturb steps of `trace` to `input`, checks
// each recorded k_after and section_dims against a fresh computation, and
// returns the widget after every step. Throws ContractError on mismatch.
std::vector<Widget> ReplayTrace(const Widget& input,
                                std::span<const ProofStep> trace);

}  // namespace widgetcalc

#endif  // WIDGETCALC_PROOF_ENGINE_H_
