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

#ifndef WIDGETCALC_CERTIFICATE_H_
#define WIDGETCALC_CERTIFICATE_H_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "widgetcalc/exact_linalg.h"
#include "widgetcalc/widget.h"

namespace widgetcalc {

enum class Verdict {
  kValid,
  kNotLegal,
  kNotFull,
  kLegalSubwidgetFound,
  kTheoremViolation,
};

std::string VerdictName(Verdict v);

// One step of a proof-engine run. Indices refer to the widget as it stands
// when the step is taken (after any earlier relabeling).
struct ProofStep {
  enum class Kind { kRelabel, kPerturb, kBranchSubwidgetFound, kKZero };

  Kind kind = Kind::kKZero;
  // Perturb: the pair whose plus point moved. BranchSubwidgetFound: the pair
  // removed to form the subwidget.
  std::optional<std::size_t> pair_index;
  // Perturb: the deficient positive section that was raised.
  std::optional<std::size_t> target_section;
  std::optional<Scalar> c;
  std::size_t k_before = 0;
  std::size_t k_after = 0;
  // span_dim of each deleted positive section g_j after the step.
  std::vector<std::size_t> section_dims;
  std::optional<Relabeling> relabeling;
  std::optional<SubwidgetSel> subwidget;
  // Constants rejected by the sweep before `c` was accepted.
  std::size_t rejected_c = 0;
  // BranchSubwidgetFound: the subwidget was confirmed by a direct legality
  // check rather than by all opposites lying in q.
  bool direct_check = false;

  bool operator==(const ProofStep&) const = default;
};

std::string ProofStepKindName(ProofStep::Kind k);

struct Certificate {
  Verdict verdict = Verdict::kValid;
  // NotLegal: a maximal section spanning at least n dimensions.
  std::optional<Section> witness_section;
  // LegalSubwidgetFound: the legal subwidget, in the input's labeling.
  std::optional<SubwidgetSel> subwidget;
  std::optional<std::vector<ProofStep>> trace;

  bool operator==(const Certificate&) const = default;
};

}  // namespace widgetcalc

#endif  // WIDGETCALC_CERTIFICATE_H_
