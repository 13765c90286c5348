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

#include "widgetcalc/proof_engine.h"

#include <algorithm>
#include <string>
#include <utility>

#include "widgetcalc/checkers.h"
#include "widgetcalc/errors.h"

namespace widgetcalc {
namespace {

// Points of g_i, excluding pair `also_skip` as well when it is set.
std::vector<std::size_t> DeletedPositiveIndices(
    std::size_t n, std::size_t i,
    std::optional<std::size_t> also_skip = std::nullopt) {
  std::vector<std::size_t> idx;
  idx.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (j != i && j != also_skip) idx.push_back(PointIndex(j, Choice::kPlus));
  }
  return idx;
}

// Shorthand for the step a StepOutcome or relabeling produced.
ProofStep MakeStep(ProofStep::Kind kind, const KStatistic& before,
                   const KStatistic& after) {
  ProofStep s;
  s.kind = kind;
  s.k_before = before.k;
  s.k_after = after.k;
  s.section_dims = after.section_dims;
  return s;
}

#ifndef NDEBUG
void DebugCheckStillValid(const Widget& w) {
  if (w.size() <= 8 && IsValid(w).verdict != Verdict::kValid) {
    throw ContractError("perturbation broke validity");
  }
}
#endif

}  // namespace

Section PositiveSection(std::size_t n) {
  Section s;
  s.choices.assign(n, Choice::kPlus);
  return s;
}

Section DeletedPositiveSection(std::size_t n, std::size_t i) {
  if (i >= n) {
    throw InputError("positive section index " + std::to_string(i + 1) +
                     " out of range for n = " + std::to_string(n));
  }
  Section s = PositiveSection(n);
  s.choices[i] = Choice::kSkip;
  return s;
}

KStatistic ComputeKStatistic(const Widget& w) {
  const std::size_t n = w.size();
  const WidgetRanks ranks(w);
  KStatistic ks;
  ks.section_dims.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t dim = ranks.SectionRank(DeletedPositiveSection(n, i));
    ks.section_dims.push_back(dim);
    if (dim + 1 < n) ++ks.k;
  }
  return ks;
}

Widget Perturb(const Widget& w, std::size_t i, const Scalar& c) {
  if (i >= w.size()) {
    throw InputError("perturbation index " + std::to_string(i + 1) +
                     " out of range for n = " + std::to_string(w.size()));
  }
  if (!(c.field() == w.field())) {
    throw InputError("perturbation constant is over a different field");
  }
  std::vector<Pair> pairs = w.pairs();
  pairs[i].plus = pairs[i].plus + c * pairs[i].minus;
  return Widget(w.field(), w.ambient_dim(), std::move(pairs));
}

Scalar SweepConstant(Field field, std::uint64_t t) {
  if (field.is_rational()) {
    const auto magnitude = static_cast<long long>(t / 2 + 1);
    return Scalar::FromInt(field, t % 2 == 0 ? magnitude : -magnitude);
  }
  return Scalar::FromResidue(field, t % (field.modulus() - 1) + 1);
}

std::uint64_t SweepLength(Field field, std::size_t n) {
  return field.is_rational() ? 2 * n + 2 : field.modulus() - 1;
}

StepOutcome ReduceKStep(const Widget& w) {
  const std::size_t n = w.size();
  if (n < 2) throw ContractError("reduction step needs at least two pairs");
  if (IsValid(w).verdict != Verdict::kValid) {
    throw ContractError("reduction step needs a valid widget");
  }
  const KStatistic before = ComputeKStatistic(w);
  if (before.k == 0) throw ContractError("reduction step called with k = 0");
  const auto& dims = before.section_dims;
  if (std::none_of(dims.begin(), dims.end(),
                   [&](std::size_t d) { return d == n - 1; })) {
    throw ContractError("no positive section g_j spans n - 1 dimensions");
  }

  std::vector<std::size_t> deficient;
  for (std::size_t i = 0; i < n; ++i) {
    if (dims[i] + 1 < n) deficient.push_back(i);
  }

  const WidgetRanks ranks(w);
  // opposite_in_q[t][j]: p_j^- lies in span(g_i) for i = deficient[t].
  std::vector<std::vector<bool>> opposite_in_q;
  for (std::size_t i : deficient) {
    if (dims[i] != n - 2) {
      throw ContractError("deficient section g_" + std::to_string(i + 1) +
                          " spans fewer than n - 2 dimensions");
    }
    const std::vector<Point> q = SectionPoints(w, DeletedPositiveSection(n, i));
    std::vector<Point> opposites;
    for (std::size_t j = 0; j < n; ++j) {
      opposites.push_back(j == i ? ZeroPoint(w.field(), w.ambient_dim())
                                 : w.pair(j).minus);
    }
    opposite_in_q.push_back(IncrementalRankProbe(q, opposites));
    if (std::all_of(opposite_in_q.back().begin(), opposite_in_q.back().end(),
                    [](bool b) { return b; })) {
      StepOutcome out;
      out.kind = StepOutcome::Kind::kBranchSubwidgetFound;
      out.target_section = i;
      out.subwidget = SubwidgetSel::AllBut(n, i);
      out.before = before;
      out.after = before;
      return out;
    }
  }

  std::uint64_t rejected = 0;
  const std::uint64_t sweep = SweepLength(w.field(), n);
  for (std::size_t t = 0; t < deficient.size(); ++t) {
    const std::size_t i = deficient[t];
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i || opposite_in_q[t][j]) continue;
      // p_j^+ must be redundant in g_i: otherwise span(g_i) stays
      // (n - 2)-dimensional for every c.
      if (ranks.PointsRank(DeletedPositiveIndices(n, i, j)) != n - 2) {
        continue;
      }
      for (std::uint64_t s = 0; s < sweep; ++s) {
        const Scalar c = SweepConstant(w.field(), s);
        Widget candidate = Perturb(w, j, c);
        KStatistic after = ComputeKStatistic(candidate);
        bool ok = after.section_dims[i] == n - 1;
        for (std::size_t m = 0; ok && m < n; ++m) {
          ok = after.section_dims[m] >= dims[m];
        }
        if (!ok) {
          ++rejected;
          continue;
        }
#ifndef NDEBUG
        DebugCheckStillValid(candidate);
#endif
        StepOutcome out;
        out.kind = StepOutcome::Kind::kPerturbed;
        out.target_section = i;
        out.perturbed_pair = j;
        out.c = c;
        out.widget = std::move(candidate);
        out.rejected_c = rejected;
        out.before = before;
        out.after = std::move(after);
        return out;
      }
    }
  }

  // Every pair whose opposite leaves q is essential in g_i. Perturbation
  // cannot raise g_i then; fall back to deciding s_i directly.
  for (std::size_t i : deficient) {
    SubwidgetSel sel = SubwidgetSel::AllBut(n, i);
    if (IsLegalSubwidget(w, sel)) {
      StepOutcome out;
      out.kind = StepOutcome::Kind::kBranchSubwidgetFound;
      out.target_section = i;
      out.subwidget = std::move(sel);
      out.direct_check = true;
      out.before = before;
      out.after = before;
      return out;
    }
  }
  throw FieldTooSmall(
      w.field().is_rational() ? 0 : w.field().modulus(), rejected,
      rejected == 0 ? "no perturbable pair raises a deficient positive section"
                    : "every swept constant lowered some positive section");
}

ProofRun RunProof(const Widget& w, EngineOptions options) {
  ProofRun run;
  Certificate validity = IsValid(w);
  if (validity.verdict != Verdict::kValid) {
    run.certificate = std::move(validity);
    return run;
  }
  const std::size_t n = w.size();
  std::vector<ProofStep> trace;
  const KStatistic initial = ComputeKStatistic(w);

  auto finish_found = [&](const SubwidgetSel& original) {
    if (!IsLegalSubwidget(w, original)) {
      throw ContractError("engine produced a subwidget that is not legal");
    }
    run.certificate.verdict = Verdict::kLegalSubwidgetFound;
    run.certificate.subwidget = original;
    run.certificate.trace = std::move(trace);
  };
  auto entry_step = [&](std::size_t removed) {
    ProofStep s = MakeStep(ProofStep::Kind::kBranchSubwidgetFound, initial,
                           initial);
    s.pair_index = removed;
    s.subwidget = SubwidgetSel::AllBut(n, removed);
    trace.push_back(s);
    run.intermediates.push_back(w);
    finish_found(*s.subwidget);
  };

  if (n < 2) {
    // No subwidget exists; a valid one-pair widget contradicts the k = 0
    // endgame directly.
    trace.push_back(MakeStep(ProofStep::Kind::kKZero, initial, initial));
    run.intermediates.push_back(w);
    run.certificate.verdict = Verdict::kTheoremViolation;
    run.certificate.trace = std::move(trace);
    return run;
  }

  const WidgetRanks ranks(w);
  if (options.entry_shortcut) {
    for (std::size_t i = 0; i < n; ++i) {
      const SubwidgetSel sel = SubwidgetSel::AllBut(n, i);
      if (ranks.MaximalSectionsWithin(sel.indices(), n - 2, nullptr)) {
        entry_step(i);
        return run;
      }
    }
  }

  // Relabel so that some maximal section of an illegal s_i becomes g_n.
  std::optional<Relabeling> relabeling;
  for (std::size_t i = 0; i < n && !relabeling; ++i) {
    const SubwidgetSel sel = SubwidgetSel::AllBut(n, i);
    std::vector<Choice> witness;
    if (ranks.MaximalSectionsWithin(sel.indices(), n - 2, &witness)) continue;
    Relabeling r;
    for (std::size_t t = 0; t < sel.size(); ++t) {
      r.order.push_back(sel.indices()[t]);
      r.flip.push_back(witness[t] == Choice::kMinus);
    }
    r.order.push_back(i);
    r.flip.push_back(false);
    relabeling = std::move(r);
  }
  if (!relabeling) {
    // Every s_i spans at most n - 2 in each section: s_1 is legal.
    entry_step(0);
    return run;
  }

  Widget current = Relabel(w, *relabeling);
  KStatistic ks = ComputeKStatistic(current);
  {
    ProofStep s = MakeStep(ProofStep::Kind::kRelabel, initial, ks);
    s.relabeling = relabeling;
    trace.push_back(std::move(s));
    run.intermediates.push_back(current);
  }

  std::size_t perturbations = 0;
  while (true) {
    if (ks.k == 0) {
      trace.push_back(MakeStep(ProofStep::Kind::kKZero, ks, ks));
      run.intermediates.push_back(current);
      run.certificate.verdict = Verdict::kTheoremViolation;
      run.certificate.trace = std::move(trace);
      return run;
    }
    StepOutcome out = ReduceKStep(current);
    if (out.kind == StepOutcome::Kind::kBranchSubwidgetFound) {
      ProofStep s = MakeStep(ProofStep::Kind::kBranchSubwidgetFound,
                             out.before, out.after);
      s.pair_index = out.target_section;
      s.target_section = out.target_section;
      s.subwidget = out.subwidget;
      s.direct_check = out.direct_check;
      trace.push_back(s);
      run.intermediates.push_back(current);
      finish_found(relabeling->MapBack(*out.subwidget));
      return run;
    }
    if (out.after.k >= out.before.k) {
      throw ContractError("perturbation did not lower k");
    }
    if (++perturbations > n) {
      throw ContractError("more than n perturbation steps");
    }
    ProofStep s = MakeStep(ProofStep::Kind::kPerturb, out.before, out.after);
    s.pair_index = out.perturbed_pair;
    s.target_section = out.target_section;
    s.c = out.c;
    s.rejected_c = out.rejected_c;
    trace.push_back(std::move(s));
    current = std::move(*out.widget);
    ks = std::move(out.after);
    run.intermediates.push_back(current);
  }
}

Certificate ExtractLegalSubwidget(const Widget& w, EngineOptions options) {
  return RunProof(w, options).certificate;
}

std::vector<Widget> ReplayTrace(const Widget& input,
                                std::span<const ProofStep> trace) {
  std::vector<Widget> out;
  Widget current = input;
  for (std::size_t t = 0; t < trace.size(); ++t) {
    const ProofStep& step = trace[t];
    switch (step.kind) {
      case ProofStep::Kind::kRelabel:
        if (!step.relabeling) {
          throw ContractError("Relabel step without a relabeling");
        }
        current = Relabel(current, *step.relabeling);
        break;
      case ProofStep::Kind::kPerturb:
        if (!step.pair_index || !step.c) {
          throw ContractError("Perturb step without index or constant");
        }
        current = Perturb(current, *step.pair_index, *step.c);
        break;
      case ProofStep::Kind::kBranchSubwidgetFound:
      case ProofStep::Kind::kKZero:
        break;
    }
    const KStatistic ks = ComputeKStatistic(current);
    if (ks.k != step.k_after || ks.section_dims != step.section_dims) {
      throw ContractError("trace step " + std::to_string(t + 1) +
                          " does not replay");
    }
    out.push_back(current);
  }
  return out;
}

}  // namespace widgetcalc
