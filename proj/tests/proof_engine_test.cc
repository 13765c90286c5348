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

#include <gtest/gtest.h>

#include <cstddef>
#include <string>
#include <vector>

#include "test_util.h"
#include "widgetcalc/checkers.h"
#include "widgetcalc/errors.h"
#include "widgetcalc/generators.h"
#include "widgetcalc/json_io.h"
#include "widgetcalc/rng.h"

namespace widgetcalc {
namespace {

using testing::DiagonalPairs;
using testing::MakeWidget;
using testing::Pt;
using testing::W2;
using testing::W3;

constexpr Choice P = Choice::kPlus;
constexpr Choice S = Choice::kSkip;

const Field kQ = Field::Rational();

Widget Fixture(const std::string& name) {
  return ReadWidgetFile(std::string(WIDGETCALC_FIXTURE_DIR) + "/" + name);
}

std::size_t CountKind(const std::vector<ProofStep>& trace,
                      ProofStep::Kind kind) {
  std::size_t count = 0;
  for (const ProofStep& s : trace) count += s.kind == kind;
  return count;
}

TEST(PositiveSectionTest, Examples) {
  EXPECT_EQ(DeletedPositiveSection(3, 1).choices,
            (std::vector<Choice>{P, S, P}));
  EXPECT_EQ(SectionPoints(W3(), DeletedPositiveSection(3, 2)),
            (std::vector<Point>{Pt({1, 0, 0}), Pt({3, 0, 0})}));
  EXPECT_EQ(SectionPoints(W3(), PositiveSection(3)),
            (std::vector<Point>{Pt({1, 0, 0}), Pt({3, 0, 0}), Pt({0, 1, 0})}));
  EXPECT_THROW(DeletedPositiveSection(3, 3), InputError);
}

TEST(KStatisticTest, Examples) {
  const KStatistic w3 = ComputeKStatistic(W3());
  EXPECT_EQ(w3.k, 1u);
  EXPECT_EQ(w3.section_dims, (std::vector<std::size_t>{2, 2, 1}));
  const Widget same_plus = MakeWidget(3, {{{1, 0, 0}, {1, 0, 0}},
                                          {{1, 0, 0}, {0, 1, 0}},
                                          {{1, 0, 0}, {0, 0, 1}}});
  EXPECT_EQ(ComputeKStatistic(same_plus).k, 3u);
  const Widget two = MakeWidget(2, {{{1, 0}, {5, 5}}, {{0, 1}, {0, 0}}});
  EXPECT_EQ(ComputeKStatistic(two).k, 0u);
}

TEST(PerturbTest, Examples) {
  const Widget w = W3();
  EXPECT_EQ(Perturb(w, 0, Scalar::Zero(kQ)), w);
  const Widget moved = Perturb(w, 2, Scalar::FromInt(kQ, 5));
  EXPECT_EQ(moved.pair(2).plus, Pt({0, 1, 5}));
  EXPECT_EQ(moved.pair(0), w.pair(0));
  EXPECT_EQ(moved.pair(1), w.pair(1));
  EXPECT_EQ(IsValid(moved).verdict, Verdict::kValid);
  EXPECT_EQ(Perturb(moved, 2, Scalar::FromInt(kQ, -5)), w);
  EXPECT_THROW(Perturb(w, 3, Scalar::One(kQ)), InputError);
  EXPECT_THROW(Perturb(w, 0, Scalar::One(Field::Prime(3))), InputError);
}

TEST(PerturbTest, PreservesValidityAndInverts) {
  SplitMix64 rng(41);
  for (int trial = 0; trial < 60; ++trial) {
    GenConfig cfg;
    cfg.n = 2 + rng.Index(4);
    cfg.d = cfg.n + rng.Index(2);
    cfg.field = trial % 4 == 0 ? Field::Prime(5) : kQ;
    cfg.kind = trial % 2 ? GenKind::kValidPlanted : GenKind::kValidRejection;
    cfg.seed = rng.Next();
    const Widget w = Generate(cfg);
    for (std::size_t i = 0; i < w.size(); ++i) {
      for (int rep = 0; rep < 100; ++rep) {
        const Scalar c = cfg.field.is_rational()
                             ? Scalar::FromRational(mpq_class(
                                   rng.UniformInt(-50, 50),
                                   rng.UniformInt(1, 7)))
                             : RandomScalar(cfg.field, 1, rng);
        const Widget moved = Perturb(w, i, c);
        ASSERT_EQ(IsValid(moved).verdict, Verdict::kValid);
        ASSERT_EQ(Perturb(moved, i, -c), w);
      }
    }
  }
}

TEST(SweepTest, Order) {
  std::vector<std::string> got;
  for (std::uint64_t t = 0; t < 6; ++t) {
    got.push_back(SweepConstant(kQ, t).ToString());
  }
  EXPECT_EQ(got, (std::vector<std::string>{"1", "-1", "2", "-2", "3", "-3"}));
  const Field f5 = Field::Prime(5);
  for (std::uint64_t t = 0; t < 4; ++t) {
    EXPECT_EQ(SweepConstant(f5, t).residue(), t + 1);
  }
  EXPECT_EQ(SweepLength(f5, 9), 4u);
  EXPECT_EQ(SweepLength(kQ, 4), 10u);
}

TEST(ReduceKStepTest, W3TakesBranchA) {
  const StepOutcome out = ReduceKStep(W3());
  EXPECT_EQ(out.kind, StepOutcome::Kind::kBranchSubwidgetFound);
  EXPECT_EQ(out.target_section, 2u);
  ASSERT_TRUE(out.subwidget.has_value());
  EXPECT_EQ(*out.subwidget, SubwidgetSel({0, 1}, 3));
  EXPECT_FALSE(out.direct_check);
  // q = span{e1} holds both opposites.
  const std::vector<Point> q = {Pt({1, 0, 0}), Pt({3, 0, 0})};
  EXPECT_TRUE(InSpan(Pt({2, 0, 0}), q));
  EXPECT_TRUE(InSpan(Pt({1, 0, 0}), q));
}

TEST(ReduceKStepTest, PinnedBranchB) {
  const Widget w = Fixture("branch_b.json");
  ASSERT_EQ(IsValid(w).verdict, Verdict::kValid);
  const StepOutcome out = ReduceKStep(w);
  ASSERT_EQ(out.kind, StepOutcome::Kind::kPerturbed);
  EXPECT_EQ(out.before.k, 3u);
  EXPECT_EQ(out.after.k, 2u);
  EXPECT_EQ(*out.perturbed_pair, 0u);
  EXPECT_EQ(out.c->ToString(), "1");
  EXPECT_EQ(out.rejected_c, 0u);
  // Post-checks: the target rises to n - 1, nothing else drops.
  const std::size_t n = w.size();
  EXPECT_EQ(out.after.section_dims[out.target_section], n - 1);
  for (std::size_t m = 0; m < n; ++m) {
    EXPECT_GE(out.after.section_dims[m], out.before.section_dims[m]);
  }
  EXPECT_EQ(*out.widget, Perturb(w, 0, *out.c));
  EXPECT_EQ(IsValid(*out.widget).verdict, Verdict::kValid);
  EXPECT_EQ(ComputeKStatistic(*out.widget).k, 2u);
}

TEST(ReduceKStepTest, PinnedBranchBRejectsAConstant) {
  const Widget w = Fixture("branch_b_rejected.json");
  ASSERT_EQ(IsValid(w).verdict, Verdict::kValid);
  const StepOutcome out = ReduceKStep(w);
  ASSERT_EQ(out.kind, StepOutcome::Kind::kPerturbed);
  EXPECT_EQ(*out.perturbed_pair, 0u);
  EXPECT_EQ(out.rejected_c, 1u);
  EXPECT_EQ(out.c->ToString(), "-1");
  EXPECT_EQ(out.before.k, 3u);
  EXPECT_EQ(out.after.k, 2u);
  // c = 1 is the rejected one: it fails one of the post-checks.
  const KStatistic bad =
      ComputeKStatistic(Perturb(w, 0, Scalar::One(kQ)));
  bool fails = bad.section_dims[out.target_section] != w.size() - 1;
  for (std::size_t m = 0; m < w.size(); ++m) {
    fails = fails || bad.section_dims[m] < out.before.section_dims[m];
  }
  EXPECT_TRUE(fails);
}

TEST(ReduceKStepTest, ContractErrors) {
  // k = 0 never happens on a valid widget, so this one is not legal.
  const Widget k0 = MakeWidget(2, {{{1, 0}, {0, 0}}, {{0, 1}, {0, 0}}});
  ASSERT_EQ(ComputeKStatistic(k0).k, 0u);
  EXPECT_THROW(ReduceKStep(k0), ContractError);
  EXPECT_THROW(ReduceKStep(DiagonalPairs()), ContractError);
}

TEST(FieldTooSmallTest, Carries) {
  const FieldTooSmall e(7, 12, "detail");
  EXPECT_EQ(e.modulus(), 7u);
  EXPECT_EQ(e.bad_c_count(), 12u);
  EXPECT_NE(std::string(e.what()).find("GF(7)"), std::string::npos);
  EXPECT_NE(std::string(e.what()).find("12"), std::string::npos);
}

TEST(RunProofTest, W3OneStepTrace) {
  const Certificate c = ExtractLegalSubwidget(W3());
  EXPECT_EQ(c.verdict, Verdict::kLegalSubwidgetFound);
  EXPECT_EQ(*c.subwidget, SubwidgetSel({0, 1}, 3));
  ASSERT_TRUE(c.trace.has_value());
  ASSERT_EQ(c.trace->size(), 1u);
  EXPECT_EQ((*c.trace)[0].kind, ProofStep::Kind::kBranchSubwidgetFound);
  EXPECT_EQ((*c.trace)[0].section_dims, (std::vector<std::size_t>{2, 2, 1}));
}

TEST(RunProofTest, W3ProofRouteAgrees) {
  const Certificate c = ExtractLegalSubwidget(W3(), EngineOptions{false});
  EXPECT_EQ(c.verdict, Verdict::kLegalSubwidgetFound);
  EXPECT_EQ(*c.subwidget, SubwidgetSel({0, 1}, 3));
}

TEST(RunProofTest, W2EntryStep) {
  const Certificate c = ExtractLegalSubwidget(W2());
  EXPECT_EQ(c.verdict, Verdict::kLegalSubwidgetFound);
  EXPECT_EQ(*c.subwidget, SubwidgetSel({0}, 2));
  ASSERT_EQ(c.trace->size(), 1u);
  EXPECT_EQ(*(*c.trace)[0].pair_index, 1u);
}

TEST(RunProofTest, InvalidInputsReturnTheirCertificate) {
  const Certificate diag = ExtractLegalSubwidget(DiagonalPairs());
  EXPECT_EQ(diag.verdict, Verdict::kNotLegal);
  EXPECT_FALSE(diag.trace.has_value());
  EXPECT_EQ(diag, IsValid(DiagonalPairs()));
  EXPECT_EQ(ExtractLegalSubwidget(testing::ZeroWidget(2, 2)).verdict,
            Verdict::kNotFull);
}

TEST(RunProofTest, PinnedBranchBProofRoute) {
  for (const char* name : {"branch_b.json", "branch_b_rejected.json"}) {
    const Widget w = Fixture(name);
    const ProofRun run = RunProof(w, EngineOptions{false});
    const Certificate& c = run.certificate;
    ASSERT_EQ(c.verdict, Verdict::kLegalSubwidgetFound) << name;
    EXPECT_TRUE(IsLegalSubwidget(w, *c.subwidget));
    EXPECT_GE(CountKind(*c.trace, ProofStep::Kind::kPerturb), 1u) << name;
    EXPECT_EQ(ReplayTrace(w, *c.trace), run.intermediates);
  }
}

TEST(RunProofTest, TamperedTraceFailsReplay) {
  const Widget w = Fixture("branch_b.json");
  ProofRun run = RunProof(w, EngineOptions{false});
  std::vector<ProofStep> trace = *run.certificate.trace;
  for (ProofStep& s : trace) {
    if (s.kind == ProofStep::Kind::kPerturb) {
      s.c = *s.c + Scalar::FromInt(kQ, 1000);
      s.k_after += 5;
    }
  }
  EXPECT_THROW(ReplayTrace(w, trace), ContractError);
}

TEST(EngineProperties, SoundOnGeneratedValidWidgets) {
  SplitMix64 rng(42);
  std::size_t perturbed_runs = 0;
  for (int trial = 0; trial < 400; ++trial) {
    GenConfig cfg;
    cfg.n = 2 + rng.Index(4);
    cfg.d = cfg.n + rng.Index(3);
    cfg.kind = trial % 2 ? GenKind::kValidPlanted : GenKind::kValidRejection;
    cfg.seed = rng.Next();
    const Widget w = Generate(cfg);
    const bool exists = !FindLegalSubwidget(w, SearchMode::kMinimal).empty();
    for (bool shortcut : {true, false}) {
      const ProofRun run = RunProof(w, EngineOptions{shortcut});
      const Certificate& c = run.certificate;
      ASSERT_EQ(c.verdict, Verdict::kLegalSubwidgetFound);
      EXPECT_TRUE(exists);
      EXPECT_TRUE(IsLegalSubwidget(w, *c.subwidget));
      const std::size_t perturbs = CountKind(*c.trace, ProofStep::Kind::kPerturb);
      EXPECT_LE(perturbs, w.size());
      perturbed_runs += perturbs > 0;
      EXPECT_EQ(ReplayTrace(w, *c.trace), run.intermediates);
      std::size_t prev_k = SIZE_MAX;
      for (const ProofStep& s : *c.trace) {
        if (s.kind == ProofStep::Kind::kPerturb) {
          EXPECT_LT(s.k_after, s.k_before);
          EXPECT_LT(s.k_after, prev_k);
          prev_k = s.k_after;
          for (std::size_t d : s.section_dims) {
            EXPECT_TRUE(d + 2 == w.size() || d + 1 == w.size());
          }
        }
      }
    }
  }
  EXPECT_GT(perturbed_runs, 0u);
}

TEST(EngineProperties, FiniteFieldRunsAgreeWithOracle) {
  SplitMix64 rng(43);
  for (int trial = 0; trial < 300; ++trial) {
    GenConfig cfg;
    cfg.n = 2 + rng.Index(3);
    cfg.d = cfg.n;
    cfg.field = Field::Prime(trial % 2 ? 2 : 3);
    cfg.kind = GenKind::kValidRejection;
    cfg.seed = rng.Next();
    Widget w = [&] {
      try {
        return Generate(cfg);
      } catch (const GenerationError&) {
        return testing::MakeWidget(cfg.field, 1, {{{0}, {0}}});
      }
    }();
    if (IsValid(w).verdict != Verdict::kValid) continue;
    const bool exists = !FindLegalSubwidget(w, SearchMode::kMinimal).empty();
    const Certificate c = ExtractLegalSubwidget(w);
    EXPECT_EQ(c.verdict == Verdict::kLegalSubwidgetFound, exists);
  }
}

}  // namespace
}  // namespace widgetcalc
