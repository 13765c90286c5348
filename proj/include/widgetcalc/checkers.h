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

// Decision procedures for legality, fullness and validity, and the
// brute-force legal-subwidget search.
//
// Legality is decided over the 2^n maximal sections only: every section is
// contained in a maximal one and rank is monotone. IsLegalAllSections keeps
// the 3^n definition around so that equivalence stays a tested property.

#ifndef WIDGETCALC_CHECKERS_H_
#define WIDGETCALC_CHECKERS_H_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "widgetcalc/certificate.h"
#include "widgetcalc/exact_linalg.h"
#include "widgetcalc/widget.h"

namespace widgetcalc {

// Rank queries over the points of one widget, sharing a single
// precomputed RankOracle.
class WidgetRanks {
 public:
  explicit WidgetRanks(const Widget& w);

  std::size_t n() const { return n_; }

  // span_dim of a section's points.
  std::size_t SectionRank(const Section& s) const;

  // span_dim of arbitrary points, addressed as in Widget::AllPoints().
  std::size_t PointsRank(std::span<const std::size_t> points) const {
    return oracle_.Rank(points);
  }

  // span_dim of both points of every listed pair.
  std::size_t PairsRank(std::span<const std::size_t> pairs) const;

  // True iff every maximal section over `pairs` spans at most `bound`
  // dimensions. On failure, stores a violating per-pair choice (Plus or
  // Minus for each listed pair, in order) in *witness when non-null.
  bool MaximalSectionsWithin(std::span<const std::size_t> pairs,
                             std::size_t bound,
                             std::vector<Choice>* witness) const;

 private:
  std::size_t n_;
  RankOracle oracle_;
};

struct LegalityResult {
  bool legal = true;
  // Present iff !legal: a maximal section spanning at least n dimensions.
  std::optional<Section> witness;
};

LegalityResult IsLegal(const Widget& w);

// Definition-level check over all 3^n sections (Skip included). n <= 12.
bool IsLegalAllSections(const Widget& w);

bool IsFull(const Widget& w);

// Valid, NotLegal (with witness) or NotFull. A widget that is neither legal
// nor full reports NotLegal.
Certificate IsValid(const Widget& w);

// Legality of the subwidget with n replaced by |sel|.
bool IsLegalSubwidget(const Widget& w, const SubwidgetSel& sel);

enum class SearchMode {
  // Size-ascending, lexicographic within a size; stops at the first hit.
  kMinimal,
  // Plain bitmask counting order (pair 1 is bit 0); stops at the first
  // hit, which need not be the smallest.
  kFirst,
  // Every legal selection, in kMinimal order.
  kAll,
};

std::vector<SubwidgetSel> FindLegalSubwidget(const Widget& w,
                                             SearchMode mode);

struct BiconditionalReport {
  bool valid = false;
  bool full = false;
  bool has_legal_subwidget = false;

  // valid == (full && has_legal_subwidget)
  bool agree() const { return valid == (full && has_legal_subwidget); }
};

BiconditionalReport CheckCorollaryBiconditional(const Widget& w);

// A legal subwidget whose 2k points span fewer than k dimensions. Starts
// from the minimal legal subwidget; falls back to scanning all legal ones.
std::optional<SubwidgetSel> FindLegalNotFullSubwidget(const Widget& w);

}  // namespace widgetcalc

#endif  // WIDGETCALC_CHECKERS_H_
