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

#include "widgetcalc/checkers.h"

#include <cstdint>
#include <utility>

#include "widgetcalc/errors.h"

namespace widgetcalc {
namespace {

std::vector<std::size_t> Iota(std::size_t n) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  return v;
}

// Advances a strictly increasing k-combination of [0, n) in lexicographic
// order. Returns false after the last one.
bool NextCombination(std::vector<std::size_t>& c, std::size_t n) {
  const std::size_t k = c.size();
  std::size_t i = k;
  while (i > 0) {
    --i;
    if (c[i] < n - k + i) {
      ++c[i];
      for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

WidgetRanks::WidgetRanks(const Widget& w)
    : n_(w.size()), oracle_(w.field(), w.ambient_dim(), w.AllPoints()) {}

std::size_t WidgetRanks::SectionRank(const Section& s) const {
  if (s.choices.size() != n_) throw InputError("section length mismatch");
  std::vector<std::size_t> idx;
  idx.reserve(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    if (s.choices[i] != Choice::kSkip) idx.push_back(PointIndex(i, s.choices[i]));
  }
  return oracle_.Rank(idx);
}

std::size_t WidgetRanks::PairsRank(std::span<const std::size_t> pairs) const {
  std::vector<std::size_t> idx;
  idx.reserve(2 * pairs.size());
  for (std::size_t p : pairs) {
    idx.push_back(2 * p);
    idx.push_back(2 * p + 1);
  }
  return oracle_.Rank(idx);
}

bool WidgetRanks::MaximalSectionsWithin(std::span<const std::size_t> pairs,
                                        std::size_t bound,
                                        std::vector<Choice>* witness) const {
  const std::size_t k = pairs.size();
  if (k >= 63) throw InputError("too many pairs to enumerate sections");
  // Every section lies in the span of all the listed points.
  if (PairsRank(pairs) <= bound) return true;
  std::vector<std::size_t> idx(k);
  const std::uint64_t count = std::uint64_t{1} << k;
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    for (std::size_t t = 0; t < k; ++t) {
      idx[t] = 2 * pairs[t] + ((mask >> (k - 1 - t)) & 1);
    }
    if (oracle_.Rank(idx) > bound) {
      if (witness != nullptr) {
        witness->resize(k);
        for (std::size_t t = 0; t < k; ++t) {
          (*witness)[t] = idx[t] & 1 ? Choice::kMinus : Choice::kPlus;
        }
      }
      return false;
    }
  }
  return true;
}

LegalityResult IsLegal(const Widget& w) {
  const WidgetRanks ranks(w);
  const std::vector<std::size_t> all = Iota(w.size());
  std::vector<Choice> choice;
  if (ranks.MaximalSectionsWithin(all, w.size() - 1, &choice)) return {};
  return LegalityResult{false, Section{std::move(choice)}};
}

bool IsLegalAllSections(const Widget& w) {
  const std::size_t n = w.size();
  if (n > 12) throw InputError("3^n section sweep limited to n <= 12");
  const WidgetRanks ranks(w);
  Section s;
  s.choices.assign(n, Choice::kPlus);
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= 3;
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t c = code;
    for (std::size_t i = 0; i < n; ++i) {
      s.choices[i] = static_cast<Choice>(c % 3);
      c /= 3;
    }
    if (ranks.SectionRank(s) > n - 1) return false;
  }
  return true;
}

bool IsFull(const Widget& w) {
  return SpanDim(w.AllPoints()) >= w.size();
}

Certificate IsValid(const Widget& w) {
  LegalityResult legality = IsLegal(w);
  if (!legality.legal) {
    Certificate c;
    c.verdict = Verdict::kNotLegal;
    c.witness_section = std::move(legality.witness);
    return c;
  }
  Certificate c;
  c.verdict = IsFull(w) ? Verdict::kValid : Verdict::kNotFull;
  return c;
}

bool IsLegalSubwidget(const Widget& w, const SubwidgetSel& sel) {
  if (sel.indices().back() >= w.size() || sel.size() >= w.size()) {
    throw InputError("subwidget selection invalid for widget of size " +
                     std::to_string(w.size()));
  }
  return WidgetRanks(w).MaximalSectionsWithin(sel.indices(), sel.size() - 1,
                                              nullptr);
}

std::vector<SubwidgetSel> FindLegalSubwidget(const Widget& w,
                                             SearchMode mode) {
  const std::size_t n = w.size();
  std::vector<SubwidgetSel> found;
  if (n < 2) return found;
  const WidgetRanks ranks(w);
  if (mode == SearchMode::kFirst) {
    if (n >= 63) throw InputError("too many pairs for bitmask search");
    const std::uint64_t full = (std::uint64_t{1} << n) - 1;
    std::vector<std::size_t> idx;
    for (std::uint64_t mask = 1; mask < full; ++mask) {
      idx.clear();
      for (std::size_t i = 0; i < n; ++i) {
        if ((mask >> i) & 1) idx.push_back(i);
      }
      if (ranks.MaximalSectionsWithin(idx, idx.size() - 1, nullptr)) {
        found.emplace_back(idx, n);
        return found;
      }
    }
    return found;
  }
  for (std::size_t k = 1; k < n; ++k) {
    std::vector<std::size_t> combo = Iota(k);
    do {
      if (ranks.MaximalSectionsWithin(combo, k - 1, nullptr)) {
        found.emplace_back(combo, n);
        if (mode == SearchMode::kMinimal) return found;
      }
    } while (NextCombination(combo, n));
  }
  return found;
}

BiconditionalReport CheckCorollaryBiconditional(const Widget& w) {
  BiconditionalReport r;
  r.valid = IsValid(w).verdict == Verdict::kValid;
  r.full = IsFull(w);
  r.has_legal_subwidget = !FindLegalSubwidget(w, SearchMode::kMinimal).empty();
  return r;
}

std::optional<SubwidgetSel> FindLegalNotFullSubwidget(const Widget& w) {
  const WidgetRanks ranks(w);
  auto not_full = [&](const SubwidgetSel& sel) {
    return ranks.PairsRank(sel.indices()) < sel.size();
  };
  std::vector<SubwidgetSel> minimal = FindLegalSubwidget(w, SearchMode::kMinimal);
  if (minimal.empty()) return std::nullopt;
  if (not_full(minimal.front())) return minimal.front();
  for (const SubwidgetSel& sel : FindLegalSubwidget(w, SearchMode::kAll)) {
    if (not_full(sel)) return sel;
  }
  return std::nullopt;
}

}  // namespace widgetcalc
