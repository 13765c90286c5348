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

#include "widgetcalc/widget.h"

#include <algorithm>
#include <utility>

#include "widgetcalc/errors.h"

namespace widgetcalc {
namespace {

void CheckPoint(const Point& p, Field field, std::size_t dim,
                std::size_t pair, const char* side) {
  if (p.size() != dim) {
    throw InputError("pair " + std::to_string(pair + 1) + " " + side +
                     " point has dimension " + std::to_string(p.size()) +
                     ", expected " + std::to_string(dim));
  }
  for (const Scalar& s : p) {
    if (!(s.field() == field)) {
      throw InputError("pair " + std::to_string(pair + 1) + " " + side +
                       " point is over " + s.field().ToString() +
                       ", expected " + field.ToString());
    }
  }
}

}  // namespace

Widget::Widget(Field field, std::size_t ambient_dim, std::vector<Pair> pairs)
    : field_(field), ambient_dim_(ambient_dim), pairs_(std::move(pairs)) {
  if (pairs_.empty()) throw InputError("a widget needs at least one pair");
  for (std::size_t i = 0; i < pairs_.size(); ++i) {
    CheckPoint(pairs_[i].plus, field_, ambient_dim_, i, "plus");
    CheckPoint(pairs_[i].minus, field_, ambient_dim_, i, "minus");
  }
}

std::vector<Point> Widget::AllPoints() const {
  std::vector<Point> out;
  out.reserve(2 * pairs_.size());
  for (const Pair& p : pairs_) {
    out.push_back(p.plus);
    out.push_back(p.minus);
  }
  return out;
}

bool Section::IsMaximal() const {
  return std::none_of(choices.begin(), choices.end(),
                      [](Choice c) { return c == Choice::kSkip; });
}

Section MaximalSectionFromMask(std::size_t n, std::uint64_t mask) {
  Section s;
  s.choices.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    s.choices[i] = (mask >> (n - 1 - i)) & 1 ? Choice::kMinus : Choice::kPlus;
  }
  return s;
}

std::vector<Point> SectionPoints(const Widget& w, const Section& s) {
  if (s.choices.size() != w.size()) {
    throw InputError("section length " + std::to_string(s.choices.size()) +
                     " does not match widget size " + std::to_string(w.size()));
  }
  std::vector<Point> out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    switch (s.choices[i]) {
      case Choice::kPlus:
        out.push_back(w.pair(i).plus);
        break;
      case Choice::kMinus:
        out.push_back(w.pair(i).minus);
        break;
      case Choice::kSkip:
        break;
    }
  }
  return out;
}

MaximalSections::MaximalSections(std::size_t n) : n_(n) {
  if (n >= 63) throw InputError("too many pairs to enumerate sections");
}

MaximalSections EnumerateMaximalSections(const Widget& w) {
  return MaximalSections(w.size());
}

SubwidgetSel::SubwidgetSel(std::vector<std::size_t> indices, std::size_t n)
    : indices_(std::move(indices)) {
  if (indices_.empty()) throw InputError("subwidget selection is empty");
  if (indices_.size() >= n) {
    throw InputError("subwidget must be a proper subset of the pairs");
  }
  for (std::size_t k = 0; k < indices_.size(); ++k) {
    if (indices_[k] >= n) {
      throw InputError("subwidget index " + std::to_string(indices_[k] + 1) +
                       " out of range");
    }
    if (k > 0 && indices_[k] <= indices_[k - 1]) {
      throw InputError("subwidget indices must be strictly increasing");
    }
  }
}

SubwidgetSel SubwidgetSel::AllBut(std::size_t n, std::size_t removed) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < n; ++i) {
    if (i != removed) idx.push_back(i);
  }
  return SubwidgetSel(std::move(idx), n);
}

std::vector<std::size_t> SubwidgetSel::Labels() const {
  std::vector<std::size_t> out = indices_;
  for (std::size_t& i : out) ++i;
  return out;
}

Widget Subwidget(const Widget& w, const SubwidgetSel& sel) {
  if (!sel.indices().empty() && sel.indices().back() >= w.size()) {
    throw InputError("subwidget selection out of range");
  }
  if (sel.size() >= w.size()) {
    throw InputError("subwidget must be a proper subset of the pairs");
  }
  std::vector<Pair> pairs;
  pairs.reserve(sel.size());
  for (std::size_t i : sel.indices()) pairs.push_back(w.pair(i));
  return Widget(w.field(), w.ambient_dim(), std::move(pairs));
}

Relabeling Relabeling::Identity(std::size_t n) {
  Relabeling r;
  r.order.resize(n);
  for (std::size_t i = 0; i < n; ++i) r.order[i] = i;
  r.flip.assign(n, false);
  return r;
}

Relabeling Relabeling::Inverse() const {
  Relabeling inv;
  inv.order.resize(order.size());
  inv.flip.resize(order.size());
  for (std::size_t j = 0; j < order.size(); ++j) {
    inv.order[order[j]] = j;
    inv.flip[order[j]] = flip[j];
  }
  return inv;
}

SubwidgetSel Relabeling::MapBack(const SubwidgetSel& sel) const {
  std::vector<std::size_t> idx;
  idx.reserve(sel.size());
  for (std::size_t j : sel.indices()) idx.push_back(order.at(j));
  std::sort(idx.begin(), idx.end());
  return SubwidgetSel(std::move(idx), order.size());
}

bool Relabeling::IsIdentity() const {
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (order[i] != i || flip[i]) return false;
  }
  return true;
}

Widget Relabel(const Widget& w, const Relabeling& r) {
  const std::size_t n = w.size();
  if (r.order.size() != n || r.flip.size() != n) {
    throw InputError("relabeling size does not match widget size");
  }
  std::vector<bool> seen(n, false);
  for (std::size_t i : r.order) {
    if (i >= n || seen[i]) throw InputError("relabeling is not a permutation");
    seen[i] = true;
  }
  std::vector<Pair> pairs;
  pairs.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    Pair p = w.pair(r.order[j]);
    if (r.flip[j]) std::swap(p.plus, p.minus);
    pairs.push_back(std::move(p));
  }
  return Widget(w.field(), w.ambient_dim(), std::move(pairs));
}

Widget ApplyLinear(const Widget& w, const PointMatrix& m) {
  const std::size_t d = w.ambient_dim();
  if (m.rows() != d || m.cols() != d) {
    throw InputError("linear map must be " + std::to_string(d) + "x" +
                     std::to_string(d));
  }
  if (!(m.field() == w.field())) {
    throw InputError("linear map is over a different field");
  }
  if (BareissRank(m) != d) throw InputError("linear map is singular");
  std::vector<Pair> pairs;
  pairs.reserve(w.size());
  for (const Pair& p : w.pairs()) {
    pairs.push_back(Pair{m.Apply(p.plus), m.Apply(p.minus)});
  }
  return Widget(w.field(), d, std::move(pairs));
}

}  // namespace widgetcalc
