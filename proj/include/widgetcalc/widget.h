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

// Widget object model: pairs of points, sections, subwidget selections and
// relabelings.
//
// Pair indices are 0-based in memory. Everything a human or a JSON consumer
// sees (certificates, CLI output) is 1-based; see certificate.h.

#ifndef WIDGETCALC_WIDGET_H_
#define WIDGETCALC_WIDGET_H_

#include <cstddef>
#include <cstdint>
#include <iterator>
#include <string>
#include <vector>

#include "widgetcalc/exact_linalg.h"

namespace widgetcalc {

struct Pair {
  Point plus;
  Point minus;

  bool operator==(const Pair&) const = default;
};

class Widget {
 public:
  // Throws InputError if pairs is empty or any point has the wrong
  // dimension or field.
  Widget(Field field, std::size_t ambient_dim, std::vector<Pair> pairs);

  Field field() const { return field_; }
  std::size_t ambient_dim() const { return ambient_dim_; }
  std::size_t size() const { return pairs_.size(); }
  const std::vector<Pair>& pairs() const { return pairs_; }
  const Pair& pair(std::size_t i) const { return pairs_.at(i); }

  // All 2n points in the order p_1^+, p_1^-, p_2^+, ...
  std::vector<Point> AllPoints() const;

  bool operator==(const Widget&) const = default;

 private:
  Field field_;
  std::size_t ambient_dim_;
  std::vector<Pair> pairs_;
};

enum class Choice : std::uint8_t { kPlus, kMinus, kSkip };

// Per-pair choice of at most one point.
struct Section {
  std::vector<Choice> choices;

  bool IsMaximal() const;
  bool operator==(const Section&) const = default;
};

// Maximal section for a bitmask where bit (n - 1 - i) set means pair i takes
// its minus point, so counting the mask upward from 0 enumerates sections
// lexicographically with Plus before Minus.
Section MaximalSectionFromMask(std::size_t n, std::uint64_t mask);

// Chosen points in pair order, Skips omitted. Throws InputError on length
// mismatch.
std::vector<Point> SectionPoints(const Widget& w, const Section& s);

// Position of the chosen point of pair i in Widget::AllPoints().
inline std::size_t PointIndex(std::size_t pair, Choice c) {
  return 2 * pair + (c == Choice::kMinus ? 1 : 0);
}

// Range over all 2^n maximal sections in mask order. n must be below 63.
class MaximalSections {
 public:
  class iterator {
   public:
    using value_type = Section;
    using difference_type = std::ptrdiff_t;
    using iterator_category = std::input_iterator_tag;

    iterator() = default;
    iterator(std::size_t n, std::uint64_t mask) : n_(n), mask_(mask) {}

    Section operator*() const { return MaximalSectionFromMask(n_, mask_); }
    iterator& operator++() {
      ++mask_;
      return *this;
    }
    iterator operator++(int) {
      iterator old = *this;
      ++mask_;
      return old;
    }
    bool operator==(const iterator& other) const {
      return mask_ == other.mask_;
    }
    std::uint64_t mask() const { return mask_; }

   private:
    std::size_t n_ = 0;
    std::uint64_t mask_ = 0;
  };

  explicit MaximalSections(std::size_t n);

  iterator begin() const { return iterator(n_, 0); }
  iterator end() const { return iterator(n_, std::uint64_t{1} << n_); }
  std::uint64_t size() const { return std::uint64_t{1} << n_; }

 private:
  std::size_t n_;
};

MaximalSections EnumerateMaximalSections(const Widget& w);

// Proper, nonempty, strictly increasing set of 0-based pair indices.
class SubwidgetSel {
 public:
  // Throws InputError unless indices are strictly increasing, in [0, n),
  // nonempty and fewer than n.
  SubwidgetSel(std::vector<std::size_t> indices, std::size_t n);

  // All pairs except `removed`. Requires n >= 2.
  static SubwidgetSel AllBut(std::size_t n, std::size_t removed);

  const std::vector<std::size_t>& indices() const { return indices_; }
  std::size_t size() const { return indices_.size(); }
  // 1-based labels for output.
  std::vector<std::size_t> Labels() const;

  bool operator==(const SubwidgetSel&) const = default;

 private:
  std::vector<std::size_t> indices_;
};

// The subwidget on the selected pairs, in pair order.
Widget Subwidget(const Widget& w, const SubwidgetSel& sel);

// new pair j = old pair order[j], with plus/minus swapped when flip[j].
struct Relabeling {
  std::vector<std::size_t> order;
  std::vector<bool> flip;

  static Relabeling Identity(std::size_t n);
  // Applying the result after this relabeling restores the original widget.
  Relabeling Inverse() const;
  // Maps a selection over relabeled indices back to original indices.
  SubwidgetSel MapBack(const SubwidgetSel& sel) const;
  bool IsIdentity() const;

  bool operator==(const Relabeling&) const = default;
};

// Throws InputError unless order is a permutation of [0, n) and flip has
// length n.
Widget Relabel(const Widget& w, const Relabeling& r);

// Maps every point through m (d x d). Throws InputError when m is singular,
// not square of size d, or over a different field.
Widget ApplyLinear(const Widget& w, const PointMatrix& m);

}  // namespace widgetcalc

#endif  // WIDGETCALC_WIDGET_H_
