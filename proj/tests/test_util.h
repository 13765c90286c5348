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

// Small builders shared by the tests.

#ifndef WIDGETCALC_TESTS_TEST_UTIL_H_
#define WIDGETCALC_TESTS_TEST_UTIL_H_

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "widgetcalc/exact_linalg.h"
#include "widgetcalc/rng.h"
#include "widgetcalc/widget.h"

namespace widgetcalc::testing {

inline Point Pt(Field f, std::initializer_list<long long> coords) {
  Point p;
  for (long long c : coords) p.push_back(Scalar::FromInt(f, c));
  return p;
}

inline Point Pt(std::initializer_list<long long> coords) {
  return Pt(Field::Rational(), coords);
}

using IntPair = std::pair<std::vector<long long>, std::vector<long long>>;

inline Widget MakeWidget(Field f, std::size_t d,
                         const std::vector<IntPair>& pairs) {
  std::vector<Pair> out;
  for (const auto& [plus, minus] : pairs) {
    Pair p;
    for (long long c : plus) p.plus.push_back(Scalar::FromInt(f, c));
    for (long long c : minus) p.minus.push_back(Scalar::FromInt(f, c));
    out.push_back(std::move(p));
  }
  return Widget(f, d, std::move(out));
}

inline Widget MakeWidget(std::size_t d, const std::vector<IntPair>& pairs) {
  return MakeWidget(Field::Rational(), d, pairs);
}

// Pairs (e1, 2e1), (3e1, e1), (e2, e3) in Q^3.
inline Widget W3() {
  return MakeWidget(3, {{{1, 0, 0}, {2, 0, 0}},
                        {{3, 0, 0}, {1, 0, 0}},
                        {{0, 1, 0}, {0, 0, 1}}});
}

// Pairs (0, 0), (e1, e2) in Q^2.
inline Widget W2() {
  return MakeWidget(2, {{{0, 0}, {0, 0}}, {{1, 0}, {0, 1}}});
}

// Pairs (e1, e1), (e2, e2) in Q^2.
inline Widget DiagonalPairs() {
  return MakeWidget(2, {{{1, 0}, {1, 0}}, {{0, 1}, {0, 1}}});
}

inline Widget ZeroWidget(std::size_t n, std::size_t d) {
  std::vector<IntPair> pairs(
      n, {std::vector<long long>(d, 0), std::vector<long long>(d, 0)});
  return MakeWidget(d, pairs);
}

inline PointMatrix RandomMatrix(Field f, std::size_t rows, std::size_t cols,
                                std::int64_t bound, SplitMix64& rng) {
  PointMatrix m(f, rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      m(r, c) = Scalar::FromInt(f, rng.UniformInt(-bound, bound));
    }
  }
  return m;
}

inline Relabeling RandomRelabeling(std::size_t n, SplitMix64& rng) {
  Relabeling r = Relabeling::Identity(n);
  rng.Shuffle(r.order);
  for (std::size_t i = 0; i < n; ++i) r.flip[i] = rng.Coin();
  return r;
}

}  // namespace widgetcalc::testing

#endif  // WIDGETCALC_TESTS_TEST_UTIL_H_
