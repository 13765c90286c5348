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

// Exact field arithmetic and rank/span oracles.
//
// Two ground fields are supported: the rationals (GMP-backed, always in
// lowest terms) and prime fields GF(p) with p < 2^32. No floating point is
// used anywhere; every span condition is decided by exact elimination.

#ifndef WIDGETCALC_EXACT_LINALG_H_
#define WIDGETCALC_EXACT_LINALG_H_

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace widgetcalc {

// Field descriptor. A default-constructed Field is the rationals.
class Field {
 public:
  Field() = default;

  static Field Rational() { return Field(); }
  // Throws InputError unless 2 <= p < 2^32 and p is prime.
  static Field Prime(std::uint64_t p);

  bool is_rational() const { return modulus_ == 0; }
  // 0 for the rationals.
  std::uint64_t modulus() const { return modulus_; }

  // "rational" or "gf:P".
  std::string ToString() const;

  bool operator==(const Field&) const = default;

 private:
  friend class Scalar;
  explicit Field(std::uint64_t p) : modulus_(p) {}
  std::uint64_t modulus_ = 0;
};

bool IsPrime(std::uint64_t p);

class Scalar {
 public:
  // Rational zero.
  Scalar() = default;

  static Scalar Zero(Field field);
  static Scalar One(Field field);
  // Over GF(p) the integer is reduced modulo p.
  static Scalar FromInt(Field field, long long value);
  static Scalar FromRational(mpq_class value);
  // Requires value < p; throws InputError otherwise.
  static Scalar FromResidue(Field field, std::uint64_t value);

  Field field() const;
  bool is_zero() const;

  // Throws InputError when the scalar lives in a prime field.
  const mpq_class& rational() const;
  // Throws InputError when the scalar is rational.
  std::uint64_t residue() const;

  // Throws InputError for zero.
  Scalar Inverse() const;

  // Rationals print as "a" or "a/b"; residues print as their value.
  std::string ToString() const;

  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& other) { return *this = *this + other; }
  Scalar& operator-=(const Scalar& other) { return *this = *this - other; }
  Scalar& operator*=(const Scalar& other) { return *this = *this * other; }

  // Scalars from different fields compare unequal.
  friend bool operator==(const Scalar& a, const Scalar& b);

 private:
  struct Residue {
    std::uint64_t value;
    std::uint64_t modulus;
  };
  explicit Scalar(mpq_class q) : value_(std::move(q)) {}
  explicit Scalar(Residue r) : value_(r) {}

  std::variant<mpq_class, Residue> value_;
};

// Dense coordinate vector; its size is the ambient dimension.
using Point = std::vector<Scalar>;

Point ZeroPoint(Field field, std::size_t dim);
Point BasisPoint(Field field, std::size_t dim, std::size_t axis);
Point operator+(const Point& a, const Point& b);
Point operator*(const Scalar& c, const Point& p);
bool IsZeroPoint(const Point& p);

// Rectangular row-major matrix of Scalars sharing one field.
class PointMatrix {
 public:
  PointMatrix() = default;
  PointMatrix(Field field, std::size_t rows, std::size_t cols);
  // Rows are the given points. Throws InputError on mixed fields or
  // dimensions.
  static PointMatrix FromRows(Field field, std::size_t cols,
                              std::span<const Point> rows);
  static PointMatrix Identity(Field field, std::size_t dim);

  Field field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  const Scalar& operator()(std::size_t r, std::size_t c) const {
    return entries_[r * cols_ + c];
  }
  // Callers must keep the entry in this matrix's field.
  Scalar& operator()(std::size_t r, std::size_t c) {
    return entries_[r * cols_ + c];
  }

  Point Row(std::size_t r) const;
  // Matrix-vector product m * v. Throws InputError on mismatch.
  Point Apply(const Point& v) const;

  bool operator==(const PointMatrix&) const = default;

 private:
  Field field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> entries_;
};

// Dimension of the span of `points`; 0 for the empty list. Throws InputError
// on mixed fields or mismatched dimensions.
std::size_t SpanDim(std::span<const Point> points);

// True iff span(points + v) == span(points).
bool InSpan(const Point& v, std::span<const Point> points);

// Entry i equals InSpan(candidates[i], base). `base` is eliminated once.
std::vector<bool> IncrementalRankProbe(std::span<const Point> base,
                                       std::span<const Point> candidates);

// Fraction-free (Bareiss) rank over the integers after clearing row
// denominators, using GMP integers throughout; modular elimination over
// GF(p).
std::size_t BareissRank(const PointMatrix& m);

// Textbook Gauss-Jordan echelon rank computed directly on field elements.
// Slow; kept as the independent cross-check for BareissRank.
std::size_t NaiveEchelonRank(const PointMatrix& m);

// Precomputed rank oracle over a fixed list of points.
//
// Rational points are scaled to primitive integer vectors once at
// construction; ranks of index subsets then run a 128-bit-intermediate
// Bareiss elimination and fall back to GMP only on overflow. Prime-field
// points are stored as residues.
class RankOracle {
 public:
  // Throws InputError on mixed fields or mismatched dimensions. An empty
  // list gives an oracle over dimension 0.
  explicit RankOracle(std::span<const Point> points);
  RankOracle(Field field, std::size_t dim, std::span<const Point> points);

  Field field() const { return field_; }
  std::size_t dim() const { return dim_; }
  std::size_t size() const { return count_; }

  // Rank of the points at the given positions; duplicates allowed.
  std::size_t Rank(std::span<const std::size_t> indices) const;

 private:
  std::size_t RankSmallIntegers(std::span<const std::size_t> indices) const;
  std::size_t RankBigIntegers(std::span<const std::size_t> indices) const;
  std::size_t RankResidues(std::span<const std::size_t> indices) const;

  Field field_;
  std::size_t dim_ = 0;
  std::size_t count_ = 0;
  bool small_ = true;
  std::vector<std::int64_t> small_rows_;
  std::vector<mpz_class> big_rows_;
  std::vector<std::uint64_t> residue_rows_;
};

// Primitive integer vector with the same span as a rational point: the
// point scaled by the lcm of its denominators, then divided by the gcd of
// its numerators.
std::vector<mpz_class> PrimitiveIntegerRow(const Point& p);

}  // namespace widgetcalc

#endif  // WIDGETCALC_EXACT_LINALG_H_
