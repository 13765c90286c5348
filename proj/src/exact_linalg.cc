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

#include "widgetcalc/exact_linalg.h"

#include <algorithm>
#include <optional>
#include <utility>

#include "widgetcalc/errors.h"

namespace widgetcalc {
namespace {

constexpr std::uint64_t kMaxModulus = std::uint64_t{1} << 32;

std::uint64_t MulMod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return (a * b) % p;  // a, b < p < 2^32
}

std::uint64_t PowMod(std::uint64_t base, std::uint64_t exp, std::uint64_t p) {
  std::uint64_t result = 1 % p;
  base %= p;
  while (exp > 0) {
    if (exp & 1) result = MulMod(result, base, p);
    base = MulMod(base, base, p);
    exp >>= 1;
  }
  return result;
}

std::uint64_t InvMod(std::uint64_t a, std::uint64_t p) {
  return PowMod(a, p - 2, p);
}

// Shared field and dimension of a point list; nullopt for an empty list.
std::optional<std::pair<Field, std::size_t>> CommonShape(
    std::span<const Point> points) {
  if (points.empty()) return std::nullopt;
  const std::size_t dim = points.front().size();
  std::optional<Field> field;
  for (const Point& p : points) {
    if (p.size() != dim) {
      throw InputError("point dimension mismatch: " + std::to_string(p.size()) +
                       " vs " + std::to_string(dim));
    }
    for (const Scalar& s : p) {
      if (!field) {
        field = s.field();
      } else if (!(s.field() == *field)) {
        throw InputError("mixed fields: " + field->ToString() + " and " +
                         s.field().ToString());
      }
    }
  }
  return std::make_pair(field.value_or(Field::Rational()), dim);
}

// Fraction-free elimination on a rows x cols integer matrix, in place.
std::size_t BareissRankInPlace(std::vector<mpz_class>& a, std::size_t rows,
                               std::size_t cols) {
  auto at = [&](std::size_t r, std::size_t c) -> mpz_class& {
    return a[r * cols + c];
  };
  mpz_class prev = 1;
  mpz_class tmp;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && at(pivot, col) == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != rank) {
      for (std::size_t c = col; c < cols; ++c) swap(at(pivot, c), at(rank, c));
    }
    for (std::size_t r = rank + 1; r < rows; ++r) {
      for (std::size_t c = col + 1; c < cols; ++c) {
        tmp = at(rank, col) * at(r, c) - at(r, col) * at(rank, c);
        mpz_divexact(at(r, c).get_mpz_t(), tmp.get_mpz_t(), prev.get_mpz_t());
      }
      at(r, col) = 0;
    }
    prev = at(rank, col);
    ++rank;
  }
  return rank;
}

// Entries of the 128-bit fast path stay strictly inside +-2^62.
constexpr std::int64_t kSmallEntryBound = std::int64_t{1} << 62;

// Same elimination with 128-bit intermediates. Returns nullopt when an
// entry leaves the fast-path range.
std::optional<std::size_t> BareissRankInt64(std::vector<std::int64_t>& a,
                                            std::size_t rows,
                                            std::size_t cols) {
  auto at = [&](std::size_t r, std::size_t c) -> std::int64_t& {
    return a[r * cols + c];
  };
  constexpr __int128 kMax = kSmallEntryBound;
  constexpr __int128 kMin = -kSmallEntryBound;
  __int128 prev = 1;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && at(pivot, col) == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != rank) {
      for (std::size_t c = col; c < cols; ++c) {
        std::swap(at(pivot, c), at(rank, c));
      }
    }
    const __int128 pv = at(rank, col);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      const __int128 lead = at(r, col);
      for (std::size_t c = col + 1; c < cols; ++c) {
        const __int128 x = pv * at(r, c);
        const __int128 y = lead * at(rank, c);
        // |x|, |y| < 2^124, so the difference cannot overflow.
        const __int128 v = (x - y) / prev;
        if (v < kMin || v > kMax) return std::nullopt;
        at(r, c) = static_cast<std::int64_t>(v);
      }
      at(r, col) = 0;
    }
    prev = pv;
    ++rank;
  }
  return rank;
}

std::size_t ResidueRankInPlace(std::vector<std::uint64_t>& a, std::size_t rows,
                               std::size_t cols, std::uint64_t p) {
  auto at = [&](std::size_t r, std::size_t c) -> std::uint64_t& {
    return a[r * cols + c];
  };
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && at(pivot, col) == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != rank) {
      for (std::size_t c = col; c < cols; ++c) {
        std::swap(at(pivot, c), at(rank, c));
      }
    }
    const std::uint64_t inv = InvMod(at(rank, col), p);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (at(r, col) == 0) continue;
      const std::uint64_t factor = MulMod(at(r, col), inv, p);
      for (std::size_t c = col; c < cols; ++c) {
        at(r, c) = (at(r, c) + p - MulMod(factor, at(rank, c), p)) % p;
      }
    }
    ++rank;
  }
  return rank;
}

// Incrementally maintained echelon basis (distinct, increasing pivot
// columns). Used for batch span-membership probes.
class EchelonBasis {
 public:
  EchelonBasis(Field field, std::size_t dim) : field_(field), dim_(dim) {}

  // Returns true iff the vector was independent of the basis (and was added).
  bool Insert(const Point& p) {
    if (field_.is_rational()) {
      std::vector<mpz_class> v = PrimitiveIntegerRow(p);
      ReduceInteger(v);
      auto lead = std::find_if(v.begin(), v.end(),
                               [](const mpz_class& x) { return x != 0; });
      if (lead == v.end()) return false;
      const auto pivot = static_cast<std::size_t>(lead - v.begin());
      InsertSorted(pivot, std::move(v), {});
      return true;
    }
    std::vector<std::uint64_t> v = Residues(p);
    ReduceResidue(v);
    auto lead = std::find_if(v.begin(), v.end(),
                             [](std::uint64_t x) { return x != 0; });
    if (lead == v.end()) return false;
    const auto pivot = static_cast<std::size_t>(lead - v.begin());
    InsertSorted(pivot, {}, std::move(v));
    return true;
  }

  bool Contains(const Point& p) const {
    if (field_.is_rational()) {
      std::vector<mpz_class> v = PrimitiveIntegerRow(p);
      ReduceInteger(v);
      return std::all_of(v.begin(), v.end(),
                         [](const mpz_class& x) { return x == 0; });
    }
    std::vector<std::uint64_t> v = Residues(p);
    ReduceResidue(v);
    return std::all_of(v.begin(), v.end(),
                       [](std::uint64_t x) { return x == 0; });
  }

 private:
  struct Row {
    std::size_t pivot;
    std::vector<mpz_class> integers;
    std::vector<std::uint64_t> residues;
  };

  std::vector<std::uint64_t> Residues(const Point& p) const {
    std::vector<std::uint64_t> v(dim_);
    for (std::size_t c = 0; c < dim_; ++c) v[c] = p[c].residue();
    return v;
  }

  void ReduceInteger(std::vector<mpz_class>& v) const {
    for (const Row& row : rows_) {
      if (v[row.pivot] == 0) continue;
      const mpz_class a = row.integers[row.pivot];
      const mpz_class b = v[row.pivot];
      for (std::size_t c = 0; c < dim_; ++c) {
        v[c] = a * v[c] - b * row.integers[c];
      }
    }
  }

  void ReduceResidue(std::vector<std::uint64_t>& v) const {
    const std::uint64_t p = field_.modulus();
    for (const Row& row : rows_) {
      if (v[row.pivot] == 0) continue;
      const std::uint64_t factor =
          MulMod(v[row.pivot], InvMod(row.residues[row.pivot], p), p);
      for (std::size_t c = 0; c < dim_; ++c) {
        v[c] = (v[c] + p - MulMod(factor, row.residues[c], p)) % p;
      }
    }
  }

  void InsertSorted(std::size_t pivot, std::vector<mpz_class> integers,
                    std::vector<std::uint64_t> residues) {
    auto pos = std::find_if(rows_.begin(), rows_.end(), [&](const Row& r) {
      return r.pivot > pivot;
    });
    rows_.insert(pos, Row{pivot, std::move(integers), std::move(residues)});
  }

  Field field_;
  std::size_t dim_;
  std::vector<Row> rows_;
};

}  // namespace

bool IsPrime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t f = 2; f * f <= p; ++f) {
    if (p % f == 0) return false;
  }
  return true;
}

Field Field::Prime(std::uint64_t p) {
  if (p >= kMaxModulus) {
    throw InputError("prime modulus must be below 2^32, got " +
                     std::to_string(p));
  }
  if (!IsPrime(p)) {
    throw InputError("modulus " + std::to_string(p) + " is not prime");
  }
  return Field(p);
}

std::string Field::ToString() const {
  return is_rational() ? "rational" : "gf:" + std::to_string(modulus_);
}

Scalar Scalar::Zero(Field field) { return FromInt(field, 0); }
Scalar Scalar::One(Field field) { return FromInt(field, 1); }

Scalar Scalar::FromInt(Field field, long long value) {
  if (field.is_rational()) return Scalar(mpq_class(static_cast<long>(value)));
  const auto p = static_cast<long long>(field.modulus());
  long long r = value % p;
  if (r < 0) r += p;
  return Scalar(Residue{static_cast<std::uint64_t>(r), field.modulus()});
}

Scalar Scalar::FromRational(mpq_class value) {
  value.canonicalize();
  return Scalar(std::move(value));
}

Scalar Scalar::FromResidue(Field field, std::uint64_t value) {
  if (field.is_rational()) {
    throw InputError("FromResidue requires a prime field");
  }
  if (value >= field.modulus()) {
    throw InputError("residue " + std::to_string(value) +
                     " not reduced modulo " + std::to_string(field.modulus()));
  }
  return Scalar(Residue{value, field.modulus()});
}

Field Scalar::field() const {
  if (const auto* r = std::get_if<Residue>(&value_)) {
    return Field(r->modulus);
  }
  return Field::Rational();
}

bool Scalar::is_zero() const {
  if (const auto* r = std::get_if<Residue>(&value_)) return r->value == 0;
  return sgn(std::get<mpq_class>(value_)) == 0;
}

const mpq_class& Scalar::rational() const {
  if (const auto* q = std::get_if<mpq_class>(&value_)) return *q;
  throw InputError("scalar is not rational");
}

std::uint64_t Scalar::residue() const {
  if (const auto* r = std::get_if<Residue>(&value_)) return r->value;
  throw InputError("scalar is not a prime-field residue");
}

Scalar Scalar::Inverse() const {
  if (is_zero()) throw InputError("inverse of zero");
  if (const auto* r = std::get_if<Residue>(&value_)) {
    return Scalar(Residue{InvMod(r->value, r->modulus), r->modulus});
  }
  mpq_class inv = 1 / std::get<mpq_class>(value_);
  inv.canonicalize();
  return Scalar(std::move(inv));
}

std::string Scalar::ToString() const {
  if (const auto* r = std::get_if<Residue>(&value_)) {
    return std::to_string(r->value);
  }
  return std::get<mpq_class>(value_).get_str();
}

namespace {

void RequireSameField(const Scalar& a, const Scalar& b) {
  if (!(a.field() == b.field())) {
    throw InputError("mixed fields: " + a.field().ToString() + " and " +
                     b.field().ToString());
  }
}

}  // namespace

Scalar operator+(const Scalar& a, const Scalar& b) {
  RequireSameField(a, b);
  if (const auto* ra = std::get_if<Scalar::Residue>(&a.value_)) {
    const auto& rb = std::get<Scalar::Residue>(b.value_);
    return Scalar(
        Scalar::Residue{(ra->value + rb.value) % ra->modulus, ra->modulus});
  }
  return Scalar(mpq_class(std::get<mpq_class>(a.value_) +
                          std::get<mpq_class>(b.value_)));
}

Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

Scalar operator*(const Scalar& a, const Scalar& b) {
  RequireSameField(a, b);
  if (const auto* ra = std::get_if<Scalar::Residue>(&a.value_)) {
    const auto& rb = std::get<Scalar::Residue>(b.value_);
    return Scalar(Scalar::Residue{MulMod(ra->value, rb.value, ra->modulus),
                                  ra->modulus});
  }
  return Scalar(mpq_class(std::get<mpq_class>(a.value_) *
                          std::get<mpq_class>(b.value_)));
}

Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.Inverse(); }

Scalar Scalar::operator-() const {
  if (const auto* r = std::get_if<Residue>(&value_)) {
    return Scalar(Residue{(r->modulus - r->value) % r->modulus, r->modulus});
  }
  return Scalar(mpq_class(-std::get<mpq_class>(value_)));
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.value_.index() != b.value_.index()) return false;
  if (const auto* ra = std::get_if<Scalar::Residue>(&a.value_)) {
    const auto& rb = std::get<Scalar::Residue>(b.value_);
    return ra->value == rb.value && ra->modulus == rb.modulus;
  }
  return std::get<mpq_class>(a.value_) == std::get<mpq_class>(b.value_);
}

Point ZeroPoint(Field field, std::size_t dim) {
  return Point(dim, Scalar::Zero(field));
}

Point BasisPoint(Field field, std::size_t dim, std::size_t axis) {
  Point p = ZeroPoint(field, dim);
  p.at(axis) = Scalar::One(field);
  return p;
}

Point operator+(const Point& a, const Point& b) {
  if (a.size() != b.size()) throw InputError("point dimension mismatch");
  Point out;
  out.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(a[i] + b[i]);
  return out;
}

Point operator*(const Scalar& c, const Point& p) {
  Point out;
  out.reserve(p.size());
  for (const Scalar& s : p) out.push_back(c * s);
  return out;
}

bool IsZeroPoint(const Point& p) {
  return std::all_of(p.begin(), p.end(),
                     [](const Scalar& s) { return s.is_zero(); });
}

PointMatrix::PointMatrix(Field field, std::size_t rows, std::size_t cols)
    : field_(field),
      rows_(rows),
      cols_(cols),
      entries_(rows * cols, Scalar::Zero(field)) {}

PointMatrix PointMatrix::FromRows(Field field, std::size_t cols,
                                  std::span<const Point> rows) {
  PointMatrix m(field, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) {
      throw InputError("ragged matrix row " + std::to_string(r));
    }
    for (std::size_t c = 0; c < cols; ++c) {
      if (!(rows[r][c].field() == field)) {
        throw InputError("matrix entry outside field " + field.ToString());
      }
      m(r, c) = rows[r][c];
    }
  }
  return m;
}

PointMatrix PointMatrix::Identity(Field field, std::size_t dim) {
  PointMatrix m(field, dim, dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = Scalar::One(field);
  return m;
}

Point PointMatrix::Row(std::size_t r) const {
  return Point(entries_.begin() + r * cols_, entries_.begin() + (r + 1) * cols_);
}

Point PointMatrix::Apply(const Point& v) const {
  if (v.size() != cols_) throw InputError("matrix-vector dimension mismatch");
  Point out = ZeroPoint(field_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      if (!v[c].is_zero()) out[r] += (*this)(r, c) * v[c];
    }
  }
  return out;
}

std::vector<mpz_class> PrimitiveIntegerRow(const Point& p) {
  mpz_class lcm = 1;
  for (const Scalar& s : p) {
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(),
            s.rational().get_den_mpz_t());
  }
  std::vector<mpz_class> row;
  row.reserve(p.size());
  mpz_class content = 0;
  for (const Scalar& s : p) {
    const mpq_class& q = s.rational();
    row.push_back(q.get_num() * (lcm / q.get_den()));
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(),
            row.back().get_mpz_t());
  }
  if (content > 1) {
    for (mpz_class& x : row) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(),
                                          content.get_mpz_t());
  }
  return row;
}

std::size_t SpanDim(std::span<const Point> points) {
  if (!CommonShape(points)) return 0;
  return RankOracle(points).Rank([&] {
    std::vector<std::size_t> all(points.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return all;
  }());
}

bool InSpan(const Point& v, std::span<const Point> points) {
  if (!points.empty() && points.front().size() != v.size()) {
    throw InputError("point dimension mismatch");
  }
  std::vector<Point> extended(points.begin(), points.end());
  extended.push_back(v);
  return SpanDim(extended) == SpanDim(points);
}

std::vector<bool> IncrementalRankProbe(std::span<const Point> base,
                                       std::span<const Point> candidates) {
  std::vector<Point> all(base.begin(), base.end());
  all.insert(all.end(), candidates.begin(), candidates.end());
  const auto shape = CommonShape(all);
  if (!shape) return {};
  EchelonBasis basis(shape->first, shape->second);
  for (const Point& p : base) basis.Insert(p);
  std::vector<bool> out;
  out.reserve(candidates.size());
  for (const Point& c : candidates) out.push_back(basis.Contains(c));
  return out;
}

std::size_t BareissRank(const PointMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  if (rows == 0 || cols == 0) return 0;
  if (!m.field().is_rational()) {
    std::vector<std::uint64_t> a(rows * cols);
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < cols; ++c) a[r * cols + c] = m(r, c).residue();
    }
    return ResidueRankInPlace(a, rows, cols, m.field().modulus());
  }
  std::vector<mpz_class> a;
  a.reserve(rows * cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const std::vector<mpz_class> row = PrimitiveIntegerRow(m.Row(r));
    a.insert(a.end(), row.begin(), row.end());
  }
  return BareissRankInPlace(a, rows, cols);
}

std::size_t NaiveEchelonRank(const PointMatrix& m) {
  PointMatrix a = m;
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && a(pivot, col).is_zero()) ++pivot;
    if (pivot == rows) continue;
    for (std::size_t c = 0; c < cols; ++c) std::swap(a(pivot, c), a(rank, c));
    const Scalar inv = a(rank, col).Inverse();
    for (std::size_t c = 0; c < cols; ++c) a(rank, c) *= inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || a(r, col).is_zero()) continue;
      const Scalar factor = a(r, col);
      for (std::size_t c = 0; c < cols; ++c) a(r, c) -= factor * a(rank, c);
    }
    ++rank;
  }
  return rank;
}

RankOracle::RankOracle(std::span<const Point> points) {
  const auto shape = CommonShape(points);
  if (shape) {
    *this = RankOracle(shape->first, shape->second, points);
  }
}

RankOracle::RankOracle(Field field, std::size_t dim,
                       std::span<const Point> points)
    : field_(field), dim_(dim), count_(points.size()) {
  for (const Point& p : points) {
    if (p.size() != dim) throw InputError("point dimension mismatch");
    for (const Scalar& s : p) {
      if (!(s.field() == field)) {
        throw InputError("mixed fields: " + field.ToString() + " and " +
                         s.field().ToString());
      }
    }
  }
  if (!field.is_rational()) {
    residue_rows_.reserve(count_ * dim_);
    for (const Point& p : points) {
      for (const Scalar& s : p) residue_rows_.push_back(s.residue());
    }
    return;
  }
  big_rows_.reserve(count_ * dim_);
  for (const Point& p : points) {
    for (mpz_class& x : PrimitiveIntegerRow(p)) {
      if (!x.fits_slong_p() || abs(x) >= kSmallEntryBound) small_ = false;
      big_rows_.push_back(std::move(x));
    }
  }
  if (small_) {
    small_rows_.reserve(big_rows_.size());
    for (const mpz_class& x : big_rows_) small_rows_.push_back(x.get_si());
  }
}

std::size_t RankOracle::Rank(std::span<const std::size_t> indices) const {
  for (std::size_t i : indices) {
    if (i >= count_) throw InputError("rank oracle index out of range");
  }
  if (indices.empty() || dim_ == 0) return 0;
  if (!field_.is_rational()) return RankResidues(indices);
  if (small_) return RankSmallIntegers(indices);
  return RankBigIntegers(indices);
}

std::size_t RankOracle::RankSmallIntegers(
    std::span<const std::size_t> indices) const {
  std::vector<std::int64_t> a;
  a.reserve(indices.size() * dim_);
  for (std::size_t i : indices) {
    a.insert(a.end(), small_rows_.begin() + i * dim_,
             small_rows_.begin() + (i + 1) * dim_);
  }
  if (auto rank = BareissRankInt64(a, indices.size(), dim_)) return *rank;
  return RankBigIntegers(indices);
}

std::size_t RankOracle::RankBigIntegers(
    std::span<const std::size_t> indices) const {
  std::vector<mpz_class> a;
  a.reserve(indices.size() * dim_);
  for (std::size_t i : indices) {
    a.insert(a.end(), big_rows_.begin() + i * dim_,
             big_rows_.begin() + (i + 1) * dim_);
  }
  return BareissRankInPlace(a, indices.size(), dim_);
}

std::size_t RankOracle::RankResidues(
    std::span<const std::size_t> indices) const {
  std::vector<std::uint64_t> a;
  a.reserve(indices.size() * dim_);
  for (std::size_t i : indices) {
    a.insert(a.end(), residue_rows_.begin() + i * dim_,
             residue_rows_.begin() + (i + 1) * dim_);
  }
  return ResidueRankInPlace(a, indices.size(), dim_, field_.modulus());
}

}  // namespace widgetcalc
