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

#include "widgetcalc/generators.h"

#include <algorithm>
#include <utility>
#include <vector>

#include "widgetcalc/checkers.h"
#include "widgetcalc/errors.h"
#include "widgetcalc/proof_engine.h"

namespace widgetcalc {
namespace {

std::string Describe(const GenConfig& cfg) {
  std::string s = GenKindName(cfg.kind) + " n=" + std::to_string(cfg.n) +
                  " d=" + std::to_string(cfg.d) + " field=" +
                  cfg.field.ToString() + " bound=" + std::to_string(cfg.bound) +
                  " seed=" + std::to_string(cfg.seed);
  if (cfg.plant_k) s += " k=" + std::to_string(*cfg.plant_k);
  return s;
}

void CheckCommon(const GenConfig& cfg) {
  if (cfg.n < 1) throw GenerationError("n must be at least 1: " + Describe(cfg));
  if (cfg.bound < 1) {
    throw GenerationError("bound must be at least 1: " + Describe(cfg));
  }
}

// Basis of a random subspace of dimension r, by rejection.
std::vector<Point> RandomBasis(Field field, std::size_t d, std::size_t r,
                               std::int64_t bound, SplitMix64& rng,
                               const GenConfig& cfg) {
  if (r > d) throw GenerationError("subspace larger than d: " + Describe(cfg));
  for (std::uint64_t attempt = 0; attempt < kRejectionCap; ++attempt) {
    std::vector<Point> basis;
    for (std::size_t t = 0; t < r; ++t) {
      basis.push_back(RandomPoint(field, d, bound, rng));
    }
    if (SpanDim(basis) == r) return basis;
  }
  throw GenerationError("could not draw an independent basis: " +
                        Describe(cfg));
}

Point RandomCombination(const std::vector<Point>& basis, Field field,
                        std::size_t d, std::int64_t bound, SplitMix64& rng) {
  Point p = ZeroPoint(field, d);
  for (const Point& b : basis) p = p + RandomScalar(field, bound, rng) * b;
  return p;
}

Widget UniformWidget(const GenConfig& cfg, SplitMix64& rng) {
  std::vector<Pair> pairs;
  for (std::size_t i = 0; i < cfg.n; ++i) {
    Point plus = RandomPoint(cfg.field, cfg.d, cfg.bound, rng);
    Point minus = RandomPoint(cfg.field, cfg.d, cfg.bound, rng);
    pairs.push_back(Pair{std::move(plus), std::move(minus)});
  }
  return Widget(cfg.field, cfg.d, std::move(pairs));
}

Relabeling RandomRelabeling(std::size_t n, SplitMix64& rng) {
  Relabeling r = Relabeling::Identity(n);
  rng.Shuffle(r.order);
  for (std::size_t i = 0; i < n; ++i) r.flip[i] = rng.Coin();
  return r;
}

void Postcondition(bool ok, const char* what, const GenConfig& cfg) {
  if (!ok) {
    throw GenerationError(std::string("postcondition failed (") + what +
                          "): " + Describe(cfg));
  }
}

}  // namespace

std::string GenKindName(GenKind k) {
  switch (k) {
    case GenKind::kValidPlanted:
      return "valid_planted";
    case GenKind::kLegalNotFull:
      return "legal_not_full";
    case GenKind::kFullNotLegal:
      return "full_not_legal";
    case GenKind::kUniformRandom:
      return "uniform_random";
    case GenKind::kValidRejection:
      return "valid_rejection";
  }
  return "?";
}

GenKind ParseGenKind(const std::string& name) {
  if (name == "valid_planted" || name == "valid") return GenKind::kValidPlanted;
  if (name == "legal_not_full") return GenKind::kLegalNotFull;
  if (name == "full_not_legal") return GenKind::kFullNotLegal;
  if (name == "uniform_random" || name == "uniform") {
    return GenKind::kUniformRandom;
  }
  if (name == "valid_rejection") return GenKind::kValidRejection;
  throw InputError("unknown generator kind \"" + name + "\"");
}

Scalar RandomScalar(Field field, std::int64_t bound, SplitMix64& rng) {
  if (field.is_rational()) {
    return Scalar::FromInt(field, rng.UniformInt(-bound, bound));
  }
  return Scalar::FromResidue(
      field, static_cast<std::uint64_t>(rng.UniformInt(
                 0, static_cast<std::int64_t>(field.modulus()) - 1)));
}

Point RandomPoint(Field field, std::size_t d, std::int64_t bound,
                  SplitMix64& rng) {
  Point p;
  p.reserve(d);
  for (std::size_t c = 0; c < d; ++c) p.push_back(RandomScalar(field, bound, rng));
  return p;
}

PointMatrix RandomInvertible(Field field, std::size_t d, std::int64_t bound,
                             SplitMix64& rng) {
  for (std::uint64_t attempt = 0; attempt < kRejectionCap; ++attempt) {
    PointMatrix m(field, d, d);
    for (std::size_t r = 0; r < d; ++r) {
      for (std::size_t c = 0; c < d; ++c) m(r, c) = RandomScalar(field, bound, rng);
    }
    if (BareissRank(m) == d) return m;
  }
  throw GenerationError("could not draw an invertible matrix");
}

Widget Generate(const GenConfig& cfg, GenStats* stats) {
  switch (cfg.kind) {
    case GenKind::kValidPlanted:
      return GenValidPlanted(cfg, stats);
    case GenKind::kLegalNotFull:
      return GenLegalNotFull(cfg, stats);
    case GenKind::kFullNotLegal:
      return GenFullNotLegal(cfg, stats);
    case GenKind::kUniformRandom:
      return GenUniform(cfg, stats);
    case GenKind::kValidRejection:
      return GenValidRejection(cfg, stats);
  }
  throw InputError("unknown generator kind");
}

Widget GenValidPlanted(const GenConfig& cfg, GenStats* stats) {
  CheckCommon(cfg);
  if (cfg.n < 2) {
    throw GenerationError("a valid widget needs n >= 2: " + Describe(cfg));
  }
  if (cfg.d < cfg.n) {
    throw GenerationError("planted construction needs d >= n: " +
                          Describe(cfg));
  }
  SplitMix64 rng(cfg.seed);
  const std::size_t k =
      cfg.plant_k ? *cfg.plant_k : 1 + rng.Index(cfg.n - 1);
  if (k < 1 || k >= cfg.n) {
    throw GenerationError("plant size must satisfy 1 <= k < n: " +
                          Describe(cfg));
  }
  const std::vector<Point> basis =
      RandomBasis(cfg.field, cfg.d, k - 1, cfg.bound, rng, cfg);
  std::uint64_t attempts = 0;
  std::optional<Widget> widget;
  while (!widget) {
    if (++attempts > kRejectionCap) {
      throw GenerationError("rejection cap exceeded: " + Describe(cfg));
    }
    // The plant is redrawn too: a degenerate plant can make fullness
    // unreachable.
    std::vector<Pair> pairs;
    for (std::size_t i = 0; i < k; ++i) {
      Point plus = RandomCombination(basis, cfg.field, cfg.d, cfg.bound, rng);
      Point minus = RandomCombination(basis, cfg.field, cfg.d, cfg.bound, rng);
      pairs.push_back(Pair{std::move(plus), std::move(minus)});
    }
    for (std::size_t i = k; i < cfg.n; ++i) {
      Point plus = RandomPoint(cfg.field, cfg.d, cfg.bound, rng);
      Point minus = RandomPoint(cfg.field, cfg.d, cfg.bound, rng);
      pairs.push_back(Pair{std::move(plus), std::move(minus)});
    }
    Widget candidate(cfg.field, cfg.d, std::move(pairs));
    if (IsFull(candidate)) widget = std::move(candidate);
  }

  Widget w = Relabel(*widget, RandomRelabeling(cfg.n, rng));
  w = ApplyLinear(w, RandomInvertible(cfg.field, cfg.d, 1, rng));
  const std::size_t perturbations = rng.Index(cfg.n + 1);
  for (std::size_t t = 0; t < perturbations; ++t) {
    const std::size_t i = rng.Index(cfg.n);
    w = Perturb(w, i, RandomScalar(cfg.field, cfg.bound, rng));
  }
  Postcondition(IsValid(w).verdict == Verdict::kValid, "valid", cfg);
  if (stats != nullptr) stats->attempts = attempts;
  return w;
}

Widget GenLegalNotFull(const GenConfig& cfg, GenStats* stats) {
  CheckCommon(cfg);
  SplitMix64 rng(cfg.seed);
  const std::size_t max_dim = std::min(cfg.n - 1, cfg.d);
  const std::size_t r = rng.Index(max_dim + 1);
  const std::vector<Point> basis =
      RandomBasis(cfg.field, cfg.d, r, cfg.bound, rng, cfg);
  std::vector<Pair> pairs;
  for (std::size_t i = 0; i < cfg.n; ++i) {
    Point plus = RandomCombination(basis, cfg.field, cfg.d, cfg.bound, rng);
    Point minus = RandomCombination(basis, cfg.field, cfg.d, cfg.bound, rng);
    pairs.push_back(Pair{std::move(plus), std::move(minus)});
  }
  Widget w(cfg.field, cfg.d, std::move(pairs));
  Postcondition(IsLegal(w).legal && !IsFull(w), "legal and not full", cfg);
  if (stats != nullptr) stats->attempts = 1;
  return w;
}

Widget GenFullNotLegal(const GenConfig& cfg, GenStats* stats) {
  CheckCommon(cfg);
  if (cfg.d < cfg.n) {
    throw GenerationError("a full widget needs d >= n: " + Describe(cfg));
  }
  SplitMix64 rng(cfg.seed);
  for (std::uint64_t attempt = 1; attempt <= kRejectionCap; ++attempt) {
    Widget w = UniformWidget(cfg, rng);
    if (IsFull(w) && !IsLegal(w).legal) {
      if (stats != nullptr) stats->attempts = attempt;
      return w;
    }
  }
  throw GenerationError("rejection cap exceeded: " + Describe(cfg));
}

Widget GenUniform(const GenConfig& cfg, GenStats* stats) {
  CheckCommon(cfg);
  SplitMix64 rng(cfg.seed);
  if (stats != nullptr) stats->attempts = 1;
  return UniformWidget(cfg, rng);
}

Widget GenValidRejection(const GenConfig& cfg, GenStats* stats) {
  CheckCommon(cfg);
  if (cfg.n < 2) {
    throw GenerationError("a valid widget needs n >= 2: " + Describe(cfg));
  }
  if (cfg.d < cfg.n) {
    throw GenerationError("a full widget needs d >= n: " + Describe(cfg));
  }
  SplitMix64 rng(cfg.seed);
  const std::size_t top = std::min(cfg.n - 1, cfg.d);
  for (std::uint64_t attempt = 1; attempt <= kRejectionCap; ++attempt) {
    // A handful of subspaces of dimension < n; each point picks one.
    const std::size_t count = 1 + rng.Index(3);
    std::vector<std::vector<Point>> subspaces;
    for (std::size_t t = 0; t < count; ++t) {
      const std::size_t r = rng.Index(top + 1);
      subspaces.push_back(RandomBasis(cfg.field, cfg.d, r, cfg.bound, rng, cfg));
    }
    std::vector<Pair> pairs;
    for (std::size_t i = 0; i < cfg.n; ++i) {
      const std::size_t a = rng.Index(count);
      const std::size_t b = rng.Coin() ? a : rng.Index(count);
      Point plus = RandomCombination(subspaces[a], cfg.field, cfg.d, cfg.bound, rng);
      Point minus =
          RandomCombination(subspaces[b], cfg.field, cfg.d, cfg.bound, rng);
      pairs.push_back(Pair{std::move(plus), std::move(minus)});
    }
    Widget w(cfg.field, cfg.d, std::move(pairs));
    if (IsFull(w) && IsLegal(w).legal) {
      if (stats != nullptr) stats->attempts = attempt;
      return w;
    }
  }
  throw GenerationError("rejection cap exceeded: " + Describe(cfg));
}

}  // namespace widgetcalc
