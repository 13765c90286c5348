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

// Seeded instance generators. Every generator asserts its postcondition
// with the checkers before returning and throws GenerationError when the
// configuration is unsatisfiable or rejection sampling exceeds its cap.

#ifndef WIDGETCALC_GENERATORS_H_
#define WIDGETCALC_GENERATORS_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "widgetcalc/exact_linalg.h"
#include "widgetcalc/rng.h"
#include "widgetcalc/widget.h"

namespace widgetcalc {

enum class GenKind {
  kValidPlanted,
  kLegalNotFull,
  kFullNotLegal,
  kUniformRandom,
  kValidRejection,
};

std::string GenKindName(GenKind k);
// Accepts the names above plus "valid" for kValidPlanted and "uniform" for
// kUniformRandom. Throws InputError otherwise.
GenKind ParseGenKind(const std::string& name);

struct GenConfig {
  std::size_t n = 3;
  std::size_t d = 3;
  Field field;
  GenKind kind = GenKind::kValidPlanted;
  // Planted legal subwidget size; drawn from [1, n - 1] when unset.
  std::optional<std::size_t> plant_k;
  // Rational coordinates are drawn from the integers in [-bound, bound].
  std::int64_t bound = 3;
  std::uint64_t seed = 0;
};

inline constexpr std::uint64_t kRejectionCap = 100000;

struct GenStats {
  // Candidates drawn, including the accepted one.
  std::uint64_t attempts = 0;
};

// Dispatches on cfg.kind.
Widget Generate(const GenConfig& cfg, GenStats* stats = nullptr);

// k pairs inside a random (k - 1)-dimensional subspace, n - k pairs that
// make the widget full, then a random relabeling, a random invertible map
// and random validity-preserving perturbations. Requires d >= n.
Widget GenValidPlanted(const GenConfig& cfg, GenStats* stats = nullptr);

// All 2n points in a random subspace of dimension at most n - 1.
Widget GenLegalNotFull(const GenConfig& cfg, GenStats* stats = nullptr);

// Uniform widgets conditioned on full and not legal. Requires d >= n.
Widget GenFullNotLegal(const GenConfig& cfg, GenStats* stats = nullptr);

// Coordinates i.i.d. uniform in [-bound, bound] (reduced mod p).
Widget GenUniform(const GenConfig& cfg, GenStats* stats = nullptr);

// Points drawn from a union of random low-dimensional subspaces, accepted
// when valid. stats->attempts gives the acceptance rate.
Widget GenValidRejection(const GenConfig& cfg, GenStats* stats = nullptr);

// Random d x d invertible matrix with entries in [-bound, bound].
PointMatrix RandomInvertible(Field field, std::size_t d, std::int64_t bound,
                             SplitMix64& rng);

Scalar RandomScalar(Field field, std::int64_t bound, SplitMix64& rng);
Point RandomPoint(Field field, std::size_t d, std::int64_t bound,
                  SplitMix64& rng);

}  // namespace widgetcalc

#endif  // WIDGETCALC_GENERATORS_H_
