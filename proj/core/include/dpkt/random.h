//
// Copyright 2026 The dpkt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef DPKT_RANDOM_H_
#define DPKT_RANDOM_H_

#include <cstdint>
#include <random>

namespace dpkt {

// Well-known stream identifiers for Rng::Split. Each consumer of randomness
// draws from its own child stream so that changing one quantity (for example
// the label noise level) leaves every other sample unchanged.
enum class Stream : uint64_t {
  kDesign = 1,
  kSupport = 2,
  kValues = 3,
  kLabelNoise = 4,
  kSyntheticFeatures = 5,
  kMechanism = 6,
  kReplacement = 7,
  kSplit = 8,
  kGradientNoise = 9,
  kData = 10,
  kTrial = 11,
  kCell = 12,
};

// SplitMix64 finalizer applied to (seed, stream). Used to derive child seeds.
uint64_t MixSeed(uint64_t seed, uint64_t stream);

// Seeded, stream-splittable random source.
//
// An Rng is a value: copying it copies the generator state. Child streams are
// derived from the seed only (not from how many samples were drawn), so
// `rng.Split(k)` is the same stream no matter when it is called. Sequences are
// reproducible for a fixed build; the underlying engine is std::mt19937_64.
class Rng {
 public:
  explicit Rng(uint64_t seed);

  uint64_t seed() const { return seed_; }

  Rng Split(uint64_t stream) const;
  Rng Split(Stream stream) const {
    return Split(static_cast<uint64_t>(stream));
  }

  // Uniform on [lo, hi).
  double Uniform(double lo, double hi);
  // Uniform on the open interval (lo, hi).
  double UniformOpen(double lo, double hi);
  // Normal(0, stddev^2).
  double Normal(double stddev);
  // Uniform integer on [lo, hi] (inclusive).
  int64_t UniformInt(int64_t lo, int64_t hi);
  bool Bernoulli(double p);

  std::mt19937_64& engine() { return engine_; }

 private:
  uint64_t seed_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> standard_normal_{0.0, 1.0};
};

}  // namespace dpkt

#endif  // DPKT_RANDOM_H_
