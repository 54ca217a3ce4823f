// Copyright 2026 The pricetree Authors
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

#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <random>
#include <span>
#include <string_view>
#include <vector>

namespace pricetree {

// Source of bounded integer draws. Every random decision in generation goes
// through UniformInt, so a scripted source can replay an exact draw sequence.
class RandomSource {
 public:
  virtual ~RandomSource() = default;

  // Uniform over the closed range [lo, hi]. Requires lo <= hi.
  virtual int64_t UniformInt(int64_t lo, int64_t hi) = 0;
};

// Mixes a 64-bit value (SplitMix64 finalizer).
uint64_t Mix64(uint64_t x);

// Seed of the sub-stream for one (corpus seed, instance index) pair.
uint64_t DeriveSeed(uint64_t corpus_seed, uint64_t index);

// Seed derived from a corpus seed and a label, e.g. "pool".
uint64_t DeriveSeed(uint64_t corpus_seed, std::string_view label);

// mt19937_64 with a portable rejection-sampling range reduction, so draw
// sequences are identical across standard libraries.
class SeededSource final : public RandomSource {
 public:
  explicit SeededSource(uint64_t seed) : engine_(seed) {}

  // Sub-stream for instance `index` of a corpus.
  static SeededSource ForInstance(uint64_t corpus_seed, uint64_t index) {
    return SeededSource(DeriveSeed(corpus_seed, index));
  }

  int64_t UniformInt(int64_t lo, int64_t hi) override;

 private:
  std::mt19937_64 engine_;
};

// Replays a fixed list of draws. Throws Error(kInternal) when the script is
// exhausted or a scripted value lies outside the requested range.
class ScriptedSource final : public RandomSource {
 public:
  explicit ScriptedSource(std::vector<int64_t> draws)
      : draws_(draws.begin(), draws.end()) {}

  int64_t UniformInt(int64_t lo, int64_t hi) override;

  size_t remaining() const { return draws_.size(); }

 private:
  std::deque<int64_t> draws_;
};

// Fisher-Yates shuffle driven by a RandomSource.
template <typename T>
void Shuffle(std::span<T> items, RandomSource& rng) {
  for (size_t k = items.size(); k > 1; --k) {
    const auto j = static_cast<size_t>(rng.UniformInt(0, static_cast<int64_t>(k) - 1));
    std::swap(items[k - 1], items[j]);
  }
}

}  // namespace pricetree
