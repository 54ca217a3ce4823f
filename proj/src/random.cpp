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

#include "pricetree/random.hpp"

#include <limits>
#include <string>

#include "pricetree/error.hpp"

namespace pricetree {

uint64_t Mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

uint64_t DeriveSeed(uint64_t corpus_seed, uint64_t index) {
  return Mix64(Mix64(corpus_seed) ^ Mix64(index + 0x632be59bd9b4e019ULL));
}

uint64_t DeriveSeed(uint64_t corpus_seed, std::string_view label) {
  // FNV-1a over the label.
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : label) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return Mix64(Mix64(corpus_seed) ^ h);
}

int64_t SeededSource::UniformInt(int64_t lo, int64_t hi) {
  if (lo > hi) Fail(ErrorCode::kInternal, "UniformInt: empty range");
  const uint64_t span = static_cast<uint64_t>(hi) - static_cast<uint64_t>(lo);
  if (span == std::numeric_limits<uint64_t>::max()) {
    return static_cast<int64_t>(engine_());
  }
  const uint64_t range = span + 1;
  // Reject the top partial bucket so every residue is equally likely.
  const uint64_t limit = std::numeric_limits<uint64_t>::max() -
                         std::numeric_limits<uint64_t>::max() % range;
  uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return static_cast<int64_t>(static_cast<uint64_t>(lo) + x % range);
}

int64_t ScriptedSource::UniformInt(int64_t lo, int64_t hi) {
  if (draws_.empty()) Fail(ErrorCode::kInternal, "scripted random source exhausted");
  const int64_t v = draws_.front();
  if (v < lo || v > hi) {
    Fail(ErrorCode::kInternal, "scripted draw " + std::to_string(v) + " outside [" +
                                   std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  draws_.pop_front();
  return v;
}

}  // namespace pricetree
