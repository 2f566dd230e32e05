//
// Copyright 2026 The nlicrash Authors
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

// Seeded randomness with platform-independent output.
//
// std::uniform_int_distribution and std::shuffle are implementation-defined,
// so two standard libraries can disagree on the same seed. Everything here is
// built directly on the raw std::mt19937_64 stream, whose output sequence the
// standard fixes.

#ifndef NLICRASH_RANDOM_H_
#define NLICRASH_RANDOM_H_

#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <utility>

namespace nlicrash {

class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t Next() { return engine_(); }

  // Uniform integer in [0, bound). bound must be positive.
  std::uint64_t Below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = engine_();
      if (r >= threshold) return r % bound;
    }
  }

  // Uniform double in [0, 1) with 53 bits of precision.
  double Uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Fisher-Yates.
  template <typename T>
  void Shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(Below(i));
      using std::swap;
      swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

// Stable 64-bit FNV-1a, finalized with the splitmix64 mixer.
std::uint64_t StableHash(std::string_view bytes, std::uint64_t seed = 0);

// Seed for one text field of one pair: hash(global seed, uid, field name).
std::uint64_t DeriveFieldSeed(std::uint64_t global_seed, std::string_view uid,
                              std::string_view field);

}  // namespace nlicrash

#endif  // NLICRASH_RANDOM_H_
