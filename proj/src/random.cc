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

#include "nlicrash/random.h"

namespace nlicrash {
namespace {

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

std::uint64_t Mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t Absorb(std::uint64_t h, unsigned char byte) {
  return (h ^ byte) * kFnvPrime;
}

}  // namespace

std::uint64_t StableHash(std::string_view bytes, std::uint64_t seed) {
  std::uint64_t h = kFnvOffset;
  for (int i = 0; i < 8; ++i) {
    h = Absorb(h, static_cast<unsigned char>(seed >> (8 * i)));
  }
  for (char c : bytes) h = Absorb(h, static_cast<unsigned char>(c));
  return Mix(h);
}

std::uint64_t DeriveFieldSeed(std::uint64_t global_seed, std::string_view uid,
                              std::string_view field) {
  std::string key;
  key.reserve(uid.size() + field.size() + 1);
  key.append(uid);
  key.push_back('\0');
  key.append(field);
  return StableHash(key, global_seed);
}

}  // namespace nlicrash
