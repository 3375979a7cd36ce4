// Copyright 2026 The Envyfree Authors.
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

#ifndef ENVYFREE_RNG_H_
#define ENVYFREE_RNG_H_

#include <cstdint>
#include <initializer_list>

namespace envyfree {

// Counter-based random streams.
//
// Every draw is a pure function of (seed, stream id, draw index):
//
//   key    = Mix64(seed ^ Mix64(stream_id + kStreamSalt))
//   draw_k = Mix64(key + (k + 1) * kGolden)
//
// where Mix64 is the SplitMix64 finalizer. There is no hidden state, so any
// draw can be recomputed independently of thread count or visitation order.

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
inline constexpr std::uint64_t kStreamSalt = 0xD1B54A32D192ED03ULL;

constexpr std::uint64_t Mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ULL;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBULL;
  x ^= x >> 31;
  return x;
}

// Folds a sequence of words into one 64-bit seed. Order-sensitive.
std::uint64_t DeriveSeed(std::initializer_list<std::uint64_t> parts);

// Maps 64 random bits to a double in [0, 1) using the top 53 bits.
double ToUnitInterval(std::uint64_t bits);

class CounterStream {
 public:
  CounterStream(std::uint64_t seed, std::uint64_t stream_id,
                std::uint64_t first_index = 0);

  // Bits of draw `index`; does not advance the stream.
  std::uint64_t At(std::uint64_t index) const;

  std::uint64_t Next() { return At(position_++); }
  double NextUnit() { return ToUnitInterval(Next()); }

  std::uint64_t position() const { return position_; }
  void Seek(std::uint64_t index) { position_ = index; }

 private:
  std::uint64_t key_;
  std::uint64_t position_;
};

}  // namespace envyfree

#endif  // ENVYFREE_RNG_H_
