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

#include "envyfree/rng.h"

namespace envyfree {

std::uint64_t DeriveSeed(std::initializer_list<std::uint64_t> parts) {
  std::uint64_t h = 0x6A09E667F3BCC909ULL;
  for (std::uint64_t part : parts) {
    h = Mix64(h ^ Mix64(part + kGolden));
  }
  return h;
}

double ToUnitInterval(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

CounterStream::CounterStream(std::uint64_t seed, std::uint64_t stream_id,
                             std::uint64_t first_index)
    : key_(Mix64(seed ^ Mix64(stream_id + kStreamSalt))),
      position_(first_index) {}

std::uint64_t CounterStream::At(std::uint64_t index) const {
  return Mix64(key_ + (index + 1) * kGolden);
}

}  // namespace envyfree
