//
// Copyright 2026 The dpsurvey Authors
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

#ifndef DPSURVEY_RANDOM_HPP_
#define DPSURVEY_RANDOM_HPP_

#include <cstdint>
#include <random>

namespace dpsurvey {

// SplitMix64 finalizer; the documented mixing function behind stream
// derivation below.
std::uint64_t splitmix64(std::uint64_t x);

// Combines a stream id with a child key, hash_combine style, then finalizes.
std::uint64_t derive_stream(std::uint64_t stream_id, std::uint64_t key);

// A seeded pseudorandom stream addressed by (master_seed, stream_id).
//
// Identical (master_seed, stream_id) pairs reproduce identical draws on every
// platform; distinct stream ids give statistically independent streams.
// child(key) derives a new stream from the address alone, never from
// generator state, so derivation order and parallel schedules cannot change
// any result.
//
// The generator is a deterministic PRNG chosen for research reproducibility.
// Production privacy deployments need a cryptographically secure source, and
// floating-point side channels of noise samplers are out of scope here.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t master_seed, std::uint64_t stream_id = 0)
      : master_seed_(master_seed),
        stream_id_(stream_id),
        engine_(splitmix64(splitmix64(master_seed) ^ derive_stream(stream_id, 0x5d3f0e1c2b4a6987ULL))) {}

  std::uint64_t master_seed() const { return master_seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  RandomSource child(std::uint64_t key) const {
    return RandomSource(master_seed_, derive_stream(stream_id_, key));
  }
  RandomSource child(std::uint64_t a, std::uint64_t b) const {
    return RandomSource(master_seed_, derive_stream(derive_stream(stream_id_, a), b));
  }

  std::uint64_t bits() { return engine_(); }

  // Uniform draw strictly inside (0, 1); 53-bit resolution, centered so that
  // neither endpoint is reachable and quantile transforms stay finite.
  double uniform() {
    return (static_cast<double>(bits() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Standard normal via the inverse CDF: exactly one uniform per draw.
  double normal();

  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::uint64_t master_seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
};

}  // namespace dpsurvey

#endif  // DPSURVEY_RANDOM_HPP_
