// Copyright 2026 The FedBoost Authors.
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

#ifndef FEDBOOST_CRYPTO_RANDOM_H_
#define FEDBOOST_CRYPTO_RANDOM_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>

#include <gmpxx.h>

namespace fedboost::crypto {

// ChaCha20 keystream used as a cryptographic random source. Not thread-safe;
// give each thread (or party) its own instance.
class RandomSource {
 public:
  // Keyed from operating-system entropy.
  RandomSource();
  // Deterministic stream for reproducible runs and tests. Not secret.
  explicit RandomSource(std::uint64_t seed);

  void Fill(std::span<std::uint8_t> out);
  std::uint64_t NextU64();
  // Uniform in [0, 2^bits).
  mpz_class Bits(unsigned bits);
  // Uniform in [0, bound) by rejection sampling.
  mpz_class Below(const mpz_class& bound);
  // Independent stream derived from this one's key and `stream`.
  RandomSource Fork(std::uint64_t stream) const;

 private:
  RandomSource(const std::array<std::uint8_t, 32>& key, std::uint64_t nonce);
  void Refill();

  std::array<std::uint8_t, 32> key_{};
  std::array<std::uint8_t, 8> nonce_{};
  std::uint64_t block_counter_ = 0;
  std::array<std::uint8_t, 4096> buffer_{};
  std::size_t used_ = 4096;
};

}  // namespace fedboost::crypto

#endif  // FEDBOOST_CRYPTO_RANDOM_H_
