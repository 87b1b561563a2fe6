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

#include "fedboost/crypto/random.h"

#include <algorithm>
#include <cstring>
#include <vector>

#include <sodium.h>

#include "fedboost/error.h"

namespace fedboost::crypto {
namespace {

void EnsureSodium() {
  static const int rc = sodium_init();
  if (rc < 0) throw Error("libsodium failed to initialize");
}

void StoreLe64(std::uint64_t v, std::uint8_t* out) {
  for (int i = 0; i < 8; ++i) out[i] = static_cast<std::uint8_t>(v >> (8 * i));
}

}  // namespace

RandomSource::RandomSource() {
  EnsureSodium();
  randombytes_buf(key_.data(), key_.size());
}

RandomSource::RandomSource(std::uint64_t seed) {
  EnsureSodium();
  // Stretch the seed into a full key so nearby seeds give unrelated streams.
  std::array<std::uint8_t, 8> s{};
  StoreLe64(seed, s.data());
  crypto_generichash(key_.data(), key_.size(), s.data(), s.size(), nullptr, 0);
}

RandomSource::RandomSource(const std::array<std::uint8_t, 32>& key,
                           std::uint64_t nonce)
    : key_(key) {
  EnsureSodium();
  StoreLe64(nonce, nonce_.data());
}

RandomSource RandomSource::Fork(std::uint64_t stream) const {
  std::array<std::uint8_t, 40> material{};
  std::memcpy(material.data(), key_.data(), key_.size());
  StoreLe64(stream, material.data() + 32);
  std::array<std::uint8_t, 32> child{};
  crypto_generichash(child.data(), child.size(), material.data(), material.size(),
                     nullptr, 0);
  return RandomSource(child, stream);
}

void RandomSource::Refill() {
  std::memset(buffer_.data(), 0, buffer_.size());
  crypto_stream_chacha20_xor_ic(buffer_.data(), buffer_.data(), buffer_.size(),
                                nonce_.data(), block_counter_, key_.data());
  block_counter_ += buffer_.size() / 64;
  used_ = 0;
}

void RandomSource::Fill(std::span<std::uint8_t> out) {
  std::size_t done = 0;
  while (done < out.size()) {
    if (used_ == buffer_.size()) Refill();
    const std::size_t n = std::min(out.size() - done, buffer_.size() - used_);
    std::memcpy(out.data() + done, buffer_.data() + used_, n);
    used_ += n;
    done += n;
  }
}

std::uint64_t RandomSource::NextU64() {
  std::array<std::uint8_t, 8> b{};
  Fill(b);
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
  return v;
}

mpz_class RandomSource::Bits(unsigned bits) {
  if (bits == 0) return 0;
  std::vector<std::uint8_t> bytes((bits + 7) / 8);
  Fill(bytes);
  const unsigned extra = static_cast<unsigned>(bytes.size() * 8) - bits;
  bytes[0] &= static_cast<std::uint8_t>(0xFFu >> extra);
  mpz_class out;
  mpz_import(out.get_mpz_t(), bytes.size(), 1, 1, 1, 0, bytes.data());
  return out;
}

mpz_class RandomSource::Below(const mpz_class& bound) {
  if (bound <= 0) throw ArgumentError("random bound must be positive");
  const auto bits = static_cast<unsigned>(mpz_sizeinbase(bound.get_mpz_t(), 2));
  for (;;) {
    mpz_class v = Bits(bits);
    if (v < bound) return v;
  }
}

}  // namespace fedboost::crypto
