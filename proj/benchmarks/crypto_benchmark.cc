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


#include <benchmark/benchmark.h>
#include <gmpxx.h>

#include "fedboost/crypto/fixed_point.h"
#include "fedboost/crypto/paillier.h"
#include "fedboost/crypto/random.h"

namespace fedboost::crypto {
namespace {

const KeyPair& Keys(int bits) {
  static RandomSource rng(7);
  static const KeyPair k512 = GenerateKeyPair(512, rng);
  static const KeyPair k1024 = GenerateKeyPair(1024, rng);
  static const KeyPair k2048 = GenerateKeyPair(2048, rng);
  return bits == 512 ? k512 : bits == 1024 ? k1024 : k2048;
}

void BM_PublicEncrypt(benchmark::State& state) {
  const KeyPair& k = Keys(static_cast<int>(state.range(0)));
  RandomSource rng(1);
  const mpz_class m = EncodeSigned(-1.25, k.public_key.n());
  for (auto _ : state) benchmark::DoNotOptimize(k.public_key.Encrypt(m, rng));
}
BENCHMARK(BM_PublicEncrypt)->Arg(512)->Arg(1024)->Arg(2048);

void BM_FixedBaseEncrypt(benchmark::State& state) {
  const KeyPair& k = Keys(static_cast<int>(state.range(0)));
  RandomSource rng(1);
  const Encryptor enc(k.public_key, rng);
  const mpz_class m = EncodeSigned(-1.25, k.public_key.n());
  for (auto _ : state) benchmark::DoNotOptimize(enc.Encrypt(m, rng));
}
BENCHMARK(BM_FixedBaseEncrypt)->Arg(512)->Arg(1024)->Arg(2048);

void BM_HomomorphicAdd(benchmark::State& state) {
  const KeyPair& k = Keys(static_cast<int>(state.range(0)));
  RandomSource rng(1);
  const Ciphertext b = k.public_key.Encrypt(mpz_class(3), rng);
  Ciphertext acc = k.public_key.Encrypt(mpz_class(4), rng);
  for (auto _ : state) k.public_key.AddInPlace(acc, b);
  benchmark::DoNotOptimize(acc.value);
}
BENCHMARK(BM_HomomorphicAdd)->Arg(512)->Arg(1024)->Arg(2048);

void BM_Decrypt(benchmark::State& state) {
  const KeyPair& k = Keys(static_cast<int>(state.range(0)));
  RandomSource rng(1);
  const Ciphertext c = k.public_key.Encrypt(mpz_class(12345), rng);
  for (auto _ : state) benchmark::DoNotOptimize(k.private_key.Decrypt(c));
}
BENCHMARK(BM_Decrypt)->Arg(512)->Arg(1024)->Arg(2048);

}  // namespace
}  // namespace fedboost::crypto

BENCHMARK_MAIN();
