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

#ifndef FEDBOOST_SCHEDULER_DURATIONS_H_
#define FEDBOOST_SCHEDULER_DURATIONS_H_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace fedboost::scheduler {

// Virtual time in integer microseconds.
using Micros = std::int64_t;

inline constexpr Micros kMicrosPerSecond = 1'000'000;

// Rounds to the nearest microsecond.
Micros SecondsToMicros(double seconds);
inline double MicrosToSeconds(Micros us) {
  return static_cast<double>(us) / kMicrosPerSecond;
}

// Distribution of one task's duration, in virtual seconds.
class DurationModel {
 public:
  enum class Kind { kFixed, kNormal, kEmpirical };

  // Defaults to a fixed one-second task.
  DurationModel() = default;

  // Throw ArgumentError for non-positive values (or stddev < 0, empty list).
  static DurationModel Fixed(double seconds);
  // Normal(mean, stddev) truncated to strictly positive draws.
  static DurationModel Normal(double mean, double stddev);
  // Uniform draw from the listed observations.
  static DurationModel Empirical(std::vector<double> seconds);

  Kind kind() const { return kind_; }
  double mean() const { return mean_; }
  double stddev() const { return stddev_; }
  const std::vector<double>& samples() const { return samples_; }

  // Strictly positive draw, at least 1 us.
  Micros Sample(std::mt19937_64& rng) const;
  // Expected draw, used to project queued work.
  Micros Expected() const;

  std::string ToString() const;

 private:
  Kind kind_ = Kind::kFixed;
  double mean_ = 1.0;
  double stddev_ = 0.0;
  std::vector<double> samples_;
};

}  // namespace fedboost::scheduler

#endif  // FEDBOOST_SCHEDULER_DURATIONS_H_
