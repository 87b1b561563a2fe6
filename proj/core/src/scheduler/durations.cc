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

#include "fedboost/scheduler/durations.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "fedboost/error.h"

namespace fedboost::scheduler {

Micros SecondsToMicros(double seconds) {
  return static_cast<Micros>(std::llround(seconds * kMicrosPerSecond));
}

DurationModel DurationModel::Fixed(double seconds) {
  if (!(seconds > 0.0) || !std::isfinite(seconds))
    throw ArgumentError("fixed duration must be positive");
  DurationModel m;
  m.kind_ = Kind::kFixed;
  m.mean_ = seconds;
  return m;
}

DurationModel DurationModel::Normal(double mean, double stddev) {
  if (!(mean > 0.0) || !std::isfinite(mean))
    throw ArgumentError("normal duration mean must be positive");
  if (!(stddev >= 0.0) || !std::isfinite(stddev))
    throw ArgumentError("normal duration stddev must be >= 0");
  DurationModel m;
  m.kind_ = Kind::kNormal;
  m.mean_ = mean;
  m.stddev_ = stddev;
  return m;
}

DurationModel DurationModel::Empirical(std::vector<double> seconds) {
  if (seconds.empty()) throw ArgumentError("empirical duration list is empty");
  for (double s : seconds) {
    if (!(s > 0.0) || !std::isfinite(s))
      throw ArgumentError("empirical durations must be positive");
  }
  DurationModel m;
  m.kind_ = Kind::kEmpirical;
  m.mean_ = std::accumulate(seconds.begin(), seconds.end(), 0.0) /
            static_cast<double>(seconds.size());
  m.samples_ = std::move(seconds);
  return m;
}

Micros DurationModel::Sample(std::mt19937_64& rng) const {
  double s = mean_;
  switch (kind_) {
    case Kind::kFixed:
      break;
    case Kind::kNormal: {
      std::normal_distribution<double> dist(mean_, stddev_);
      do {
        s = dist(rng);
      } while (!(s > 0.0));
      break;
    }
    case Kind::kEmpirical: {
      std::uniform_int_distribution<std::size_t> pick(0, samples_.size() - 1);
      s = samples_[pick(rng)];
      break;
    }
  }
  return std::max<Micros>(1, SecondsToMicros(s));
}

Micros DurationModel::Expected() const {
  return std::max<Micros>(1, SecondsToMicros(mean_));
}

std::string DurationModel::ToString() const {
  std::ostringstream out;
  switch (kind_) {
    case Kind::kFixed:
      out << "fixed(" << mean_ << ")";
      break;
    case Kind::kNormal:
      out << "normal(" << mean_ << ", " << stddev_ << ")";
      break;
    case Kind::kEmpirical:
      out << "empirical(" << samples_.size() << " samples)";
      break;
  }
  return out.str();
}

}  // namespace fedboost::scheduler
