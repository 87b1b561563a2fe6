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

#include "fedboost/data/synthetic.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include "fedboost/error.h"

namespace fedboost::data {
namespace {

struct Profile {
  double industrial;
  double commercial;
  double population;
  std::array<double, 5> age;
  std::array<double, 3> wage;
  double gender;
};

// Daytime activity in [0, 1] peaking early afternoon.
double Activity(int hour) {
  return 0.5 + 0.5 * std::sin(2.0 * std::numbers::pi * (hour - 8) / 24.0);
}

template <std::size_t N>
std::array<double, N> Shares(std::mt19937_64& rng) {
  std::gamma_distribution<double> g(4.0, 1.0);
  std::array<double, N> s{};
  double total = 0.0;
  for (double& v : s) total += (v = g(rng));
  for (double& v : s) v /= total;
  return s;
}

}  // namespace

std::string AddHours(const std::string& start, std::int64_t hours) {
  using namespace std::chrono;
  if (!IsIsoTimestamp(start) || start.compare(14, 6, "00:00Z") != 0)
    throw ArgumentError("start '" + start + "' must be an ISO timestamp on the hour");
  const int y = std::stoi(start.substr(0, 4));
  const auto mo = static_cast<unsigned>(std::stoi(start.substr(5, 2)));
  const auto d = static_cast<unsigned>(std::stoi(start.substr(8, 2)));
  const int h = std::stoi(start.substr(11, 2));
  const year_month_day ymd{year{y}, month{mo}, day{d}};
  if (!ymd.ok()) throw ArgumentError("start '" + start + "' is not a calendar date");
  const sys_time<std::chrono::hours> t = sys_days{ymd} + std::chrono::hours{h + hours};
  const sys_days day_part = floor<days>(t);
  const year_month_day out{day_part};
  const auto hh = (t - day_part).count();
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02lld:00:00Z", static_cast<int>(out.year()),
                static_cast<unsigned>(out.month()), static_cast<unsigned>(out.day()),
                static_cast<long long>(hh));
  return buf;
}

std::vector<DistrictDataset> GenerateSynthetic(const SyntheticSpec& spec) {
  if (spec.districts < 1) throw ArgumentError("synthetic data needs at least one district");
  if (spec.rows < 1) throw ArgumentError("synthetic data needs at least one row");
  if (!(spec.noise >= 0.0)) throw ArgumentError("noise must be >= 0");
  AddHours(spec.start, 0);

  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> z(0.0, 1.0);
  std::uniform_real_distribution<double> u(0.0, 1.0);

  std::vector<Profile> profiles(spec.districts);
  for (Profile& p : profiles) {
    p.industrial = 0.1 + 0.8 * u(rng);
    p.commercial = 0.1 + 0.8 * u(rng);
    p.population = 2000.0 + 6000.0 * u(rng);
    p.age = Shares<5>(rng);
    p.wage = Shares<3>(rng);
    p.gender = 0.47 + 0.06 * u(rng);
  }

  const int n_days = (spec.rows + 23) / 24 + 1;
  // Regional weather shared by all districts, one draw per day.
  std::vector<double> temp_day(n_days), wind_day(n_days), baro_day(n_days);
  for (int d = 0; d < n_days; ++d) {
    temp_day[d] = 3.0 * z(rng);
    wind_day[d] = 1.0 * z(rng);
    baro_day[d] = 4.0 * z(rng);
  }
  std::vector<DistrictDataset> out(spec.districts);
  for (int m = 0; m < spec.districts; ++m) {
    const Profile& p = profiles[m];
    DistrictDataset& ds = out[m];
    ds.district_id = m + 1;
    ds.rows.reserve(spec.rows);
    for (int i = 0; i < spec.rows; ++i) {
      const int day = i / 24;
      const int hour = i % 24;
      const double act = Activity(hour);
      Row r;
      r.timestamp = AddHours(spec.start, i);

      const double temp = 12.0 + 7.0 * std::sin(2.0 * std::numbers::pi * (hour - 9) / 24.0) +
                          temp_day[day] + 0.8 * z(rng);
      const double wind = std::max(0.1, 3.5 + wind_day[day] + 1.2 * z(rng));
      const double humidity = std::clamp(70.0 - 1.5 * (temp - 12.0) + 6.0 * z(rng), 5.0, 100.0);
      const double baro = 1013.0 + baro_day[day] + 1.5 * z(rng);
      r.c = {static_cast<double>(hour), temp, wind, humidity, baro};

      // Unobserved crowd level of this district and hour (events, traffic).
      const double b = 0.35 * z(rng);
      const double headcount =
          p.population * std::exp(b) * (0.6 + 0.4 * act * (0.5 + p.commercial)) *
          (1.0 + 0.03 * z(rng));
      r.d[0] = headcount;
      r.d[1] = p.gender + 0.01 * z(rng);
      for (std::size_t k = 0; k < 5; ++k) r.d[2 + k] = p.age[k] * (1.0 + 0.05 * z(rng));
      for (std::size_t k = 0; k < 3; ++k)
        r.d[7 + k] = p.wage[k] * (1.0 + 0.05 * z(rng) + 0.2 * b);
      r.d[10] = p.industrial * (1.0 + 0.3 * b) + 0.03 * z(rng);
      r.d[11] = p.commercial * (0.7 + 0.6 * act) + 0.03 * z(rng);

      // Load in MW: zone mix and population set the level, the daily cycle
      // and heating/cooling modulate it, crowded hours scale it.
      const double base = 20.0 + 40.0 * p.industrial + 25.0 * p.commercial * act +
                          p.population / 200.0;
      const double weather = 0.15 * (temp - 16.0) * (temp - 16.0) - 0.4 * wind;
      const double load = base * (1.0 + 0.8 * b) + 12.0 * act + weather;
      r.label = load + spec.noise * 10.0 * z(rng);
      ds.rows.push_back(std::move(r));
    }
  }
  return out;
}

}  // namespace fedboost::data
