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

#ifndef FEDBOOST_FEDERATION_BUS_H_
#define FEDBOOST_FEDERATION_BUS_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <queue>
#include <vector>

#include "fedboost/federation/messages.h"

namespace fedboost::federation {

// In-process message bus on virtual time. Delivery order is (time, sender,
// sequence), so a run is a pure function of what the parties send.
class Bus {
 public:
  using Handler = std::function<void(const Message&)>;

  explicit Bus(std::size_t ciphertext_bytes = 0) : ciphertext_bytes_(ciphertext_bytes) {}

  void Register(PartyId id, Handler handler);
  bool IsRegistered(PartyId id) const { return handlers_.contains(id); }

  // Throws ProtocolError when `to` is not registered.
  void Send(PartyId from, PartyId to, Payload payload);
  // Delivers until no message is pending; handlers may send more.
  void Run();

  scheduler::Micros time() const { return time_; }
  void set_time(scheduler::Micros t) { time_ = t; }
  void set_ciphertext_bytes(std::size_t bytes) { ciphertext_bytes_ = bytes; }

  // Sees every message at send time, before delivery.
  void AddObserver(Handler observer) { observers_.push_back(std::move(observer)); }

  const std::vector<TranscriptEntry>& transcript() const { return transcript_; }

 private:
  struct Later {
    bool operator()(const Message& a, const Message& b) const {
      if (a.time != b.time) return a.time > b.time;
      if (a.from != b.from) return a.from > b.from;
      return a.seq > b.seq;
    }
  };

  std::size_t ciphertext_bytes_;
  scheduler::Micros time_ = 0;
  std::uint64_t next_seq_ = 0;
  std::map<PartyId, Handler> handlers_;
  std::vector<Handler> observers_;
  std::priority_queue<Message, std::vector<Message>, Later> pending_;
  std::vector<TranscriptEntry> transcript_;
};

}  // namespace fedboost::federation

#endif  // FEDBOOST_FEDERATION_BUS_H_
