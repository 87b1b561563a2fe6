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

#include "fedboost/federation/bus.h"

#include <utility>

#include "fedboost/error.h"

namespace fedboost::federation {

void Bus::Register(PartyId id, Handler handler) {
  handlers_[id] = std::move(handler);
}

void Bus::Send(PartyId from, PartyId to, Payload payload) {
  if (!handlers_.contains(to)) {
    throw ProtocolError(from.ToString() + " sent " + ToString(KindOf(payload)) +
                        " to offline party " + to.ToString());
  }
  Message m;
  m.time = time_;
  m.seq = next_seq_++;
  m.from = from;
  m.to = to;
  m.byte_size = WireSize(payload, ciphertext_bytes_);
  m.payload = std::move(payload);
  transcript_.push_back({m.time, m.from, m.to, m.kind(), m.byte_size});
  for (const Handler& observe : observers_) observe(m);
  pending_.push(std::move(m));
}

void Bus::Run() {
  while (!pending_.empty()) {
    Message m = std::move(const_cast<Message&>(pending_.top()));
    pending_.pop();
    handlers_.at(m.to)(m);
  }
}

}  // namespace fedboost::federation
