// Copyright 2026 The ldphs Authors
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

#ifndef LDPHS_TRANSCRIPT_HPP_
#define LDPHS_TRANSCRIPT_HPP_

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

#include "ldphs/ldp.hpp"

namespace ldphs {

// A contiguous run of user ids [first, first + count).
struct UserRange {
  std::size_t first = 0;
  std::size_t count = 0;
};

struct RoundRecord {
  std::size_t comparisons = 0;
  std::vector<UserRange> users;
  std::size_t messages = 0;
};

// Everything a curator saw during one protocol run, plus the privacy
// ledger of every message sent.
struct Transcript {
  std::vector<RoundRecord> rounds;
  std::optional<std::size_t> chosen;
  std::size_t samples_used = 0;
  PrivacyLedger ledger;

  std::size_t rounds_used() const { return rounds.size(); }

  std::size_t messages() const {
    std::size_t total = 0;
    for (const RoundRecord& r : rounds) total += r.messages;
    return total;
  }

  // No user id appears in two rounds (nor twice in one round).
  bool user_sets_disjoint() const {
    std::vector<UserRange> all;
    for (const RoundRecord& r : rounds) {
      all.insert(all.end(), r.users.begin(), r.users.end());
    }
    std::sort(all.begin(), all.end(), [](const UserRange& a, const UserRange& b) {
      return a.first < b.first;
    });
    for (std::size_t i = 1; i < all.size(); ++i) {
      if (all[i - 1].first + all[i - 1].count > all[i].first) return false;
    }
    return true;
  }
};

}  // namespace ldphs

#endif  // LDPHS_TRANSCRIPT_HPP_
