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

// Flattening: a randomized relabeling [N] -> [N'] that makes every
// hypothesis in a set near-uniform while scaling all pairwise TV distances by
// exactly 1/2.
//
// Symbol a owns a contiguous block S_a of [N'] with |S_a| = ceil(M(a) N),
// where M(a) is the largest mass any hypothesis puts on a. A user holding a
// sends a uniform element of S_a with probability 1/2 and a uniform element
// of [N'] otherwise. For every hypothesis q and target b,
//
//   1/(2N') <= (phi o q)(b) <= 1/N,   N <= N' <= (k+1) N.
//
// Symbols no hypothesis can emit (M(a) = 0) get an empty block and map to a
// uniform element of [N'] unconditionally. This leaves every identity among
// members of Q untouched; for a data source that puts mass outside the
// union of supports, its distance to the flattened hypotheses moves by at
// most that mass (which is at most beta).

#ifndef LDPHS_FLATTEN_HPP_
#define LDPHS_FLATTEN_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "ldphs/dist.hpp"
#include "ldphs/error.hpp"
#include "ldphs/random.hpp"

namespace ldphs {

struct Block {
  std::size_t start = 0;
  std::size_t length = 0;

  bool contains(std::size_t b) const { return b >= start && b < start + length; }
};

class FlattenMap {
 public:
  static FlattenMap build(const HypothesisSet& q) {
    const std::size_t n = q.alphabet_size();
    FlattenMap map;
    map.source_size_ = n;
    map.blocks_.resize(n);
    map.owner_.clear();
    std::size_t next = 0;
    for (std::size_t a = 0; a < n; ++a) {
      double m = 0.0;
      for (const Dist& qi : q) m = std::max(m, qi[a]);
      const auto len =
          static_cast<std::size_t>(std::ceil(m * static_cast<double>(n)));
      map.blocks_[a] = Block{next, len};
      next += len;
    }
    map.target_size_ = next;
    map.owner_.resize(next);
    for (std::size_t a = 0; a < n; ++a) {
      const Block& blk = map.blocks_[a];
      std::fill_n(map.owner_.begin() + static_cast<std::ptrdiff_t>(blk.start),
                  blk.length, a);
    }
    return map;
  }

  std::size_t source_size() const { return source_size_; }
  std::size_t target_size() const { return target_size_; }
  const std::vector<Block>& blocks() const { return blocks_; }
  const Block& block(std::size_t a) const { return blocks_[a]; }
  static constexpr double mix_probability() { return 0.5; }

  // Source symbol owning target b.
  std::size_t owner(std::size_t b) const { return owner_[b]; }

  std::size_t apply(std::size_t a, Rng& rng) const {
    if (a >= source_size_) {
      throw InvalidArgument("flatten input " + std::to_string(a) +
                            " is outside the source alphabet");
    }
    const Block& blk = blocks_[a];
    if (blk.length == 0 || bernoulli(rng, 1.0 - mix_probability())) {
      return uniform_index(rng, target_size_);
    }
    return blk.start + uniform_index(rng, blk.length);
  }

  // Exact law of apply(a) for a ~ d.
  Dist push_forward(const Dist& d) const {
    if (d.size() != source_size_) {
      throw InvalidArgument("push_forward: alphabet mismatch: " +
                            std::to_string(d.size()) + " vs " +
                            std::to_string(source_size_));
    }
    const double n_prime = static_cast<double>(target_size_);
    double unmapped = 0.0;
    for (std::size_t a = 0; a < source_size_; ++a) {
      if (blocks_[a].length == 0) unmapped += d[a];
    }
    const double floor = (1.0 + unmapped) / (2.0 * n_prime);
    std::vector<double> out(target_size_, floor);
    for (std::size_t a = 0; a < source_size_; ++a) {
      const Block& blk = blocks_[a];
      if (blk.length == 0) continue;
      const double share = 0.5 * d[a] / static_cast<double>(blk.length);
      for (std::size_t b = blk.start; b < blk.start + blk.length; ++b) {
        out[b] += share;
      }
    }
    return Dist::from_probabilities(std::move(out));
  }

  HypothesisSet push_forward(const HypothesisSet& q) const {
    std::vector<Dist> out;
    out.reserve(q.k());
    for (const Dist& qi : q) out.push_back(push_forward(qi));
    return HypothesisSet(std::move(out));
  }

 private:
  FlattenMap() = default;

  std::size_t source_size_ = 0;
  std::size_t target_size_ = 0;
  std::vector<Block> blocks_;
  std::vector<std::size_t> owner_;
};

inline FlattenMap build_flatten_map(const HypothesisSet& q) {
  return FlattenMap::build(q);
}

inline std::size_t apply_flatten(const FlattenMap& map, std::size_t a,
                                 Rng& rng) {
  return map.apply(a, rng);
}

inline Dist push_forward(const FlattenMap& map, const Dist& d) {
  return map.push_forward(d);
}

}  // namespace ldphs

#endif  // LDPHS_FLATTEN_HPP_
