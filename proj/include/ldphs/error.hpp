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

#ifndef LDPHS_ERROR_HPP_
#define LDPHS_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace ldphs {

// Bad arguments or configuration: negative weights, alphabet mismatch,
// out-of-range parameters. The CLI maps this to exit code 2.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The requested instance cannot be produced or served: rejection cap hit,
// k too small for the layered construction, population exhausted. The CLI
// maps this to exit code 3.
class Infeasible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A user population ran out mid-protocol.
class InsufficientSamples : public Infeasible {
 public:
  InsufficientSamples(std::size_t requested, std::size_t available)
      : Infeasible("insufficient samples: requested " +
                   std::to_string(requested) + " users but only " +
                   std::to_string(available) + " remain (shortfall " +
                   std::to_string(requested - available) + ")"),
        shortfall_(requested - available) {}

  std::size_t shortfall() const { return shortfall_; }

 private:
  std::size_t shortfall_;
};

// A protocol invariant was broken at runtime: a message with unbounded
// log-ratio, a user participating twice, a query outside a round.
class ProtocolViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace ldphs

#endif  // LDPHS_ERROR_HPP_
