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

// Instance files:
//
//   {
//     "domain_size": N,
//     "hypotheses": [[w_0, ..., w_{N-1}], ...],
//     "true_index": i,          (optional)
//     "alpha": a,               (optional)
//     "p": [w_0, ..., w_{N-1}]  (optional; the data source for agnostic runs)
//   }
//
// Rows are normalized on load.

#ifndef LDPHS_INSTANCE_IO_HPP_
#define LDPHS_INSTANCE_IO_HPP_

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ldphs/dist.hpp"
#include "ldphs/error.hpp"

namespace ldphs {

inline nlohmann::json dist_to_json(const Dist& d) {
  return nlohmann::json(std::vector<double>(d.weights().begin(),
                                            d.weights().end()));
}

inline nlohmann::json instance_to_json(const Instance& instance) {
  nlohmann::json j;
  j["domain_size"] = instance.hypotheses.alphabet_size();
  j["hypotheses"] = nlohmann::json::array();
  for (const Dist& q : instance.hypotheses) {
    j["hypotheses"].push_back(dist_to_json(q));
  }
  if (instance.meta.true_index) j["true_index"] = *instance.meta.true_index;
  if (instance.meta.separation) j["alpha"] = *instance.meta.separation;
  if (instance.truth) j["p"] = dist_to_json(*instance.truth);
  return j;
}

namespace detail {

inline Dist row_to_dist(const nlohmann::json& row, std::size_t n,
                        const std::string& what) {
  if (!row.is_array()) throw InvalidArgument(what + " must be an array");
  std::vector<double> w;
  w.reserve(row.size());
  for (const auto& x : row) {
    if (!x.is_number()) throw InvalidArgument(what + " has a non-number");
    w.push_back(x.get<double>());
  }
  if (w.size() != n) {
    throw InvalidArgument(what + " has " + std::to_string(w.size()) +
                          " entries but domain_size is " + std::to_string(n));
  }
  return Dist::from_weights(w);
}

}  // namespace detail

inline Instance instance_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InvalidArgument("instance must be a JSON object");
  if (!j.contains("domain_size") || !j["domain_size"].is_number_integer() ||
      j["domain_size"].get<long long>() <= 0) {
    throw InvalidArgument("instance needs a positive integer domain_size");
  }
  const auto n = j["domain_size"].get<std::size_t>();
  if (!j.contains("hypotheses") || !j["hypotheses"].is_array() ||
      j["hypotheses"].empty()) {
    throw InvalidArgument("instance needs a nonempty hypotheses array");
  }
  std::vector<Dist> hypotheses;
  for (std::size_t i = 0; i < j["hypotheses"].size(); ++i) {
    hypotheses.push_back(detail::row_to_dist(
        j["hypotheses"][i], n, "hypotheses[" + std::to_string(i) + "]"));
  }
  Instance instance{HypothesisSet(std::move(hypotheses)), {}, std::nullopt};
  if (j.contains("true_index") && !j["true_index"].is_null()) {
    if (!j["true_index"].is_number_integer() ||
        j["true_index"].get<long long>() < 0 ||
        j["true_index"].get<std::size_t>() >= instance.hypotheses.k()) {
      throw InvalidArgument("true_index must be in [0, k)");
    }
    instance.meta.true_index = j["true_index"].get<std::size_t>();
  }
  if (j.contains("alpha") && !j["alpha"].is_null()) {
    if (!j["alpha"].is_number()) throw InvalidArgument("alpha must be a number");
    instance.meta.separation = j["alpha"].get<double>();
  }
  if (j.contains("p") && !j["p"].is_null()) {
    instance.truth = detail::row_to_dist(j["p"], n, "p");
  }
  if (instance.truth || instance.meta.true_index) {
    instance.meta.beta = min_tv_to_set(instance.source(), instance.hypotheses).beta;
  }
  return instance;
}

inline Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open instance file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument("instance file " + path + " is not valid JSON: " +
                          e.what());
  }
  return instance_from_json(j);
}

inline void save_instance(const Instance& instance, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write " + path);
  out << instance_to_json(instance).dump(2) << '\n';
}

}  // namespace ldphs

#endif  // LDPHS_INSTANCE_IO_HPP_
