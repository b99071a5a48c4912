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

// Command-line front end.
//
//   ldphs ni        --instance F --eps E --n N[,N...] --trials T --seed S
//   ldphs maxselect --k K --t T --adversary A --values V --algo A ...
//   ldphs hs        --instance F --eps E --alpha A --t T --algo better|naive
//   ldphs game      --k K --t T --budget B --strategy S ...
//   ldphs flatten   --instance F --out G
//
// Exit codes: 0 success, 2 bad configuration, 3 infeasible instance.

#include <cstdint>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ldphs/ldphs.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitInfeasible = 3;

void add_common(CLI::App* cmd, ldphs::ExperimentConfig& c, std::string& out,
                std::string& format) {
  cmd->add_option("--seed", c.seed, "master seed");
  cmd->add_option("--trials", c.trials, "number of trials");
  cmd->add_option("--out", out, "output path, - for stdout")->capture_default_str();
  cmd->add_option("--format", format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--threads", c.threads, "worker threads (0 = all cores)");
}

void add_instance(CLI::App* cmd, ldphs::ExperimentConfig& c) {
  cmd->add_option("--instance", c.instance_path, "instance JSON file");
  cmd->add_option("--generate", c.generator, "hard or random")
      ->check(CLI::IsMember({"hard", "random"}));
  cmd->add_option("--dim", c.gen_dim, "hard instance dimension d (k = 2d)");
  cmd->add_option("--domain", c.gen_domain, "random instance alphabet size");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Locally private hypothesis selection experiments"};
  app.require_subcommand(1);

  ldphs::ExperimentConfig c;
  std::string out = "-";
  std::string format = "csv";
  std::string noise_mode = "strict";

  CLI::App* ni = app.add_subcommand("ni", "non-interactive selection");
  add_common(ni, c, out, format);
  add_instance(ni, c);
  ni->add_option("--eps", c.epsilon, "privacy parameter");
  ni->add_option("--n", c.n_sweep, "users per trial (list = sweep)")
      ->delimiter(',')
      ->required();
  ni->add_option("--noise-mode", noise_mode, "strict or paper")
      ->check(CLI::IsMember({"strict", "paper", "paper-exact"}));
  ni->add_option("--alpha", c.alpha, "separation for generated instances");
  ni->add_option("--k", c.k, "hypotheses for --generate random");

  CLI::App* ms = app.add_subcommand("maxselect", "approximate maximum selection");
  add_common(ms, c, out, format);
  ms->add_option("--k", c.k, "number of items");
  ms->add_option("--t", c.t, "rounds");
  ms->add_option("--adversary", c.adversary,
                 "favor_lower, favor_higher, uniform_random or greedy_adaptive");
  ms->add_option("--values", c.values, "spaced, random or clustered");
  ms->add_option("--algo", c.algo, "round_robin, two_round, multi_round or better");
  ms->add_option("--h-const", c.h_constant, "constant in |H|");

  CLI::App* hs = app.add_subcommand("hs", "sequentially interactive selection");
  add_common(hs, c, out, format);
  add_instance(hs, c);
  hs->add_option("--eps", c.epsilon, "privacy parameter");
  hs->add_option("--alpha", c.alpha, "accuracy parameter");
  hs->add_option("--t", c.t, "rounds");
  hs->add_option("--algo", c.algo, "better or naive");
  hs->add_option("--beta-fail", c.beta_fail, "failure probability budget");
  hs->add_option("--comparison-constant", c.comparison_constant,
                 "C in the per-comparison group size");
  hs->add_option("--h-const", c.h_constant, "constant in |H|");
  hs->add_option("--k", c.k, "hypotheses for --generate random");

  CLI::App* game = app.add_subcommand("game", "lower-bound game");
  add_common(game, c, out, format);
  game->add_option("--k", c.k, "number of nodes");
  game->add_option("--t", c.t, "rounds");
  game->add_option("--budget", c.budget, "maximum total queries");
  game->add_option("--strategy", c.strategy,
                   "budgeted_multi_round or budgeted_random_queries");

  CLI::App* flat = app.add_subcommand("flatten", "write the flattened instance");
  flat->add_option("--instance", c.instance_path, "instance JSON file")->required();
  flat->add_option("--out", out, "output path, - for stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (flat->parsed()) {
      const ldphs::Instance inst = ldphs::load_instance(c.instance_path);
      ldphs::write_text(ldphs::flatten_instance_json(inst).dump(2) + "\n", out);
      return 0;
    }
    c.command = app.get_subcommands().front()->get_name();
    c.noise_mode = ldphs::parse_noise_mode(noise_mode);
    const ldphs::ExperimentOutput result = ldphs::run_experiment(c);
    if (format == "json") {
      ldphs::emit_json(c.to_json(), result.summary, result.table, out);
    } else {
      ldphs::emit_csv(result.table, out);
    }
  } catch (const ldphs::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ldphs::Infeasible& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
