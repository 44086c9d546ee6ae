// Copyright 2026 The dynmatch Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "dynmatch/gen.hpp"
#include "dynmatch/graph.hpp"
#include "dynmatch/pipeline.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

struct CommonFlags {
  std::string algo = "damaged-edcs";
  std::size_t n = 64;
  std::string beta = "8";
  std::string lambda = "1/4";
  std::string delta = "1/4";
  std::string eps = "1/2";
  int k = 0;
  long long c = 0;
  std::size_t l_override = 0;
  std::uint64_t seed = 1;
  std::size_t verify_every = 0;
  std::string metrics;
  std::string stream;
  bool strict = false;
  bool allow_degenerate = false;

  void attach(CLI::App* app, bool with_stream) {
    app->add_option("--algo", algo,
                    "damaged-edcs | damaged-edcs-batch | worstcase-3-2 | uniform-sparsify | "
                    "uniform-sparsify-batch");
    app->add_option("--n", n, "vertex count (gen only; runs read it from the stream)");
    app->add_option("--beta", beta, "sparsifier degree bound, rational");
    app->add_option("--lambda", lambda, "slack parameter, rational");
    app->add_option("--delta", delta, "damage budget, rational");
    app->add_option("--eps", eps, "approximation slack, rational");
    app->add_option("--k", k, "batch count / scheduler arity (0 = auto)");
    app->add_option("--C", c, "parts multiplier for vertex sparsification");
    app->add_option("--L", l_override, "partitioning-family size override");
    app->add_option("--seed", seed, "deterministic seed");
    app->add_option("--verify-every", verify_every, "exact-oracle check period (0 = off)");
    app->add_option("--metrics", metrics, "metrics CSV path ('-' = stdout)");
    app->add_flag("--strict", strict, "enforce strict-mode parameter constraints");
    app->add_flag("--allow-degenerate", allow_degenerate,
                  "permit rebuild thresholds that floor to every-update");
    if (with_stream) {
      app->add_option("--stream", stream, "update stream file")->required();
    }
  }

  dynmatch::RunConfig to_config() const {
    dynmatch::RunConfig cfg;
    cfg.algo = dynmatch::algo_from_name(algo);
    cfg.beta = dynmatch::Ratio::parse(beta);
    cfg.lambda = dynmatch::Ratio::parse(lambda);
    cfg.delta = dynmatch::Ratio::parse(delta);
    cfg.eps = dynmatch::Ratio::parse(eps);
    cfg.k = k;
    cfg.c = c;
    cfg.l_override = l_override;
    cfg.seed = seed;
    cfg.verify_every = verify_every;
    cfg.strict = strict;
    cfg.allow_degenerate = allow_degenerate;
    return cfg;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dynmatch: dynamic approximate matching library harness"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate an update stream");
  std::string gen_kind = "erdos-renyi-dynamic";
  std::size_t gen_steps = 500;
  std::size_t gen_window = 0;
  std::string gen_out;
  CommonFlags gen_flags;
  gen->add_option("--kind", gen_kind,
                  "erdos-renyi-dynamic | sliding-window | planted-matching-adversarial");
  gen->add_option("--steps", gen_steps, "number of update events");
  gen->add_option("--window", gen_window, "sliding-window size (0 = 2n)");
  gen->add_option("--out", gen_out, "output file ('-' = stdout)");
  gen_flags.attach(gen, false);

  // run / bench / verify
  auto* run = app.add_subcommand("run", "run a pipeline over a stream, emit metrics CSV");
  CommonFlags run_flags;
  run_flags.attach(run, true);

  auto* bench = app.add_subcommand("bench", "per-step work distribution summary");
  CommonFlags bench_flags;
  bench_flags.attach(bench, true);

  auto* verify = app.add_subcommand("verify", "run with exact verification at every step");
  CommonFlags verify_flags;
  verify_flags.attach(verify, true);

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      dynmatch::GenOptions opts;
      opts.window = gen_window;
      const auto events = dynmatch::generate_stream(dynmatch::stream_kind_from_name(gen_kind),
                                                    gen_flags.n, gen_steps, gen_flags.seed, opts);
      write_output(gen_out, dynmatch::format_stream(gen_flags.n, events));
      return 0;
    }

    const CommonFlags& flags = run->parsed() ? run_flags : bench->parsed() ? bench_flags
                                                                           : verify_flags;
    const auto parsed = dynmatch::parse_stream(read_file(flags.stream));
    dynmatch::RunConfig cfg = flags.to_config();

    if (bench->parsed()) {
      const auto b = dynmatch::bench_pipeline(cfg, parsed.n, parsed.events);
      std::ostringstream os;
      os << "algo=" << dynmatch::algo_name(cfg.algo) << " steps=" << b.per_step_work.size()
         << " total_work=" << b.total_work << " max=" << b.max_work
         << " median=" << b.median_work;
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.3f", b.max_over_median);
      os << " max_over_median=" << buf << '\n';
      std::cout << os.str();
      if (!flags.metrics.empty()) {
        std::ostringstream csv;
        csv << "step,work_units\n";
        for (std::size_t t = 0; t < b.per_step_work.size(); ++t) {
          csv << t << ',' << b.per_step_work[t] << '\n';
        }
        write_output(flags.metrics, csv.str());
      }
      return 0;
    }

    if (verify->parsed() && cfg.verify_every == 0) cfg.verify_every = 1;
    const auto result = dynmatch::run_pipeline(cfg, parsed.n, parsed.events);
    if (!flags.metrics.empty() || run->parsed()) {
      write_output(flags.metrics, dynmatch::metrics_to_csv(result.rows));
    }
    if (result.exit_code != 0) {
      std::cerr << "violation: " << result.first_violation << '\n';
      return result.exit_code;
    }
    if (verify->parsed()) {
      std::cout << "ok: " << result.rows.size() << " steps verified\n";
    }
    return 0;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 2;
  }
}
