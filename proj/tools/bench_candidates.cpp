/*
 * Copyright (C) 2026 The mrta-planner Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
*/

// Serial reference vs OpenMP kernel for the per-iteration candidate
// evaluation, on the first planning iteration of random scenarios.

#include <mrta/heuristic.hpp>
#include <mrta/scenario_gen.hpp>

#include <benchmark/benchmark.h>

#include <numeric>

namespace {

using namespace mrta;

struct Fixture
{
  Scenario scenario;
  std::vector<FragmentInfo> info;
  std::vector<std::size_t> open;
};

Fixture make_fixture(int robots, int tasks)
{
  GenConfig c;
  c.seed = 7;
  c.n_robots = robots;
  c.n_tasks = tasks;
  Fixture f{generate(c), {}, {}};
  f.info = estimate_fragments(f.scenario);
  f.open.resize(f.scenario.tasks.size());
  std::iota(f.open.begin(), f.open.end(), std::size_t{0});
  return f;
}

template <bool Parallel>
void candidates(benchmark::State& st)
{
  const auto f = make_fixture(static_cast<int>(st.range(0)), static_cast<int>(st.range(1)));
  const PlannerState state(f.scenario);
  for (auto _ : st)
  {
    auto out = Parallel ? evaluate_candidates_parallel(state, f.info, f.open, 0.0)
                        : evaluate_candidates_serial(state, f.info, f.open, 0.0);
    benchmark::DoNotOptimize(out);
  }
}

template <bool Parallel>
void full_plan(benchmark::State& st)
{
  const auto f = make_fixture(static_cast<int>(st.range(0)), static_cast<int>(st.range(1)));
  PlannerOptions options;
  options.parallel = Parallel;
  for (auto _ : st)
  {
    auto p = plan(f.scenario, options);
    benchmark::DoNotOptimize(p);
  }
}

} // namespace

BENCHMARK(candidates<false>)->Args({5, 10})->Args({10, 50})->Unit(benchmark::kMicrosecond);
BENCHMARK(candidates<true>)->Args({5, 10})->Args({10, 50})->Unit(benchmark::kMicrosecond);
BENCHMARK(full_plan<false>)->Args({10, 20})->Args({10, 50})->Unit(benchmark::kMillisecond);
BENCHMARK(full_plan<true>)->Args({10, 20})->Args({10, 50})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
