// Microbenchmarks for the hot paths: parsing, enumeration, evaluation,
// schema instantiation, bounded closure and full verification runs.

#include <benchmark/benchmark.h>

#include <string>

#include "transax/calculus.hpp"
#include "transax/enumerate.hpp"
#include "transax/eval.hpp"
#include "transax/fixtures.hpp"
#include "transax/independence.hpp"
#include "transax/parser.hpp"
#include "transax/translation.hpp"

using namespace transax;

namespace {

std::string fx(const std::string& name) {
  return std::string(TRANSAX_FIXTURE_DIR) + "/" + name;
}

const Calculus& bs() {
  static Calculus c = load_calculus(fx("bs_system.calc"));
  return c;
}

const GeneralizedModel& prop1() {
  static GeneralizedModel m = load_gmodel(fx("prop1_model.gmodel"));
  return m;
}

const Formula& target() {
  static Formula f = load_formula(fx("target_prop1.fml"), bs().sig);
  return f;
}

void bm_parse_print(benchmark::State& state) {
  const Signature& sig = bs().sig;
  std::string text = target().to_string();
  for (auto _ : state) {
    Formula f = parse_formula(text, sig);
    benchmark::DoNotOptimize(f.to_string());
  }
}
BENCHMARK(bm_parse_print);

void bm_enumerate_depth3(benchmark::State& state) {
  EnumOptions opts;
  opts.max_depth = 3;
  opts.ind_var_limit = 1;
  opts.prop_var_limit = 0;
  for (auto _ : state) {
    auto pool = enumerate_formulas(bs().sig, opts);
    benchmark::DoNotOptimize(pool.size());
  }
}
BENCHMARK(bm_enumerate_depth3);

void bm_value_target(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(value_1var(prop1(), target()));
}
BENCHMARK(bm_value_target);

void bm_true_star_target(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(true_star(prop1(), target()));
}
BENCHMARK(bm_true_star_target);

void bm_instances_a1_star_pool(benchmark::State& state) {
  const Schema& a1 = *bs().find_axiom("A1");
  InstanceEnumOptions opts;
  opts.depth = 3;
  opts.ind_var_limit = 3;
  opts.prop_var_limit = 0;
  for (auto _ : state) {
    auto insts = enumerate_schema_instances(a1, bs().sig, opts);
    benchmark::DoNotOptimize(insts.size());
  }
}
BENCHMARK(bm_instances_a1_star_pool);

void bm_closure_prop_depth3(benchmark::State& state) {
  Calculus c = load_calculus(fx("prop_a1a3.calc"));
  ClosureOptions opts;
  opts.max_depth = 3;
  opts.max_rounds = 8;
  opts.ind_var_limit = 0;
  opts.prop_var_limit = 1;
  for (auto _ : state) {
    auto res = closure_bounded(c, opts);
    benchmark::DoNotOptimize(res.theorems.size());
  }
}
BENCHMARK(bm_closure_prop_depth3);

void bm_verify_value_mode(benchmark::State& state) {
  IndependenceOptions opts;
  opts.semantics = GModelSemantics::Value;
  for (auto _ : state) {
    auto rep = verify_independence(bs(), prop1(), target(), opts);
    benchmark::DoNotOptimize(rep.independent());
  }
}
BENCHMARK(bm_verify_value_mode);

void bm_verify_star_mode(benchmark::State& state) {
  IndependenceOptions opts;
  opts.semantics = GModelSemantics::Star;
  for (auto _ : state) {
    auto rep = verify_independence(bs(), prop1(), target(), opts);
    benchmark::DoNotOptimize(rep.independent());
  }
}
BENCHMARK(bm_verify_star_mode);

void bm_translate_calculus(benchmark::State& state) {
  Translation t = load_translation(fx("forall_as_not_exists_not.trans"));
  Calculus src = load_calculus(fx("bs_forall_system.calc"));
  for (auto _ : state) {
    Calculus mapped = translate_calculus(t, src);
    benchmark::DoNotOptimize(mapped.axioms.size());
  }
}
BENCHMARK(bm_translate_calculus);

void bm_classical_validity(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(classically_valid(target()).valid);
}
BENCHMARK(bm_classical_validity);

}  // namespace

BENCHMARK_MAIN();
