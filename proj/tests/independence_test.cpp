#include <doctest.h>

#include <set>
#include <string>
#include <vector>

#include "transax/calculus.hpp"
#include "transax/errors.hpp"
#include "transax/eval.hpp"
#include "transax/fixtures.hpp"
#include "transax/independence.hpp"
#include "transax/parser.hpp"

#include "test_util.hpp"

using namespace transax;

namespace {

struct Setup {
  Calculus bs;
  GeneralizedModel model;
  Formula target;
};

Setup canonical() {
  Setup s;
  s.bs = load_calculus(fixture_path("bs_system.calc"));
  s.model = load_gmodel(fixture_path("prop1_model.gmodel"));
  s.target = load_formula(fixture_path("target_prop1.fml"), s.bs.sig);
  return s;
}

}  // namespace

TEST_CASE("the refuting model witnesses independence under the value reading") {
  auto s = canonical();
  IndependenceOptions opts;
  opts.semantics = GModelSemantics::Value;
  opts.instance_depth = 3;
  auto rep = verify_independence(s.bs, s.model, s.target, opts);
  CHECK(rep.independent());
  CHECK(rep.semantics == "value");
  CHECK(rep.target_undesignated);

  // Pool sizes over P(x1) alone: 1 / 4 / 25 formulas up to depth 0 / 1 / 2;
  // the shallowest-occurrence budgets then give these instance counts.
  REQUIRE(rep.axioms.size() == 5);
  std::vector<std::size_t> expected = {100, 4, 16, 25, 1};
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(rep.axioms[i].ok);
    CHECK(rep.axioms[i].instances == expected[i]);
  }

  // One-variable values force the variable limit; propositional variables
  // have no interpretation in these models at all.
  CHECK(rep.ind_var_limit == 1);
  CHECK(rep.prop_var_limit == 0);

  // Rules check at designation level: one case per value tuple.
  REQUIRE(rep.rules.size() == 2);
  CHECK(rep.rules[0].designation_level);
  CHECK(rep.rules[0].cases == 16);
  CHECK(rep.rules[0].ok);
  CHECK(rep.rules[1].cases == 4);
  CHECK(rep.rules[1].ok);
}

TEST_CASE("the refuting model witnesses independence under the starred reading") {
  auto s = canonical();
  IndependenceOptions opts;
  opts.semantics = GModelSemantics::Star;
  opts.instance_depth = 3;
  opts.ind_var_limit = 3;
  auto rep = verify_independence(s.bs, s.model, s.target, opts);
  CHECK(rep.independent());
  CHECK(rep.semantics == "star");

  // Pools over P(x1), P(x2), P(x3): 3 / 24 / 675 formulas up to depth
  // 0 / 1 / 2. The A5 count is 3 * 45: per choice of the bound variable, 15
  // depth-one antecedents avoid it and 3 consequents pair with each.
  std::vector<std::size_t> expected = {16200, 216, 576, 2025, 135};
  REQUIRE(rep.axioms.size() == 5);
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(rep.axioms[i].ok);
    CHECK(rep.axioms[i].instances == expected[i]);
  }

  // Star instances are checked one application at a time.
  REQUIRE(rep.rules.size() == 2);
  CHECK_FALSE(rep.rules[0].designation_level);
  CHECK(rep.rules[0].cases == 455625);
  CHECK(rep.rules[1].cases == 9);
  CHECK(rep.rules[0].ok);
  CHECK(rep.rules[1].ok);
}

TEST_CASE("the classical control model designates the target under the value reading") {
  auto s = canonical();
  auto classical = load_gmodel(fixture_path("standard_2elt.gmodel"));
  IndependenceOptions opts;
  opts.semantics = GModelSemantics::Value;
  auto rep = verify_independence(s.bs, classical, s.target, opts);
  CHECK(rep.verdict == IndependenceReport::Verdict::TargetDesignated);
  CHECK_FALSE(rep.independent());
  for (const auto& ax : rep.axioms) CHECK(ax.ok);

  // The starred clauses consult only the predicate extension and the
  // distinguished element, never the tables, so on the same extension the
  // starred reading refutes the target regardless of the classical tables.
  IndependenceOptions star;
  star.semantics = GModelSemantics::Star;
  CHECK(verify_independence(s.bs, classical, s.target, star).independent());
}

TEST_CASE("failures are localized: broken designation, broken rule") {
  auto s = canonical();
  auto broken = load_gmodel(fixture_path("standard_2elt.gmodel"));
  broken.designated = {0};  // designate only the empty value
  IndependenceOptions opts;
  opts.semantics = GModelSemantics::Value;
  auto rep = verify_independence(s.bs, broken, s.target, opts);
  CHECK(rep.verdict == IndependenceReport::Verdict::AxiomFailure);
  REQUIRE(!rep.axioms.empty());
  CHECK_FALSE(rep.axioms[0].ok);
  CHECK(rep.axioms[0].failing.has_value());

  Calculus absurd;
  absurd.name = "absurd";
  absurd.sig = s.bs.sig;
  Rule weird;
  weird.name = "Weird";
  weird.premises = {parse_schema_in("Phi", absurd.sig)};
  weird.conclusion = parse_schema_in("~Phi", absurd.sig);
  absurd.rules.push_back(weird);
  absurd.validate();
  auto rep2 = verify_independence(absurd, s.model, s.target, opts);
  CHECK(rep2.verdict == IndependenceReport::Verdict::RuleFailure);
  REQUIRE(rep2.rules.size() == 1);
  CHECK_FALSE(rep2.rules[0].ok);
}

TEST_CASE("designation-level soundness of modus ponens is echoed by its instances") {
  auto s = canonical();
  const Rule* mp = s.bs.find_rule("MP");
  REQUIRE(mp != nullptr);
  InstanceEnumOptions opts;
  opts.depth = 3;
  opts.ind_var_limit = 1;
  opts.prop_var_limit = 0;
  auto apps = enumerate_rule_instances(*mp, s.bs.sig, opts);
  CHECK(apps.size() == 625);  // 25 x 25 pairs within the strict budgets
  for (const auto& app : apps) {
    bool premises_ok = true;
    for (const auto& prem : app.premises)
      premises_ok = premises_ok && s.model.is_designated(value_1var(s.model, prem));
    if (premises_ok) CHECK(s.model.is_designated(value_1var(s.model, app.conclusion)));
  }
}

TEST_CASE("bounded theorems of the full system hold in the refuting model both ways") {
  auto s = canonical();
  ClosureOptions opts;
  opts.max_depth = 3;
  opts.max_rounds = 6;
  opts.ind_var_limit = 1;
  opts.prop_var_limit = 0;
  auto res = closure_bounded(s.bs, opts);
  REQUIRE(!res.theorems.empty());
  CHECK(res.theorems.count(s.target) == 0);
  for (const auto& f : res.theorems) {
    CHECK(s.model.is_designated(value_1var(s.model, f)));
    CHECK(true_star(s.model, f));
  }
}

TEST_CASE("the quantifier axiom audit matches its golden tables") {
  auto s = canonical();
  std::string expected =
      read_file(golden_path("a4_table.golden")) + "\n" + read_file(golden_path("a5_tables.golden"));
  CHECK(audit_axiom_tables(s.model) == expected);

  // On the classical model the first audit block designates every row.
  auto classical = load_gmodel(fixture_path("standard_2elt.gmodel"));
  std::string audit = audit_axiom_tables(classical);
  std::size_t checked = 0;
  std::size_t pos = 0;
  for (int i = 0; i < 4; ++i) {
    pos = audit.find("value=", pos);
    REQUIRE(pos != std::string::npos);
    CHECK(audit.substr(pos + 6, 5) == "{u,v}");
    pos += 6;
    ++checked;
  }
  CHECK(checked == 4);
}

TEST_CASE("matrix independence for the propositional fragment") {
  auto prop = load_calculus(fixture_path("prop_a1a3.calc"));
  auto mx = load_matrix(fixture_path("bool2.matrix"));
  Formula id = parse_in("p1 -> p1", prop.sig);
  auto rep = verify_independence(prop, mx, id, IndependenceOptions{});
  CHECK(rep.verdict == IndependenceReport::Verdict::TargetDesignated);
  CHECK(rep.semantics == "matrix");
  // Depth-three pools over p1, p2: 2 / 8 / 74 formulas by depth.
  std::vector<std::size_t> expected = {592, 32, 64};
  REQUIRE(rep.axioms.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(rep.axioms[i].ok);
    CHECK(rep.axioms[i].instances == expected[i]);
  }

  // Quantified calculi have no matrix reading.
  auto s = canonical();
  CHECK_THROWS_AS(verify_independence(s.bs, mx, s.target, IndependenceOptions{}), Error);
}

TEST_CASE("reports survive the JSON round trip") {
  auto s = canonical();
  IndependenceOptions opts;
  opts.semantics = GModelSemantics::Value;
  auto rep = verify_independence(s.bs, s.model, s.target, opts);
  auto back = report_from_json(report_to_json(rep), s.bs.sig);
  CHECK(back == rep);

  auto prop = load_calculus(fixture_path("prop_a1a3.calc"));
  auto mx = load_matrix(fixture_path("bool2.matrix"));
  auto mrep = verify_independence(prop, mx, parse_in("p1 -> p1", prop.sig), IndependenceOptions{});
  CHECK(report_from_json(report_to_json(mrep), prop.sig) == mrep);
}

TEST_CASE("no small matrix separates the identity from the propositional axioms") {
  auto prop = load_calculus(fixture_path("prop_a1a3.calc"));
  MatrixSearchOptions opts;
  opts.max_size = 3;
  auto res = search_matrix(prop, parse_in("p1 -> p1", prop.sig), opts);
  CHECK_FALSE(res.found);
  CHECK(res.candidates > 0);
}

TEST_CASE("a three-valued matrix separates the mapped axioms from the conjunction tautology") {
  auto halmos = load_translation(fixture_path("halmos.trans"));
  auto ha = load_calculus(fixture_path("hilbert_ackermann.calc"));
  Calculus mapped = translate_calculus(halmos, ha);
  Formula target = parse_in("~(p1 /\\ ~p1)", mapped.sig);

  MatrixSearchOptions opts;
  opts.max_size = 3;
  auto res = search_matrix(mapped, target, opts);
  REQUIRE(res.found);
  REQUIRE(res.matrix.has_value());
  CHECK(res.matrix->size == 3);

  // Any hit must re-verify, also after a pass through its text form.
  auto rep = verify_independence(mapped, *res.matrix, target, IndependenceOptions{});
  CHECK(rep.independent());
  auto reloaded = parse_matrix_text(matrix_to_text(*res.matrix));
  CHECK(reloaded == *res.matrix);
  CHECK(verify_independence(mapped, reloaded, target, IndependenceOptions{}).independent());

  // The two-valued truth tables do not separate: the target is a tautology.
  auto boolean = boolean_matrix(mapped.sig);
  auto brep = verify_independence(mapped, boolean, target, IndependenceOptions{});
  CHECK(brep.verdict == IndependenceReport::Verdict::TargetDesignated);
}

TEST_CASE("a two-valued matrix already separates the reconstructed conjunction fragment") {
  // The fragment's axioms never mention /\, so a table making conjunction
  // constant-designated falsifies (p1 /\ p1) -> p1 without any axiom noticing.
  auto frag = load_calculus(fixture_path("crossley_fragment.calc"));
  Formula target = parse_in("(p1 /\\ p1) -> p1", frag.sig);

  MatrixSearchOptions opts;
  opts.max_size = 3;
  auto res = search_matrix(frag, target, opts);
  REQUIRE(res.found);
  CHECK(res.matrix->size == 2);
  CHECK(verify_independence(frag, *res.matrix, target, IndependenceOptions{}).independent());

  auto brep = verify_independence(frag, boolean_matrix(frag.sig), target, IndependenceOptions{});
  CHECK(brep.verdict == IndependenceReport::Verdict::TargetDesignated);
}

TEST_CASE("model search rediscovers a separating model for the benchmark triple") {
  auto s = canonical();
  ModelSearchOptions opts;
  auto res = search_generalized_model(s.bs, s.target, opts);
  REQUIRE(res.found);
  REQUIRE(res.model.has_value());
  CHECK(res.strategy.find("pointwise classical seed") != std::string::npos);
  CHECK(res.model->pred_interp.at("P") == 2u);  // {v}

  IndependenceOptions verify;
  verify.semantics = GModelSemantics::Value;
  CHECK(verify_independence(s.bs, *res.model, s.target, verify).independent());

  // Round trip through the text form preserves the certificate.
  auto reloaded = parse_gmodel_text(gmodel_to_text(*res.model));
  CHECK(reloaded == *res.model);
  CHECK(verify_independence(s.bs, reloaded, s.target, verify).independent());
}

TEST_CASE("no model in the searched family refutes a derivable identity") {
  auto s = canonical();
  Formula id = parse_in("P(x1) -> P(x1)", s.bs.sig);
  auto res = search_generalized_model(s.bs, id, ModelSearchOptions{});
  CHECK_FALSE(res.found);
  CHECK(res.candidates > 0);
}

TEST_CASE("with no axioms to respect the search succeeds immediately") {
  auto s = canonical();
  Calculus bare;
  bare.name = "bare";
  bare.sig = s.bs.sig;
  bare.validate();
  Formula atom = parse_in("P(x1)", bare.sig);
  auto res = search_generalized_model(bare, atom, ModelSearchOptions{});
  REQUIRE(res.found);
  IndependenceOptions verify;
  verify.semantics = GModelSemantics::Value;
  CHECK(verify_independence(bare, *res.model, atom, verify).independent());
}
