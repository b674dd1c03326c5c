#include <doctest.h>

#include <map>
#include <set>
#include <string>
#include <vector>

#include "transax/enumerate.hpp"
#include "transax/errors.hpp"
#include "transax/formula.hpp"
#include "transax/parser.hpp"
#include "transax/signature.hpp"

#include "test_util.hpp"

using namespace transax;

namespace {

Signature full_signature() {
  Signature sig;
  sig.connectives = {{"~", 1}, {"->", 2}, {"/\\", 2}, {"\\/", 2}};
  sig.quantifiers = {"exists", "forall"};
  sig.predicates = {"P", "Q"};
  return sig;
}

// Independent count of distinct formulas of depth <= d: leaves, plus one
// formula per connective and child tuple of depth <= d-1, plus one per
// quantifier/variable/body triple. Mirrors nothing from the enumerator; the
// grammar itself dictates the recursion.
long long count_up_to(const Signature& sig, int d, int ind_vars, int prop_vars) {
  long long leaves = prop_vars + static_cast<long long>(sig.predicates.size()) * ind_vars;
  for (const auto& c : sig.connectives)
    if (c.arity == 0) leaves += 1;
  if (d == 0) return leaves;
  long long below = count_up_to(sig, d - 1, ind_vars, prop_vars);
  long long total = leaves;
  for (const auto& c : sig.connectives) {
    if (c.arity == 0) continue;
    long long tuples = 1;
    for (int i = 0; i < c.arity; ++i) tuples *= below;
    total += tuples;
  }
  total += static_cast<long long>(sig.quantifiers.size()) * ind_vars * below;
  return total;
}

}  // namespace

TEST_CASE("implication associates right") {
  auto sig = prop_signature();
  Formula f = parse_in("p1 -> p2 -> p3", sig);
  REQUIRE(f.kind() == Formula::Kind::Conn);
  CHECK(f.name() == "->");
  CHECK(f.child(0) == Formula::prop(1));
  CHECK(f.child(1).name() == "->");
  CHECK(f.child(1).child(0) == Formula::prop(2));
  CHECK(f.to_string() == "p1 -> p2 -> p3");

  Formula g = parse_in("(p1 -> p2) -> p3", sig);
  CHECK(g.child(0).name() == "->");
  CHECK(g.child(1) == Formula::prop(3));
  CHECK(g.to_string() == "(p1 -> p2) -> p3");
  CHECK(f != g);
}

TEST_CASE("negation binds tighter than binary connectives") {
  Signature sig = full_signature();
  Formula f = parse_in("~p1 /\\ p2", sig);
  CHECK(f.name() == "/\\");
  CHECK(f.child(0).name() == "~");

  Formula g = parse_in("~(p1 /\\ p2)", sig);
  CHECK(g.name() == "~");
  CHECK(g.to_string() == "~(p1 /\\ p2)");
}

TEST_CASE("conjunction binds tighter than disjunction, both tighter than implication") {
  Signature sig = full_signature();
  Formula f = parse_in("p1 \\/ p2 /\\ p3", sig);
  CHECK(f.name() == "\\/");
  CHECK(f.child(1).name() == "/\\");
  CHECK(f.to_string() == "p1 \\/ p2 /\\ p3");

  Formula g = parse_in("p1 /\\ p2 \\/ p3", sig);
  CHECK(g.name() == "\\/");
  CHECK(g.child(0).name() == "/\\");

  Formula h = parse_in("p1 \\/ p2 -> p3", sig);
  CHECK(h.name() == "->");
  CHECK(h.child(0).name() == "\\/");
}

TEST_CASE("quantifier body extends maximally to the right") {
  auto sig = pred_signature();
  Formula f = parse_in("exists x1. P(x1) -> P(x1)", sig);
  REQUIRE(f.kind() == Formula::Kind::Quant);
  CHECK(f.name() == "exists");
  CHECK(f.var() == 1);
  CHECK(f.child(0).name() == "->");
  CHECK(f.free_mask() == 0);
  CHECK(f.to_string() == "exists x1. P(x1) -> P(x1)");

  Formula g = parse_in("(exists x1. P(x1)) -> P(x1)", sig);
  REQUIRE(g.kind() == Formula::Kind::Conn);
  CHECK(g.name() == "->");
  CHECK(g.child(0).kind() == Formula::Kind::Quant);
  CHECK(g.free_mask() == 1u);  // the consequent's x1 is free
  CHECK(g.to_string() == "(exists x1. P(x1)) -> P(x1)");
  CHECK(f != g);
}

TEST_CASE("parse inverts printing on every enumerated formula") {
  auto sig = pred_signature();
  EnumOptions opts;
  opts.max_depth = 3;
  opts.ind_var_limit = 2;
  opts.prop_var_limit = 1;
  auto all = enumerate_formulas(sig, opts);
  CHECK(all.size() > 1000);
  for (const auto& f : all) {
    Formula back = parse_in(f.to_string(), sig);
    REQUIRE(back == f);
    REQUIRE(back.hash() == f.hash());
  }
}

TEST_CASE("round trip including the remaining connectives and forall") {
  Signature sig = full_signature();
  EnumOptions opts;
  opts.max_depth = 2;
  opts.ind_var_limit = 1;
  opts.prop_var_limit = 1;
  for (const auto& f : enumerate_formulas(sig, opts)) {
    CHECK(parse_in(f.to_string(), sig) == f);
  }
}

TEST_CASE("enumeration matches the grammar count and has no duplicates") {
  struct Case {
    Signature sig;
    int ind, prop;
  };
  std::vector<Case> cases;
  cases.push_back({prop_signature(), 0, 1});
  cases.push_back({prop_signature(), 0, 2});
  cases.push_back({pred_signature(), 1, 1});
  cases.push_back({pred_signature(), 2, 1});
  for (const auto& c : cases) {
    for (int d = 0; d <= 3; ++d) {
      EnumOptions opts;
      opts.max_depth = d;
      opts.ind_var_limit = c.ind;
      opts.prop_var_limit = c.prop;
      auto got = enumerate_formulas(c.sig, opts);
      CHECK(static_cast<long long>(got.size()) == count_up_to(c.sig, d, c.ind, c.prop));
      std::set<Formula> unique(got.begin(), got.end());
      CHECK(unique.size() == got.size());
      for (const auto& f : got) {
        CHECK(f.depth() <= d);
        CHECK(f.well_formed(c.sig));
      }
    }
  }
}

TEST_CASE("enumeration is deterministic and ordered by depth") {
  auto sig = pred_signature();
  EnumOptions opts;
  opts.max_depth = 2;
  opts.ind_var_limit = 2;
  opts.prop_var_limit = 2;
  auto a = enumerate_formulas(sig, opts);
  auto b = enumerate_formulas(sig, opts);
  REQUIRE(a == b);
  for (std::size_t i = 1; i < a.size(); ++i) {
    CHECK(a[i - 1].depth() <= a[i].depth());
  }
}

TEST_CASE("enumeration cap raises the resource error") {
  auto sig = pred_signature();
  EnumOptions opts;
  opts.max_depth = 3;
  opts.ind_var_limit = 2;
  opts.prop_var_limit = 2;
  opts.cap = 50;
  CHECK_THROWS_AS(enumerate_formulas(sig, opts), ResourceCapExceeded);
}

TEST_CASE("parse errors carry a position") {
  auto sig = pred_signature();
  CHECK_THROWS_AS(parse_in("p1 ->", sig), ParseError);
  CHECK_THROWS_AS(parse_in("(p1 -> p2", sig), ParseError);
  CHECK_THROWS_AS(parse_in("exists x1", sig), ParseError);  // missing dot and body
  CHECK_THROWS_AS(parse_in("P(p1)", sig), ParseError);      // predicate wants a variable
  CHECK_THROWS_AS(parse_in("p1 p2", sig), ParseError);
  CHECK_THROWS_AS(parse_in("", sig), ParseError);
  try {
    parse_in("p1 -> )", sig);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position == 7);
  }
}

TEST_CASE("concrete mode rejects schema syntax, schematic mode accepts it") {
  auto sig = pred_signature();
  CHECK_THROWS_AS(parse_in("Phi -> Psi", sig), ParseError);
  Formula f = parse_schema_in("Phi -> Psi", sig);
  CHECK(f.is_schematic());
  CHECK(f.child(0).kind() == Formula::Kind::Meta);

  Formula g = parse_schema_in("~exists x. ~Phi", sig);
  CHECK(g.child(0).has_meta_binder());
  CHECK(g.child(0).binder_meta() == "x");

  CHECK_THROWS_AS(parse_schema_in("$1 -> $2", sig), ParseError);
  Formula t = parse_formula("$1 -> $2", sig, ParseMode::Template);
  CHECK(t.child(0).name() == "$1");
}

TEST_CASE("free variables and masks") {
  auto sig = pred_signature();
  Formula f = parse_in("exists x1. P(x1) -> P(x2)", sig);
  CHECK(f.free_vars() == std::vector<int>{2});
  CHECK(f.free_mask() == 0b10u);
  CHECK(f.prop_mask() == 0);

  Formula g = parse_in("p1 -> p3", sig);
  CHECK(g.prop_mask() == 0b101u);
  CHECK(g.free_mask() == 0);

  CHECK(parse_in("exists x2. P(x2)", sig).free_vars().empty());
}

TEST_CASE("depth and size bookkeeping") {
  auto sig = pred_signature();
  CHECK(parse_in("P(x1)", sig).depth() == 0);
  CHECK(parse_in("~P(x1)", sig).depth() == 1);
  CHECK(parse_in("exists x1. ~P(x1)", sig).depth() == 2);
  Formula target = parse_in("(exists x1. P(x1)) -> exists x1. ~~P(x1)", sig);
  CHECK(target.depth() == 4);
  CHECK(target.size() == 7);
}

TEST_CASE("well_formed checks signature membership") {
  auto sig = pred_signature();
  Formula f = parse_in("~P(x1)", sig);
  CHECK(f.well_formed(sig));
  Signature smaller;
  smaller.connectives = {{"->", 2}};
  smaller.predicates = {"P"};
  CHECK_FALSE(f.well_formed(smaller));  // no ~ in the signature
  CHECK(parse_in("p1", sig).well_formed(Signature{}));  // props need no declaration
  CHECK_FALSE(parse_in("P(x1)", sig).well_formed(Signature{}));
}

TEST_CASE("structural compare is a total order consistent with equality") {
  auto sig = pred_signature();
  EnumOptions opts;
  opts.max_depth = 2;
  opts.ind_var_limit = 1;
  opts.prop_var_limit = 1;
  auto all = enumerate_formulas(sig, opts);
  for (std::size_t i = 0; i < all.size(); ++i) {
    CHECK(Formula::compare(all[i], all[i]) == 0);
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      int ab = Formula::compare(all[i], all[j]);
      int ba = Formula::compare(all[j], all[i]);
      CHECK(ab != 0);
      CHECK((ab < 0) == (ba > 0));
    }
  }
}

TEST_CASE("variable name helpers") {
  CHECK(var_index("x3", 'x') == 3);
  CHECK(var_index("p12", 'p') == 12);
  CHECK_FALSE(var_index("x0", 'x').has_value());
  CHECK_FALSE(var_index("y3", 'x').has_value());
  CHECK_FALSE(var_index("x", 'x').has_value());
  CHECK(ind_var_name(2) == "x2");
  CHECK(prop_var_name(7) == "p7");
}
