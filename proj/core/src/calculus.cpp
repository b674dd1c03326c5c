#include "transax/calculus.hpp"

#include <algorithm>
#include <functional>

#include "transax/errors.hpp"

namespace transax {

const Schema* Calculus::find_axiom(const std::string& n) const {
  for (const auto& a : axioms)
    if (a.name == n) return &a;
  return nullptr;
}

const Rule* Calculus::find_rule(const std::string& n) const {
  for (const auto& r : rules)
    if (r.name == n) return &r;
  return nullptr;
}

namespace {

std::vector<std::string> premise_metas(const Rule& r, bool formula_metas) {
  std::vector<std::string> fm, vm;
  for (const auto& p : r.premises) collect_metas(p, fm, vm);
  auto& v = formula_metas ? fm : vm;
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

void Calculus::validate() const {
  sig.validate();
  for (const auto& a : axioms) a.validate(sig);
  std::set<std::string> axiom_names;
  for (const auto& a : axioms)
    if (!axiom_names.insert(a.name).second)
      throw SignatureMismatch("duplicate axiom name " + a.name);
  std::set<std::string> rule_names;
  for (const auto& r : rules) {
    if (!rule_names.insert(r.name).second)
      throw SignatureMismatch("duplicate rule name " + r.name);
    for (const auto& p : r.premises)
      if (!p.well_formed(sig))
        throw SignatureMismatch("rule " + r.name + " premise uses symbols outside the signature");
    if (!r.conclusion.well_formed(sig))
      throw SignatureMismatch("rule " + r.name + " conclusion uses symbols outside the signature");
    // Conclusion metavariables must come from the premises unless declared
    // fresh.
    auto from_premises_f = premise_metas(r, true);
    auto from_premises_v = premise_metas(r, false);
    std::vector<std::string> cf, cv;
    collect_metas(r.conclusion, cf, cv);
    auto declared_fresh = [&](const std::string& m) {
      return std::find(r.fresh.begin(), r.fresh.end(), m) != r.fresh.end();
    };
    for (const auto& m : cf)
      if (!std::binary_search(from_premises_f.begin(), from_premises_f.end(), m) &&
          !declared_fresh(m))
        throw SignatureMismatch("rule " + r.name + ": conclusion metavariable " + m +
                                " neither occurs in a premise nor is declared fresh");
    for (const auto& m : cv)
      if (!std::binary_search(from_premises_v.begin(), from_premises_v.end(), m) &&
          !declared_fresh(m))
        throw SignatureMismatch("rule " + r.name + ": conclusion variable metavariable " + m +
                                " neither occurs in a premise nor is declared fresh");
  }
  if (generalized_axioms && !sig.has_quantifier("forall"))
    throw SignatureMismatch("generalized axioms require a quantifier named forall");
}

ProofVerdict check_proof(const Calculus& c, const Proof& p) {
  c.validate();
  for (std::size_t i = 0; i < p.steps.size(); ++i) {
    const ProofStep& step = p.steps[i];
    auto fail = [&](std::string msg) {
      return ProofVerdict{false, static_cast<int>(i), std::move(msg)};
    };
    if (step.formula.is_schematic()) return fail("step formula is not concrete");
    if (!step.formula.well_formed(c.sig))
      return fail("step formula is not over the calculus signature");
    if (std::holds_alternative<AxiomJust>(step.just)) {
      const auto& j = std::get<AxiomJust>(step.just);
      const Schema* s = c.find_axiom(j.axiom);
      if (!s) return fail("unknown axiom " + j.axiom);
      Formula inst;
      try {
        inst = instantiate(*s, j.binding);
      } catch (const Error& e) {
        return fail(std::string("axiom instantiation failed: ") + e.what());
      }
      if (!j.gen_vars.empty()) {
        if (!c.generalized_axioms)
          return fail("generalized axiom instance in a calculus without generalized axioms");
        for (auto it = j.gen_vars.rbegin(); it != j.gen_vars.rend(); ++it)
          inst = Formula::quant("forall", *it, std::move(inst));
      }
      if (inst != step.formula)
        return fail("formula is not the claimed instance of " + j.axiom);
    } else {
      const auto& j = std::get<RuleJust>(step.just);
      const Rule* r = c.find_rule(j.rule);
      if (!r) return fail("unknown rule " + j.rule);
      if (j.premises.size() != r->premises.size())
        return fail("rule " + j.rule + " expects " + std::to_string(r->premises.size()) +
                    " premises");
      if (!check_conditions(r->conditions, j.binding))
        return fail("rule " + j.rule + ": side condition violated");
      for (std::size_t k = 0; k < r->premises.size(); ++k) {
        int idx = j.premises[k];
        if (idx < 0 || static_cast<std::size_t>(idx) >= i)
          return fail("premise index " + std::to_string(idx) + " out of range");
        Formula expected = substitute(r->premises[k], j.binding);
        if (expected.is_schematic())
          return fail("binding leaves premise " + std::to_string(k) + " schematic");
        if (expected != p.steps[idx].formula)
          return fail("premise " + std::to_string(k) + " does not match step " +
                      std::to_string(idx));
      }
      Formula concl = substitute(r->conclusion, j.binding);
      if (concl.is_schematic()) return fail("binding leaves the conclusion schematic");
      if (concl != step.formula) return fail("formula is not the instantiated conclusion");
    }
  }
  return {true, -1, ""};
}

namespace {

struct MetaPools {
  std::vector<std::string> formula_metas;
  std::vector<std::vector<Formula>> pools;     // aligned with formula_metas
  std::vector<std::string> var_metas;
  int ind_var_limit = 1;
  bool empty_pool = false;
};

int occurrence_budget(const Formula& tmpl, const std::string& m, int depth, DepthRule rule) {
  auto occ = rule == DepthRule::ShallowestOccurrence ? min_meta_occurrence_depth(tmpl, m)
                                                     : max_meta_occurrence_depth(tmpl, m);
  if (!occ) return depth;  // does not occur here
  return depth - *occ;
}

MetaPools build_pools(const std::vector<Formula>& templates, const Signature& sig,
                      const InstanceEnumOptions& opts) {
  MetaPools mp;
  mp.ind_var_limit = opts.ind_var_limit;
  std::vector<std::string> fm, vm;
  for (const auto& t : templates) collect_metas(t, fm, vm);
  std::sort(fm.begin(), fm.end());
  fm.erase(std::unique(fm.begin(), fm.end()), fm.end());
  std::sort(vm.begin(), vm.end());
  vm.erase(std::unique(vm.begin(), vm.end()), vm.end());
  mp.formula_metas = fm;
  mp.var_metas = vm;
  for (const auto& m : fm) {
    int budget = opts.depth;
    for (const auto& t : templates)
      budget = std::min(budget, occurrence_budget(t, m, opts.depth, opts.depth_rule));
    // Lenient budgets never go below atoms; strict budgets may rule out the
    // template entirely.
    if (opts.depth_rule == DepthRule::ShallowestOccurrence) budget = std::max(budget, 0);
    if (budget < 0) {
      mp.empty_pool = true;
      return mp;
    }
    EnumOptions eo;
    eo.max_depth = budget;
    eo.ind_var_limit = opts.ind_var_limit;
    eo.prop_var_limit = opts.prop_var_limit;
    eo.cap = opts.cap;
    mp.pools.push_back(enumerate_formulas(sig, eo));
    if (mp.pools.back().empty()) mp.empty_pool = true;
  }
  return mp;
}

// Invokes fn for every binding over the pools; fn returns false to abort.
template <typename Fn>
void for_each_binding(const MetaPools& mp, std::size_t cap, Fn&& fn) {
  if (mp.empty_pool) return;
  std::size_t total = 1;
  for (const auto& pool : mp.pools) {
    if (total > cap / std::max<std::size_t>(pool.size(), 1))
      throw ResourceCapExceeded("instance enumeration exceeds cap");
    total *= pool.size();
  }
  for (std::size_t i = 0; i < mp.var_metas.size(); ++i) {
    if (total > cap / static_cast<std::size_t>(mp.ind_var_limit))
      throw ResourceCapExceeded("instance enumeration exceeds cap");
    total *= static_cast<std::size_t>(mp.ind_var_limit);
  }
  if (mp.ind_var_limit < 1 && !mp.var_metas.empty()) return;

  std::vector<std::size_t> fidx(mp.formula_metas.size(), 0);
  std::vector<int> vidx(mp.var_metas.size(), 1);
  while (true) {
    Binding b;
    for (std::size_t i = 0; i < mp.formula_metas.size(); ++i)
      b.formulas[mp.formula_metas[i]] = mp.pools[i][fidx[i]];
    for (std::size_t i = 0; i < mp.var_metas.size(); ++i)
      b.variables[mp.var_metas[i]] = vidx[i];
    if (!fn(b)) return;
    // Odometer: variable metavariables vary fastest.
    std::size_t k = mp.var_metas.size();
    while (k > 0 && ++vidx[k - 1] > mp.ind_var_limit) vidx[--k] = 1;
    if (k > 0) continue;
    std::size_t j = mp.formula_metas.size();
    while (j > 0 && ++fidx[j - 1] == mp.pools[j - 1].size()) fidx[--j] = 0;
    if (j == 0) return;
  }
}

}  // namespace

std::vector<std::pair<Formula, Binding>> enumerate_schema_instances(
    const Schema& s, const Signature& sig, const InstanceEnumOptions& opts) {
  std::vector<std::pair<Formula, Binding>> out;
  MetaPools mp = build_pools({s.tmpl}, sig, opts);
  for_each_binding(mp, opts.cap, [&](const Binding& b) {
    if (!check_conditions(s.conditions, b)) return true;
    out.emplace_back(substitute(s.tmpl, b), b);
    if (out.size() > opts.cap)
      throw ResourceCapExceeded("schema instance enumeration exceeds cap");
    return true;
  });
  return out;
}

bool RuleApplication::operator<(const RuleApplication& other) const {
  if (premises.size() != other.premises.size())
    return premises.size() < other.premises.size();
  for (std::size_t i = 0; i < premises.size(); ++i)
    if (int c = Formula::compare(premises[i], other.premises[i])) return c < 0;
  return Formula::compare(conclusion, other.conclusion) < 0;
}

std::vector<RuleApplication> enumerate_rule_instances(const Rule& r, const Signature& sig,
                                                      const InstanceEnumOptions& opts) {
  std::vector<Formula> templates = r.premises;
  templates.push_back(r.conclusion);
  InstanceEnumOptions strict = opts;
  strict.depth_rule = DepthRule::DeepestOccurrence;
  MetaPools mp = build_pools(templates, sig, strict);
  std::vector<RuleApplication> out;
  for_each_binding(mp, opts.cap, [&](const Binding& b) {
    if (!check_conditions(r.conditions, b)) return true;
    RuleApplication app;
    for (const auto& p : r.premises) app.premises.push_back(substitute(p, b));
    app.conclusion = substitute(r.conclusion, b);
    out.push_back(std::move(app));
    if (out.size() > opts.cap)
      throw ResourceCapExceeded("rule instance enumeration exceeds cap");
    return true;
  });
  return out;
}

std::vector<RuleApplication> rule_applications(const Rule& r,
                                               const std::vector<Formula>& pool,
                                               int ind_var_limit, std::size_t cap) {
  MetaPools mp;
  mp.ind_var_limit = ind_var_limit;
  std::vector<std::string> fm, vm;
  for (const auto& p : r.premises) collect_metas(p, fm, vm);
  collect_metas(r.conclusion, fm, vm);
  std::sort(fm.begin(), fm.end());
  fm.erase(std::unique(fm.begin(), fm.end()), fm.end());
  std::sort(vm.begin(), vm.end());
  vm.erase(std::unique(vm.begin(), vm.end()), vm.end());
  mp.formula_metas = fm;
  mp.var_metas = vm;
  for (std::size_t i = 0; i < fm.size(); ++i) mp.pools.push_back(pool);
  mp.empty_pool = pool.empty() && !fm.empty();

  std::set<RuleApplication> apps;
  for_each_binding(mp, cap, [&](const Binding& b) {
    if (!check_conditions(r.conditions, b)) return true;
    RuleApplication app;
    for (const auto& p : r.premises) app.premises.push_back(substitute(p, b));
    app.conclusion = substitute(r.conclusion, b);
    apps.insert(std::move(app));
    if (apps.size() > cap) throw ResourceCapExceeded("rule application set exceeds cap");
    return true;
  });
  return {apps.begin(), apps.end()};
}

std::vector<RuleApplication> translate_rule_appset(const Translation& t, const Rule& r,
                                                   int universe_depth,
                                                   const EnumOptions& universe_opts) {
  EnumOptions eo = universe_opts;
  eo.max_depth = universe_depth;
  std::vector<Formula> universe = enumerate_formulas(t.source, eo);
  std::set<RuleApplication> apps;
  for (const auto& app : rule_applications(r, universe, eo.ind_var_limit, eo.cap)) {
    RuleApplication mapped;
    for (const auto& p : app.premises) mapped.premises.push_back(translate(t, p));
    mapped.conclusion = translate(t, app.conclusion);
    apps.insert(std::move(mapped));
  }
  return {apps.begin(), apps.end()};
}

namespace {

void add_with_generalizations(const Formula& inst, const Binding& b, std::size_t axiom_index,
                              const Calculus& c, const ClosureOptions& opts,
                              ClosureResult& res) {
  struct Item {
    Formula f;
    std::vector<int> gen;
  };
  std::vector<Item> queue{{inst, {}}};
  while (!queue.empty()) {
    Item item = std::move(queue.back());
    queue.pop_back();
    if (item.f.depth() > opts.max_depth) continue;
    if (res.theorems.insert(item.f).second) {
      ClosureResult::Derivation d;
      d.from_axiom = true;
      d.index = axiom_index;
      d.binding = b;
      d.gen_vars = item.gen;
      res.provenance.emplace(item.f, std::move(d));
      if (res.theorems.size() > opts.cap)
        throw ResourceCapExceeded("closure exceeds cap");
    }
    if (!c.generalized_axioms) continue;
    for (int v = 1; v <= opts.ind_var_limit; ++v) {
      Formula g = Formula::quant("forall", v, item.f);
      if (g.depth() > opts.max_depth) continue;
      std::vector<int> gen = item.gen;
      gen.insert(gen.begin(), v);
      queue.push_back({std::move(g), std::move(gen)});
    }
  }
}

// Matches rule premises left to right against the closure set, extending the
// binding; premises fully determined by the current binding become hash
// lookups.
void apply_rule(const Calculus& c, std::size_t rule_index, const std::set<Formula>& current,
                const ClosureOptions& opts, ClosureResult& res,
                std::vector<Formula>& added) {
  const Rule& r = c.rules[rule_index];

  // Fresh conclusion metavariables range over bounded pools.
  std::vector<std::string> fresh_formula, fresh_var;
  {
    std::vector<std::string> cf, cv, pf, pv;
    collect_metas(r.conclusion, cf, cv);
    for (const auto& p : r.premises) collect_metas(p, pf, pv);
    for (const auto& m : cf)
      if (std::find(pf.begin(), pf.end(), m) == pf.end()) fresh_formula.push_back(m);
    for (const auto& m : cv)
      if (std::find(pv.begin(), pv.end(), m) == pv.end()) fresh_var.push_back(m);
    std::sort(fresh_formula.begin(), fresh_formula.end());
    fresh_formula.erase(std::unique(fresh_formula.begin(), fresh_formula.end()),
                        fresh_formula.end());
    std::sort(fresh_var.begin(), fresh_var.end());
    fresh_var.erase(std::unique(fresh_var.begin(), fresh_var.end()), fresh_var.end());
  }
  std::vector<std::vector<Formula>> fresh_pools;
  for (const auto& m : fresh_formula) {
    int budget = opts.max_depth;
    if (auto occ = max_meta_occurrence_depth(r.conclusion, m))
      budget = opts.max_depth - *occ;
    if (budget < 0) return;
    EnumOptions eo;
    eo.max_depth = budget;
    eo.ind_var_limit = opts.ind_var_limit;
    eo.prop_var_limit = opts.prop_var_limit;
    eo.cap = opts.cap;
    fresh_pools.push_back(enumerate_formulas(c.sig, eo));
  }

  std::vector<Formula> premise_insts(r.premises.size());

  auto conclude = [&](const Binding& b) {
    if (!check_conditions(r.conditions, b)) return;
    Formula concl = substitute(r.conclusion, b);
    if (concl.is_schematic() || concl.depth() > opts.max_depth) return;
    if (res.theorems.contains(concl)) return;
    ClosureResult::Derivation d;
    d.from_axiom = false;
    d.index = rule_index;
    d.binding = b;
    d.premises = premise_insts;
    res.theorems.insert(concl);
    res.provenance.emplace(concl, std::move(d));
    added.push_back(concl);
    if (res.theorems.size() > opts.cap) throw ResourceCapExceeded("closure exceeds cap");
  };

  // Enumerates fresh metavariables once premises fixed the rest.
  auto bind_fresh = [&](Binding b) {
    std::vector<std::size_t> fidx(fresh_formula.size(), 0);
    std::vector<int> vidx(fresh_var.size(), 1);
    if (!fresh_var.empty() && opts.ind_var_limit < 1) return;
    for (const auto& pool : fresh_pools)
      if (pool.empty()) return;
    while (true) {
      for (std::size_t i = 0; i < fresh_formula.size(); ++i)
        b.formulas[fresh_formula[i]] = fresh_pools[i][fidx[i]];
      for (std::size_t i = 0; i < fresh_var.size(); ++i)
        b.variables[fresh_var[i]] = vidx[i];
      conclude(b);
      std::size_t k = fresh_var.size();
      while (k > 0 && ++vidx[k - 1] > opts.ind_var_limit) vidx[--k] = 1;
      if (k > 0) continue;
      std::size_t j = fresh_formula.size();
      while (j > 0 && ++fidx[j - 1] == fresh_pools[j - 1].size()) fidx[--j] = 0;
      if (j == 0) return;
    }
  };

  std::function<void(std::size_t, Binding)> extend = [&](std::size_t i, Binding b) {
    if (i == r.premises.size()) {
      bind_fresh(std::move(b));
      return;
    }
    Formula determined = substitute(r.premises[i], b);
    if (!determined.is_schematic()) {
      if (current.contains(determined)) {
        premise_insts[i] = determined;
        extend(i + 1, std::move(b));
      }
      return;
    }
    Schema probe{"", r.premises[i], {}};
    for (const auto& g : current) {
      Binding b2 = b;
      // match against the premise template under the partial binding
      bool ok = [&] {
        struct Merger {
          static bool merge(const Formula& tmpl, const Formula& f, Binding& bb) {
            switch (tmpl.kind()) {
              case Formula::Kind::Meta: {
                auto [it, inserted] = bb.formulas.try_emplace(tmpl.name(), f);
                return inserted || it->second == f;
              }
              case Formula::Kind::Prop:
                return f.kind() == Formula::Kind::Prop && f.var() == tmpl.var();
              case Formula::Kind::Atom:
                return f.kind() == Formula::Kind::Atom && f.name() == tmpl.name() &&
                       f.var() == tmpl.var();
              case Formula::Kind::Quant: {
                if (f.kind() != Formula::Kind::Quant || f.name() != tmpl.name()) return false;
                if (f.has_meta_binder()) return false;
                if (tmpl.has_meta_binder()) {
                  auto [it, inserted] = bb.variables.try_emplace(tmpl.binder_meta(), f.var());
                  if (!inserted && it->second != f.var()) return false;
                } else if (tmpl.var() != f.var()) {
                  return false;
                }
                return merge(tmpl.child(0), f.child(0), bb);
              }
              case Formula::Kind::Conn: {
                if (f.kind() != Formula::Kind::Conn || f.name() != tmpl.name() ||
                    f.arity() != tmpl.arity())
                  return false;
                for (int k = 0; k < tmpl.arity(); ++k)
                  if (!merge(tmpl.child(k), f.child(k), bb)) return false;
                return true;
              }
            }
            return false;
          }
        };
        return Merger::merge(r.premises[i], g, b2);
      }();
      if (!ok) continue;
      premise_insts[i] = g;
      extend(i + 1, b2);
    }
  };

  extend(0, Binding{});
}

}  // namespace

ClosureResult closure_bounded(const Calculus& c, const ClosureOptions& opts) {
  c.validate();
  ClosureResult res;
  InstanceEnumOptions io;
  io.depth = opts.max_depth;
  io.ind_var_limit = opts.ind_var_limit;
  io.prop_var_limit = opts.prop_var_limit;
  io.cap = opts.cap;
  io.depth_rule = DepthRule::DeepestOccurrence;
  for (std::size_t a = 0; a < c.axioms.size(); ++a)
    for (const auto& [inst, b] : enumerate_schema_instances(c.axioms[a], c.sig, io))
      add_with_generalizations(inst, b, a, c, opts, res);

  for (int round = 1; round <= opts.max_rounds; ++round) {
    std::vector<Formula> added;
    std::set<Formula> snapshot = res.theorems;
    for (std::size_t r = 0; r < c.rules.size(); ++r)
      apply_rule(c, r, snapshot, opts, res, added);
    res.rounds_used = round;
    if (added.empty()) {
      res.saturated = true;
      break;
    }
  }
  if (c.rules.empty()) res.saturated = true;
  return res;
}

Proof reconstruct_proof(const Calculus& c, const ClosureResult& closure, const Formula& f) {
  Proof proof;
  std::map<Formula, int> step_of;
  std::function<int(const Formula&)> emit = [&](const Formula& g) -> int {
    if (auto it = step_of.find(g); it != step_of.end()) return it->second;
    auto pit = closure.provenance.find(g);
    if (pit == closure.provenance.end())
      throw Error("no provenance for closure element " + g.to_string());
    const auto& d = pit->second;
    ProofStep step;
    step.formula = g;
    if (d.from_axiom) {
      step.just = AxiomJust{c.axioms[d.index].name, d.binding, d.gen_vars};
    } else {
      std::vector<int> premise_steps;
      for (const auto& p : d.premises) premise_steps.push_back(emit(p));
      step.just = RuleJust{c.rules[d.index].name, premise_steps, d.binding};
    }
    proof.steps.push_back(std::move(step));
    int idx = static_cast<int>(proof.steps.size()) - 1;
    step_of[g] = idx;
    return idx;
  };
  emit(f);
  return proof;
}

TheoremSearch is_theorem_bounded(const Calculus& c, const Formula& f,
                                 const ClosureOptions& opts) {
  TheoremSearch out;
  ClosureResult closure = closure_bounded(c, opts);
  out.saturated = closure.saturated;
  out.rounds_used = closure.rounds_used;
  if (!closure.theorems.contains(f)) {
    out.status = TheoremSearch::Status::Unknown;
    return out;
  }
  Proof proof = reconstruct_proof(c, closure, f);
  ProofVerdict v = check_proof(c, proof);
  if (!v.ok) throw Error("reconstructed proof failed verification: " + v.message);
  out.status = TheoremSearch::Status::Yes;
  out.proof = std::move(proof);
  return out;
}

Calculus translate_calculus(const Translation& t, const Calculus& c) {
  c.validate();
  t.validate();
  if (!(c.sig == t.source))
    throw SignatureMismatch("calculus signature differs from the translation source");
  Calculus out;
  out.name = c.name + "'";
  out.sig = t.target;
  out.generalized_axioms = c.generalized_axioms;
  for (const auto& a : c.axioms) {
    Schema s = translate_schema(t, a);
    s.name = a.name + "'";
    out.axioms.push_back(std::move(s));
  }
  for (const auto& r : c.rules) {
    Rule nr;
    nr.name = r.name + "'";
    for (const auto& p : r.premises) nr.premises.push_back(translate(t, p));
    nr.conclusion = translate(t, r.conclusion);
    nr.conditions = r.conditions;
    nr.fresh = r.fresh;
    out.rules.push_back(std::move(nr));
  }
  out.validate();
  return out;
}

}  // namespace transax
