#include "transax/independence.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "transax/errors.hpp"
#include "transax/parser.hpp"

namespace transax {

namespace {

// Value of a template under an assignment of subsets to its formula
// metavariables. Variable metavariables are value-irrelevant.
Subset template_value(const Formula& t, const std::map<std::string, Subset>& metas,
                      const GeneralizedModel& m) {
  switch (t.kind()) {
    case Formula::Kind::Meta:
      return metas.at(t.name());
    case Formula::Kind::Atom: {
      auto it = m.pred_interp.find(t.name());
      if (it == m.pred_interp.end())
        throw MissingInterpretation("no interpretation for predicate " + t.name());
      return it->second;
    }
    case Formula::Kind::Prop:
      throw MissingInterpretation("no interpretation for propositional variable " +
                                  prop_var_name(t.var()));
    case Formula::Kind::Conn: {
      std::vector<Subset> args;
      for (const auto& c : t.children()) args.push_back(template_value(c, metas, m));
      return m.table(t.name()).apply(args);
    }
    case Formula::Kind::Quant:
      return m.table(t.name()).apply({template_value(t.child(0), metas, m)});
  }
  throw SemanticsMismatch("bad template");
}

int template_value_matrix(const Formula& t, const std::map<std::string, int>& metas,
                          const Matrix& mx) {
  switch (t.kind()) {
    case Formula::Kind::Meta:
      return metas.at(t.name());
    case Formula::Kind::Prop:
      throw MissingInterpretation("designation-level check hit a concrete variable " +
                                  prop_var_name(t.var()));
    case Formula::Kind::Conn: {
      std::vector<int> args;
      for (const auto& c : t.children()) args.push_back(template_value_matrix(c, metas, mx));
      return mx.apply(t.name(), args);
    }
    default:
      throw SemanticsMismatch("matrix templates are propositional");
  }
}

std::vector<std::string> formula_metas_of(const Rule& r) {
  std::vector<std::string> fm, vm;
  for (const auto& p : r.premises) collect_metas(p, fm, vm);
  collect_metas(r.conclusion, fm, vm);
  std::sort(fm.begin(), fm.end());
  fm.erase(std::unique(fm.begin(), fm.end()), fm.end());
  return fm;
}

// Designation-level rule check over a generalized model: for every tuple of
// subset values, designated premises force a designated conclusion.
IndependenceReport::RuleCheck designation_rule_check(const Rule& r,
                                                     const GeneralizedModel& m) {
  IndependenceReport::RuleCheck rc;
  rc.rule = r.name;
  rc.designation_level = true;
  std::vector<std::string> metas = formula_metas_of(r);
  Subset full = m.domain.full();
  std::vector<Subset> vals(metas.size(), 0);
  while (true) {
    ++rc.cases;
    std::map<std::string, Subset> mv;
    for (std::size_t i = 0; i < metas.size(); ++i) mv[metas[i]] = vals[i];
    bool premises_ok = true;
    for (const auto& p : r.premises)
      if (!m.is_designated(template_value(p, mv, m))) {
        premises_ok = false;
        break;
      }
    if (premises_ok) {
      Subset concl = template_value(r.conclusion, mv, m);
      if (!m.is_designated(concl)) {
        rc.ok = false;
        std::string s;
        for (std::size_t i = 0; i < metas.size(); ++i) {
          if (i) s += ", ";
          s += metas[i] + "=" + subset_to_string(m.domain, vals[i]);
        }
        rc.failing_detail =
            s + " gives undesignated conclusion " + subset_to_string(m.domain, concl);
        return rc;
      }
    }
    std::size_t k = metas.size();
    while (k > 0 && ++vals[k - 1] > full) vals[--k] = 0;
    if (k == 0) break;
  }
  return rc;
}

IndependenceReport::RuleCheck designation_rule_check(const Rule& r, const Matrix& mx) {
  IndependenceReport::RuleCheck rc;
  rc.rule = r.name;
  rc.designation_level = true;
  std::vector<std::string> metas = formula_metas_of(r);
  std::vector<int> vals(metas.size(), 0);
  while (true) {
    ++rc.cases;
    std::map<std::string, int> mv;
    for (std::size_t i = 0; i < metas.size(); ++i) mv[metas[i]] = vals[i];
    bool premises_ok = true;
    for (const auto& p : r.premises)
      if (!mx.is_designated(template_value_matrix(p, mv, mx))) {
        premises_ok = false;
        break;
      }
    if (premises_ok) {
      int concl = template_value_matrix(r.conclusion, mv, mx);
      if (!mx.is_designated(concl)) {
        rc.ok = false;
        std::string s;
        for (std::size_t i = 0; i < metas.size(); ++i) {
          if (i) s += ", ";
          s += metas[i] + "=" + std::to_string(vals[i]);
        }
        rc.failing_detail = s + " gives undesignated conclusion " + std::to_string(concl);
        return rc;
      }
    }
    std::size_t k = metas.size();
    while (k > 0 && ++vals[k - 1] == mx.size) vals[--k] = 0;
    if (k == 0) break;
  }
  return rc;
}

// Rules silently pass at designation level only when their side conditions
// cannot exclude tuples; otherwise a designation failure falls back to the
// instance level.
bool condition_free(const Rule& r) { return r.conditions.empty(); }

}  // namespace

IndependenceReport verify_independence(const Calculus& c, const GeneralizedModel& m,
                                       const Formula& target,
                                       const IndependenceOptions& opts) {
  c.validate();
  m.validate_against(c.sig);
  if (target.is_schematic() || !target.well_formed(c.sig))
    throw SignatureMismatch("target is not a concrete formula over the calculus signature");

  bool value_mode = opts.semantics == GModelSemantics::Value;
  IndependenceReport rep;
  rep.semantics = value_mode ? "value" : "star";
  rep.calculus_name = c.name;
  rep.model_name = m.name;
  rep.instance_depth = opts.instance_depth;
  rep.ind_var_limit = value_mode ? 1 : opts.ind_var_limit;
  // Generalized models interpret predicates only; propositional variables
  // have no value here, so instance pools draw from predicate atoms.
  rep.prop_var_limit = 0;
  rep.target = target;

  auto holds = [&](const Formula& f) {
    return value_mode ? m.is_designated(value_1var(m, f)) : true_star(m, f, opts.star);
  };
  auto describe = [&](const Formula& f) {
    if (value_mode) return "value " + subset_to_string(m.domain, value_1var(m, f));
    return std::string(true_star(m, f, opts.star) ? "true*" : "not true*");
  };

  InstanceEnumOptions io;
  io.depth = opts.instance_depth;
  io.ind_var_limit = rep.ind_var_limit;
  io.prop_var_limit = rep.prop_var_limit;
  io.cap = opts.cap;
  io.depth_rule = DepthRule::ShallowestOccurrence;

  bool axioms_ok = true;
  for (const auto& ax : c.axioms) {
    IndependenceReport::AxiomCheck ac;
    ac.axiom = ax.name;
    for (const auto& [inst, b] : enumerate_schema_instances(ax, c.sig, io)) {
      ++ac.instances;
      if (!holds(inst)) {
        ac.ok = false;
        ac.failing = inst;
        ac.failing_detail = describe(inst);
        break;
      }
      if (c.generalized_axioms) {
        // Bounded prefix check; table-level preservation of the quantifier
        // covers the rest in value mode.
        for (int v = 1; v <= rep.ind_var_limit; ++v) {
          Formula g = Formula::quant("forall", v, inst);
          if (!holds(g)) {
            ac.ok = false;
            ac.failing = g;
            ac.failing_detail = describe(g);
            break;
          }
        }
        if (!ac.ok) break;
      }
    }
    axioms_ok = axioms_ok && ac.ok;
    rep.axioms.push_back(std::move(ac));
  }

  bool rules_ok = true;
  for (const auto& r : c.rules) {
    IndependenceReport::RuleCheck rc;
    if (value_mode && condition_free(r)) {
      rc = designation_rule_check(r, m);
    } else {
      rc.rule = r.name;
      rc.designation_level = false;
      InstanceEnumOptions ro = io;
      ro.depth_rule = DepthRule::DeepestOccurrence;
      for (const auto& app : enumerate_rule_instances(r, c.sig, ro)) {
        ++rc.cases;
        bool premises_ok = true;
        for (const auto& p : app.premises)
          if (!holds(p)) {
            premises_ok = false;
            break;
          }
        if (premises_ok && !holds(app.conclusion)) {
          rc.ok = false;
          rc.failing_detail =
              "conclusion " + app.conclusion.to_string() + " fails (" +
              describe(app.conclusion) + ") with all premises holding";
          break;
        }
      }
    }
    rules_ok = rules_ok && rc.ok;
    rep.rules.push_back(std::move(rc));
  }

  rep.target_undesignated = !holds(target);
  rep.target_detail = describe(target);

  if (!axioms_ok)
    rep.verdict = IndependenceReport::Verdict::AxiomFailure;
  else if (!rules_ok)
    rep.verdict = IndependenceReport::Verdict::RuleFailure;
  else if (!rep.target_undesignated)
    rep.verdict = IndependenceReport::Verdict::TargetDesignated;
  else
    rep.verdict = IndependenceReport::Verdict::Independent;
  return rep;
}

IndependenceReport verify_independence(const Calculus& c, const Matrix& mx,
                                       const Formula& target,
                                       const IndependenceOptions& opts) {
  c.validate();
  mx.validate_against(c.sig);
  if (target.is_schematic() || !target.well_formed(c.sig))
    throw SignatureMismatch("target is not a concrete formula over the calculus signature");

  IndependenceReport rep;
  rep.semantics = "matrix";
  rep.calculus_name = c.name;
  rep.model_name = mx.name;
  rep.instance_depth = opts.instance_depth;
  rep.ind_var_limit = 0;
  rep.prop_var_limit = opts.prop_var_limit;
  rep.target = target;

  // Designated under every valuation of the occurring variables.
  auto tautology = [&](const Formula& f, std::string* why) {
    std::vector<int> props;
    for (int i = 1; i <= 32; ++i)
      if (f.prop_mask() >> (i - 1) & 1) props.push_back(i);
    std::vector<int> vals(props.size(), 0);
    while (true) {
      std::map<int, int> valuation;
      for (std::size_t i = 0; i < props.size(); ++i) valuation[props[i]] = vals[i];
      int v = eval_matrix(mx, f, valuation);
      if (!mx.is_designated(v)) {
        if (why) {
          std::string s = "value " + std::to_string(v) + " at";
          for (std::size_t i = 0; i < props.size(); ++i)
            s += " " + prop_var_name(props[i]) + "=" + std::to_string(vals[i]);
          *why = props.empty() ? "value " + std::to_string(v) : s;
        }
        return false;
      }
      std::size_t k = props.size();
      while (k > 0 && ++vals[k - 1] == mx.size) vals[--k] = 0;
      if (k == 0) break;
    }
    return true;
  };

  InstanceEnumOptions io;
  io.depth = opts.instance_depth;
  io.ind_var_limit = 1;
  io.prop_var_limit = opts.prop_var_limit;
  io.cap = opts.cap;
  io.depth_rule = DepthRule::ShallowestOccurrence;

  bool axioms_ok = true;
  for (const auto& ax : c.axioms) {
    IndependenceReport::AxiomCheck ac;
    ac.axiom = ax.name;
    for (const auto& [inst, b] : enumerate_schema_instances(ax, c.sig, io)) {
      ++ac.instances;
      std::string why;
      if (!tautology(inst, &why)) {
        ac.ok = false;
        ac.failing = inst;
        ac.failing_detail = why;
        break;
      }
    }
    axioms_ok = axioms_ok && ac.ok;
    rep.axioms.push_back(std::move(ac));
  }

  bool rules_ok = true;
  for (const auto& r : c.rules) {
    IndependenceReport::RuleCheck rc = designation_rule_check(r, mx);
    rules_ok = rules_ok && rc.ok;
    rep.rules.push_back(std::move(rc));
  }

  std::string why;
  rep.target_undesignated = !tautology(target, &why);
  rep.target_detail = rep.target_undesignated ? why : "designated under every valuation";

  if (!axioms_ok)
    rep.verdict = IndependenceReport::Verdict::AxiomFailure;
  else if (!rules_ok)
    rep.verdict = IndependenceReport::Verdict::RuleFailure;
  else if (!rep.target_undesignated)
    rep.verdict = IndependenceReport::Verdict::TargetDesignated;
  else
    rep.verdict = IndependenceReport::Verdict::Independent;
  return rep;
}

std::string verdict_name(IndependenceReport::Verdict v) {
  switch (v) {
    case IndependenceReport::Verdict::Independent:
      return "INDEPENDENT";
    case IndependenceReport::Verdict::AxiomFailure:
      return "AXIOM_FAILURE";
    case IndependenceReport::Verdict::RuleFailure:
      return "RULE_FAILURE";
    case IndependenceReport::Verdict::TargetDesignated:
      return "TARGET_DESIGNATED";
  }
  return "?";
}

std::string report_to_text(const IndependenceReport& rep) {
  std::ostringstream out;
  out << "verdict: " << verdict_name(rep.verdict) << "\n";
  out << "calculus: " << rep.calculus_name << "  model: " << rep.model_name
      << "  semantics: " << rep.semantics << "\n";
  out << "instance depth " << rep.instance_depth << ", variables " << rep.ind_var_limit
      << ", propositional variables " << rep.prop_var_limit << "\n";
  for (const auto& a : rep.axioms) {
    out << "axiom " << a.axiom << ": " << (a.ok ? "ok" : "FAIL") << " over " << a.instances
        << " instances";
    if (!a.ok && a.failing) out << "; failing: " << a.failing->to_string() << " (" << a.failing_detail << ")";
    out << "\n";
  }
  for (const auto& r : rep.rules) {
    out << "rule " << r.rule << ": " << (r.ok ? "ok" : "FAIL") << " over " << r.cases
        << (r.designation_level ? " value tuples" : " instances");
    if (!r.ok) out << "; " << r.failing_detail;
    out << "\n";
  }
  out << "target " << rep.target.to_string() << ": "
      << (rep.target_undesignated ? "refuted" : "NOT refuted") << " (" << rep.target_detail
      << ")\n";
  for (const auto& n : rep.notes) out << "note: " << n << "\n";
  return out.str();
}

std::string report_to_json(const IndependenceReport& rep) {
  nlohmann::json j;
  j["verdict"] = verdict_name(rep.verdict);
  j["semantics"] = rep.semantics;
  j["calculus"] = rep.calculus_name;
  j["model"] = rep.model_name;
  j["instance_depth"] = rep.instance_depth;
  j["ind_var_limit"] = rep.ind_var_limit;
  j["prop_var_limit"] = rep.prop_var_limit;
  j["axioms"] = nlohmann::json::array();
  for (const auto& a : rep.axioms) {
    nlohmann::json ja;
    ja["axiom"] = a.axiom;
    ja["instances"] = a.instances;
    ja["ok"] = a.ok;
    if (a.failing) ja["failing"] = a.failing->to_string();
    if (!a.failing_detail.empty()) ja["failing_detail"] = a.failing_detail;
    j["axioms"].push_back(std::move(ja));
  }
  j["rules"] = nlohmann::json::array();
  for (const auto& r : rep.rules) {
    nlohmann::json jr;
    jr["rule"] = r.rule;
    jr["designation_level"] = r.designation_level;
    jr["cases"] = r.cases;
    jr["ok"] = r.ok;
    if (!r.failing_detail.empty()) jr["failing_detail"] = r.failing_detail;
    j["rules"].push_back(std::move(jr));
  }
  j["target"] = rep.target.to_string();
  j["target_undesignated"] = rep.target_undesignated;
  j["target_detail"] = rep.target_detail;
  j["notes"] = rep.notes;
  return j.dump(2) + "\n";
}

IndependenceReport report_from_json(const std::string& text, const Signature& sig) {
  nlohmann::json j = nlohmann::json::parse(text);
  IndependenceReport rep;
  std::string v = j.at("verdict").get<std::string>();
  if (v == "INDEPENDENT")
    rep.verdict = IndependenceReport::Verdict::Independent;
  else if (v == "AXIOM_FAILURE")
    rep.verdict = IndependenceReport::Verdict::AxiomFailure;
  else if (v == "RULE_FAILURE")
    rep.verdict = IndependenceReport::Verdict::RuleFailure;
  else if (v == "TARGET_DESIGNATED")
    rep.verdict = IndependenceReport::Verdict::TargetDesignated;
  else
    throw FixtureError("unknown verdict " + v);
  rep.semantics = j.at("semantics").get<std::string>();
  rep.calculus_name = j.at("calculus").get<std::string>();
  rep.model_name = j.at("model").get<std::string>();
  rep.instance_depth = j.at("instance_depth").get<int>();
  rep.ind_var_limit = j.at("ind_var_limit").get<int>();
  rep.prop_var_limit = j.at("prop_var_limit").get<int>();
  for (const auto& ja : j.at("axioms")) {
    IndependenceReport::AxiomCheck a;
    a.axiom = ja.at("axiom").get<std::string>();
    a.instances = ja.at("instances").get<std::size_t>();
    a.ok = ja.at("ok").get<bool>();
    if (ja.contains("failing"))
      a.failing = parse_formula(ja.at("failing").get<std::string>(), sig);
    if (ja.contains("failing_detail")) a.failing_detail = ja.at("failing_detail");
    rep.axioms.push_back(std::move(a));
  }
  for (const auto& jr : j.at("rules")) {
    IndependenceReport::RuleCheck r;
    r.rule = jr.at("rule").get<std::string>();
    r.designation_level = jr.at("designation_level").get<bool>();
    r.cases = jr.at("cases").get<std::size_t>();
    r.ok = jr.at("ok").get<bool>();
    if (jr.contains("failing_detail")) r.failing_detail = jr.at("failing_detail");
    rep.rules.push_back(std::move(r));
  }
  rep.target = parse_formula(j.at("target").get<std::string>(), sig);
  rep.target_undesignated = j.at("target_undesignated").get<bool>();
  rep.target_detail = j.at("target_detail").get<std::string>();
  rep.notes = j.at("notes").get<std::vector<std::string>>();
  return rep;
}

std::string audit_axiom_tables(const GeneralizedModel& m) {
  if (m.domain.size() != 2)
    throw DomainSizeUnsupported("table audit needs a two-element domain");
  const OpTable& imp = m.table("->");
  OpTable fa = compose_forall(m);
  const Domain& d = m.domain;
  Subset full = d.full();
  Subset us = Subset{1} << d.distinguished;
  Subset vs = full & ~us;
  const std::vector<Subset> order{full, us, vs, 0};       // A, {u}, {v}, {}
  const std::vector<Subset> sentence_values{full, 0};     // A, {}
  auto p = [&](Subset s) { return subset_to_string(d, s); };
  auto fall = [&](Subset s) { return fa.rows.at({s}); };

  std::ostringstream out;
  out << "A4: ->(forall(X), X)\n";
  for (Subset x : order)
    out << "X=" << p(x) << ": forall(X)=" << p(fall(x)) << ", value="
        << p(imp.apply({fall(x), x})) << "\n";

  out << "\nA5 step 1: IMP = ->(F, P), F a sentence value\n";
  for (Subset f : sentence_values) {
    out << "F=" << p(f) << ":";
    for (Subset x : order) out << " P=" << p(x) << ":" << p(imp.apply({f, x}));
    out << "\n";
  }

  out << "\nA5 step 2: S0 = forall(IMP)\n";
  for (Subset f : sentence_values) {
    out << "F=" << p(f) << ":";
    for (Subset x : order) out << " P=" << p(x) << ":" << p(fall(imp.apply({f, x})));
    out << "\n";
  }

  out << "\nA5 step 3: S1 = ->(F, forall(P))\n";
  for (Subset f : sentence_values) {
    out << "F=" << p(f) << ":";
    for (Subset x : order) out << " P=" << p(x) << ":" << p(imp.apply({f, fall(x)}));
    out << "\n";
  }

  out << "\nA5 final: ->(S0, S1)\n";
  for (Subset f : sentence_values) {
    out << "F=" << p(f) << ":";
    for (Subset x : order) {
      Subset s0 = fall(imp.apply({f, x}));
      Subset s1 = imp.apply({f, fall(x)});
      out << " P=" << p(x) << ":" << p(imp.apply({s0, s1}));
    }
    out << "\n";
  }
  return out.str();
}

namespace {

// Fast designation-level axiom filter for searches: every tuple of values for
// the template's metavariables must come out designated.
bool axiom_tuple_filter(const Schema& ax, const GeneralizedModel& m, std::size_t& budget) {
  std::vector<std::string> fm = ax.formula_metas();
  Subset full = m.domain.full();
  std::vector<Subset> vals(fm.size(), 0);
  while (true) {
    if (budget == 0) throw ResourceCapExceeded("model search exceeds its budget");
    --budget;
    std::map<std::string, Subset> mv;
    for (std::size_t i = 0; i < fm.size(); ++i) mv[fm[i]] = vals[i];
    if (!m.is_designated(template_value(ax.tmpl, mv, m))) return false;
    std::size_t k = fm.size();
    while (k > 0 && ++vals[k - 1] > full) vals[--k] = 0;
    if (k == 0) break;
  }
  return true;
}

bool axiom_tuple_filter(const Schema& ax, const Matrix& mx, std::size_t& budget) {
  std::vector<std::string> fm = ax.formula_metas();
  std::vector<int> vals(fm.size(), 0);
  while (true) {
    if (budget == 0) throw ResourceCapExceeded("matrix search exceeds its budget");
    --budget;
    std::map<std::string, int> mv;
    for (std::size_t i = 0; i < fm.size(); ++i) mv[fm[i]] = vals[i];
    if (!mx.is_designated(template_value_matrix(ax.tmpl, mv, mx))) return false;
    std::size_t k = fm.size();
    while (k > 0 && ++vals[k - 1] == mx.size) vals[--k] = 0;
    if (k == 0) break;
  }
  return true;
}

}  // namespace

MatrixSearchResult search_matrix(const Calculus& c, const Formula& target,
                                 const MatrixSearchOptions& opts) {
  c.validate();
  if (!c.sig.quantifiers.empty() || !c.sig.predicates.empty())
    throw SemanticsMismatch("matrix search needs a propositional calculus");
  if (opts.max_size < 1 || opts.max_size > 4)
    throw DomainSizeUnsupported("matrix search supports sizes 1 to 4");
  if (target.is_schematic() || !target.well_formed(c.sig))
    throw SignatureMismatch("target is not a concrete formula over the calculus signature");

  MatrixSearchResult res;
  res.enumeration =
      "size ascending, designated mask ascending, table cells ascending "
      "(connectives in signature order, rows odometer, last argument fastest)";
  std::size_t budget = opts.cap;

  IndependenceOptions vo;
  vo.instance_depth = opts.instance_depth;
  vo.prop_var_limit = opts.prop_var_limit;

  for (int size = 1; size <= opts.max_size; ++size) {
    for (int dmask = 0; dmask < (1 << size); ++dmask) {
      Matrix mx;
      mx.size = size;
      mx.name = "search" + std::to_string(size);
      for (int v = 0; v < size; ++v)
        if (dmask >> v & 1) mx.designated.insert(v);

      // Flat cell vector spanning all connective tables.
      std::vector<int> arities;
      std::size_t cells = 0;
      for (const auto& conn : c.sig.connectives) {
        std::size_t rows = 1;
        for (int i = 0; i < conn.arity; ++i) rows *= static_cast<std::size_t>(size);
        arities.push_back(static_cast<int>(rows));
        cells += rows;
      }
      std::vector<int> cell(cells, 0);
      while (true) {
        ++res.candidates;
        if (budget == 0) throw ResourceCapExceeded("matrix search exceeds its budget");
        --budget;
        mx.tables.clear();
        std::size_t off = 0;
        for (std::size_t ci = 0; ci < c.sig.connectives.size(); ++ci) {
          MatrixTable t;
          t.arity = c.sig.connectives[ci].arity;
          t.values.assign(cell.begin() + off, cell.begin() + off + arities[ci]);
          off += arities[ci];
          mx.tables[c.sig.connectives[ci].name] = std::move(t);
        }

        bool sound = true;
        for (const auto& ax : c.axioms)
          if (!axiom_tuple_filter(ax, mx, budget)) {
            sound = false;
            break;
          }
        if (sound)
          for (const auto& r : c.rules)
            if (!designation_rule_check(r, mx).ok) {
              sound = false;
              break;
            }
        if (sound) {
          // Target must fail under some valuation.
          std::vector<int> props;
          for (int i = 1; i <= 32; ++i)
            if (target.prop_mask() >> (i - 1) & 1) props.push_back(i);
          std::vector<int> pv(props.size(), 0);
          bool refuted = false;
          while (true) {
            std::map<int, int> valuation;
            for (std::size_t i = 0; i < props.size(); ++i) valuation[props[i]] = pv[i];
            if (!mx.is_designated(eval_matrix(mx, target, valuation))) {
              refuted = true;
              break;
            }
            std::size_t k = props.size();
            while (k > 0 && ++pv[k - 1] == size) pv[--k] = 0;
            if (k == 0) break;
          }
          if (refuted) {
            IndependenceReport check = verify_independence(c, mx, target, vo);
            if (check.independent()) {
              res.found = true;
              res.matrix = mx;
              return res;
            }
          }
        }

        std::size_t k = cell.size();
        while (k > 0 && ++cell[k - 1] == size) cell[--k] = 0;
        if (k == 0) break;
      }
    }
  }
  return res;
}

ModelSearchResult search_generalized_model(const Calculus& c, const Formula& target,
                                           const ModelSearchOptions& opts) {
  c.validate();
  if (target.is_schematic() || !target.well_formed(c.sig))
    throw SignatureMismatch("target is not a concrete formula over the calculus signature");
  auto imp_arity = c.sig.connective_arity("->");
  if (!c.sig.connective_arity("~") || !imp_arity || *imp_arity != 2 ||
      !c.sig.has_quantifier("exists"))
    throw SignatureMismatch("model search expects primitives ~, -> and exists");

  Domain d;
  d.elements = {"u", "v"};
  d.distinguished = 0;
  Subset full = d.full();

  ModelSearchResult res;
  res.strategy = opts.enumerate_imp
                     ? "->: pointwise classical seed, then modus-ponens-preserving tables "
                       "ascending up to the cap"
                     : "->: pointwise classical seed only";
  std::size_t budget = opts.cap;

  // Candidate -> tables, seed first.
  std::vector<OpTable> imps;
  imps.push_back(standard_connective_table(d, "->", 2));
  if (opts.enumerate_imp) {
    // Cells ascending, skipping tables breaking "designated premises give a
    // designated conclusion" for modus ponens at value level.
    std::vector<std::vector<Subset>> keys;
    for (Subset x = 0; x <= full; ++x)
      for (Subset y = 0; y <= full; ++y) keys.push_back({x, y});
    std::vector<Subset> cells(keys.size(), 0);
    while (imps.size() < opts.imp_cap + 1) {
      bool ok = true;
      for (std::size_t i = 0; i < keys.size() && ok; ++i) {
        Subset x = keys[i][0], value = cells[i];
        bool x_des = (x >> d.distinguished) & 1;
        bool v_des = (value >> d.distinguished) & 1;
        bool y_des = (keys[i][1] >> d.distinguished) & 1;
        if (x_des && v_des && !y_des) ok = false;
      }
      if (ok) {
        OpTable t;
        t.primitive = "->";
        t.arity = 2;
        for (std::size_t i = 0; i < keys.size(); ++i) t.rows[keys[i]] = cells[i];
        if (!(t == imps.front())) imps.push_back(std::move(t));
      }
      std::size_t k = cells.size();
      while (k > 0 && ++cells[k - 1] > full) cells[--k] = 0;
      if (k == 0) break;
    }
  }

  std::set<Subset> designated;
  for (Subset s = 0; s <= full; ++s)
    if (s >> d.distinguished & 1) designated.insert(s);

  IndependenceOptions vo;
  vo.semantics = GModelSemantics::Value;
  vo.instance_depth = opts.instance_depth;
  vo.ind_var_limit = opts.ind_var_limit;

  std::size_t npred = c.sig.predicates.size();
  std::size_t pred_combos = 1;
  for (std::size_t i = 0; i < npred; ++i) pred_combos *= full + 1;

  for (Subset neg_code = 0; neg_code < 256; ++neg_code) {
    for (Subset ex_code = 0; ex_code < 256; ++ex_code) {
      for (const auto& imp : imps) {
        ++res.candidates;
        GeneralizedModel m;
        m.name = "search2";
        m.domain = d;
        m.designated = designated;
        OpTable neg, ex;
        neg.primitive = "~";
        neg.arity = 1;
        ex.primitive = "exists";
        ex.arity = 1;
        for (Subset x = 0; x <= full; ++x) {
          neg.rows[{x}] = (neg_code >> (2 * x)) & 3;
          ex.rows[{x}] = (ex_code >> (2 * x)) & 3;
        }
        m.tables["~"] = std::move(neg);
        m.tables["exists"] = std::move(ex);
        m.tables["->"] = imp;
        for (const auto& p : c.sig.predicates) m.pred_interp[p] = 0;

        bool sound = true;
        for (const auto& ax : c.axioms)
          if (!axiom_tuple_filter(ax, m, budget)) {
            sound = false;
            break;
          }
        if (sound)
          for (const auto& r : c.rules) {
            if (budget < 256) throw ResourceCapExceeded("model search exceeds its budget");
            budget -= 256;
            if (!designation_rule_check(r, m).ok) {
              sound = false;
              break;
            }
          }
        if (!sound) continue;

        // Predicate interpretations only matter for the target.
        for (std::size_t combo = 0; combo < pred_combos; ++combo) {
          std::size_t rest = combo;
          for (const auto& p : c.sig.predicates) {
            m.pred_interp[p] = static_cast<Subset>(rest % (full + 1));
            rest /= full + 1;
          }
          if (budget == 0) throw ResourceCapExceeded("model search exceeds its budget");
          --budget;
          if (m.is_designated(value_1var(m, target))) continue;
          IndependenceReport check = verify_independence(c, m, target, vo);
          if (check.independent()) {
            res.found = true;
            res.model = m;
            return res;
          }
        }
      }
    }
  }
  return res;
}

}  // namespace transax
