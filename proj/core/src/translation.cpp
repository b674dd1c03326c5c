#include "transax/translation.hpp"

#include <unordered_map>
#include <unordered_set>

#include "transax/errors.hpp"

namespace transax {

namespace {

// Placeholders allowed in a defining template: $1..$arity, plus $v binders
// for quantifier templates.
void check_template(const Formula& tmpl, const Signature& target, int arity,
                    bool quantifier, const std::string& owner) {
  switch (tmpl.kind()) {
    case Formula::Kind::Meta: {
      const std::string& n = tmpl.name();
      if (n.size() < 2 || n[0] != '$')
        throw SignatureMismatch("template for " + owner + " uses non-placeholder metavariable " + n);
      int k = 0;
      for (std::size_t i = 1; i < n.size(); ++i) {
        if (n[i] < '0' || n[i] > '9')
          throw SignatureMismatch("template for " + owner + " uses invalid placeholder " + n);
        k = k * 10 + (n[i] - '0');
      }
      if (k < 1 || k > arity)
        throw SignatureMismatch("template for " + owner + " uses out-of-range placeholder " + n);
      return;
    }
    case Formula::Kind::Quant:
      if (!target.has_quantifier(tmpl.name()))
        throw SignatureMismatch("template for " + owner + " uses unknown quantifier " + tmpl.name());
      if (tmpl.has_meta_binder() && (tmpl.binder_meta() != "$v" || !quantifier))
        throw SignatureMismatch("template for " + owner + " uses invalid binder " +
                                tmpl.binder_meta());
      check_template(tmpl.child(0), target, arity, quantifier, owner);
      return;
    case Formula::Kind::Conn: {
      auto a = target.connective_arity(tmpl.name());
      if (!a || *a != tmpl.arity())
        throw SignatureMismatch("template for " + owner + " uses unknown connective " + tmpl.name());
      for (const auto& c : tmpl.children())
        check_template(c, target, arity, quantifier, owner);
      return;
    }
    case Formula::Kind::Atom:
      if (!target.has_predicate(tmpl.name()))
        throw SignatureMismatch("template for " + owner + " uses unknown predicate " + tmpl.name());
      return;
    case Formula::Kind::Prop:
      return;
  }
}

// A quantifier template must bind $v exactly once over the subtree holding $1.
void check_quant_binder(const Formula& tmpl, const std::string& owner) {
  std::vector<std::string> fm, vm;
  collect_metas(tmpl, fm, vm);
  int binders = 0;
  for (const auto& v : vm)
    if (v == "$v") ++binders;
  if (binders != 1)
    throw SignatureMismatch("template for quantifier " + owner +
                            " must bind $v exactly once");
}

}  // namespace

void Translation::validate() const {
  source.validate();
  target.validate();
  if (source.predicates != target.predicates)
    throw SignatureMismatch("translation " + name + ": predicate families must coincide");
  for (const auto& c : source.connectives) {
    auto it = connective_defs.find(c.name);
    if (it == connective_defs.end())
      throw SignatureMismatch("translation " + name + ": no template for connective " + c.name);
    check_template(it->second, target, c.arity, false, c.name);
  }
  for (const auto& q : source.quantifiers) {
    auto it = quantifier_defs.find(q);
    if (it == quantifier_defs.end())
      throw SignatureMismatch("translation " + name + ": no template for quantifier " + q);
    check_template(it->second, target, 1, true, q);
    check_quant_binder(it->second, q);
  }
  for (const auto& [name_, _] : connective_defs)
    if (!source.connective_arity(name_))
      throw SignatureMismatch("translation " + name + ": template for unknown connective " + name_);
  for (const auto& [name_, _] : quantifier_defs)
    if (!source.has_quantifier(name_))
      throw SignatureMismatch("translation " + name + ": template for unknown quantifier " + name_);
}

namespace {

// Replaces the $v binder left by a quantifier template with the schema's own
// variable metavariable.
Formula rebind(const Formula& f, const std::string& var_meta) {
  switch (f.kind()) {
    case Formula::Kind::Prop:
    case Formula::Kind::Atom:
    case Formula::Kind::Meta:
      return f;
    case Formula::Kind::Quant: {
      Formula body = rebind(f.child(0), var_meta);
      if (f.has_meta_binder() && f.binder_meta() == "$v")
        return Formula::quant_meta(f.name(), var_meta, std::move(body));
      if (f.has_meta_binder())
        return Formula::quant_meta(f.name(), f.binder_meta(), std::move(body));
      return Formula::quant(f.name(), f.var(), std::move(body));
    }
    case Formula::Kind::Conn: {
      std::vector<Formula> children;
      children.reserve(f.children().size());
      for (const auto& c : f.children()) children.push_back(rebind(c, var_meta));
      return Formula::conn(f.name(), std::move(children));
    }
  }
  throw Error("unreachable");
}

}  // namespace

Formula translate(const Translation& t, const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Prop:
    case Formula::Kind::Atom:
    case Formula::Kind::Meta:
      return f;
    case Formula::Kind::Conn: {
      auto it = t.connective_defs.find(f.name());
      if (it == t.connective_defs.end())
        throw SignatureMismatch("translation " + t.name + " has no template for connective " +
                                f.name());
      Binding b;
      for (int i = 0; i < f.arity(); ++i)
        b.formulas["$" + std::to_string(i + 1)] = translate(t, f.child(i));
      return substitute(it->second, b);
    }
    case Formula::Kind::Quant: {
      auto it = t.quantifier_defs.find(f.name());
      if (it == t.quantifier_defs.end())
        throw SignatureMismatch("translation " + t.name + " has no template for quantifier " +
                                f.name());
      Binding b;
      b.formulas["$1"] = translate(t, f.child(0));
      if (f.has_meta_binder()) {
        // Schema template: keep the variable metavariable in binder position.
        Formula body = substitute(it->second, b);
        return rebind(body, f.binder_meta());
      }
      b.variables["$v"] = f.var();
      return substitute(it->second, b);
    }
  }
  throw Error("unreachable");
}

Schema translate_schema(const Translation& t, const Schema& s) {
  Schema out;
  out.name = s.name;
  out.tmpl = translate(t, s.tmpl);
  out.conditions = s.conditions;
  return out;
}

namespace {

// True when every defining template has depth >= 1, i.e. translation never
// shrinks formula depth and the image to target depth d is covered by source
// formulas to depth d.
bool depth_monotone(const Translation& t) {
  for (const auto& [_, tmpl] : t.connective_defs)
    if (tmpl.depth() == 0) return false;
  for (const auto& [_, tmpl] : t.quantifier_defs)
    if (tmpl.depth() == 0) return false;
  return true;
}

}  // namespace

SurjectivityResult surjective_up_to(const Translation& t, int depth,
                                    const DiagnosticOptions& opts) {
  t.validate();
  SurjectivityResult res;
  res.depth = depth;
  int source_depth = opts.source_search_depth;
  if (source_depth < 0) source_depth = depth_monotone(t) ? depth : depth + 2;
  res.source_search_depth = source_depth;

  EnumOptions eo;
  eo.ind_var_limit = opts.ind_var_limit;
  eo.prop_var_limit = opts.prop_var_limit;
  eo.cap = opts.cap;

  eo.max_depth = source_depth;
  std::unordered_set<Formula> image;
  for (const auto& f : enumerate_formulas(t.source, eo)) {
    Formula g = translate(t, f);
    if (g.depth() <= depth) image.insert(std::move(g));
  }

  eo.max_depth = depth;
  for (const auto& g : enumerate_formulas(t.target, eo)) {
    if (!image.contains(g)) {
      res.surjective = false;
      res.witness = g;
      return res;
    }
  }
  res.surjective = true;
  return res;
}

InjectivityResult injective_up_to(const Translation& t, int depth,
                                  const DiagnosticOptions& opts) {
  t.validate();
  InjectivityResult res;
  res.depth = depth;
  EnumOptions eo;
  eo.max_depth = depth;
  eo.ind_var_limit = opts.ind_var_limit;
  eo.prop_var_limit = opts.prop_var_limit;
  eo.cap = opts.cap;
  std::unordered_map<Formula, Formula> seen;  // image -> first preimage
  for (const auto& f : enumerate_formulas(t.source, eo)) {
    Formula g = translate(t, f);
    auto [it, inserted] = seen.try_emplace(std::move(g), f);
    if (!inserted) {
      res.injective = false;
      res.witness = std::make_pair(it->second, f);
      return res;
    }
  }
  res.injective = true;
  return res;
}

}  // namespace transax
