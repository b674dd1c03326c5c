#include "transax/schema.hpp"

#include <algorithm>

#include "transax/errors.hpp"

namespace transax {

std::string SideCondition::to_string() const {
  switch (kind) {
    case Kind::NotFreeIn: return var_meta + " not free in " + formula_meta;
    case Kind::Closed: return "closed " + formula_meta;
  }
  return {};
}

void collect_metas(const Formula& tmpl, std::vector<std::string>& formula_metas,
                   std::vector<std::string>& var_metas) {
  switch (tmpl.kind()) {
    case Formula::Kind::Meta:
      formula_metas.push_back(tmpl.name());
      return;
    case Formula::Kind::Quant:
      if (tmpl.has_meta_binder()) var_metas.push_back(tmpl.binder_meta());
      collect_metas(tmpl.child(0), formula_metas, var_metas);
      return;
    case Formula::Kind::Conn:
      for (const auto& c : tmpl.children()) collect_metas(c, formula_metas, var_metas);
      return;
    default:
      return;
  }
}

namespace {

std::vector<std::string> sorted_unique(std::vector<std::string> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

std::vector<std::string> Schema::formula_metas() const {
  std::vector<std::string> fm, vm;
  collect_metas(tmpl, fm, vm);
  return sorted_unique(std::move(fm));
}

std::vector<std::string> Schema::var_metas() const {
  std::vector<std::string> fm, vm;
  collect_metas(tmpl, fm, vm);
  return sorted_unique(std::move(vm));
}

void Schema::validate(const Signature& sig) const {
  if (!tmpl.well_formed(sig))
    throw SignatureMismatch("schema " + name + " uses symbols outside the signature");
  auto fm = formula_metas();
  auto vm = var_metas();
  for (const auto& c : conditions) {
    if (!std::binary_search(fm.begin(), fm.end(), c.formula_meta))
      throw SignatureMismatch("schema " + name + ": side condition mentions unknown metavariable " +
                              c.formula_meta);
    if (c.kind == SideCondition::Kind::NotFreeIn &&
        !std::binary_search(vm.begin(), vm.end(), c.var_meta))
      throw SignatureMismatch("schema " + name +
                              ": side condition mentions unknown variable metavariable " +
                              c.var_meta);
  }
}

namespace {

Formula substitute_rec(const Formula& tmpl, const Binding& b, bool require_complete) {
  switch (tmpl.kind()) {
    case Formula::Kind::Prop:
    case Formula::Kind::Atom:
      return tmpl;
    case Formula::Kind::Meta: {
      auto it = b.formulas.find(tmpl.name());
      if (it == b.formulas.end()) {
        if (require_complete)
          throw IncompleteBinding("no binding for metavariable " + tmpl.name());
        return tmpl;
      }
      return it->second;
    }
    case Formula::Kind::Quant: {
      Formula body = substitute_rec(tmpl.child(0), b, require_complete);
      if (tmpl.has_meta_binder()) {
        auto it = b.variables.find(tmpl.binder_meta());
        if (it == b.variables.end()) {
          if (require_complete)
            throw IncompleteBinding("no binding for variable metavariable " +
                                    tmpl.binder_meta());
          return Formula::quant_meta(tmpl.name(), tmpl.binder_meta(), std::move(body));
        }
        return Formula::quant(tmpl.name(), it->second, std::move(body));
      }
      return Formula::quant(tmpl.name(), tmpl.var(), std::move(body));
    }
    case Formula::Kind::Conn: {
      std::vector<Formula> children;
      children.reserve(tmpl.children().size());
      for (const auto& c : tmpl.children())
        children.push_back(substitute_rec(c, b, require_complete));
      return Formula::conn(tmpl.name(), std::move(children));
    }
  }
  throw Error("unreachable");
}

}  // namespace

bool check_conditions(const std::vector<SideCondition>& conditions, const Binding& b) {
  for (const auto& c : conditions) {
    auto f = b.formulas.find(c.formula_meta);
    if (f == b.formulas.end())
      throw IncompleteBinding("side condition mentions unbound metavariable " +
                              c.formula_meta);
    if (f->second.is_schematic())
      throw IncompleteBinding("side condition on a non-concrete formula for " +
                              c.formula_meta);
    switch (c.kind) {
      case SideCondition::Kind::Closed:
        if (f->second.free_mask() != 0) return false;
        break;
      case SideCondition::Kind::NotFreeIn: {
        auto v = b.variables.find(c.var_meta);
        if (v == b.variables.end())
          throw IncompleteBinding("side condition mentions unbound variable metavariable " +
                                  c.var_meta);
        if (f->second.free_mask() & (1u << (v->second - 1))) return false;
        break;
      }
    }
  }
  return true;
}

Formula instantiate(const Schema& s, const Binding& b) {
  if (!check_conditions(s.conditions, b))
    throw SideConditionViolated("schema " + s.name + ": side condition violated");
  return substitute_rec(s.tmpl, b, /*require_complete=*/true);
}

Formula substitute(const Formula& tmpl, const Binding& b) {
  return substitute_rec(tmpl, b, /*require_complete=*/false);
}

namespace {

bool match_rec(const Formula& tmpl, const Formula& f, Binding& b) {
  switch (tmpl.kind()) {
    case Formula::Kind::Meta: {
      auto [it, inserted] = b.formulas.try_emplace(tmpl.name(), f);
      return inserted || it->second == f;
    }
    case Formula::Kind::Prop:
      return f.kind() == Formula::Kind::Prop && f.var() == tmpl.var();
    case Formula::Kind::Atom:
      return f.kind() == Formula::Kind::Atom && f.name() == tmpl.name() &&
             f.var() == tmpl.var();
    case Formula::Kind::Quant: {
      if (f.kind() != Formula::Kind::Quant || f.name() != tmpl.name()) return false;
      if (f.has_meta_binder()) return false;  // only concrete formulas are matched
      if (tmpl.has_meta_binder()) {
        auto [it, inserted] = b.variables.try_emplace(tmpl.binder_meta(), f.var());
        if (!inserted && it->second != f.var()) return false;
      } else if (tmpl.var() != f.var()) {
        return false;
      }
      return match_rec(tmpl.child(0), f.child(0), b);
    }
    case Formula::Kind::Conn: {
      if (f.kind() != Formula::Kind::Conn || f.name() != tmpl.name() ||
          f.arity() != tmpl.arity())
        return false;
      for (int i = 0; i < tmpl.arity(); ++i)
        if (!match_rec(tmpl.child(i), f.child(i), b)) return false;
      return true;
    }
  }
  return false;
}

}  // namespace

std::optional<Binding> match_schema(const Formula& f, const Schema& s) {
  Binding b;
  if (!match_rec(s.tmpl, f, b)) return std::nullopt;
  if (!check_conditions(s.conditions, b)) return std::nullopt;
  return b;
}

namespace {

void meta_occ_depths(const Formula& tmpl, const std::string& m, int depth,
                     std::optional<int>& min_d, std::optional<int>& max_d) {
  switch (tmpl.kind()) {
    case Formula::Kind::Meta:
      if (tmpl.name() == m) {
        if (!min_d || depth < *min_d) min_d = depth;
        if (!max_d || depth > *max_d) max_d = depth;
      }
      return;
    case Formula::Kind::Quant:
      meta_occ_depths(tmpl.child(0), m, depth + 1, min_d, max_d);
      return;
    case Formula::Kind::Conn:
      for (const auto& c : tmpl.children()) meta_occ_depths(c, m, depth + 1, min_d, max_d);
      return;
    default:
      return;
  }
}

}  // namespace

std::optional<int> min_meta_occurrence_depth(const Formula& tmpl, const std::string& m) {
  std::optional<int> min_d, max_d;
  meta_occ_depths(tmpl, m, 0, min_d, max_d);
  return min_d;
}

std::optional<int> max_meta_occurrence_depth(const Formula& tmpl, const std::string& m) {
  std::optional<int> min_d, max_d;
  meta_occ_depths(tmpl, m, 0, min_d, max_d);
  return max_d;
}

}  // namespace transax
