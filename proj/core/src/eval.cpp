#include "transax/eval.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <set>
#include <thread>

#include "transax/errors.hpp"

namespace transax {

Subset value_1var(const GeneralizedModel& m, const Formula& f) {
  if (f.is_schematic()) throw SemanticsMismatch("value of a schematic formula");
  switch (f.kind()) {
    case Formula::Kind::Prop:
      throw MissingInterpretation("no interpretation for propositional variable " +
                                  prop_var_name(f.var()));
    case Formula::Kind::Atom: {
      if (f.var() != 1)
        throw VariableLimitExceeded("one-variable evaluation saw " + ind_var_name(f.var()));
      auto it = m.pred_interp.find(f.name());
      if (it == m.pred_interp.end())
        throw MissingInterpretation("no interpretation for predicate " + f.name());
      return it->second;
    }
    case Formula::Kind::Conn: {
      std::vector<Subset> args;
      args.reserve(f.children().size());
      for (const auto& c : f.children()) args.push_back(value_1var(m, c));
      return m.table(f.name()).apply(args);
    }
    case Formula::Kind::Quant: {
      if (f.var() != 1)
        throw VariableLimitExceeded("one-variable evaluation saw " + ind_var_name(f.var()));
      return m.table(f.name()).apply({value_1var(m, f.child(0))});
    }
    case Formula::Kind::Meta:
      break;
  }
  throw SemanticsMismatch("value of a schematic formula");
}

OpTable compose_forall(const GeneralizedModel& m) {
  const OpTable& neg = m.table("~");
  const OpTable& ex = m.table("exists");
  OpTable t;
  t.primitive = "forall";
  t.arity = 1;
  for (Subset x = 0; x <= m.domain.full(); ++x)
    t.rows[{x}] = neg.apply({ex.apply({neg.apply({x})})});
  return t;
}

namespace {

// Expression over subset literals for the printed reduction chain.
struct ChainNode {
  bool literal = false;
  Subset value = 0;
  std::string op;
  std::vector<ChainNode> children;
};

ChainNode chain_from(const GeneralizedModel& m, const Formula& f) {
  ChainNode node;
  switch (f.kind()) {
    case Formula::Kind::Atom: {
      auto it = m.pred_interp.find(f.name());
      if (it == m.pred_interp.end())
        throw MissingInterpretation("no interpretation for predicate " + f.name());
      node.literal = true;
      node.value = it->second;
      return node;
    }
    case Formula::Kind::Conn:
    case Formula::Kind::Quant: {
      if (f.kind() == Formula::Kind::Quant && f.var() != 1)
        throw VariableLimitExceeded("one-variable evaluation saw " + ind_var_name(f.var()));
      node.op = f.name();
      for (const auto& c : f.children()) node.children.push_back(chain_from(m, c));
      return node;
    }
    default:
      throw SemanticsMismatch("no value chain for this formula");
  }
}

void print_chain(const GeneralizedModel& m, const ChainNode& n, std::string& out) {
  if (n.literal) {
    out += subset_to_string(m.domain, n.value);
    return;
  }
  out += n.op + "(";
  for (std::size_t i = 0; i < n.children.size(); ++i) {
    if (i) out += ", ";
    print_chain(m, n.children[i], out);
  }
  out += ")";
}

// One parallel innermost step; false when already a literal everywhere.
bool reduce_chain(const GeneralizedModel& m, ChainNode& n) {
  if (n.literal) return false;
  bool all_literal = true;
  for (const auto& c : n.children)
    if (!c.literal) all_literal = false;
  if (all_literal) {
    std::vector<Subset> args;
    for (const auto& c : n.children) args.push_back(c.value);
    n.value = m.table(n.op).apply(args);
    n.literal = true;
    n.children.clear();
    n.op.clear();
    return true;
  }
  bool changed = false;
  for (auto& c : n.children) changed = reduce_chain(m, c) || changed;
  return changed;
}

}  // namespace

std::string evaluation_chain(const GeneralizedModel& m, const Formula& f) {
  if (f.is_schematic()) throw SemanticsMismatch("value of a schematic formula");
  value_1var(m, f);  // variable and table checks
  ChainNode root = chain_from(m, f);
  std::string out;
  print_chain(m, root, out);
  out += "\n";
  while (reduce_chain(m, root)) {
    out += "= ";
    print_chain(m, root, out);
    out += "\n";
  }
  return out;
}

namespace {

// Throws for uncovered free variables; true when every covered one is the
// distinguished element.
bool all_distinguished(const GeneralizedModel& m, const Formula& f,
                       const std::map<int, int>& asg) {
  bool all = true;
  for (int v : f.free_vars()) {
    auto it = asg.find(v);
    if (it == asg.end()) throw UnboundVariable("no assignment for " + ind_var_name(v));
    if (it->second != m.domain.distinguished) all = false;
  }
  return all;
}

std::map<int, int> distinguished_assignment(const GeneralizedModel& m, const Formula& f) {
  std::map<int, int> a;
  for (int v : f.free_vars()) a[v] = m.domain.distinguished;
  return a;
}

}  // namespace

bool eval_star(const GeneralizedModel& m, const Formula& f,
               const std::map<int, int>& assignment, const StarOptions& opts) {
  if (f.is_schematic()) throw SemanticsMismatch("starred satisfaction of a schematic formula");
  switch (f.kind()) {
    case Formula::Kind::Prop:
      throw SemanticsMismatch("starred satisfaction is over predicate formulas");
    case Formula::Kind::Atom: {
      auto p = m.pred_interp.find(f.name());
      if (p == m.pred_interp.end())
        throw MissingInterpretation("no interpretation for predicate " + f.name());
      auto it = assignment.find(f.var());
      if (it == assignment.end())
        throw UnboundVariable("no assignment for " + ind_var_name(f.var()));
      return p->second >> it->second & 1;
    }
    case Formula::Kind::Conn: {
      if (f.name() == "~")
        return all_distinguished(m, f, assignment) &&
               !eval_star(m, f.child(0), distinguished_assignment(m, f.child(0)), opts);
      if (f.name() == "->")
        return !eval_star(m, f.child(0), assignment, opts) ||
               eval_star(m, f.child(1), assignment, opts);
      throw SemanticsMismatch("starred satisfaction handles ~ and -> only; saw " + f.name());
    }
    case Formula::Kind::Quant: {
      if (f.name() == "exists") {
        for (int b = 0; b < m.domain.size(); ++b) {
          std::map<int, int> a2 = assignment;
          a2[f.var()] = b;
          if (eval_star(m, f.child(0), a2, opts)) return true;
        }
        return false;
      }
      if (f.name() == "forall") {
        if (!opts.primitive_forall)
          throw SemanticsMismatch("primitive forall disabled for starred satisfaction");
        return all_distinguished(m, f, assignment) &&
               eval_star(m, f.child(0), distinguished_assignment(m, f.child(0)), opts);
      }
      throw SemanticsMismatch("starred satisfaction handles exists and forall only; saw " +
                              f.name());
    }
    case Formula::Kind::Meta:
      break;
  }
  throw SemanticsMismatch("starred satisfaction of a schematic formula");
}

bool true_star(const GeneralizedModel& m, const Formula& f, const StarOptions& opts) {
  return eval_star(m, f, distinguished_assignment(m, f), opts);
}

int eval_matrix(const Matrix& mx, const Formula& f, const std::map<int, int>& valuation) {
  if (f.is_schematic()) throw SemanticsMismatch("matrix value of a schematic formula");
  switch (f.kind()) {
    case Formula::Kind::Prop: {
      auto it = valuation.find(f.var());
      if (it == valuation.end())
        throw UnboundVariable("no value for " + prop_var_name(f.var()));
      if (it->second < 0 || it->second >= mx.size)
        throw SemanticsMismatch("valuation outside the matrix");
      return it->second;
    }
    case Formula::Kind::Conn: {
      std::vector<int> args;
      args.reserve(f.children().size());
      for (const auto& c : f.children()) args.push_back(eval_matrix(mx, c, valuation));
      return mx.apply(f.name(), args);
    }
    default:
      throw SemanticsMismatch("matrix evaluation is propositional");
  }
}

namespace {

void collect_letters(const Formula& f, std::set<std::string>& preds, std::set<int>& props) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      preds.insert(f.name());
      return;
    case Formula::Kind::Prop:
      props.insert(f.var());
      return;
    default:
      for (const auto& c : f.children()) collect_letters(c, preds, props);
  }
}

struct ClassicalInterp {
  int n = 1;
  std::map<std::string, Subset> preds;
  std::map<int, int> props;
};

bool eval_classical(const Formula& f, const ClassicalInterp& ci, std::map<int, int>& asg) {
  switch (f.kind()) {
    case Formula::Kind::Prop:
      return ci.props.at(f.var()) != 0;
    case Formula::Kind::Atom: {
      auto it = asg.find(f.var());
      if (it == asg.end()) throw UnboundVariable("no assignment for " + ind_var_name(f.var()));
      return ci.preds.at(f.name()) >> it->second & 1;
    }
    case Formula::Kind::Conn: {
      const std::string& name = f.name();
      if (name == "~") return !eval_classical(f.child(0), ci, asg);
      if (name == "->")
        return !eval_classical(f.child(0), ci, asg) || eval_classical(f.child(1), ci, asg);
      if (name == "/\\")
        return eval_classical(f.child(0), ci, asg) && eval_classical(f.child(1), ci, asg);
      if (name == "\\/")
        return eval_classical(f.child(0), ci, asg) || eval_classical(f.child(1), ci, asg);
      throw MissingInterpretation("no classical reading of connective " + name);
    }
    case Formula::Kind::Quant: {
      bool is_forall = f.name() == "forall";
      if (!is_forall && f.name() != "exists")
        throw MissingInterpretation("no classical reading of quantifier " + f.name());
      auto it = asg.find(f.var());
      std::optional<int> saved;
      if (it != asg.end()) saved = it->second;
      bool result = is_forall;
      for (int b = 0; b < ci.n; ++b) {
        asg[f.var()] = b;
        bool r = eval_classical(f.child(0), ci, asg);
        if (is_forall && !r) {
          result = false;
          break;
        }
        if (!is_forall && r) {
          result = true;
          break;
        }
      }
      if (saved)
        asg[f.var()] = *saved;
      else
        asg.erase(f.var());
      return result;
    }
    case Formula::Kind::Meta:
      break;
  }
  throw SemanticsMismatch("classical value of a schematic formula");
}

}  // namespace

ValidityResult classically_valid(const Formula& f, const ValidityOptions& opts) {
  if (f.is_schematic()) throw SemanticsMismatch("classical validity of a schematic formula");
  std::set<std::string> pred_set;
  std::set<int> prop_set;
  collect_letters(f, pred_set, prop_set);
  std::vector<std::string> preds(pred_set.begin(), pred_set.end());
  std::vector<int> props(prop_set.begin(), prop_set.end());
  std::vector<int> free = f.free_vars();

  int bound = opts.max_domain;
  if (bound <= 0) {
    if (preds.size() > 20) throw ResourceCapExceeded("too many predicates for the monadic bound");
    bound = 1 << preds.size();
  }

  ValidityResult res;
  res.valid = true;
  res.max_domain_used = bound;

  std::size_t spent = 0;
  for (int n = 1; n <= bound; ++n) {
    std::size_t interp_bits =
        static_cast<std::size_t>(n) * preds.size() + props.size();
    if (interp_bits > 40) throw ResourceCapExceeded("interpretation space too large");
    std::size_t total = std::size_t{1} << interp_bits;
    std::size_t assignments = 1;
    for (std::size_t i = 0; i < free.size(); ++i) {
      if (assignments > opts.cap / static_cast<std::size_t>(n))
        throw ResourceCapExceeded("assignment space too large");
      assignments *= static_cast<std::size_t>(n);
    }
    if (total > (opts.cap - spent) / std::max<std::size_t>(assignments, 1))
      throw ResourceCapExceeded("validity check exceeds the evaluation budget");
    spent += total * assignments;

    // Interpretation index layout: low bits give propositional values, then n
    // bits per predicate, in sorted order. Smallest failing index wins so the
    // countermodel is worker-count independent.
    auto check_range = [&](std::size_t lo, std::size_t hi,
                           std::optional<std::pair<std::size_t, std::map<int, int>>>& found) {
      for (std::size_t idx = lo; idx < hi; ++idx) {
        ClassicalInterp ci;
        ci.n = n;
        std::size_t rest = idx;
        for (int p : props) {
          ci.props[p] = static_cast<int>(rest & 1);
          rest >>= 1;
        }
        for (const auto& name : preds) {
          ci.preds[name] = static_cast<Subset>(rest & ((std::size_t{1} << n) - 1));
          rest >>= n;
        }
        std::map<int, int> asg;
        std::vector<int> vals(free.size(), 0);
        while (true) {
          for (std::size_t i = 0; i < free.size(); ++i) asg[free[i]] = vals[i];
          if (!eval_classical(f, ci, asg)) {
            found = {idx, asg};
            return;
          }
          std::size_t k = free.size();
          while (k > 0 && ++vals[k - 1] == n) vals[--k] = 0;
          if (k == 0 && !free.empty()) break;
          if (free.empty()) break;
        }
      }
    };

    int workers = std::max(1, opts.workers);
    std::optional<std::pair<std::size_t, std::map<int, int>>> best;
    if (workers == 1 || total < 1024) {
      check_range(0, total, best);
    } else {
      std::vector<std::optional<std::pair<std::size_t, std::map<int, int>>>> results(workers);
      std::vector<std::thread> threads;
      std::size_t chunk = (total + workers - 1) / workers;
      for (int w = 0; w < workers; ++w) {
        std::size_t lo = std::min(total, static_cast<std::size_t>(w) * chunk);
        std::size_t hi = std::min(total, lo + chunk);
        threads.emplace_back([&, lo, hi, w] { check_range(lo, hi, results[w]); });
      }
      for (auto& t : threads) t.join();
      for (const auto& r : results)
        if (r && (!best || r->first < best->first)) best = r;
    }

    if (best) {
      res.valid = false;
      Countermodel cm;
      cm.domain_size = n;
      std::size_t rest = best->first;
      for (int p : props) {
        cm.prop_interp[p] = static_cast<int>(rest & 1);
        rest >>= 1;
      }
      for (const auto& name : preds) {
        cm.pred_interp[name] = static_cast<Subset>(rest & ((std::size_t{1} << n) - 1));
        rest >>= n;
      }
      cm.assignment = best->second;
      res.countermodel = std::move(cm);
      return res;
    }
  }
  return res;
}

}  // namespace transax
