#include "transax/fixtures.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "transax/errors.hpp"
#include "transax/parser.hpp"

namespace transax {

namespace {

using json = nlohmann::json;

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

// Comma split ignoring commas nested in open/close pairs.
std::vector<std::string> split_top_commas(const std::string& s, char open, char close) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c: s) {
    if (c == open) ++depth;
    if (c == close) --depth;
    if (c == ',' && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!trim(cur).empty() || !out.empty()) out.push_back(trim(cur));
  return out;
}

struct Line {
  int no;
  std::string text;
};

std::vector<Line> logical_lines(const std::string& text) {
  std::vector<Line> out;
  int no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    std::string raw = text.substr(start, end == std::string::npos ? end : end - start);
    ++no;
    if (auto h = raw.find('#'); h != std::string::npos) raw = raw.substr(0, h);
    raw = trim(raw);
    if (!raw.empty()) out.push_back({no, raw});
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return out;
}

[[noreturn]] void fail(int line_no, const std::string& msg) {
  throw FixtureError("line " + std::to_string(line_no) + ": " + msg);
}

// Leading keyword plus the rest of the line.
std::pair<std::string, std::string> keyword_of(const std::string& text) {
  std::size_t i = 0;
  while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  return {text.substr(0, i), trim(text.substr(i))};
}

// "NAME: BODY" for axiom/rule entries.
std::pair<std::string, std::string> named_body(const Line& ln, const std::string& rest) {
  std::size_t colon = rest.find(':');
  if (colon == std::string::npos) fail(ln.no, "expected 'NAME: ...'");
  std::string name = trim(rest.substr(0, colon));
  std::string body = trim(rest.substr(colon + 1));
  if (name.empty()) fail(ln.no, "missing name before ':'");
  if (body.empty()) fail(ln.no, "missing body after ':'");
  return {name, body};
}

struct Annotations {
  std::vector<SideCondition> conditions;
  std::vector<std::string> fresh;
};

// Strips trailing "[...]" groups. Formula text never contains brackets, so a
// reverse scan for '[' is unambiguous.
std::string strip_annotations(const Line& ln, std::string body, Annotations& out,
                              bool allow_fresh) {
  std::vector<std::string> groups;
  while (true) {
    body = trim(body);
    if (body.empty() || body.back() != ']') break;
    std::size_t open = body.rfind('[');
    if (open == std::string::npos) fail(ln.no, "']' without matching '['");
    groups.push_back(trim(body.substr(open + 1, body.size() - open - 2)));
    body = body.substr(0, open);
  }
  // Reverse scan collected them right to left.
  for (auto it = groups.rbegin(); it != groups.rend(); ++it) {
    std::string g = *it;
    for (char& c: g)
      if (c == ',') c = ' ';
    auto toks = split_ws(g);
    if (toks.empty()) fail(ln.no, "empty '[]' annotation");
    if (toks[0] == "fresh") {
      if (!allow_fresh) fail(ln.no, "'fresh' applies only to rules");
      if (toks.size() < 2) fail(ln.no, "'fresh' needs at least one metavariable");
      out.fresh.insert(out.fresh.end(), toks.begin() + 1, toks.end());
    } else if (toks[0] == "closed" && toks.size() == 2) {
      out.conditions.push_back({SideCondition::Kind::Closed, "", toks[1]});
    } else if (toks.size() == 5 && toks[1] == "not" && toks[2] == "free" && toks[3] == "in") {
      out.conditions.push_back({SideCondition::Kind::NotFreeIn, toks[0], toks[4]});
    } else {
      fail(ln.no, "unrecognized annotation '[" + *it + "]'");
    }
  }
  return trim(body);
}

void parse_connective_list(const Line& ln, const std::string& rest,
                           std::vector<Connective>& out) {
  if (rest.empty()) return;
  for (const auto& item: split_top_commas(rest, '(', ')')) {
    auto toks = split_ws(item);
    if (toks.size() != 2) fail(ln.no, "expected 'NAME ARITY' in connective list");
    try {
      out.push_back({toks[0], std::stoi(toks[1])});
    } catch (const std::exception&) {
      fail(ln.no, "bad arity '" + toks[1] + "'");
    }
  }
}

Formula parse_or_fail(const Line& ln, const std::string& text, const Signature& sig,
                      ParseMode mode) {
  try {
    return parse_formula(text, sig, mode);
  } catch (const ParseError& e) {
    fail(ln.no, std::string(e.what()));
  }
}

std::string condition_suffix(const std::vector<SideCondition>& conds) {
  std::string out;
  for (const auto& c: conds) out += " [" + c.to_string() + "]";
  return out;
}

// Subset literals of a row, e.g. "{u,v} {}" -> two tokens.
std::vector<std::string> brace_tokens(const Line& ln, const std::string& s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    if (std::isspace(static_cast<unsigned char>(s[i]))) {
      ++i;
      continue;
    }
    if (s[i] != '{') fail(ln.no, "expected a '{...}' subset literal");
    std::size_t close = s.find('}', i);
    if (close == std::string::npos) fail(ln.no, "unterminated subset literal");
    out.push_back(s.substr(i, close - i + 1));
    i = close + 1;
  }
  return out;
}

int int_of(const Line& ln, const std::string& tok) {
  try {
    std::size_t used = 0;
    int v = std::stoi(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    fail(ln.no, "expected an integer, got '" + tok + "'");
  }
}

json binding_to_json(const Binding& b) {
  json j;
  j["formulas"] = json::object();
  for (const auto& [m, f]: b.formulas) j["formulas"][m] = f.to_string();
  j["variables"] = json::object();
  for (const auto& [m, v]: b.variables) j["variables"][m] = v;
  return j;
}

Binding binding_from_json(const json& j, const Signature& sig) {
  Binding b;
  if (j.contains("formulas"))
    for (const auto& [m, text]: j.at("formulas").items())
      b.formulas[m] = parse_formula(text.get<std::string>(), sig);
  if (j.contains("variables"))
    for (const auto& [m, v]: j.at("variables").items()) b.variables[m] = v.get<int>();
  return b;
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FixtureError("cannot open '" + path + "'");
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FixtureError("cannot write '" + path + "'");
  out << content;
  if (!out) throw FixtureError("write to '" + path + "' failed");
}

Calculus parse_calculus_text(const std::string& text) {
  Calculus c;
  bool saw_name = false;
  bool sig_frozen = false;
  for (const auto& ln: logical_lines(text)) {
    auto [kw, rest] = keyword_of(ln.text);
    if (kw == "calculus") {
      if (saw_name) fail(ln.no, "duplicate 'calculus' line");
      if (rest.empty()) fail(ln.no, "missing calculus name");
      c.name = rest;
      saw_name = true;
    } else if (kw == "predicates" || kw == "connectives" || kw == "quantifiers") {
      if (sig_frozen) fail(ln.no, "signature lines must precede axioms and rules");
      if (kw == "connectives")
        parse_connective_list(ln, rest, c.sig.connectives);
      else if (kw == "predicates")
        for (const auto& p: split_ws(rest)) c.sig.predicates.push_back(p);
      else
        for (const auto& q: split_ws(rest)) c.sig.quantifiers.push_back(q);
    } else if (kw == "generalized_axioms") {
      if (rest == "true")
        c.generalized_axioms = true;
      else if (rest == "false")
        c.generalized_axioms = false;
      else
        fail(ln.no, "expected 'true' or 'false'");
    } else if (kw == "axiom") {
      sig_frozen = true;
      auto [name, body] = named_body(ln, rest);
      Annotations ann;
      body = strip_annotations(ln, body, ann, false);
      Schema s;
      s.name = name;
      s.tmpl = parse_or_fail(ln, body, c.sig, ParseMode::Schematic);
      s.conditions = std::move(ann.conditions);
      c.axioms.push_back(std::move(s));
    } else if (kw == "rule") {
      sig_frozen = true;
      auto [name, body] = named_body(ln, rest);
      Annotations ann;
      body = strip_annotations(ln, body, ann, true);
      std::size_t arrow = std::string::npos;
      int depth = 0;
      for (std::size_t i = 0; i + 1 < body.size(); ++i) {
        if (body[i] == '(') ++depth;
        if (body[i] == ')') --depth;
        if (depth == 0 && body[i] == '=' && body[i + 1] == '>') {
          arrow = i;
          break;
        }
      }
      if (arrow == std::string::npos) fail(ln.no, "rule needs '=>'");
      Rule r;
      r.name = name;
      for (const auto& prem: split_top_commas(body.substr(0, arrow), '(', ')')) {
        if (prem.empty()) fail(ln.no, "empty premise");
        r.premises.push_back(parse_or_fail(ln, prem, c.sig, ParseMode::Schematic));
      }
      r.conclusion = parse_or_fail(ln, trim(body.substr(arrow + 2)), c.sig,
                                   ParseMode::Schematic);
      r.conditions = std::move(ann.conditions);
      r.fresh = std::move(ann.fresh);
      c.rules.push_back(std::move(r));
    } else {
      fail(ln.no, "unknown directive '" + kw + "'");
    }
  }
  if (!saw_name) throw FixtureError("missing 'calculus NAME' line");
  c.validate();
  return c;
}

Calculus load_calculus(const std::string& path) {
  try {
    return parse_calculus_text(read_file(path));
  } catch (const FixtureError& e) {
    throw FixtureError(path + ": " + e.what());
  }
}

std::string calculus_to_text(const Calculus& c) {
  std::ostringstream out;
  out << "calculus " << c.name << "\n";
  out << "predicates";
  for (const auto& p: c.sig.predicates) out << " " << p;
  out << "\nconnectives ";
  for (std::size_t i = 0; i < c.sig.connectives.size(); ++i) {
    if (i) out << ", ";
    out << c.sig.connectives[i].name << " " << c.sig.connectives[i].arity;
  }
  out << "\nquantifiers";
  for (const auto& q: c.sig.quantifiers) out << " " << q;
  out << "\ngeneralized_axioms " << (c.generalized_axioms ? "true" : "false") << "\n";
  for (const auto& a: c.axioms)
    out << "axiom " << a.name << ": " << a.tmpl.to_string()
        << condition_suffix(a.conditions) << "\n";
  for (const auto& r: c.rules) {
    out << "rule " << r.name << ": ";
    for (std::size_t i = 0; i < r.premises.size(); ++i) {
      if (i) out << ", ";
      out << r.premises[i].to_string();
    }
    out << " => " << r.conclusion.to_string() << condition_suffix(r.conditions);
    if (!r.fresh.empty()) {
      out << " [fresh";
      for (std::size_t i = 0; i < r.fresh.size(); ++i)
        out << (i ? ", " : " ") << r.fresh[i];
      out << "]";
    }
    out << "\n";
  }
  return out.str();
}

Translation parse_translation_text(const std::string& text) {
  Translation t;
  bool saw_name = false;
  struct PendingMap {
    Line ln;
    bool quantifier;
    std::string name;
    std::string tmpl;
  };
  std::vector<PendingMap> maps;  // parsed once the target signature is complete
  for (const auto& ln: logical_lines(text)) {
    auto [kw, rest] = keyword_of(ln.text);
    if (kw == "translation") {
      if (saw_name) fail(ln.no, "duplicate 'translation' line");
      if (rest.empty()) fail(ln.no, "missing translation name");
      t.name = rest;
      saw_name = true;
    } else if (kw == "source" || kw == "target") {
      Signature& sig = (kw == "source") ? t.source : t.target;
      auto [sub, items] = keyword_of(rest);
      if (sub == "predicates")
        for (const auto& p: split_ws(items)) sig.predicates.push_back(p);
      else if (sub == "connectives")
        parse_connective_list(ln, items, sig.connectives);
      else if (sub == "quantifiers")
        for (const auto& q: split_ws(items)) sig.quantifiers.push_back(q);
      else
        fail(ln.no, "expected 'predicates', 'connectives' or 'quantifiers'");
    } else if (kw == "map") {
      auto [kind, decl] = keyword_of(rest);
      if (kind != "conn" && kind != "quant") fail(ln.no, "expected 'map conn' or 'map quant'");
      std::size_t def = decl.find(":=");
      if (def == std::string::npos) fail(ln.no, "expected 'NAME := TEMPLATE'");
      std::string name = trim(decl.substr(0, def));
      std::string tmpl = trim(decl.substr(def + 2));
      if (name.empty() || tmpl.empty()) fail(ln.no, "expected 'NAME := TEMPLATE'");
      maps.push_back({ln, kind == "quant", name, tmpl});
    } else {
      fail(ln.no, "unknown directive '" + kw + "'");
    }
  }
  if (!saw_name) throw FixtureError("missing 'translation NAME' line");
  for (const auto& m: maps) {
    Formula f = parse_or_fail(m.ln, m.tmpl, t.target, ParseMode::Template);
    if (m.quantifier)
      t.quantifier_defs[m.name] = f;
    else
      t.connective_defs[m.name] = f;
  }
  t.validate();
  return t;
}

Translation load_translation(const std::string& path) {
  try {
    return parse_translation_text(read_file(path));
  } catch (const FixtureError& e) {
    throw FixtureError(path + ": " + e.what());
  }
}

std::string translation_to_text(const Translation& t) {
  std::ostringstream out;
  out << "translation " << t.name << "\n";
  auto emit_sig = [&](const char* side, const Signature& sig) {
    out << side << " predicates";
    for (const auto& p: sig.predicates) out << " " << p;
    out << "\n" << side << " connectives ";
    for (std::size_t i = 0; i < sig.connectives.size(); ++i) {
      if (i) out << ", ";
      out << sig.connectives[i].name << " " << sig.connectives[i].arity;
    }
    out << "\n" << side << " quantifiers";
    for (const auto& q: sig.quantifiers) out << " " << q;
    out << "\n";
  };
  emit_sig("source", t.source);
  emit_sig("target", t.target);
  for (const auto& [name, tmpl]: t.connective_defs)
    out << "map conn " << name << " := " << tmpl.to_string() << "\n";
  for (const auto& [name, tmpl]: t.quantifier_defs)
    out << "map quant " << name << " := " << tmpl.to_string() << "\n";
  return out.str();
}

GeneralizedModel parse_gmodel_text(const std::string& text) {
  GeneralizedModel m;
  bool saw_name = false;
  bool saw_domain = false;
  auto lines = logical_lines(text);
  std::size_t i = 0;
  auto need_domain = [&](const Line& ln) {
    if (!saw_domain) fail(ln.no, "'domain' line must come first");
  };
  while (i < lines.size()) {
    const Line& ln = lines[i];
    auto [kw, rest] = keyword_of(ln.text);
    if (kw == "model") {
      if (saw_name) fail(ln.no, "duplicate 'model' line");
      if (rest.empty()) fail(ln.no, "missing model name");
      m.name = rest;
      saw_name = true;
      ++i;
    } else if (kw == "domain") {
      if (saw_domain) fail(ln.no, "duplicate 'domain' line");
      auto toks = split_ws(rest);
      auto kwpos = std::find(toks.begin(), toks.end(), "distinguished");
      if (kwpos == toks.end() || kwpos + 1 != toks.end() - 1 || kwpos == toks.begin())
        fail(ln.no, "expected 'domain ELEMENTS... distinguished ELEMENT'");
      m.domain.elements.assign(toks.begin(), kwpos);
      auto idx = std::find(m.domain.elements.begin(), m.domain.elements.end(), toks.back());
      if (idx == m.domain.elements.end())
        fail(ln.no, "distinguished element '" + toks.back() + "' not in the domain");
      m.domain.distinguished = static_cast<int>(idx - m.domain.elements.begin());
      saw_domain = true;
      ++i;
    } else if (kw == "designated") {
      need_domain(ln);
      for (const auto& item: split_top_commas(rest, '{', '}')) {
        try {
          m.designated.insert(parse_subset(m.domain, item));
        } catch (const Error& e) {
          fail(ln.no, e.what());
        }
      }
      ++i;
    } else if (kw == "pred") {
      need_domain(ln);
      std::size_t def = rest.find(":=");
      if (def == std::string::npos) fail(ln.no, "expected 'pred NAME := SUBSET'");
      std::string name = trim(rest.substr(0, def));
      try {
        m.pred_interp[name] = parse_subset(m.domain, trim(rest.substr(def + 2)));
      } catch (const Error& e) {
        fail(ln.no, e.what());
      }
      ++i;
    } else if (kw == "table") {
      need_domain(ln);
      auto toks = split_ws(rest);
      if (toks.size() != 2) fail(ln.no, "expected 'table NAME ARITY'");
      OpTable tab;
      tab.primitive = toks[0];
      tab.arity = int_of(ln, toks[1]);
      ++i;
      bool closed = false;
      while (i < lines.size()) {
        const Line& row = lines[i];
        if (row.text == "end") {
          closed = true;
          ++i;
          break;
        }
        std::size_t colon = row.text.find(':');
        if (colon == std::string::npos) fail(row.no, "expected 'ARGS : VALUE' or 'end'");
        std::vector<Subset> args;
        try {
          for (const auto& a: brace_tokens(row, row.text.substr(0, colon)))
            args.push_back(parse_subset(m.domain, a));
          Subset value = parse_subset(m.domain, trim(row.text.substr(colon + 1)));
          if (static_cast<int>(args.size()) != tab.arity)
            fail(row.no, "row arity does not match the table");
          if (!tab.rows.emplace(std::move(args), value).second)
            fail(row.no, "duplicate row");
        } catch (const Error& e) {
          fail(row.no, e.what());
        }
        ++i;
      }
      if (!closed) fail(lines.back().no, "table without 'end'");
      m.tables[tab.primitive] = std::move(tab);
    } else {
      fail(ln.no, "unknown directive '" + kw + "'");
    }
  }
  if (!saw_name) throw FixtureError("missing 'model NAME' line");
  if (!saw_domain) throw FixtureError("missing 'domain' line");
  m.validate();
  return m;
}

GeneralizedModel load_gmodel(const std::string& path) {
  try {
    return parse_gmodel_text(read_file(path));
  } catch (const FixtureError& e) {
    throw FixtureError(path + ": " + e.what());
  }
}

std::string gmodel_to_text(const GeneralizedModel& m) {
  std::ostringstream out;
  out << "model " << m.name << "\n";
  out << "domain";
  for (const auto& e: m.domain.elements) out << " " << e;
  out << " distinguished " << m.domain.elements[m.domain.distinguished] << "\n";
  out << "designated ";
  bool first = true;
  for (Subset s: m.designated) {
    if (!first) out << ", ";
    out << subset_to_string(m.domain, s);
    first = false;
  }
  out << "\n";
  for (const auto& [name, s]: m.pred_interp)
    out << "pred " << name << " := " << subset_to_string(m.domain, s) << "\n";
  for (const auto& [name, tab]: m.tables) {
    out << "table " << name << " " << tab.arity << "\n";
    for (const auto& [args, value]: tab.rows) {
      for (const auto& a: args) out << subset_to_string(m.domain, a) << " ";
      out << ": " << subset_to_string(m.domain, value) << "\n";
    }
    out << "end\n";
  }
  return out.str();
}

Matrix parse_matrix_text(const std::string& text) {
  Matrix m;
  m.size = 0;
  bool saw_name = false;
  auto lines = logical_lines(text);
  std::size_t i = 0;
  while (i < lines.size()) {
    const Line& ln = lines[i];
    auto [kw, rest] = keyword_of(ln.text);
    if (kw == "matrix") {
      if (saw_name) fail(ln.no, "duplicate 'matrix' line");
      if (rest.empty()) fail(ln.no, "missing matrix name");
      m.name = rest;
      saw_name = true;
      ++i;
    } else if (kw == "values") {
      m.size = int_of(ln, rest);
      ++i;
    } else if (kw == "designated") {
      for (const auto& tok: split_ws(rest)) m.designated.insert(int_of(ln, tok));
      ++i;
    } else if (kw == "table") {
      if (m.size <= 0) fail(ln.no, "'values' line must precede tables");
      auto toks = split_ws(rest);
      if (toks.size() != 2) fail(ln.no, "expected 'table NAME ARITY'");
      MatrixTable tab;
      tab.arity = int_of(ln, toks[1]);
      std::size_t cells = 1;
      for (int k = 0; k < tab.arity; ++k) cells *= static_cast<std::size_t>(m.size);
      tab.values.assign(cells, -1);
      ++i;
      bool closed = false;
      while (i < lines.size()) {
        const Line& row = lines[i];
        if (row.text == "end") {
          closed = true;
          ++i;
          break;
        }
        std::size_t colon = row.text.find(':');
        if (colon == std::string::npos) fail(row.no, "expected 'ARGS : VALUE' or 'end'");
        auto args = split_ws(row.text.substr(0, colon));
        if (static_cast<int>(args.size()) != tab.arity)
          fail(row.no, "row arity does not match the table");
        std::size_t index = 0;
        for (const auto& a: args) {
          int v = int_of(row, a);
          if (v < 0 || v >= m.size) fail(row.no, "value out of range");
          index = index * static_cast<std::size_t>(m.size) + static_cast<std::size_t>(v);
        }
        int value = int_of(row, trim(row.text.substr(colon + 1)));
        if (value < 0 || value >= m.size) fail(row.no, "value out of range");
        if (tab.values[index] != -1) fail(row.no, "duplicate row");
        tab.values[index] = value;
        ++i;
      }
      if (!closed) fail(lines.back().no, "table without 'end'");
      for (int v: tab.values)
        if (v == -1) fail(ln.no, "table '" + toks[0] + "' is missing rows");
      m.tables[toks[0]] = std::move(tab);
    } else {
      fail(ln.no, "unknown directive '" + kw + "'");
    }
  }
  if (!saw_name) throw FixtureError("missing 'matrix NAME' line");
  m.validate();
  return m;
}

Matrix load_matrix(const std::string& path) {
  try {
    return parse_matrix_text(read_file(path));
  } catch (const FixtureError& e) {
    throw FixtureError(path + ": " + e.what());
  }
}

std::string matrix_to_text(const Matrix& m) {
  std::ostringstream out;
  out << "matrix " << m.name << "\n";
  out << "values " << m.size << "\n";
  out << "designated";
  for (int v: m.designated) out << " " << v;
  out << "\n";
  for (const auto& [name, tab]: m.tables) {
    out << "table " << name << " " << tab.arity << "\n";
    for (std::size_t index = 0; index < tab.values.size(); ++index) {
      std::size_t rem = index;
      std::vector<int> args(tab.arity);
      for (int k = tab.arity - 1; k >= 0; --k) {
        args[k] = static_cast<int>(rem % m.size);
        rem /= m.size;
      }
      for (int a: args) out << a << " ";
      out << ": " << tab.values[index] << "\n";
    }
    out << "end\n";
  }
  return out.str();
}

Formula parse_formula_file_text(const std::string& text, const Signature& sig) {
  auto lines = logical_lines(text);
  if (lines.empty()) throw FixtureError("no formula found");
  if (lines.size() > 1) fail(lines[1].no, "expected a single formula");
  return parse_or_fail(lines[0], lines[0].text, sig, ParseMode::Concrete);
}

Formula load_formula(const std::string& path, const Signature& sig) {
  try {
    return parse_formula_file_text(read_file(path), sig);
  } catch (const FixtureError& e) {
    throw FixtureError(path + ": " + e.what());
  }
}

Signature infer_signature(const std::string& formula_text) {
  Signature sig;
  sig.connectives = {{"~", 1}, {"->", 2}, {"/\\", 2}, {"\\/", 2}};
  sig.quantifiers = {"exists", "forall"};
  std::set<std::string> preds, consts;
  std::size_t i = 0;
  while (i < formula_text.size()) {
    char c = formula_text[i];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < formula_text.size() &&
             (std::isalnum(static_cast<unsigned char>(formula_text[j])) ||
              formula_text[j] == '_'))
        ++j;
      std::string ident = formula_text.substr(i, j - i);
      i = j;
      if (ident == "exists" || ident == "forall") continue;
      if (var_index(ident, 'x') || var_index(ident, 'p')) continue;
      if (std::isupper(static_cast<unsigned char>(ident[0])))
        preds.insert(ident);
      else
        consts.insert(ident);
    } else {
      ++i;
    }
  }
  sig.predicates.assign(preds.begin(), preds.end());
  for (const auto& c: consts) sig.connectives.push_back({c, 0});
  return sig;
}

std::string proof_to_json(const Proof& p) {
  json steps = json::array();
  for (const auto& step: p.steps) {
    json js;
    js["formula"] = step.formula.to_string();
    if (const auto* ax = std::get_if<AxiomJust>(&step.just)) {
      js["axiom"] = ax->axiom;
      js["binding"] = binding_to_json(ax->binding);
      js["gen_vars"] = ax->gen_vars;
    } else {
      const auto& r = std::get<RuleJust>(step.just);
      js["rule"] = r.rule;
      js["premises"] = r.premises;
      js["binding"] = binding_to_json(r.binding);
    }
    steps.push_back(std::move(js));
  }
  json j;
  j["steps"] = std::move(steps);
  return j.dump(2) + "\n";
}

Proof proof_from_json(const std::string& text, const Signature& sig) {
  Proof p;
  try {
    json j = json::parse(text);
    for (const auto& js: j.at("steps")) {
      ProofStep step;
      step.formula = parse_formula(js.at("formula").get<std::string>(), sig);
      if (js.contains("axiom")) {
        AxiomJust ax;
        ax.axiom = js.at("axiom").get<std::string>();
        if (js.contains("binding")) ax.binding = binding_from_json(js.at("binding"), sig);
        if (js.contains("gen_vars")) ax.gen_vars = js.at("gen_vars").get<std::vector<int>>();
        step.just = std::move(ax);
      } else {
        RuleJust r;
        r.rule = js.at("rule").get<std::string>();
        r.premises = js.at("premises").get<std::vector<int>>();
        if (js.contains("binding")) r.binding = binding_from_json(js.at("binding"), sig);
        step.just = std::move(r);
      }
      p.steps.push_back(std::move(step));
    }
  } catch (const json::exception& e) {
    throw FixtureError(std::string("bad proof JSON: ") + e.what());
  } catch (const ParseError& e) {
    throw FixtureError(std::string("bad formula in proof JSON: ") + e.what());
  }
  return p;
}

std::string gmodel_to_json(const GeneralizedModel& m) {
  json j;
  j["name"] = m.name;
  j["domain"]["elements"] = m.domain.elements;
  j["domain"]["distinguished"] = m.domain.elements[m.domain.distinguished];
  j["designated"] = json::array();
  for (Subset s: m.designated) j["designated"].push_back(subset_to_string(m.domain, s));
  j["predicates"] = json::object();
  for (const auto& [name, s]: m.pred_interp)
    j["predicates"][name] = subset_to_string(m.domain, s);
  j["tables"] = json::object();
  for (const auto& [name, tab]: m.tables) {
    json jt;
    jt["arity"] = tab.arity;
    jt["rows"] = json::array();
    for (const auto& [args, value]: tab.rows) {
      json row;
      row["args"] = json::array();
      for (Subset a: args) row["args"].push_back(subset_to_string(m.domain, a));
      row["value"] = subset_to_string(m.domain, value);
      jt["rows"].push_back(std::move(row));
    }
    j["tables"][name] = std::move(jt);
  }
  return j.dump(2) + "\n";
}

GeneralizedModel gmodel_from_json(const std::string& text) {
  GeneralizedModel m;
  try {
    json j = json::parse(text);
    m.name = j.at("name").get<std::string>();
    m.domain.elements = j.at("domain").at("elements").get<std::vector<std::string>>();
    auto dist = j.at("domain").at("distinguished").get<std::string>();
    auto idx = m.domain.element_index(dist);
    if (!idx) throw FixtureError("distinguished element '" + dist + "' not in the domain");
    m.domain.distinguished = *idx;
    for (const auto& s: j.at("designated"))
      m.designated.insert(parse_subset(m.domain, s.get<std::string>()));
    if (j.contains("predicates"))
      for (const auto& [name, s]: j.at("predicates").items())
        m.pred_interp[name] = parse_subset(m.domain, s.get<std::string>());
    for (const auto& [name, jt]: j.at("tables").items()) {
      OpTable tab;
      tab.primitive = name;
      tab.arity = jt.at("arity").get<int>();
      for (const auto& row: jt.at("rows")) {
        std::vector<Subset> args;
        for (const auto& a: row.at("args"))
          args.push_back(parse_subset(m.domain, a.get<std::string>()));
        tab.rows[args] = parse_subset(m.domain, row.at("value").get<std::string>());
      }
      m.tables[name] = std::move(tab);
    }
  } catch (const json::exception& e) {
    throw FixtureError(std::string("bad model JSON: ") + e.what());
  }
  m.validate();
  return m;
}

std::string matrix_to_json(const Matrix& m) {
  json j;
  j["name"] = m.name;
  j["values"] = m.size;
  j["designated"] = m.designated;
  j["tables"] = json::object();
  for (const auto& [name, tab]: m.tables) {
    j["tables"][name]["arity"] = tab.arity;
    j["tables"][name]["values"] = tab.values;
  }
  return j.dump(2) + "\n";
}

Matrix matrix_from_json(const std::string& text) {
  Matrix m;
  try {
    json j = json::parse(text);
    m.name = j.at("name").get<std::string>();
    m.size = j.at("values").get<int>();
    for (int v: j.at("designated")) m.designated.insert(v);
    for (const auto& [name, jt]: j.at("tables").items()) {
      MatrixTable tab;
      tab.arity = jt.at("arity").get<int>();
      tab.values = jt.at("values").get<std::vector<int>>();
      m.tables[name] = std::move(tab);
    }
  } catch (const json::exception& e) {
    throw FixtureError(std::string("bad matrix JSON: ") + e.what());
  }
  m.validate();
  return m;
}

}  // namespace transax
