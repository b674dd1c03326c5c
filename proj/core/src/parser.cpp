#include "transax/parser.hpp"

#include <cctype>

#include "transax/errors.hpp"

namespace transax {

namespace {

enum class Tok { End, Tilde, AndOp, OrOp, Arrow, LParen, RParen, Dot, Comma, Ident, Placeholder };

struct Token {
  Tok kind;
  std::string text;
  int pos;  // 1-based
};

class Lexer {
 public:
  explicit Lexer(const std::string& text): text_(text) {}

  Token next() {
    while (i_ < text_.size() && (text_[i_] == ' ' || text_[i_] == '\t')) ++i_;
    int pos = static_cast<int>(i_) + 1;
    if (i_ >= text_.size()) return {Tok::End, "", pos};
    char c = text_[i_];
    switch (c) {
      case '~': ++i_; return {Tok::Tilde, "~", pos};
      case '(': ++i_; return {Tok::LParen, "(", pos};
      case ')': ++i_; return {Tok::RParen, ")", pos};
      case '.': ++i_; return {Tok::Dot, ".", pos};
      case ',': ++i_; return {Tok::Comma, ",", pos};
      case '-':
        if (i_ + 1 < text_.size() && text_[i_ + 1] == '>') {
          i_ += 2;
          return {Tok::Arrow, "->", pos};
        }
        throw ParseError("lexical error: stray '-'", pos);
      case '/':
        if (i_ + 1 < text_.size() && text_[i_ + 1] == '\\') {
          i_ += 2;
          return {Tok::AndOp, "/\\", pos};
        }
        throw ParseError("lexical error: stray '/'", pos);
      case '\\':
        if (i_ + 1 < text_.size() && text_[i_ + 1] == '/') {
          i_ += 2;
          return {Tok::OrOp, "\\/", pos};
        }
        throw ParseError("lexical error: stray '\\'", pos);
      case '$': {
        std::size_t j = i_ + 1;
        while (j < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[j]))))
          ++j;
        std::string t = text_.substr(i_, j - i_);
        i_ = j;
        if (t.size() < 2) throw ParseError("lexical error: bare '$'", pos);
        return {Tok::Placeholder, t, pos};
      }
      default:
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
          std::size_t j = i_;
          while (j < text_.size() &&
                 (std::isalnum(static_cast<unsigned char>(text_[j])) || text_[j] == '_'))
            ++j;
          std::string t = text_.substr(i_, j - i_);
          i_ = j;
          return {Tok::Ident, t, pos};
        }
        throw ParseError(std::string("lexical error: unexpected character '") + c + "'", pos);
    }
  }

 private:
  const std::string& text_;
  std::size_t i_ = 0;
};

class Parser {
 public:
  Parser(const std::string& text, const Signature& sig, ParseMode mode):
    lexer_(text), sig_(sig), mode_(mode) {
    advance();
  }

  Formula run() {
    Formula f = parse_implication();
    expect(Tok::End, "end of input");
    return f;
  }

 private:
  void advance() { tok_ = lexer_.next(); }

  void expect(Tok kind, const char* what) {
    if (tok_.kind != kind)
      throw ParseError(std::string("expected ") + what + ", got '" + tok_.text + "'", tok_.pos);
  }

  Formula parse_implication() {
    Formula left = parse_disjunction();
    if (tok_.kind == Tok::Arrow) {
      advance();
      Formula right = parse_implication();
      return Formula::conn("->", {std::move(left), std::move(right)});
    }
    return left;
  }

  Formula parse_disjunction() {
    Formula left = parse_conjunction();
    while (tok_.kind == Tok::OrOp) {
      advance();
      Formula right = parse_conjunction();
      left = Formula::conn("\\/", {std::move(left), std::move(right)});
    }
    return left;
  }

  Formula parse_conjunction() {
    Formula left = parse_unary();
    while (tok_.kind == Tok::AndOp) {
      advance();
      Formula right = parse_unary();
      left = Formula::conn("/\\", {std::move(left), std::move(right)});
    }
    return left;
  }

  Formula parse_unary() {
    if (tok_.kind == Tok::Tilde) {
      int pos = tok_.pos;
      advance();
      if (!sig_.connective_arity("~"))
        throw ParseError("unknown symbol '~' (not in signature)", pos);
      return Formula::conn("~", {parse_unary()});
    }
    if (tok_.kind == Tok::Ident && sig_.has_quantifier(tok_.text))
      return parse_quantifier();
    return parse_primary();
  }

  Formula parse_quantifier() {
    std::string qname = tok_.text;
    advance();
    Token binder = tok_;
    bool meta_binder = false;
    int var = 0;
    std::string meta_name;
    if (binder.kind == Tok::Placeholder && mode_ == ParseMode::Template &&
        binder.text == "$v") {
      meta_binder = true;
      meta_name = "$v";
    } else if (binder.kind == Tok::Ident) {
      if (auto idx = var_index(binder.text, 'x')) {
        var = *idx;
      } else if (mode_ != ParseMode::Concrete && is_var_meta_name(binder.text)) {
        meta_binder = true;
        meta_name = binder.text;
      } else {
        throw ParseError("expected a bound variable after '" + qname + "'", binder.pos);
      }
    } else {
      throw ParseError("expected a bound variable after '" + qname + "'", binder.pos);
    }
    advance();
    expect(Tok::Dot, "'.' after bound variable");
    advance();
    Formula body = parse_implication();  // scope extends maximally right
    if (meta_binder) return Formula::quant_meta(qname, meta_name, std::move(body));
    return Formula::quant(qname, var, std::move(body));
  }

  Formula parse_primary() {
    switch (tok_.kind) {
      case Tok::LParen: {
        advance();
        Formula f = parse_implication();
        expect(Tok::RParen, "')'");
        advance();
        return f;
      }
      case Tok::Placeholder: {
        if (mode_ != ParseMode::Template)
          throw ParseError("placeholder '" + tok_.text + "' outside a template", tok_.pos);
        if (tok_.text == "$v")
          throw ParseError("'$v' is only valid as a bound variable", tok_.pos);
        Formula f = Formula::meta(tok_.text);
        advance();
        return f;
      }
      case Tok::Ident:
        return parse_ident();
      default:
        throw ParseError("expected a formula, got '" + tok_.text + "'", tok_.pos);
    }
  }

  Formula parse_ident() {
    Token id = tok_;
    advance();
    if (tok_.kind == Tok::LParen) return parse_application(id);
    if (auto idx = var_index(id.text, 'p')) return Formula::prop(*idx);
    if (auto idx = var_index(id.text, 'x'))
      throw ParseError("individual variable '" + id.text + "' cannot stand alone", id.pos);
    if (auto arity = sig_.connective_arity(id.text)) {
      if (*arity != 0)
        throw ParseError("arity mismatch: connective '" + id.text + "' expects " +
                             std::to_string(*arity) + " arguments",
                         id.pos);
      return Formula::conn(id.text, {});
    }
    if (sig_.has_predicate(id.text))
      throw ParseError("arity mismatch: predicate '" + id.text + "' expects an argument",
                       id.pos);
    if (mode_ != ParseMode::Concrete && !id.text.empty() &&
        std::isupper(static_cast<unsigned char>(id.text[0])))
      return Formula::meta(id.text);
    throw ParseError("unknown symbol '" + id.text + "'", id.pos);
  }

  Formula parse_application(const Token& id) {
    advance();  // consume '('
    if (sig_.has_predicate(id.text)) {
      Token arg = tok_;
      if (arg.kind != Tok::Ident)
        throw ParseError("expected a variable argument for predicate '" + id.text + "'",
                         arg.pos);
      auto idx = var_index(arg.text, 'x');
      if (!idx)
        throw ParseError("expected an individual variable, got '" + arg.text + "'", arg.pos);
      advance();
      expect(Tok::RParen, "')'");
      advance();
      return Formula::atom(id.text, *idx);
    }
    if (auto arity = sig_.connective_arity(id.text)) {
      std::vector<Formula> args;
      if (*arity == 0)
        throw ParseError("arity mismatch: connective '" + id.text + "' takes no arguments",
                         id.pos);
      while (true) {
        args.push_back(parse_implication());
        if (tok_.kind == Tok::Comma) {
          advance();
          continue;
        }
        break;
      }
      expect(Tok::RParen, "')'");
      advance();
      if (static_cast<int>(args.size()) != *arity)
        throw ParseError("arity mismatch: connective '" + id.text + "' expects " +
                             std::to_string(*arity) + " arguments, got " +
                             std::to_string(args.size()),
                         id.pos);
      return Formula::conn(id.text, std::move(args));
    }
    throw ParseError("unknown symbol '" + id.text + "'", id.pos);
  }

  bool is_var_meta_name(const std::string& t) const {
    if (t.empty() || !std::islower(static_cast<unsigned char>(t[0]))) return false;
    if (var_index(t, 'x') || var_index(t, 'p')) return false;
    if (sig_.has_quantifier(t) || sig_.has_predicate(t) || sig_.connective_arity(t))
      return false;
    return true;
  }

  Lexer lexer_;
  const Signature& sig_;
  ParseMode mode_;
  Token tok_;
};

}  // namespace

Formula parse_formula(const std::string& text, const Signature& sig, ParseMode mode) {
  return Parser(text, sig, mode).run();
}

}  // namespace transax
