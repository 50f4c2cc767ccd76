#include "occurlab/parser.hpp"

#include <cctype>
#include <map>
#include <optional>
#include <sstream>

namespace occurlab {

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

namespace {

enum class Tok { Var, Name, Number, LParen, RParen, LBracket, RBracket, Bar, Comma, Dot, Neck, Equals, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    skip_space();
    const std::size_t line = line_;
    const std::size_t col = col_;
    if (pos_ >= src_.size()) return {Tok::End, "", line, col};
    const char c = src_[pos_];
    auto single = [&](Tok k) {
      advance();
      return Token{k, std::string(1, c), line, col};
    };
    if (std::isupper(static_cast<unsigned char>(c)) || c == '_') {
      return {Tok::Var, ident(), line, col};
    }
    if (std::islower(static_cast<unsigned char>(c))) return {Tok::Name, ident(), line, col};
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string digits;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        digits += src_[pos_];
        advance();
      }
      return {Tok::Number, digits, line, col};
    }
    if (c == '\'') return {Tok::Name, quoted(line, col), line, col};
    switch (c) {
      case '(': return single(Tok::LParen);
      case ')': return single(Tok::RParen);
      case '[': return single(Tok::LBracket);
      case ']': return single(Tok::RBracket);
      case '|': return single(Tok::Bar);
      case ',': return single(Tok::Comma);
      case '.': return single(Tok::Dot);
      case '=': return single(Tok::Equals);
      case ':':
        if (pos_ + 1 < src_.size() && src_[pos_ + 1] == '-') {
          advance();
          advance();
          return {Tok::Neck, ":-", line, col};
        }
        break;
      default: break;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", line, col);
  }

 private:
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == '%') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  std::string ident() {
    std::string out;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
      out += src_[pos_];
      advance();
    }
    return out;
  }

  std::string quoted(std::size_t line, std::size_t col) {
    advance();  // opening quote
    std::string out;
    while (true) {
      if (pos_ >= src_.size()) throw ParseError("unterminated quoted atom", line, col);
      const char c = src_[pos_];
      advance();
      if (c == '\'') {
        if (pos_ < src_.size() && src_[pos_] == '\'') {
          out += '\'';
          advance();
          continue;
        }
        return out;
      }
      if (c == '\\' && pos_ < src_.size()) {
        out += src_[pos_];
        advance();
        continue;
      }
      out += c;
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

class Parser {
 public:
  Parser(std::string_view src, NameSupply& supply, ParseOptions options)
      : lexer_(src), supply_(supply), options_(options) {
    tok_ = lexer_.next();
  }

  Program program() {
    Program p;
    while (tok_.kind != Tok::End) p.clauses.push_back(clause());
    return p;
  }

  EquationSet equations() {
    top_is_predicate_ = false;
    EquationSet eqs;
    if (tok_.kind == Tok::End) return eqs;
    eqs.push_back(equation());
    while (tok_.kind == Tok::Comma) {
      shift();
      eqs.push_back(equation());
    }
    if (tok_.kind == Tok::Dot) shift();
    expect_end();
    return eqs;
  }

  Query query() {
    Query q;
    q.push_back(atom(term()));
    while (tok_.kind == Tok::Comma) {
      shift();
      q.push_back(atom(term()));
    }
    if (tok_.kind == Tok::Dot) shift();
    expect_end();
    return q;
  }

  Term single_term() {
    top_is_predicate_ = false;
    Term t = term();
    expect_end();
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + (tok_.kind == Tok::End ? " at end of input" : " near '" + tok_.text + "'"),
                     tok_.line, tok_.column);
  }

  void shift() { tok_ = lexer_.next(); }

  void expect(Tok kind, const char* what) {
    if (tok_.kind != kind) fail(std::string("expected ") + what);
    shift();
  }

  void expect_end() {
    if (tok_.kind != Tok::End) fail("unexpected trailing input");
  }

  Clause clause() {
    Clause c{atom(term()), {}};
    if (tok_.kind == Tok::Neck) {
      shift();
      c.body.push_back(atom(term()));
      while (tok_.kind == Tok::Comma) {
        shift();
        c.body.push_back(atom(term()));
      }
    }
    expect(Tok::Dot, "'.' at end of clause");
    return c;
  }

  Equation equation() {
    Term lhs = term();
    expect(Tok::Equals, "'='");
    Term rhs = term();
    return {lhs, rhs};
  }

  Atom atom(const Term& t) {
    if (t.is_variable()) {
      throw ParseError("expected an atom, found variable " + t.name(), last_line_, last_col_);
    }
    note_arity(predicates_, t.name(), t.arity(), last_line_, last_col_, "predicate");
    return Atom::from_term(t);
  }

  void note_arity(std::map<std::string, std::size_t>& table, const std::string& name,
                  std::size_t arity, std::size_t line, std::size_t col, const char* kind) {
    auto [it, inserted] = table.emplace(name, arity);
    if (!inserted && it->second != arity) {
      throw ArityConflict(std::string(kind) + " " + name + " used with arities " +
                              std::to_string(it->second) + " and " + std::to_string(arity),
                          line, col);
    }
  }

  Term variable(const Token& t) {
    if (t.text == "_") return Term::variable(supply_.fresh());
    if (NameSupply::is_generated(t.text)) {
      if (!options_.accept_generated) {
        throw ParseError("variable name " + t.text + " is reserved for generated variables", t.line,
                         t.column);
      }
      supply_.reserve(Variable{t.text});
    }
    return Term::variable(t.text);
  }

  Term term() {
    const Token t = tok_;
    last_line_ = t.line;
    last_col_ = t.column;
    depth_guard guard(*this);
    switch (t.kind) {
      case Tok::Var:
        shift();
        return variable(t);
      case Tok::Number: {
        shift();
        std::size_t n = 0;
        try {
          n = std::stoul(t.text);
        } catch (const std::exception&) {
          throw ParseError("numeral too large: " + t.text, t.line, t.column);
        }
        if (n > 100000) throw ParseError("numeral too large: " + t.text, t.line, t.column);
        return numeral(n);
      }
      case Tok::Name: {
        shift();
        std::vector<Term> args;
        if (tok_.kind == Tok::LParen) {
          shift();
          args.push_back(term());
          while (tok_.kind == Tok::Comma) {
            shift();
            args.push_back(term());
          }
          expect(Tok::RParen, "')'");
        }
        Term out = Term::compound(t.text, std::move(args));
        // The outermost term of a clause or query item is a predicate, checked by atom().
        if (depth_ > 1 || !top_is_predicate_) note_arity(functors_, out.name(), out.arity(), t.line, t.column, "functor");
        return out;
      }
      case Tok::LBracket: {
        shift();
        if (tok_.kind == Tok::RBracket) {
          shift();
          return Term::constant("[]");
        }
        std::vector<Term> items{term()};
        while (tok_.kind == Tok::Comma) {
          shift();
          items.push_back(term());
        }
        std::optional<Term> tail;
        if (tok_.kind == Tok::Bar) {
          shift();
          tail = term();
        }
        expect(Tok::RBracket, "']'");
        return Term::list(std::move(items), tail);
      }
      default:
        fail("expected a term");
    }
  }

  struct depth_guard {
    explicit depth_guard(Parser& p) : p(p) { ++p.depth_; }
    ~depth_guard() { --p.depth_; }
    Parser& p;
  };

  Lexer lexer_;
  Token tok_;
  NameSupply& supply_;
  ParseOptions options_;
  std::map<std::string, std::size_t> functors_;
  std::map<std::string, std::size_t> predicates_;
  std::size_t depth_ = 0;
  bool top_is_predicate_ = true;
  std::size_t last_line_ = 1;
  std::size_t last_col_ = 1;
};

bool is_plain_name(const std::string& s) {
  if (s.empty()) return false;
  if (s == "[]") return true;
  if (!std::islower(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  return true;
}

std::string quote_name(const std::string& s) {
  if (is_plain_name(s) || s == "0") return s;
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') out += '\'';
    out += c;
  }
  return out + "'";
}

void render_into(const Term& t, std::ostringstream& out) {
  if (t.is_variable()) {
    out << t.name();
    return;
  }
  if (t.name() == "." && t.arity() == 2) {
    out << '[';
    render_into(t.arg(0), out);
    Term rest = t.arg(1);
    while (rest.is_compound() && rest.name() == "." && rest.arity() == 2) {
      out << ',';
      render_into(rest.arg(0), out);
      rest = rest.arg(1);
    }
    if (!(rest.is_constant() && rest.name() == "[]")) {
      out << '|';
      render_into(rest, out);
    }
    out << ']';
    return;
  }
  out << quote_name(t.name());
  if (t.arity() == 0) return;
  out << '(';
  for (std::size_t i = 0; i < t.arity(); ++i) {
    if (i) out << ", ";
    render_into(t.arg(i), out);
  }
  out << ')';
}

}  // namespace

Term numeral(std::size_t n) {
  Term t = Term::constant("0");
  for (std::size_t i = 0; i < n; ++i) t = Term::compound("s", {t});
  return t;
}

Program parse_program(std::string_view text, NameSupply& supply, ParseOptions options) {
  return Parser(text, supply, options).program();
}

Program parse_program(std::string_view text, ParseOptions options) {
  NameSupply supply;
  return parse_program(text, supply, options);
}

EquationSet parse_equations(std::string_view text, NameSupply& supply, ParseOptions options) {
  return Parser(text, supply, options).equations();
}

EquationSet parse_equations(std::string_view text, ParseOptions options) {
  NameSupply supply;
  return parse_equations(text, supply, options);
}

Query parse_query(std::string_view text, NameSupply& supply, ParseOptions options) {
  return Parser(text, supply, options).query();
}

Query parse_query(std::string_view text, ParseOptions options) {
  NameSupply supply;
  return parse_query(text, supply, options);
}

Term parse_term(std::string_view text, NameSupply& supply, ParseOptions options) {
  return Parser(text, supply, options).single_term();
}

Term parse_term(std::string_view text, ParseOptions options) {
  NameSupply supply;
  return parse_term(text, supply, options);
}

std::string render(const Term& t) {
  std::ostringstream out;
  render_into(t, out);
  return out.str();
}

std::string render(const Atom& a) { return render(a.as_term()); }

std::string render(const Equation& e) { return render(e.lhs) + " = " + render(e.rhs); }

std::string render(std::span<const Equation> eqs) {
  std::string out;
  for (std::size_t i = 0; i < eqs.size(); ++i) {
    if (i) out += ", ";
    out += render(eqs[i]);
  }
  return out;
}

std::string render(const Substitution& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& [v, t] : s) {
    if (!first) out += ", ";
    first = false;
    out += v.name + "/" + render(t);
  }
  return out + "}";
}

std::string render(const Clause& c) {
  std::string out = render(c.head);
  if (!c.body.empty()) out += " :- " + render(std::span<const Atom>(c.body));
  return out + ".";
}

std::string render(const Program& p) {
  std::string out;
  for (const Clause& c : p.clauses) out += render(c) + "\n";
  return out;
}

std::string render(std::span<const Atom> query) {
  std::string out;
  for (std::size_t i = 0; i < query.size(); ++i) {
    if (i) out += ", ";
    out += render(query[i]);
  }
  return out;
}

std::string render(const Variable& v) { return v.name; }

}  // namespace occurlab
