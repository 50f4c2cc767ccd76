#pragma once

#include <optional>
#include <string>
#include <vector>

#include "occurlab/parser.hpp"
#include "occurlab/term.hpp"

namespace occurlab::testing {

inline Term T(const std::string& s) { return parse_term(s); }
inline EquationSet E(const std::string& s) { return parse_equations(s); }

inline Atom A(const std::string& s) {
  auto q = parse_query(s);
  return q.at(0);
}

// Textbook recursive unifier with occur-check over a triangular binding list.
// Kept deliberately separate from the library algorithms.
class ReferenceUnifier {
 public:
  std::optional<Substitution> unify(const EquationSet& eqs) {
    bindings_.clear();
    for (const Equation& e : eqs) {
      if (!unify(e.lhs, e.rhs)) return std::nullopt;
    }
    Substitution out;
    for (const auto& [v, t] : bindings_) {
      Term r = resolve_fully(t);
      if (!(r.is_variable() && r.var() == v)) out.bind(v, r);
    }
    return out;
  }

 private:
  Term walk(Term t) const {
    while (t.is_variable()) {
      auto it = find(t.var());
      if (!it) return t;
      t = *it;
    }
    return t;
  }

  const Term* find(const Variable& v) const {
    for (const auto& [w, t] : bindings_) {
      if (w == v) return &t;
    }
    return nullptr;
  }

  Term resolve_fully(const Term& t) const {
    Term w = walk(t);
    if (w.is_variable()) return w;
    std::vector<Term> args;
    for (const Term& a : w.args()) args.push_back(resolve_fully(a));
    return Term::compound(w.name(), args);
  }

  bool occurs(const Variable& v, const Term& t) const {
    Term w = walk(t);
    if (w.is_variable()) return w.var() == v;
    for (const Term& a : w.args()) {
      if (occurs(v, a)) return true;
    }
    return false;
  }

  bool unify(const Term& a, const Term& b) {
    Term x = walk(a);
    Term y = walk(b);
    if (x.is_variable() && y.is_variable() && x.var() == y.var()) return true;
    if (x.is_variable()) return bind(x.var(), y);
    if (y.is_variable()) return bind(y.var(), x);
    if (x.name() != y.name() || x.arity() != y.arity()) return false;
    for (std::size_t i = 0; i < x.arity(); ++i) {
      if (!unify(x.arg(i), y.arg(i))) return false;
    }
    return true;
  }

  bool bind(const Variable& v, const Term& t) {
    if (occurs(v, t)) return false;
    bindings_.emplace_back(v, t);
    return true;
  }

  std::vector<std::pair<Variable, Term>> bindings_;
};

inline std::optional<Substitution> reference_mgu(const EquationSet& eqs) { return ReferenceUnifier{}.unify(eqs); }

}  // namespace occurlab::testing
