#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace occurlab {

struct Variable {
  std::string name;

  friend auto operator<=>(const Variable&, const Variable&) = default;
};

/// Immutable first-order term. Copies share structure.
///
/// A term is either a variable or a compound `f(t1, ..., tn)`; constants are
/// compounds with no arguments. Lists use the functor "." of arity 2 and the
/// constant "[]".
class Term {
 public:
  static Term variable(Variable v);
  static Term variable(std::string name);
  static Term compound(std::string functor, std::vector<Term> args = {});
  static Term constant(std::string name) { return compound(std::move(name)); }

  static Term list(std::vector<Term> items, std::optional<Term> tail = std::nullopt);

  bool is_variable() const;
  bool is_compound() const { return !is_variable(); }
  bool is_constant() const { return is_compound() && arity() == 0; }

  // Precondition: is_variable().
  const Variable& var() const;
  // Functor name for compounds, variable name for variables.
  const std::string& name() const;
  std::span<const Term> args() const;
  std::size_t arity() const { return args().size(); }
  const Term& arg(std::size_t i) const { return args()[i]; }

  std::size_t hash() const;
  // Number of variable and function-symbol occurrences.
  std::size_t size() const;

  bool same_node(const Term& other) const { return node_ == other.node_; }

  friend bool operator==(const Term& a, const Term& b);

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct Atom {
  std::string predicate;
  std::vector<Term> args;

  std::size_t arity() const { return args.size(); }
  Term as_term() const { return Term::compound(predicate, args); }
  // Precondition: t.is_compound().
  static Atom from_term(const Term& t);

  friend bool operator==(const Atom&, const Atom&) = default;
};

struct Equation {
  Term lhs;
  Term rhs;

  Equation flipped() const { return {rhs, lhs}; }
  friend bool operator==(const Equation&, const Equation&) = default;
};

// Ordered multiset; position is the address used by actions and strategies.
using EquationSet = std::vector<Equation>;

class Substitution {
 public:
  using Map = std::map<Variable, Term>;

  Substitution() = default;
  Substitution(std::initializer_list<std::pair<const Variable, Term>> init);

  // Throws std::invalid_argument on a binding X -> X.
  void bind(const Variable& v, Term t);
  void erase(const Variable& v) { bindings_.erase(v); }

  const Term* lookup(const Variable& v) const;
  bool contains(const Variable& v) const { return bindings_.count(v) != 0; }
  bool empty() const { return bindings_.empty(); }
  std::size_t size() const { return bindings_.size(); }

  Map::const_iterator begin() const { return bindings_.begin(); }
  Map::const_iterator end() const { return bindings_.end(); }

  // x(this . then) == (x this) then
  Substitution compose(const Substitution& then) const;

  friend bool operator==(const Substitution&, const Substitution&) = default;

 private:
  Map bindings_;
};

/// Generates variables that cannot clash with user-written names.
///
/// Generated names start with '_' followed by a digit. The parser rejects such
/// names in user input unless asked to accept previously rendered output, in
/// which case it reserves them here.
class NameSupply {
 public:
  Variable fresh();
  // Readable variant, e.g. hint "I" gives "_12_I".
  Variable fresh(std::string_view hint);
  void reserve(const Variable& v);

  static bool is_generated(std::string_view name);

 private:
  std::size_t next_ = 0;
};

// First-occurrence order, duplicates removed.
std::vector<Variable> vars_of(const Term& t);
std::vector<Variable> vars_of(const Atom& a);
std::vector<Variable> vars_of(std::span<const Atom> atoms);
std::vector<Variable> vars_of(const Equation& e);
std::vector<Variable> vars_of(std::span<const Equation> eqs);

bool occurs_in(const Variable& v, const Term& t);
std::size_t count_occurrences(const Variable& v, const Term& t);

bool is_linear(const Term& t);
bool is_linear(const Atom& a);
bool is_linear(std::span<const Atom> atoms);
bool is_linear(std::span<const Equation> eqs);

bool is_ground(const Term& t);
bool is_ground(const Atom& a);

std::size_t term_size(const Term& t);

Term apply(const Substitution& s, const Term& t);
Atom apply(const Substitution& s, const Atom& a);
Equation apply(const Substitution& s, const Equation& e);
EquationSet apply(const Substitution& s, std::span<const Equation> eqs);
std::vector<Atom> apply(const Substitution& s, std::span<const Atom> atoms);

// One-way matching: some s with pattern.s == target.
std::optional<Substitution> match(const Term& pattern, const Term& target);

// Variant check: a bijective variable renaming g with a.g == b. Substitutions
// are compared as binding sets (domain renamed too); equation sets are
// compared as multisets.
bool equal_up_to_renaming(const Substitution& a, const Substitution& b);
bool equal_up_to_renaming(std::span<const Equation> a, std::span<const Equation> b);
bool equal_up_to_renaming(const Term& a, const Term& b);

// True iff every equation has syntactically identical sides after applying s.
bool unifies(const Substitution& s, std::span<const Equation> eqs);

// True iff `general` is at least as general as `specific` on `vars`:
// there is a d with x.general.d == x.specific for every x in vars.
bool more_general_on(const Substitution& general, const Substitution& specific,
                     std::span<const Variable> vars);

struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};

}  // namespace occurlab
