#include "occurlab/term.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace occurlab {

struct Term::Node {
  bool is_var = false;
  Variable var;
  std::string functor;
  std::vector<Term> args;
  std::size_t hash = 0;
  std::size_t size = 1;
};

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

Term Term::variable(Variable v) {
  auto node = std::make_shared<Node>();
  node->is_var = true;
  node->hash = mix(0x51ed27, std::hash<std::string>{}(v.name));
  node->var = std::move(v);
  return Term(std::move(node));
}

Term Term::variable(std::string name) { return variable(Variable{std::move(name)}); }

Term Term::compound(std::string functor, std::vector<Term> args) {
  auto node = std::make_shared<Node>();
  std::size_t h = mix(std::hash<std::string>{}(functor), args.size());
  std::size_t size = 1;
  for (const Term& a : args) {
    h = mix(h, a.hash());
    size += a.size();
  }
  node->functor = std::move(functor);
  node->args = std::move(args);
  node->hash = h;
  node->size = size;
  return Term(std::move(node));
}

Term Term::list(std::vector<Term> items, std::optional<Term> tail) {
  Term acc = tail ? *tail : Term::constant("[]");
  for (auto it = items.rbegin(); it != items.rend(); ++it) {
    acc = Term::compound(".", {*it, acc});
  }
  return acc;
}

bool Term::is_variable() const { return node_->is_var; }

const Variable& Term::var() const {
  if (!node_->is_var) throw std::logic_error("Term::var on a compound term");
  return node_->var;
}

const std::string& Term::name() const { return node_->is_var ? node_->var.name : node_->functor; }

std::span<const Term> Term::args() const { return node_->args; }

std::size_t Term::hash() const { return node_->hash; }

std::size_t Term::size() const { return node_->size; }

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.node_->hash != b.node_->hash) return false;
  if (a.node_->is_var != b.node_->is_var) return false;
  if (a.node_->is_var) return a.node_->var == b.node_->var;
  return a.node_->functor == b.node_->functor && a.node_->args == b.node_->args;
}

Atom Atom::from_term(const Term& t) {
  if (t.is_variable()) throw std::invalid_argument("a variable is not an atom: " + t.name());
  return Atom{t.name(), std::vector<Term>(t.args().begin(), t.args().end())};
}

// ---------------------------------------------------------------------------
// Substitution

Substitution::Substitution(std::initializer_list<std::pair<const Variable, Term>> init) {
  for (const auto& [v, t] : init) bind(v, t);
}

void Substitution::bind(const Variable& v, Term t) {
  if (t.is_variable() && t.var() == v) {
    throw std::invalid_argument("identity binding " + v.name + " -> " + v.name);
  }
  bindings_.insert_or_assign(v, std::move(t));
}

const Term* Substitution::lookup(const Variable& v) const {
  auto it = bindings_.find(v);
  return it == bindings_.end() ? nullptr : &it->second;
}

Substitution Substitution::compose(const Substitution& then) const {
  Substitution out;
  for (const auto& [v, t] : bindings_) {
    Term image = apply(then, t);
    if (!(image.is_variable() && image.var() == v)) out.bindings_.insert_or_assign(v, image);
  }
  for (const auto& [v, t] : then.bindings_) {
    if (!contains(v)) out.bindings_.insert_or_assign(v, t);
  }
  return out;
}

// ---------------------------------------------------------------------------
// NameSupply

bool NameSupply::is_generated(std::string_view name) {
  return name.size() >= 2 && name[0] == '_' && std::isdigit(static_cast<unsigned char>(name[1]));
}

Variable NameSupply::fresh() { return Variable{"_" + std::to_string(next_++)}; }

Variable NameSupply::fresh(std::string_view hint) {
  if (is_generated(hint)) {
    // "_12_I" -> "I", "_12" -> ""
    auto sep = hint.find('_', 1);
    hint = sep == std::string_view::npos ? std::string_view{} : hint.substr(sep + 1);
  }
  std::string name = "_" + std::to_string(next_++);
  if (!hint.empty()) {
    name += '_';
    name += hint;
  }
  return Variable{std::move(name)};
}

void NameSupply::reserve(const Variable& v) {
  if (!is_generated(v.name)) return;
  std::size_t n = 0;
  std::size_t i = 1;
  while (i < v.name.size() && std::isdigit(static_cast<unsigned char>(v.name[i]))) {
    n = n * 10 + static_cast<std::size_t>(v.name[i] - '0');
    ++i;
  }
  next_ = std::max(next_, n + 1);
}

// ---------------------------------------------------------------------------
// Variables and linearity

namespace {

void collect_vars(const Term& t, std::vector<Variable>& out, std::set<Variable>& seen) {
  if (t.is_variable()) {
    if (seen.insert(t.var()).second) out.push_back(t.var());
    return;
  }
  for (const Term& a : t.args()) collect_vars(a, out, seen);
}

// Returns false as soon as a variable is seen twice.
bool linear_walk(const Term& t, std::set<Variable>& seen) {
  if (t.is_variable()) return seen.insert(t.var()).second;
  for (const Term& a : t.args()) {
    if (!linear_walk(a, seen)) return false;
  }
  return true;
}

}  // namespace

std::vector<Variable> vars_of(const Term& t) {
  std::vector<Variable> out;
  std::set<Variable> seen;
  collect_vars(t, out, seen);
  return out;
}

std::vector<Variable> vars_of(const Atom& a) {
  std::vector<Variable> out;
  std::set<Variable> seen;
  for (const Term& t : a.args) collect_vars(t, out, seen);
  return out;
}

std::vector<Variable> vars_of(std::span<const Atom> atoms) {
  std::vector<Variable> out;
  std::set<Variable> seen;
  for (const Atom& a : atoms) {
    for (const Term& t : a.args) collect_vars(t, out, seen);
  }
  return out;
}

std::vector<Variable> vars_of(const Equation& e) {
  std::vector<Variable> out;
  std::set<Variable> seen;
  collect_vars(e.lhs, out, seen);
  collect_vars(e.rhs, out, seen);
  return out;
}

std::vector<Variable> vars_of(std::span<const Equation> eqs) {
  std::vector<Variable> out;
  std::set<Variable> seen;
  for (const Equation& e : eqs) {
    collect_vars(e.lhs, out, seen);
    collect_vars(e.rhs, out, seen);
  }
  return out;
}

bool occurs_in(const Variable& v, const Term& t) {
  if (t.is_variable()) return t.var() == v;
  for (const Term& a : t.args()) {
    if (occurs_in(v, a)) return true;
  }
  return false;
}

std::size_t count_occurrences(const Variable& v, const Term& t) {
  if (t.is_variable()) return t.var() == v ? 1 : 0;
  std::size_t n = 0;
  for (const Term& a : t.args()) n += count_occurrences(v, a);
  return n;
}

bool is_linear(const Term& t) {
  std::set<Variable> seen;
  return linear_walk(t, seen);
}

bool is_linear(const Atom& a) {
  std::set<Variable> seen;
  return std::all_of(a.args.begin(), a.args.end(),
                     [&](const Term& t) { return linear_walk(t, seen); });
}

bool is_linear(std::span<const Atom> atoms) {
  std::set<Variable> seen;
  for (const Atom& a : atoms) {
    for (const Term& t : a.args) {
      if (!linear_walk(t, seen)) return false;
    }
  }
  return true;
}

bool is_linear(std::span<const Equation> eqs) {
  std::set<Variable> seen;
  for (const Equation& e : eqs) {
    if (!linear_walk(e.lhs, seen) || !linear_walk(e.rhs, seen)) return false;
  }
  return true;
}

bool is_ground(const Term& t) {
  if (t.is_variable()) return false;
  return std::all_of(t.args().begin(), t.args().end(), [](const Term& a) { return is_ground(a); });
}

bool is_ground(const Atom& a) {
  return std::all_of(a.args.begin(), a.args.end(), [](const Term& t) { return is_ground(t); });
}

std::size_t term_size(const Term& t) { return t.size(); }

// ---------------------------------------------------------------------------
// Application

Term apply(const Substitution& s, const Term& t) {
  if (s.empty()) return t;
  if (t.is_variable()) {
    const Term* image = s.lookup(t.var());
    return image ? *image : t;
  }
  if (t.arity() == 0) return t;
  std::vector<Term> args;
  args.reserve(t.arity());
  bool changed = false;
  for (const Term& a : t.args()) {
    args.push_back(apply(s, a));
    changed = changed || !args.back().same_node(a);
  }
  return changed ? Term::compound(t.name(), std::move(args)) : t;
}

Atom apply(const Substitution& s, const Atom& a) {
  Atom out{a.predicate, {}};
  out.args.reserve(a.args.size());
  for (const Term& t : a.args) out.args.push_back(apply(s, t));
  return out;
}

Equation apply(const Substitution& s, const Equation& e) { return {apply(s, e.lhs), apply(s, e.rhs)}; }

EquationSet apply(const Substitution& s, std::span<const Equation> eqs) {
  EquationSet out;
  out.reserve(eqs.size());
  for (const Equation& e : eqs) out.push_back(apply(s, e));
  return out;
}

std::vector<Atom> apply(const Substitution& s, std::span<const Atom> atoms) {
  std::vector<Atom> out;
  out.reserve(atoms.size());
  for (const Atom& a : atoms) out.push_back(apply(s, a));
  return out;
}

namespace {

bool match_into(const Term& pattern, const Term& target, std::map<Variable, Term>& out) {
  if (pattern.is_variable()) {
    auto [it, inserted] = out.emplace(pattern.var(), target);
    return inserted || it->second == target;
  }
  if (target.is_variable() || pattern.name() != target.name() || pattern.arity() != target.arity()) {
    return false;
  }
  for (std::size_t i = 0; i < pattern.arity(); ++i) {
    if (!match_into(pattern.arg(i), target.arg(i), out)) return false;
  }
  return true;
}

}  // namespace

std::optional<Substitution> match(const Term& pattern, const Term& target) {
  std::map<Variable, Term> m;
  if (!match_into(pattern, target, m)) return std::nullopt;
  Substitution out;
  for (const auto& [v, t] : m) {
    if (!(t.is_variable() && t.var() == v)) out.bind(v, t);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Variants

namespace {

using Renaming = std::map<Variable, Variable>;

bool variant_extend(const Term& a, const Term& b, Renaming& fwd, Renaming& back) {
  if (a.is_variable() != b.is_variable()) return false;
  if (a.is_variable()) {
    auto f = fwd.find(a.var());
    auto g = back.find(b.var());
    if (f == fwd.end() && g == back.end()) {
      fwd.emplace(a.var(), b.var());
      back.emplace(b.var(), a.var());
      return true;
    }
    return f != fwd.end() && g != back.end() && f->second == b.var() && g->second == a.var();
  }
  if (a.name() != b.name() || a.arity() != b.arity()) return false;
  for (std::size_t i = 0; i < a.arity(); ++i) {
    if (!variant_extend(a.arg(i), b.arg(i), fwd, back)) return false;
  }
  return true;
}

using Item = std::pair<Term, Term>;

bool variant_multiset(const std::vector<Item>& a, const std::vector<Item>& b, std::size_t i,
                      std::vector<bool>& used, const Renaming& fwd, const Renaming& back) {
  if (i == a.size()) return true;
  for (std::size_t j = 0; j < b.size(); ++j) {
    if (used[j]) continue;
    Renaming f = fwd;
    Renaming g = back;
    if (variant_extend(a[i].first, b[j].first, f, g) && variant_extend(a[i].second, b[j].second, f, g)) {
      used[j] = true;
      if (variant_multiset(a, b, i + 1, used, f, g)) return true;
      used[j] = false;
    }
  }
  return false;
}

bool variant_items(const std::vector<Item>& a, const std::vector<Item>& b) {
  if (a.size() != b.size()) return false;
  std::vector<bool> used(b.size(), false);
  return variant_multiset(a, b, 0, used, {}, {});
}

}  // namespace

bool equal_up_to_renaming(const Substitution& a, const Substitution& b) {
  std::vector<Item> xs;
  std::vector<Item> ys;
  for (const auto& [v, t] : a) xs.emplace_back(Term::variable(v), t);
  for (const auto& [v, t] : b) ys.emplace_back(Term::variable(v), t);
  return variant_items(xs, ys);
}

bool equal_up_to_renaming(std::span<const Equation> a, std::span<const Equation> b) {
  std::vector<Item> xs;
  std::vector<Item> ys;
  for (const Equation& e : a) xs.emplace_back(e.lhs, e.rhs);
  for (const Equation& e : b) ys.emplace_back(e.lhs, e.rhs);
  return variant_items(xs, ys);
}

bool equal_up_to_renaming(const Term& a, const Term& b) {
  Renaming f;
  Renaming g;
  return variant_extend(a, b, f, g);
}

bool unifies(const Substitution& s, std::span<const Equation> eqs) {
  return std::all_of(eqs.begin(), eqs.end(),
                     [&](const Equation& e) { return apply(s, e.lhs) == apply(s, e.rhs); });
}

bool more_general_on(const Substitution& general, const Substitution& specific,
                     std::span<const Variable> vars) {
  std::vector<Term> gs;
  std::vector<Term> ss;
  for (const Variable& v : vars) {
    gs.push_back(apply(general, Term::variable(v)));
    ss.push_back(apply(specific, Term::variable(v)));
  }
  return match(Term::compound("tuple", gs), Term::compound("tuple", ss)).has_value();
}

}  // namespace occurlab
