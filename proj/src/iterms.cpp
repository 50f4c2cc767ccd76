#include "occurlab/iterms.hpp"

#include <numeric>
#include <stdexcept>
#include <tuple>
#include <utility>

namespace occurlab {

namespace {

class GraphBuilder {
 public:
  explicit GraphBuilder(TermGraph g = {}) : graph_(std::move(g)) {}

  // Variables in `bound` are redirected to existing nodes.
  std::size_t add(const Term& t, const std::map<Variable, std::size_t>& bound = {}) {
    if (t.is_variable()) {
      if (auto it = bound.find(t.var()); it != bound.end()) return it->second;
      auto [it, inserted] = vars_.emplace(t.var(), graph_.nodes.size());
      if (inserted) graph_.nodes.push_back({true, t.name(), {}});
      return it->second;
    }
    std::vector<std::size_t> kids;
    kids.reserve(t.arity());
    for (const Term& a : t.args()) kids.push_back(add(a, bound));
    graph_.nodes.push_back({false, t.name(), std::move(kids)});
    return graph_.nodes.size() - 1;
  }

  const std::map<Variable, std::size_t>& vars() const { return vars_; }
  TermGraph& graph() { return graph_; }

 private:
  TermGraph graph_;
  std::map<Variable, std::size_t> vars_;
};

}  // namespace

RationalTerm::RationalTerm(std::shared_ptr<const TermGraph> graph, std::size_t root)
    : graph_(std::move(graph)), root_(root) {
  if (root_ >= graph_->nodes.size()) throw std::out_of_range("rational term root out of range");
}

RationalTerm RationalTerm::from_term(const Term& t) {
  GraphBuilder b;
  const std::size_t root = b.add(t);
  return {std::make_shared<const TermGraph>(std::move(b.graph())), root};
}

namespace {

// Memoized per (node, depth) so shared subtrees stay shared.
Term unfold_node(const TermGraph& g, std::size_t node, std::size_t depth,
                 std::map<std::pair<std::size_t, std::size_t>, Term>& memo) {
  const auto& n = g.nodes[node];
  if (n.is_var) return Term::variable(n.label);
  if (depth == 0) return Term::constant(kCutMarker);
  if (auto it = memo.find({node, depth}); it != memo.end()) return it->second;
  std::vector<Term> args;
  args.reserve(n.children.size());
  for (std::size_t c : n.children) args.push_back(unfold_node(g, c, depth - 1, memo));
  Term out = Term::compound(n.label, std::move(args));
  memo.emplace(std::make_pair(node, depth), out);
  return out;
}

bool equal_to_depth(const TermGraph& ga, std::size_t a, const TermGraph& gb, std::size_t b, std::size_t depth,
                    std::map<std::tuple<std::size_t, std::size_t, std::size_t>, bool>& memo) {
  const auto& na = ga.nodes[a];
  const auto& nb = gb.nodes[b];
  if (na.is_var || nb.is_var) return na.is_var && nb.is_var && na.label == nb.label;
  if (depth == 0) return true;  // both cut
  if (na.label != nb.label || na.children.size() != nb.children.size()) return false;
  const auto key = std::make_tuple(a, b, depth);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  bool eq = true;
  for (std::size_t i = 0; eq && i < na.children.size(); ++i) {
    eq = equal_to_depth(ga, na.children[i], gb, nb.children[i], depth - 1, memo);
  }
  memo.emplace(key, eq);
  return eq;
}

}  // namespace

Term unfold(const RationalTerm& t, std::size_t depth) {
  std::map<std::pair<std::size_t, std::size_t>, Term> memo;
  return unfold_node(t.graph(), t.root(), depth, memo);
}

bool equal_unfoldings(const RationalTerm& a, const RationalTerm& b, std::size_t depth) {
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, bool> memo;
  return equal_to_depth(a.graph(), a.root(), b.graph(), b.root(), depth, memo);
}

bool bisimilar(const RationalTerm& a, const RationalTerm& b) {
  // Disjoint union of both graphs (or the shared one).
  std::vector<const TermGraph::Node*> nodes;
  const std::size_t offset = a.graph().nodes.size();
  for (const auto& n : a.graph().nodes) nodes.push_back(&n);
  const bool shared = &a.graph() == &b.graph();
  if (!shared) {
    for (const auto& n : b.graph().nodes) nodes.push_back(&n);
  }
  auto child = [&](std::size_t node, std::size_t i) {
    const std::size_t c = nodes[node]->children[i];
    return (!shared && node >= offset) ? c + offset : c;
  };

  std::vector<std::size_t> cls(nodes.size());
  {
    std::map<std::tuple<bool, std::string, std::size_t>, std::size_t> ids;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      auto key = std::make_tuple(nodes[i]->is_var, nodes[i]->label, nodes[i]->children.size());
      cls[i] = ids.emplace(key, ids.size()).first->second;
    }
  }
  std::size_t classes = 0;
  while (true) {
    std::map<std::vector<std::size_t>, std::size_t> ids;
    std::vector<std::size_t> next(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      std::vector<std::size_t> sig{cls[i]};
      for (std::size_t k = 0; k < nodes[i]->children.size(); ++k) sig.push_back(cls[child(i, k)]);
      next[i] = ids.emplace(std::move(sig), ids.size()).first->second;
    }
    cls = std::move(next);
    if (ids.size() == classes) break;
    classes = ids.size();
  }
  const std::size_t rb = shared ? b.root() : b.root() + offset;
  return cls[a.root()] == cls[rb];
}

ISubstitution::ISubstitution(std::shared_ptr<const TermGraph> graph, std::map<Variable, std::size_t> roots)
    : graph_(std::move(graph)), roots_(std::move(roots)) {}

RationalTerm ISubstitution::lookup(const Variable& v) const {
  if (auto it = roots_.find(v); it != roots_.end()) return {graph_, it->second};
  return RationalTerm::from_term(Term::variable(v));
}

RationalTerm ISubstitution::apply(const Term& t) const {
  GraphBuilder b(*graph_);
  const std::size_t root = b.add(t, roots_);
  return {std::make_shared<const TermGraph>(std::move(b.graph())), root};
}

std::vector<Variable> ISubstitution::domain() const {
  std::vector<Variable> out;
  for (const auto& [v, _] : roots_) out.push_back(v);
  return out;
}

std::optional<ISubstitution> solve_rational(std::span<const Equation> eqs) {
  GraphBuilder b;
  std::vector<std::pair<std::size_t, std::size_t>> work;
  for (const Equation& e : eqs) {
    const std::size_t l = b.add(e.lhs);
    const std::size_t r = b.add(e.rhs);
    work.emplace_back(l, r);
  }
  const TermGraph& g = b.graph();
  std::vector<std::size_t> parent(g.nodes.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  while (!work.empty()) {
    auto [l, r] = work.back();
    work.pop_back();
    const std::size_t a = find(l);
    const std::size_t c = find(r);
    if (a == c) continue;
    const auto& na = g.nodes[a];
    const auto& nc = g.nodes[c];
    if (na.is_var) {
      parent[a] = c;
    } else if (nc.is_var) {
      parent[c] = a;
    } else {
      if (na.label != nc.label || na.children.size() != nc.children.size()) return std::nullopt;
      parent[a] = c;
      for (std::size_t i = 0; i < na.children.size(); ++i) work.emplace_back(na.children[i], nc.children[i]);
    }
  }
  // One node per class; compound classes keep their representative's label.
  auto out = std::make_shared<TermGraph>();
  std::map<std::size_t, std::size_t> index;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    const std::size_t rep = find(i);
    if (index.emplace(rep, out->nodes.size()).second) out->nodes.push_back({g.nodes[rep].is_var, g.nodes[rep].label, {}});
  }
  for (const auto& [rep, idx] : index) {
    for (std::size_t c : g.nodes[rep].children) out->nodes[idx].children.push_back(index.at(find(c)));
  }
  std::map<Variable, std::size_t> roots;
  for (const auto& [v, node] : b.vars()) roots.emplace(v, index.at(find(node)));
  return ISubstitution(std::move(out), std::move(roots));
}

bool has_i_solution(std::span<const Equation> eqs) { return solve_rational(eqs).has_value(); }

namespace {

bool satisfies(const ISubstitution& s, std::span<const Equation> eqs, std::size_t depth) {
  for (const Equation& e : eqs) {
    if (!equal_unfoldings(s.apply(e.lhs), s.apply(e.rhs), depth)) return false;
  }
  return true;
}

}  // namespace

bool i_equivalent(std::span<const Equation> e1, std::span<const Equation> e2, std::size_t depth) {
  const auto s1 = solve_rational(e1);
  const auto s2 = solve_rational(e2);
  if (!s1 && !s2) return true;
  if (!s1 || !s2) return false;
  return satisfies(*s1, e2, depth) && satisfies(*s2, e1, depth);
}

}  // namespace occurlab
