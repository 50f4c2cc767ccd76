#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "occurlab/term.hpp"

namespace occurlab {

// Finite graph whose unfolding is a possibly infinite term.
struct TermGraph {
  struct Node {
    bool is_var = false;
    std::string label;  // functor or variable name
    std::vector<std::size_t> children;
  };
  std::vector<Node> nodes;
};

/// Rational (regular) term: a rooted node of a shared, immutable TermGraph.
class RationalTerm {
 public:
  RationalTerm(std::shared_ptr<const TermGraph> graph, std::size_t root);

  static RationalTerm from_term(const Term& t);

  bool is_variable() const { return node().is_var; }
  const std::string& label() const { return node().label; }
  std::size_t arity() const { return node().children.size(); }
  RationalTerm child(std::size_t i) const { return {graph_, node().children.at(i)}; }

  const TermGraph& graph() const { return *graph_; }
  std::size_t root() const { return root_; }

 private:
  const TermGraph::Node& node() const { return graph_->nodes[root_]; }

  std::shared_ptr<const TermGraph> graph_;
  std::size_t root_;
};

// Reserved constant marking truncation points in unfold().
inline constexpr const char* kCutMarker = "⊥";

/// Tree truncation: `depth` levels of function symbols, then the cut marker.
/// Variables are kept at any depth.
Term unfold(const RationalTerm& t, std::size_t depth);

// unfold(a, depth) == unfold(b, depth), without materializing the trees.
bool equal_unfoldings(const RationalTerm& a, const RationalTerm& b, std::size_t depth);

/// Equality of the infinite unfoldings, decided by partition refinement.
bool bisimilar(const RationalTerm& a, const RationalTerm& b);

class ISubstitution {
 public:
  ISubstitution(std::shared_ptr<const TermGraph> graph, std::map<Variable, std::size_t> roots);

  // Variables outside the domain map to themselves.
  RationalTerm lookup(const Variable& v) const;
  RationalTerm apply(const Term& t) const;
  std::vector<Variable> domain() const;

 private:
  std::shared_ptr<const TermGraph> graph_;
  std::map<Variable, std::size_t> roots_;
};

/// Most general solution over rational trees: unification without the
/// occur-check. Fails exactly on a functor clash.
std::optional<ISubstitution> solve_rational(std::span<const Equation> eqs);

bool has_i_solution(std::span<const Equation> eqs);

inline constexpr std::size_t kDefaultUnfoldDepth = 32;

/// Depth-bounded check that e1 and e2 have the same i-solutions: both have
/// none, or each one's most general solution satisfies every equation of the
/// other up to `depth`.
bool i_equivalent(std::span<const Equation> e1, std::span<const Equation> e2,
                  std::size_t depth = kDefaultUnfoldDepth);

}  // namespace occurlab
