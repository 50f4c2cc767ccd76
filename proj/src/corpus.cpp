#include "occurlab/corpus.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <stdexcept>

#include "occurlab/parser.hpp"

namespace occurlab {

namespace {

constexpr std::string_view kNqueens =
    "pqs(0,_,_,_).\n"
    "pqs(s(I),Cs,Us,[_|Ds]):-\n"
    "        pqs(I,Cs,[_|Us],Ds),\n"
    "        pq(s(I),Cs,Us,Ds).\n"
    "\n"
    "pq(I,[I|_],[I|_],[I|_]).\n"
    "pq(I,[_|Cs],[_|Us],[_|Ds]):-\n"
    "        pq(I,Cs,Us,Ds).\n";

constexpr std::string_view kAppend =
    "app([],Ys,Ys).\n"
    "app([X|Xs],Ys,[X|Zs]) :- app(Xs,Ys,Zs).\n";

constexpr std::string_view kNat =
    "nat(0).\n"
    "nat(s(X)) :- nat(X).\n";

}  // namespace

const std::vector<CorpusEntry>& corpus_entries() {
  static const std::vector<CorpusEntry> entries{
      {"nqueens", "n-queens core: pqs/4 places queens, pq/4 picks a square", std::string(kNqueens)},
      {"append", "list concatenation", std::string(kAppend)},
      {"nat", "Peano naturals", std::string(kNat)},
  };
  return entries;
}

const CorpusEntry& corpus_entry(std::string_view name) {
  for (const CorpusEntry& e : corpus_entries()) {
    if (e.name == name) return e;
  }
  throw std::out_of_range("no corpus entry named '" + std::string(name) + "'");
}

std::string_view nqueens_source() { return kNqueens; }

Program nqueens_program(NameSupply& supply) { return parse_program(kNqueens, supply); }

Program nqueens_program() { return parse_program(kNqueens); }

Query query_qin(std::size_t n) {
  std::vector<Term> vs;
  for (std::size_t i = 1; i <= n; ++i) vs.push_back(Term::variable("V" + std::to_string(i)));
  return query_q0prime(n, Term::list(vs), Term::variable("A"), Term::variable("B"));
}

Query query_q0prime(std::size_t n, const Term& t1, const Term& t2, const Term& t3) {
  return {Atom{"pqs", {numeral(n), t1, t2, t3}}};
}

std::vector<std::vector<int>> queens_oracle(std::size_t n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 1);
  std::vector<std::vector<int>> out;
  do {
    bool ok = true;
    for (std::size_t i = 0; ok && i < n; ++i) {
      for (std::size_t j = i + 1; ok && j < n; ++j) {
        ok = std::abs(p[i] - p[j]) != static_cast<int>(j - i);
      }
    }
    if (ok) out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

}  // namespace occurlab
