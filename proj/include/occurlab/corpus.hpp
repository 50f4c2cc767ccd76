#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "occurlab/program.hpp"
#include "occurlab/term.hpp"

namespace occurlab {

struct CorpusEntry {
  std::string name;
  std::string summary;
  std::string text;  // program source
};

const std::vector<CorpusEntry>& corpus_entries();
// Throws std::out_of_range for unknown names.
const CorpusEntry& corpus_entry(std::string_view name);

// The four-clause core of the n-queens program (pqs/4, pq/4).
std::string_view nqueens_source();
Program nqueens_program();
Program nqueens_program(NameSupply& supply);

// pqs(s^n(0), [V1,...,Vn], A, B): linear, ground first argument.
Query query_qin(std::size_t n);

// pqs(s^n(0), t1, t2, t3) with arbitrary argument terms.
Query query_q0prime(std::size_t n, const Term& t1, const Term& t2, const Term& t3);

// Placements p (row i holds column p[i], 1-based) of n non-attacking queens, by brute force.
std::vector<std::vector<int>> queens_oracle(std::size_t n);

}  // namespace occurlab
