#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "qgrkit/rational.hpp"

namespace qgrkit {

// Sparse vector: (index, value) pairs, indices strictly increasing, no zeros.
using SparseVec = std::vector<std::pair<int, Rational>>;

SparseVec sparse_add_scaled(const SparseVec& a, const SparseVec& b, const Rational& c);
SparseVec sparse_scale(const SparseVec& a, const Rational& c);

// Row echelon form built one vector at a time. Optionally remembers, for each
// stored row, the combination of inserted vectors that produced it, which is
// what solve() and nullspace bookkeeping need.
class Echelon {
 public:
  explicit Echelon(int ncols, bool track = false);

  int ncols() const { return ncols_; }
  int rank() const { return static_cast<int>(rows_.size()); }
  int inserted() const { return inserted_; }

  // Inserts v as input number inserted(); returns true when it raised the rank.
  // When it did not, the dependency (combination of earlier inputs equal to v,
  // as coefficients) is available from last_dependency() if tracking.
  bool insert(const SparseVec& v);
  const SparseVec& last_dependency() const { return last_dependency_; }

  // Reduce v against the stored rows; zero result means v lies in the span.
  SparseVec reduce(const SparseVec& v) const;
  bool contains(const SparseVec& v) const { return reduce(v).empty(); }
  // Coefficients c with v = sum c_k * input_k, or nullopt. Requires tracking.
  std::optional<SparseVec> solve(const SparseVec& v) const;

 private:
  struct Row {
    SparseVec vec;    // first entry is the pivot, normalized to 1
    SparseVec combo;  // in terms of inputs
  };
  // Reduces in place; returns combination of stored rows' combos subtracted.
  void reduce_impl(SparseVec& v, SparseVec* combo) const;

  int ncols_;
  bool track_;
  int inserted_ = 0;
  std::vector<Row> rows_;
  std::vector<int> pivot_row_;  // column -> row index or -1
  SparseVec last_dependency_;
};

int matrix_rank(const std::vector<SparseVec>& rows, int ncols);
// Basis of {c : sum c_k rows_k = 0}.
std::vector<SparseVec> left_nullspace(const std::vector<SparseVec>& rows, int ncols);

}  // namespace qgrkit
