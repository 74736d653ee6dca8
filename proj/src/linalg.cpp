#include "qgrkit/linalg.hpp"

#include <functional>
#include <queue>

namespace qgrkit {

SparseVec sparse_add_scaled(const SparseVec& a, const SparseVec& b, const Rational& c) {
  if (c.is_zero() || b.empty()) return a;
  SparseVec r;
  r.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      r.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      r.emplace_back(b[j].first, c * b[j].second);
      ++j;
    } else {
      Rational s = a[i].second + c * b[j].second;
      if (!s.is_zero()) r.emplace_back(a[i].first, std::move(s));
      ++i;
      ++j;
    }
  }
  return r;
}

SparseVec sparse_scale(const SparseVec& a, const Rational& c) {
  SparseVec r;
  if (c.is_zero()) return r;
  r.reserve(a.size());
  for (const auto& [k, v] : a) r.emplace_back(k, v * c);
  return r;
}

Echelon::Echelon(int ncols, bool track) : ncols_(ncols), track_(track), pivot_row_(ncols, -1) {}

namespace {

struct Scratch {
  std::vector<Rational> acc;
  std::vector<char> queued;
};

Scratch& scratch(int n) {
  thread_local Scratch s;
  if (static_cast<int>(s.acc.size()) < n) {
    s.acc.resize(n);
    s.queued.resize(n, 0);
  }
  return s;
}

}  // namespace

void Echelon::reduce_impl(SparseVec& v, SparseVec* combo) const {
  if (v.empty() || rows_.empty()) return;
  Scratch& s = scratch(ncols_);
  std::priority_queue<int, std::vector<int>, std::greater<int>> heap;
  for (const auto& [k, x] : v) {
    s.acc[k] = x;
    s.queued[k] = 1;
    heap.push(k);
  }
  SparseVec out;
  while (!heap.empty()) {
    int k = heap.top();
    heap.pop();
    s.queued[k] = 0;
    if (s.acc[k].is_zero()) continue;
    int r = pivot_row_[k];
    if (r < 0) {
      out.emplace_back(k, std::move(s.acc[k]));
      s.acc[k] = Rational();
      continue;
    }
    Rational c = std::move(s.acc[k]);
    s.acc[k] = Rational();
    const Row& row = rows_[r];
    for (size_t t = 1; t < row.vec.size(); ++t) {
      int col = row.vec[t].first;
      s.acc[col] = Rational::sub_mul(s.acc[col], c, row.vec[t].second);
      if (!s.queued[col]) {
        s.queued[col] = 1;
        heap.push(col);
      }
    }
    if (combo) *combo = sparse_add_scaled(*combo, row.combo, -c);
  }
  v = std::move(out);
}

bool Echelon::insert(const SparseVec& v) {
  int id = inserted_++;
  SparseVec w = v;
  SparseVec combo;
  if (track_) combo.emplace_back(id, Rational(1));
  reduce_impl(w, track_ ? &combo : nullptr);
  if (w.empty()) {
    if (track_) {
      // combo = e_id - (stuff) is a relation; v = -(combo without e_id).
      last_dependency_.clear();
      for (const auto& [k, x] : combo) {
        if (k != id) last_dependency_.emplace_back(k, -x);
      }
    }
    return false;
  }
  Rational inv = w.front().second.inverse();
  if (!inv.is_one()) {
    w = sparse_scale(w, inv);
    if (track_) combo = sparse_scale(combo, inv);
  }
  pivot_row_[w.front().first] = static_cast<int>(rows_.size());
  rows_.push_back(Row{std::move(w), std::move(combo)});
  return true;
}

SparseVec Echelon::reduce(const SparseVec& v) const {
  SparseVec w = v;
  reduce_impl(w, nullptr);
  return w;
}

std::optional<SparseVec> Echelon::solve(const SparseVec& v) const {
  SparseVec w = v;
  SparseVec combo;
  reduce_impl(w, &combo);
  if (!w.empty()) return std::nullopt;
  // v - sum(...) = 0 where combo holds the negated coefficients.
  return sparse_scale(combo, Rational(-1));
}

int matrix_rank(const std::vector<SparseVec>& rows, int ncols) {
  Echelon e(ncols);
  for (const auto& r : rows) e.insert(r);
  return e.rank();
}

std::vector<SparseVec> left_nullspace(const std::vector<SparseVec>& rows, int ncols) {
  Echelon e(ncols, true);
  std::vector<SparseVec> out;
  for (size_t i = 0; i < rows.size(); ++i) {
    if (!e.insert(rows[i])) {
      SparseVec rel = sparse_scale(e.last_dependency(), Rational(-1));
      rel.emplace_back(static_cast<int>(i), Rational(1));
      out.push_back(std::move(rel));
    }
  }
  return out;
}

}  // namespace qgrkit
