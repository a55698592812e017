#include "steinext/linalg.hpp"

#include <algorithm>

namespace steinext {

SparseVec unit_vec(int i, const Q& c) {
  if (c == 0) return {};
  return {{i, c}};
}

SparseVec axpy(const SparseVec& y, const Q& a, const SparseVec& x) {
  if (a == 0 || x.empty()) return y;
  SparseVec out;
  out.reserve(y.size() + x.size());
  size_t p = 0, q = 0;
  while (p < y.size() || q < x.size()) {
    if (q == x.size() || (p < y.size() && y[p].first < x[q].first)) {
      out.push_back(y[p++]);
    } else if (p == y.size() || x[q].first < y[p].first) {
      out.emplace_back(x[q].first, a * x[q].second);
      ++q;
    } else {
      Q s = y[p].second + a * x[q].second;
      if (s != 0) out.emplace_back(y[p].first, std::move(s));
      ++p;
      ++q;
    }
  }
  return out;
}

SparseVec scaled(const SparseVec& x, const Q& a) {
  if (a == 0) return {};
  SparseVec out(x);
  for (auto& e : out) e.second *= a;
  return out;
}

Q coeff(const SparseVec& x, int i) {
  auto it = std::lower_bound(x.begin(), x.end(), i, [](const auto& e, int k) { return e.first < k; });
  if (it != x.end() && it->first == i) return it->second;
  return 0;
}

bool is_zero(const SparseVec& x) { return x.empty(); }

SparseVec normalize(std::vector<std::pair<int, Q>> raw) {
  std::sort(raw.begin(), raw.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseVec out;
  for (auto& e : raw) {
    if (!out.empty() && out.back().first == e.first) {
      out.back().second += e.second;
      if (out.back().second == 0) out.pop_back();
    } else if (e.second != 0) {
      out.push_back(std::move(e));
    }
  }
  return out;
}

SparseVec SparseMatrix::apply(const SparseVec& x) const {
  SparseVec out;
  for (const auto& [j, c] : x) {
    if (j < 0 || j >= cols) throw std::out_of_range("SparseMatrix::apply: index");
    out = axpy(out, c, col[j]);
  }
  return out;
}

SparseMatrix SparseMatrix::compose(const SparseMatrix& rhs) const {
  if (cols != rhs.rows) throw std::invalid_argument("compose: shape mismatch");
  SparseMatrix out(rows, rhs.cols);
  for (int j = 0; j < rhs.cols; ++j) out.col[j] = apply(rhs.col[j]);
  return out;
}

bool SparseMatrix::is_zero() const {
  return std::all_of(col.begin(), col.end(), [](const SparseVec& c) { return c.empty(); });
}

std::vector<std::vector<Q>> SparseMatrix::dense() const {
  std::vector<std::vector<Q>> d(rows, std::vector<Q>(cols));
  for (int j = 0; j < cols; ++j)
    for (const auto& [i, c] : col[j]) d[i][j] = c;
  return d;
}

Echelon::Reduced Echelon::reduce(const SparseVec& v) const {
  Reduced r;
  r.residual = v;
  size_t pos = 0;
  while (pos < r.residual.size()) {
    int j = r.residual[pos].first;
    int row = j < ambient_ ? pivot_row_[j] : -1;
    if (row < 0) {
      ++pos;
      continue;
    }
    Q c = r.residual[pos].second;
    r.residual = axpy(r.residual, -c, rows_[row]);
    if (!combos_[row].empty()) r.combo = axpy(r.combo, c, combos_[row]);
  }
  return r;
}

bool Echelon::insert(const SparseVec& v, int label) {
  if (!v.empty() && v.back().first >= ambient_) throw std::out_of_range("Echelon::insert: index beyond ambient");
  Reduced r = reduce(v);
  if (r.residual.empty()) return false;
  Q lead = r.residual.front().second;
  Q inv = 1 / lead;
  SparseVec combo = scaled(r.combo, -1);
  if (label >= 0) combo = axpy(combo, 1, unit_vec(label));
  pivot_row_[r.residual.front().first] = int(rows_.size());
  rows_.push_back(scaled(r.residual, inv));
  combos_.push_back(scaled(combo, inv));
  return true;
}

RankKernelImage rank_kernel_image(const SparseMatrix& M, bool want_kernel) {
  RankKernelImage out;
  out.kernel.ambient = M.cols;
  out.image.ambient = M.rows;
  Echelon ech(M.rows);
  for (int j = 0; j < M.cols; ++j) {
    if (want_kernel) {
      auto red = ech.reduce(M.col[j]);
      if (red.residual.empty()) {
        out.kernel.basis.push_back(axpy(unit_vec(j), -1, red.combo));
        continue;
      }
      ech.insert(M.col[j], j);
    } else {
      ech.insert(M.col[j], -1);
    }
  }
  out.rank = ech.rank();
  out.image.basis = ech.rows();
  return out;
}

std::optional<SparseVec> membership(const SparseVec& v, const Subspace& W) {
  Echelon ech(W.ambient);
  for (int i = 0; i < W.dim(); ++i) ech.insert(W.basis[i], i);
  auto r = ech.reduce(v);
  if (!r.residual.empty()) return std::nullopt;
  return r.combo;
}

SparseVec quotient_coordinates(const SparseVec& v, const Subspace& W, const std::vector<SparseVec>& B) {
  Echelon ech(W.ambient);
  for (const auto& w : W.basis) ech.insert(w);
  for (size_t i = 0; i < B.size(); ++i)
    if (!ech.insert(B[i], int(i))) throw std::invalid_argument("quotient_coordinates: family not independent modulo W");
  auto r = ech.reduce(v);
  if (!r.residual.empty()) throw NotInSpan("vector not in W + span(B)");
  return r.combo;
}

int dense_rank(std::vector<std::vector<Q>> a) {
  int rank = 0;
  size_t rows = a.size();
  size_t cols = rows ? a[0].size() : 0;
  for (size_t c = 0; c < cols && size_t(rank) < rows; ++c) {
    size_t p = rank;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[rank]);
    for (size_t r = 0; r < rows; ++r) {
      if (r == size_t(rank) || a[r][c] == 0) continue;
      Q f = a[r][c] / a[rank][c];
      for (size_t k = c; k < cols; ++k) a[r][k] -= f * a[rank][k];
    }
    ++rank;
  }
  return rank;
}

int span_rank(const std::vector<SparseVec>& vs, int ambient) {
  Echelon ech(ambient);
  for (const auto& v : vs) ech.insert(v);
  return ech.rank();
}

Subspace span_of(const std::vector<SparseVec>& vs, int ambient) {
  Echelon ech(ambient);
  for (const auto& v : vs) ech.insert(v);
  return {ambient, ech.rows()};
}

Subspace intersect(const Subspace& A, const Subspace& B) {
  // kernel of [A | -B] gives pairs (a, b) with Σ a_i A_i = Σ b_j B_j
  SparseMatrix M(A.ambient, A.dim() + B.dim());
  for (int i = 0; i < A.dim(); ++i) M.col[i] = A.basis[i];
  for (int j = 0; j < B.dim(); ++j) M.col[A.dim() + j] = scaled(B.basis[j], -1);
  auto rki = rank_kernel_image(M);
  std::vector<SparseVec> vs;
  for (const auto& k : rki.kernel.basis) {
    SparseVec v;
    for (const auto& [i, c] : k)
      if (i < A.dim()) v = axpy(v, c, A.basis[i]);
    vs.push_back(std::move(v));
  }
  return span_of(vs, A.ambient);
}

bool subspace_contains(const Subspace& big, const Subspace& small) {
  Echelon ech(big.ambient);
  for (const auto& v : big.basis) ech.insert(v);
  for (const auto& v : small.basis)
    if (!ech.contains(v)) return false;
  return true;
}

Subspace annihilator(const Subspace& W) {
  // rows of W as a matrix; annihilator = kernel of the map x -> (<w_i, x>)_i
  SparseMatrix M(W.dim(), W.ambient);
  for (int i = 0; i < W.dim(); ++i)
    for (const auto& [j, c] : W.basis[i]) M.col[j].emplace_back(i, c);
  auto rki = rank_kernel_image(M);
  return rki.kernel;
}

Q dot(const SparseVec& a, const SparseVec& b) {
  Q s = 0;
  size_t p = 0, q = 0;
  while (p < a.size() && q < b.size()) {
    if (a[p].first < b[q].first) {
      ++p;
    } else if (b[q].first < a[p].first) {
      ++q;
    } else {
      s += a[p].second * b[q].second;
      ++p;
      ++q;
    }
  }
  return s;
}

}  // namespace steinext
