#include "comorita/normal_form.hpp"

#include <algorithm>
#include <utility>

#include "comorita/errors.hpp"

namespace comorita {

namespace {

using Row = std::vector<Scalar>;
using Rows = std::vector<Row>;

Rows to_rows(const Matrix& m, std::size_t extra = 0) {
  Rows r(m.rows(), Row(m.cols() + extra));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r[i][j] = m(i, j);
  return r;
}

Matrix from_rows_block(const Ring& R, const Rows& rows, std::size_t c0, std::size_t nc) {
  Matrix m(R, rows.size(), nc);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < nc; ++j) m.raw(i, j) = rows[i][c0 + j];
  return m;
}

void pair_op(const Ring& R, Scalar& a, Scalar& b, const Scalar& s, const Scalar& t, const Scalar& u,
             const Scalar& v) {
  if (sgn(a) == 0 && sgn(b) == 0) return;
  Scalar na = R.normalize(s * a + t * b);
  Scalar nb = R.normalize(u * a + v * b);
  a = std::move(na);
  b = std::move(nb);
}

void rows_pair(const Ring& R, Row& a, Row& b, const Xgcd& x) {
  for (std::size_t k = 0; k < a.size(); ++k) pair_op(R, a[k], b[k], x.s, x.t, x.u, x.v);
}

void row_scale(const Ring& R, Row& a, const Scalar& c) {
  for (auto& x : a)
    if (sgn(x) != 0) x = R.mul(x, c);
}

// a -= q * b
void row_axpy(const Ring& R, Row& a, const Scalar& q, const Row& b) {
  for (std::size_t k = 0; k < a.size(); ++k)
    if (sgn(b[k]) != 0) a[k] = R.normalize(a[k] - q * b[k]);
}

// Reduce entry a[c] against pivot row b with canonical pivot p.
void reduce_against(const Ring& R, Row& a, const Row& b, std::size_t c) {
  if (sgn(a[c]) == 0) return;
  const Scalar& p = b[c];
  Scalar rem = R.remainder(a[c], p);
  if (rem == a[c]) return;
  Scalar q = R.quotient(R.sub(a[c], rem), p);
  row_axpy(R, a, q, b);
}

std::size_t first_nonzero(const Row& r, std::size_t cols) {
  for (std::size_t j = 0; j < cols; ++j)
    if (sgn(r[j]) != 0) return j;
  return cols;
}

// Row echelon over the first `cols` entries; rows may carry extra columns
// that are transformed along. Returns the rank.
std::size_t echelon_pass(const Ring& R, Rows& rows, std::size_t cols) {
  std::size_t t = 0;
  for (std::size_t c = 0; c < cols && t < rows.size(); ++c) {
    std::size_t best = rows.size();
    for (std::size_t i = t; i < rows.size(); ++i) {
      if (sgn(rows[i][c]) == 0) continue;
      if (best == rows.size() || R.better_pivot(rows[i][c], rows[best][c])) best = i;
    }
    if (best == rows.size()) continue;
    std::swap(rows[t], rows[best]);
    for (std::size_t i = t + 1; i < rows.size(); ++i) {
      if (sgn(rows[i][c]) == 0) continue;
      rows_pair(R, rows[t], rows[i], R.xgcd(rows[t][c], rows[i][c]));
    }
    Scalar unit;
    R.ideal_generator(rows[t][c], &unit);
    if (unit != 1) row_scale(R, rows[t], unit);
    for (std::size_t i = 0; i < t; ++i) reduce_against(R, rows[i], rows[t], c);
    ++t;
  }
  return t;
}

// Full canonical echelon; for Z/n adds annihilator rows until the span is
// closed (Howell property). Zero rows are dropped when `drop_zero` is set.
std::size_t canonical_rows(const Ring& R, Rows& rows, std::size_t cols, bool drop_zero) {
  std::size_t rank = echelon_pass(R, rows, cols);
  if (R.kind() != RingKind::IntegersMod) {
    if (drop_zero) rows.resize(rank);
    return rank;
  }
  const Scalar n(R.modulus());
  for (;;) {
    rows.resize(rank);
    Rows extra;
    for (std::size_t r = 0; r < rank; ++r) {
      std::size_t c = first_nonzero(rows[r], cols);
      const Scalar& p = rows[r][c];
      if (p == 1) continue;
      Row w = rows[r];
      row_scale(R, w, Scalar(n / p));
      for (std::size_t q = 0; q < rank; ++q) {
        std::size_t cq = first_nonzero(rows[q], cols);
        reduce_against(R, w, rows[q], cq);
      }
      if (first_nonzero(w, cols) < cols) extra.push_back(std::move(w));
    }
    if (extra.empty()) break;
    for (auto& w : extra) rows.push_back(std::move(w));
    rank = echelon_pass(R, rows, cols);
  }
  return rank;
}

bool all_monomial(const Matrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    int nz = 0;
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (sgn(m(i, j)) != 0 && ++nz > 1) return false;
  }
  return true;
}

} // namespace

CanonicalForm canonical_form(const Matrix& m, FormMode mode) {
  const Ring& R = m.ring();
  if (mode == FormMode::Smith) {
    Diagonalization d = diagonalize(m, false, true);
    Matrix U = Matrix::identity(R, m.rows());
    apply_log(d.log, U);
    return {d.diag, U, d.V, FormKind::SNF};
  }
  Rows rows = to_rows(m, m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) rows[i][m.cols() + i] = 1;
  bool howell = R.kind() == RingKind::IntegersMod;
  canonical_rows(R, rows, m.cols(), howell);
  FormKind kind = R.is_field() ? FormKind::RREF : howell ? FormKind::Howell : FormKind::HNF;
  return {from_rows_block(R, rows, 0, m.cols()), from_rows_block(R, rows, m.cols(), m.rows()),
          Matrix::identity(R, m.cols()), kind};
}

Matrix echelon_rows(const Matrix& m) {
  const Ring& R = m.ring();
  if (all_monomial(m)) {
    std::vector<Scalar> g(m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j)
        if (sgn(m(i, j)) != 0) g[j] = R.gcd(g[j], m(i, j));
    std::vector<std::size_t> live;
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (sgn(g[j]) != 0) live.push_back(j);
    Matrix out(R, live.size(), m.cols());
    for (std::size_t k = 0; k < live.size(); ++k) out.raw(k, live[k]) = g[live[k]];
    return out;
  }
  Rows rows = to_rows(m);
  canonical_rows(R, rows, m.cols(), true);
  return from_rows_block(R, rows, 0, m.cols());
}

Matrix reduce_columns(const Matrix& e, const Matrix& v) {
  const Ring& R = v.ring();
  if (e.cols() != v.rows()) throw DimensionError("reduce_columns shape mismatch");
  Rows er = to_rows(e);
  std::vector<std::size_t> piv(er.size());
  for (std::size_t r = 0; r < er.size(); ++r) piv[r] = first_nonzero(er[r], e.cols());
  Matrix out = v;
  Row w(v.rows());
  for (std::size_t c = 0; c < v.cols(); ++c) {
    for (std::size_t i = 0; i < v.rows(); ++i) w[i] = v(i, c);
    for (std::size_t r = 0; r < er.size(); ++r) reduce_against(R, w, er[r], piv[r]);
    for (std::size_t i = 0; i < v.rows(); ++i) out.raw(i, c) = w[i];
  }
  return out;
}

void apply_log(const std::vector<RowOp>& log, Matrix& b) {
  const Ring& R = b.ring();
  for (const RowOp& op : log) {
    for (std::size_t c = 0; c < b.cols(); ++c) {
      switch (op.kind) {
      case RowOp::Swap:
        std::swap(b.raw(op.i, c), b.raw(op.j, c));
        break;
      case RowOp::Pair:
        pair_op(R, b.raw(op.i, c), b.raw(op.j, c), op.s, op.t, op.u, op.v);
        break;
      case RowOp::Scale:
        if (sgn(b(op.i, c)) != 0) b.raw(op.i, c) = R.mul(b(op.i, c), op.s);
        break;
      }
    }
  }
}

Diagonalization diagonalize(const Matrix& a, bool want_inverse, bool chain) {
  const Ring& R = a.ring();
  const std::size_t m = a.rows(), k = a.cols();
  Rows A = to_rows(a);
  Rows V(k, Row(k)), Vi;
  for (std::size_t i = 0; i < k; ++i) V[i][i] = 1;
  if (want_inverse) Vi = V;
  std::vector<RowOp> log;

  auto col_pair = [&](std::size_t t, std::size_t j, const Xgcd& x) {
    for (std::size_t i = 0; i < m; ++i) pair_op(R, A[i][t], A[i][j], x.s, x.t, x.u, x.v);
    for (std::size_t i = 0; i < k; ++i) pair_op(R, V[i][t], V[i][j], x.s, x.t, x.u, x.v);
    if (want_inverse) {
      Scalar det = R.sub(R.mul(x.s, x.v), R.mul(x.t, x.u));
      Scalar di = R.inverse(det);
      // inverse of [[s,u],[t,v]] acting on rows t, j
      Scalar a11 = R.mul(di, x.v), a12 = R.mul(di, R.neg(x.u));
      Scalar a21 = R.mul(di, R.neg(x.t)), a22 = R.mul(di, x.s);
      for (std::size_t c = 0; c < k; ++c) pair_op(R, Vi[t][c], Vi[j][c], a11, a12, a21, a22);
    }
  };
  auto col_swap = [&](std::size_t t, std::size_t j) {
    if (t == j) return;
    for (std::size_t i = 0; i < m; ++i) std::swap(A[i][t], A[i][j]);
    for (std::size_t i = 0; i < k; ++i) std::swap(V[i][t], V[i][j]);
    if (want_inverse) std::swap(Vi[t], Vi[j]);
  };

  std::size_t t = 0;
  const std::size_t lim = std::min(m, k);
  while (t < lim) {
    std::size_t bi = m, bj = k;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < k; ++j) {
        if (sgn(A[i][j]) == 0) continue;
        if (bi == m || R.better_pivot(A[i][j], A[bi][bj])) {
          bi = i;
          bj = j;
        }
      }
    if (bi == m) break;
    if (bi != t) {
      std::swap(A[t], A[bi]);
      log.push_back({RowOp::Swap, t, bi, 0, 0, 0, 0});
    }
    col_swap(t, bj);
    for (;;) {
      for (std::size_t i = t + 1; i < m; ++i) {
        if (sgn(A[i][t]) == 0) continue;
        Xgcd x = R.xgcd(A[t][t], A[i][t]);
        rows_pair(R, A[t], A[i], x);
        log.push_back({RowOp::Pair, t, i, x.s, x.t, x.u, x.v});
      }
      for (std::size_t j = t + 1; j < k; ++j) {
        if (sgn(A[t][j]) == 0) continue;
        col_pair(t, j, R.xgcd(A[t][t], A[t][j]));
      }
      bool dirty = false;
      for (std::size_t i = t + 1; i < m && !dirty; ++i) dirty = sgn(A[i][t]) != 0;
      if (dirty) continue;
      if (chain) {
        std::size_t bad = m;
        for (std::size_t i = t + 1; i < m && bad == m; ++i)
          for (std::size_t j = t + 1; j < k; ++j)
            if (!R.divides(A[t][t], A[i][j])) {
              bad = i;
              break;
            }
        if (bad != m) {
          for (std::size_t c = 0; c < k; ++c) A[t][c] = R.add(A[t][c], A[bad][c]);
          log.push_back({RowOp::Pair, t, bad, 1, 1, 0, 1});
          continue;
        }
      }
      break;
    }
    Scalar unit;
    R.ideal_generator(A[t][t], &unit);
    if (unit != 1) {
      row_scale(R, A[t], unit);
      log.push_back({RowOp::Scale, t, t, unit, 0, 0, 0});
    }
    ++t;
  }

  Diagonalization out;
  out.diag = from_rows_block(R, A, 0, k);
  out.log = std::move(log);
  out.V = from_rows_block(R, V, 0, k);
  if (want_inverse) out.V_inv = from_rows_block(R, Vi, 0, k);
  out.steps = t;
  out.d.resize(lim);
  for (std::size_t i = 0; i < lim; ++i) out.d[i] = A[i][i];
  return out;
}

std::vector<Scalar> invariant_factors(const Matrix& a) { return diagonalize(a, false, true).d; }

Matrix kernel_basis(const Matrix& a) {
  const Ring& R = a.ring();
  const std::size_t k = a.cols();
  Diagonalization d = diagonalize(a);
  std::vector<Row> gens;
  for (std::size_t i = 0; i < k; ++i) {
    Scalar c = i < d.d.size() ? R.annihilator(d.d[i]) : Scalar(1);
    if (sgn(c) == 0) continue;
    Row g(k);
    for (std::size_t r = 0; r < k; ++r) g[r] = R.mul(c, d.V(r, i));
    gens.push_back(std::move(g));
  }
  Matrix gm(R, gens.size(), k);
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = 0; j < k; ++j) gm.raw(i, j) = gens[i][j];
  return echelon_rows(gm).transpose();
}

std::optional<Matrix> solve(const Matrix& a, const Matrix& b) {
  const Ring& R = a.ring();
  if (a.rows() != b.rows()) throw DimensionError("solve: row mismatch");
  const std::size_t m = a.rows(), k = a.cols();
  Diagonalization d = diagonalize(a);
  Matrix y = b;
  apply_log(d.log, y);
  Matrix z(R, k, b.cols());
  for (std::size_t c = 0; c < b.cols(); ++c) {
    for (std::size_t i = 0; i < m; ++i) {
      if (i < d.d.size()) {
        if (!R.divides(d.d[i], y(i, c))) return std::nullopt;
        if (sgn(d.d[i]) != 0) z.raw(i, c) = R.quotient(y(i, c), d.d[i]);
      } else if (sgn(y(i, c)) != 0) {
        return std::nullopt;
      }
    }
  }
  return d.V * z;
}

} // namespace comorita
