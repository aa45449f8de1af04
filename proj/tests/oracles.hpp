#pragma once
// Brute-force reference computations used to pin expected values.
#include <random>
#include <set>
#include <vector>

#include "comorita/matrix.hpp"
#include "comorita/module.hpp"

namespace oracle {

using comorita::Matrix;
using comorita::PresentedModule;
using comorita::Ring;
using comorita::Scalar;
using Key = std::vector<long>;

inline std::vector<Key> all_vectors(const Ring& R, std::size_t k) {
  const long q = R.modulus();
  std::vector<Key> out;
  Key v(k, 0);
  for (;;) {
    out.push_back(v);
    std::size_t i = 0;
    while (i < k && ++v[i] == q) v[i++] = 0;
    if (i == k) break;
  }
  return out;
}

inline Key apply(const Matrix& a, const Key& x) {
  const long q = a.ring().modulus();
  Key y(a.rows(), 0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    long s = 0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j).get_num().get_si() * x[j];
    y[i] = ((s % q) + q) % q;
  }
  return y;
}

inline std::set<Key> kernel_set(const Matrix& a) {
  std::set<Key> out;
  for (const auto& x : all_vectors(a.ring(), a.cols())) {
    Key y = apply(a, x);
    bool zero = true;
    for (long v : y) zero = zero && v == 0;
    if (zero) out.insert(x);
  }
  return out;
}

// all R-combinations of the columns of g
inline std::set<Key> span_set(const Matrix& g) {
  std::set<Key> out;
  for (const auto& c : all_vectors(g.ring(), g.cols())) out.insert(apply(g, c));
  return out;
}

// |R^g / span(relations)| for a finite ring
inline std::size_t module_order(const PresentedModule& m) {
  std::size_t total = 1;
  for (std::size_t i = 0; i < m.generators(); ++i) total *= static_cast<std::size_t>(m.ring().modulus());
  std::size_t span = m.relations().rows() ? span_set(m.relations().transpose()).size() : 1;
  return total / span;
}

inline Scalar det(Matrix a) {
  const std::size_t n = a.rows();
  std::vector<std::vector<Scalar>> m(n, std::vector<Scalar>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = a(i, j);
  Scalar d = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && sgn(m[p][c]) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(m[p], m[c]);
      d = -d;
    }
    d *= m[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      Scalar f = m[i][c] / m[c][c];
      for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  return d;
}

inline void choose(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                   std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    choose(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

// invariant factors over Z from gcds of k x k minors
inline std::vector<Scalar> smith_by_minors(const Matrix& a) {
  std::vector<Scalar> out;
  const std::size_t lim = std::min(a.rows(), a.cols());
  mpz_class prev = 1;
  for (std::size_t k = 1; k <= lim; ++k) {
    std::vector<std::vector<std::size_t>> rs, cs;
    std::vector<std::size_t> cur;
    choose(a.rows(), k, 0, cur, rs);
    choose(a.cols(), k, 0, cur, cs);
    mpz_class g = 0;
    for (const auto& r : rs)
      for (const auto& c : cs) g = gcd(g, mpz_class(abs(det(a.select_rows(r).select_columns(c)).get_num())));
    out.push_back(Scalar(prev == 0 ? mpz_class(0) : mpz_class(g / prev)));
    prev = g;
  }
  return out;
}

inline Matrix random_matrix(const Ring& R, std::size_t r, std::size_t c, std::mt19937& rng, long lo = -3,
                            long hi = 3) {
  std::uniform_int_distribution<long> dist(lo, hi);
  Matrix m(R, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.set(i, j, Scalar(dist(rng)));
  return m;
}

} // namespace oracle
