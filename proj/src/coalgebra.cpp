#include "comorita/coalgebra.hpp"

#include <map>

#include "comorita/errors.hpp"

namespace comorita {

bool AxiomReport::passed() const {
  for (const auto& it : items)
    if (!it.pass) return false;
  return true;
}

const AxiomResult* AxiomReport::first_failure() const {
  for (const auto& it : items)
    if (!it.pass) return &it;
  return nullptr;
}

Coalgebra::Coalgebra(const Ring& ring, std::size_t rank, Matrix delta, Matrix epsilon)
    : rank_(rank), delta_(std::move(delta)), epsilon_(std::move(epsilon)) {
  check_same_ring(ring, delta_.ring(), "coalgebra delta");
  check_same_ring(ring, epsilon_.ring(), "coalgebra epsilon");
  if (rank == 0) throw DimensionError("coalgebra rank must be positive");
  if (delta_.rows() != rank * rank || delta_.cols() != rank)
    throw DimensionError("delta is " + std::to_string(delta_.rows()) + "x" + std::to_string(delta_.cols()) +
                         ", expected " + std::to_string(rank * rank) + "x" + std::to_string(rank));
  if (epsilon_.rows() != 1 || epsilon_.cols() != rank)
    throw DimensionError("epsilon is " + std::to_string(epsilon_.rows()) + "x" +
                         std::to_string(epsilon_.cols()) + ", expected 1x" + std::to_string(rank));
}

namespace {

using Sparse = std::vector<std::pair<std::size_t, Scalar>>;

std::vector<Sparse> sparse_columns(const Matrix& m) {
  std::vector<Sparse> cols(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (sgn(m(i, j)) != 0) cols[j].emplace_back(i, m(i, j));
  return cols;
}

bool same_vector(const Ring& R, std::map<std::size_t, Scalar> a, const std::map<std::size_t, Scalar>& b) {
  for (const auto& [k, v] : b) a[k] -= v;
  for (const auto& [k, v] : a)
    if (sgn(R.normalize(v)) != 0) return false;
  return true;
}

} // namespace

AxiomReport check_coalgebra(const Coalgebra& c) {
  const Ring& R = c.ring();
  const std::size_t d = c.rank();
  std::vector<Sparse> cols = sparse_columns(c.delta());
  AxiomResult coassoc{"coassociativity", true, {}};
  AxiomResult left{"left counit", true, {}};
  AxiomResult right{"right counit", true, {}};
  for (std::size_t j = 0; j < d; ++j) {
    std::map<std::size_t, Scalar> lhs, rhs;
    for (const auto& [ab, x] : cols[j]) {
      std::size_t a = ab / d, b = ab % d;
      // (Δ ⊗ id)
      for (const auto& [pq, y] : cols[a]) lhs[pq * d + b] += x * y;
      // (id ⊗ Δ)
      for (const auto& [pq, y] : cols[b]) rhs[a * d * d + pq] += x * y;
    }
    if (coassoc.pass && !same_vector(R, lhs, rhs)) {
      coassoc.pass = false;
      coassoc.witness = j;
    }
    std::map<std::size_t, Scalar> el, er, id;
    id[j] = 1;
    for (const auto& [ab, x] : cols[j]) {
      std::size_t a = ab / d, b = ab % d;
      el[b] += c.epsilon()(0, a) * x;
      er[a] += c.epsilon()(0, b) * x;
    }
    if (left.pass && !same_vector(R, el, id)) {
      left.pass = false;
      left.witness = j;
    }
    if (right.pass && !same_vector(R, er, id)) {
      right.pass = false;
      right.witness = j;
    }
  }
  return {{coassoc, left, right}};
}

bool check_coalgebra_morphism(const ModuleMap& pi, const Coalgebra& src, const Coalgebra& dst) {
  const Matrix& p = pi.matrix();
  if (p.rows() != dst.rank() || p.cols() != src.rank())
    throw DimensionError("coalgebra morphism has shape " + std::to_string(p.rows()) + "x" +
                         std::to_string(p.cols()) + ", expected " + std::to_string(dst.rank()) + "x" +
                         std::to_string(src.rank()));
  if (!(dst.delta() * p == kron(p, p) * src.delta())) return false;
  return dst.epsilon() * p == src.epsilon();
}

Algebra dual_algebra(const Coalgebra& c) {
  const std::size_t d = c.rank();
  Algebra a{c.ring(), d, Matrix(c.ring(), d, d * d), c.epsilon().transpose()};
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t ij = 0; ij < d * d; ++ij) a.mult.raw(k, ij) = c.delta()(ij, k);
  return a;
}

AxiomReport check_algebra(const Algebra& a) {
  const Ring& R = a.ring;
  const std::size_t d = a.rank;
  Matrix id = Matrix::identity(R, d);
  Matrix l = a.mult * kron(a.mult, id), r = a.mult * kron(id, a.mult);
  Matrix ul = a.mult * kron(a.unit, id), ur = a.mult * kron(id, a.unit);
  auto witness = [](const Matrix& x, const Matrix& y) -> std::optional<std::size_t> {
    for (std::size_t j = 0; j < x.cols(); ++j)
      if (!(x.column(j) == y.column(j))) return j;
    return std::nullopt;
  };
  AxiomReport rep;
  auto w = witness(l, r);
  rep.items.push_back({"associativity", !w, w});
  w = witness(ul, id);
  rep.items.push_back({"left unit", !w, w});
  w = witness(ur, id);
  rep.items.push_back({"right unit", !w, w});
  return rep;
}

std::optional<std::pair<std::size_t, std::size_t>> noncommuting_pair(const Algebra& a) {
  const std::size_t d = a.rank;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j)
      if (!(a.mult.column(i * d + j) == a.mult.column(j * d + i))) return std::make_pair(i, j);
  return std::nullopt;
}

Matrix algebra_product(const Algebra& a, const Matrix& x, const Matrix& y) { return a.mult * kron(x, y); }

Coalgebra grouplike(const Ring& ring, std::size_t d) {
  Matrix delta(ring, d * d, d), eps(ring, 1, d);
  for (std::size_t i = 0; i < d; ++i) {
    delta.set(i * d + i, i, Scalar(1));
    eps.set(0, i, Scalar(1));
  }
  return Coalgebra(ring, d, delta, eps);
}

Coalgebra matrix_coalgebra(const Ring& ring, std::size_t n) {
  const std::size_t d = n * n;
  Matrix delta(ring, d * d, d), eps(ring, 1, d);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) delta.set((i * n + k) * d + (k * n + j), i * n + j, Scalar(1));
  for (std::size_t i = 0; i < n; ++i) eps.set(0, i * n + i, Scalar(1));
  return Coalgebra(ring, d, delta, eps);
}

Coalgebra direct_sum(const Coalgebra& a, const Coalgebra& b) {
  check_same_ring(a.ring(), b.ring(), "coalgebra direct sum");
  const std::size_t da = a.rank(), db = b.rank(), d = da + db;
  Matrix delta(a.ring(), d * d, d), eps(a.ring(), 1, d);
  for (std::size_t j = 0; j < da; ++j) {
    eps.raw(0, j) = a.epsilon()(0, j);
    for (std::size_t i = 0; i < da; ++i)
      for (std::size_t k = 0; k < da; ++k) delta.raw(i * d + k, j) = a.delta()(i * da + k, j);
  }
  for (std::size_t j = 0; j < db; ++j) {
    eps.raw(0, da + j) = b.epsilon()(0, j);
    for (std::size_t i = 0; i < db; ++i)
      for (std::size_t k = 0; k < db; ++k) delta.raw((da + i) * d + da + k, da + j) = b.delta()(i * db + k, j);
  }
  return Coalgebra(a.ring(), d, delta, eps);
}

} // namespace comorita
