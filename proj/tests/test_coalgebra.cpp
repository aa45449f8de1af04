#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "comorita/coalgebra.hpp"
#include "comorita/errors.hpp"

using namespace comorita;

namespace {

std::vector<Ring> test_rings() {
  return {Ring::rationals(), Ring::prime_field(2), Ring::prime_field(5), Ring::integers(), Ring::integers_mod(4)};
}

// Σ_{k,l} e_ik ⊗ e_kl ⊗ e_lj written out directly as a d^3 vector
Matrix matrix_triple_coproduct(const Ring& R, std::size_t n, std::size_t i, std::size_t j) {
  const std::size_t d = n * n;
  Matrix v(R, d * d * d, 1);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l < n; ++l) v.set(((i * n + k) * d + (k * n + l)) * d + (l * n + j), 0, Scalar(1));
  return v;
}

} // namespace

TEST_CASE("builders pass the axioms") {
  for (const Ring& R : test_rings()) {
    for (std::size_t d = 1; d <= 4; ++d) CHECK(check_coalgebra(grouplike(R, d)).passed());
    for (std::size_t n = 1; n <= 3; ++n) CHECK(check_coalgebra(matrix_coalgebra(R, n)).passed());
    Coalgebra s = direct_sum(grouplike(R, 1), matrix_coalgebra(R, 2));
    CHECK(s.rank() == 5);
    CHECK(check_coalgebra(s).passed());
  }
  CHECK(direct_sum(grouplike(Ring::integers(), 1), grouplike(Ring::integers(), 1)) ==
        grouplike(Ring::integers(), 2));
}

TEST_CASE("matrix coalgebra triple coproduct matches the closed formula") {
  const Ring Q = Ring::rationals();
  for (std::size_t n = 1; n <= 3; ++n) {
    Coalgebra c = matrix_coalgebra(Q, n);
    const std::size_t d = c.rank();
    Matrix lhs = kron(Matrix::identity(Q, d), c.delta()) * c.delta();
    Matrix rhs = kron(c.delta(), Matrix::identity(Q, d)) * c.delta();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        CHECK(lhs.column(i * n + j) == matrix_triple_coproduct(Q, n, i, j));
        CHECK(rhs.column(i * n + j) == matrix_triple_coproduct(Q, n, i, j));
      }
  }
}

TEST_CASE("counit failure reports its witness") {
  const Ring Q = Ring::rationals();
  Coalgebra bad(Q, 1, Matrix::from_ints(Q, 1, 1, {1}), Matrix::from_ints(Q, 1, 1, {0}));
  AxiomReport rep = check_coalgebra(bad);
  CHECK_FALSE(rep.passed());
  const AxiomResult* f = rep.first_failure();
  REQUIRE(f != nullptr);
  CHECK(f->axiom == "left counit");
  CHECK(f->witness == std::optional<std::size_t>(0));
  CHECK(rep.items[0].pass);
}

TEST_CASE("shape errors name the expected shape") {
  const Ring Q = Ring::rationals();
  CHECK_THROWS_AS(Coalgebra(Q, 2, Matrix(Q, 3, 2), Matrix(Q, 1, 2)), DimensionError);
  CHECK_THROWS_AS(Coalgebra(Q, 2, Matrix(Q, 4, 2), Matrix(Q, 1, 3)), DimensionError);
  CHECK_THROWS_AS(Coalgebra(Q, 0, Matrix(Q, 0, 0), Matrix(Q, 1, 0)), DimensionError);
}

TEST_CASE("every single-entry mutation is detected") {
  for (const Ring& R : test_rings()) {
    std::vector<Coalgebra> fixtures{grouplike(R, 2), grouplike(R, 3), matrix_coalgebra(R, 2)};
    for (const Coalgebra& c : fixtures) {
      for (std::size_t i = 0; i < c.delta().rows(); ++i)
        for (std::size_t j = 0; j < c.delta().cols(); ++j) {
          Matrix delta = c.delta();
          delta.set(i, j, delta(i, j) + 1);
          AxiomReport rep = check_coalgebra(Coalgebra(R, c.rank(), delta, c.epsilon()));
          REQUIRE_FALSE(rep.passed());
          CHECK(rep.first_failure()->witness.has_value());
        }
      for (std::size_t j = 0; j < c.rank(); ++j) {
        Matrix eps = c.epsilon();
        eps.set(0, j, eps(0, j) + 1);
        AxiomReport rep = check_coalgebra(Coalgebra(R, c.rank(), c.delta(), eps));
        REQUIRE_FALSE(rep.passed());
        CHECK(rep.first_failure()->witness.has_value());
      }
    }
  }
}

TEST_CASE("coalgebra morphisms") {
  const Ring Q = Ring::rationals();
  for (const Coalgebra& c : {grouplike(Q, 3), matrix_coalgebra(Q, 2)})
    CHECK(check_coalgebra_morphism(ModuleMap::identity(c.module()), c, c));
  Coalgebra g2 = grouplike(Q, 2), g1 = grouplike(Q, 1);
  CHECK(check_coalgebra_morphism(ModuleMap(g2.module(), g1.module(), Matrix::from_ints(Q, 1, 2, {1, 1})), g2, g1));
  CHECK_FALSE(check_coalgebra_morphism(ModuleMap::zero(g1.module(), g1.module()), g1, g1));
  CHECK_THROWS_AS(check_coalgebra_morphism(ModuleMap::identity(g2.module()), g1, g1), DimensionError);
}

TEST_CASE("dual algebra of grouplike is the product ring") {
  for (const Ring& R : test_rings()) {
    Algebra a = dual_algebra(grouplike(R, 3));
    CHECK(check_algebra(a).passed());
    CHECK_FALSE(noncommuting_pair(a).has_value());
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t k = 0; k < 3; ++k) CHECK(a.mult(k, i * 3 + j) == Scalar(i == k && j == k ? 1 : 0));
    for (std::size_t k = 0; k < 3; ++k) CHECK(a.unit(k, 0) == 1);
  }
}

TEST_CASE("dual algebra of the matrix coalgebra") {
  const Ring Q = Ring::rationals();
  const std::size_t n = 2, d = 4;
  Coalgebra c = matrix_coalgebra(Q, n);
  Algebra a = dual_algebra(c);
  CHECK(check_algebra(a).passed());
  // (f_ij * f_kl)(e_ab) = f_ij ⊗ f_kl applied to Σ_m e_am ⊗ e_mb
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l)
          for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = 0; q < n; ++q) {
              int expect = 0;
              for (std::size_t m = 0; m < n; ++m) expect += (i == p && j == m && k == m && l == q);
              CHECK(a.mult(p * n + q, (i * n + j) * d + (k * n + l)) == expect);
            }
  auto pair = noncommuting_pair(a);
  REQUIRE(pair.has_value());
  Matrix x(Q, d, 1), y(Q, d, 1);
  x.set(pair->first, 0, Scalar(1));
  y.set(pair->second, 0, Scalar(1));
  CHECK_FALSE(algebra_product(a, x, y) == algebra_product(a, y, x));
}

TEST_CASE("rank one dual algebra is the ring") {
  for (const Ring& R : test_rings()) {
    Algebra a = dual_algebra(grouplike(R, 1));
    CHECK(a.mult == Matrix::identity(R, 1));
    CHECK(a.unit == Matrix::identity(R, 1));
  }
}

TEST_CASE("coalgebra axioms imply dual algebra axioms on fixtures") {
  for (const Ring& R : test_rings())
    for (const Coalgebra& c : {grouplike(R, 2), matrix_coalgebra(R, 2), matrix_coalgebra(R, 3),
                               direct_sum(grouplike(R, 1), matrix_coalgebra(R, 2))}) {
      REQUIRE(check_coalgebra(c).passed());
      CHECK(check_algebra(dual_algebra(c)).passed());
    }
}
