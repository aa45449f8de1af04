#pragma once
// Random and hand-built comodules shared by the test binaries.
#include <random>
#include <vector>

#include "comorita/morita.hpp"

namespace fixture {

using namespace comorita;

// rank 2: Δ(1) = 1⊗1, Δ(x) = 1⊗x + x⊗1, ε = (1, 0)
inline Coalgebra divided_power(const Ring& R) {
  Matrix delta(R, 4, 2);
  delta.set(0, 0, Scalar(1));
  delta.set(1, 1, Scalar(1));
  delta.set(2, 1, Scalar(1));
  return Coalgebra(R, 2, delta, Matrix::from_ints(R, 1, 2, {1, 0}));
}

// ρ(m) = m⊗1 + φ(m)⊗x (right) or 1⊗m + x⊗φ(m) (left); needs φ² = 0
inline Comodule divided_power_comodule(const Coalgebra& c, const Matrix& phi, Side side) {
  const Ring& R = c.ring();
  const std::size_t g = phi.rows();
  Matrix rho(R, 2 * g, g);
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = 0; j < g; ++j) {
      if (i == j) rho.set(side == Side::Right ? i * 2 : i, j, Scalar(1));
      rho.set(side == Side::Right ? i * 2 + 1 : g + i, j, phi(i, j));
    }
  return Comodule(side, c, PresentedModule::free(R, g), rho);
}

struct Automorphism {
  Matrix forward, backward;
};

inline Automorphism random_automorphism(const Ring& R, std::size_t n, std::mt19937& rng, int steps = 6) {
  Matrix p = Matrix::identity(R, n), q = Matrix::identity(R, n);
  if (n < 2) return {p, q};
  for (int k = 0; k < steps; ++k) {
    std::size_t i = rng() % n, j = (i + 1 + rng() % (n - 1)) % n;
    long x = static_cast<long>(rng() % 5) - 2;
    Matrix e = Matrix::identity(R, n), f = Matrix::identity(R, n);
    e.set(i, j, Scalar(x));
    f.set(i, j, Scalar(-x));
    p = e * p;
    q = q * f;
  }
  return {p, q};
}

inline Comodule scramble(const Comodule& m, std::mt19937& rng) {
  Automorphism a = random_automorphism(m.ring(), m.generators(), rng);
  return transport(m, ModuleMap(m.carrier(), m.carrier(), a.forward), ModuleMap(m.carrier(), m.carrier(), a.backward));
}

// graded module over grouplike(R, d) with the given degrees
inline Comodule graded(const Coalgebra& c, const std::vector<std::size_t>& degrees, Side side) {
  const Ring& R = c.ring();
  const std::size_t g = degrees.size(), d = c.rank();
  Matrix rho(R, g * d, g);
  for (std::size_t m = 0; m < g; ++m) rho.set(side == Side::Right ? m * d + degrees[m] : degrees[m] * g + m, m, Scalar(1));
  return Comodule(side, c, PresentedModule::free(R, g), rho);
}

// right column (or left row) comodules summed `copies` times
inline Comodule matrix_copies(const Coalgebra& mc, std::size_t n, std::size_t copies, Side side) {
  Comodule one = side == Side::Right ? column_comodule(mc, n) : row_comodule(mc, n);
  Comodule out = one;
  for (std::size_t k = 1; k < copies; ++k) out = direct_sum(out, one);
  return out;
}

struct Setting {
  Coalgebra c;
  bool matrix = false;
  std::size_t n = 0;
};

inline std::vector<Setting> settings(const Ring& R) {
  return {{grouplike(R, 1)}, {grouplike(R, 2)}, {grouplike(R, 3)}, {matrix_coalgebra(R, 2), true, 2}};
}

// a random free-carrier comodule with at most max_gens generators (at least 1)
inline Comodule random_comodule(const Setting& s, Side side, std::size_t max_gens, std::mt19937& rng) {
  if (s.matrix) {
    std::size_t copies = std::max<std::size_t>(1, 1 + rng() % std::max<std::size_t>(1, max_gens / s.n));
    return scramble(matrix_copies(s.c, s.n, copies, side), rng);
  }
  std::size_t g = 1 + rng() % max_gens;
  std::vector<std::size_t> deg(g);
  for (auto& x : deg) x = rng() % s.c.rank();
  return scramble(graded(s.c, deg, side), rng);
}

// D = M^c(2), C = R; M = row comodule, N = column comodule,
// f(e_ij) = y_i ⊗ x_j and g(1) = Σ x_i ⊗ y_i, optionally scaled
inline MoritaContext comatrix_context(const Ring& R, long scale_f = 1, long scale_g = 1) {
  Coalgebra d = matrix_coalgebra(R, 2), c = grouplike(R, 1);
  Bicomodule m = with_trivial_right(row_comodule(d, 2));
  Bicomodule n = with_trivial_left(column_comodule(d, 2));
  Matrix f = Matrix::identity(R, 4).scaled(Scalar(scale_f));
  Matrix g = Matrix::from_ints(R, 4, 1, {1, 0, 0, 1}).scaled(Scalar(scale_g));
  return {d, c, m, n, f, g};
}

// (C, C, C, C, Δ, Δ)
inline MoritaContext trivial_context(const Coalgebra& c) {
  Bicomodule b = regular_bicomodule(c);
  return {c, c, b, b, c.delta(), c.delta()};
}

} // namespace fixture
