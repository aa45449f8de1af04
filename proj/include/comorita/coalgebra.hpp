#pragma once
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "comorita/module.hpp"

namespace comorita {

struct AxiomResult {
  std::string axiom;
  bool pass = true;
  std::optional<std::size_t> witness; // basis column / generator where the sides differ
};

struct AxiomReport {
  std::vector<AxiomResult> items;
  bool passed() const;
  const AxiomResult* first_failure() const;
};

// Free coalgebra with basis c_0..c_{d-1}. Column j of delta holds Δ(c_j) in
// the basis c_i ⊗ c_k at index i*d + k; epsilon is 1 x d.
class Coalgebra {
public:
  Coalgebra() = default;
  Coalgebra(const Ring& ring, std::size_t rank, Matrix delta, Matrix epsilon);

  const Ring& ring() const { return delta_.ring(); }
  std::size_t rank() const { return rank_; }
  const Matrix& delta() const { return delta_; }
  const Matrix& epsilon() const { return epsilon_; }
  PresentedModule module() const { return PresentedModule::free(ring(), rank_); }

  friend bool operator==(const Coalgebra& a, const Coalgebra& b) {
    return a.rank_ == b.rank_ && a.delta_ == b.delta_ && a.epsilon_ == b.epsilon_;
  }

private:
  std::size_t rank_ = 0;
  Matrix delta_;
  Matrix epsilon_;
};

AxiomReport check_coalgebra(const Coalgebra& c);
bool check_coalgebra_morphism(const ModuleMap& pi, const Coalgebra& src, const Coalgebra& dst);

// Convolution dual: f_i * f_j = sum_k Δ[i*d+j, k] f_k; unit ε.
struct Algebra {
  Ring ring = Ring::rationals();
  std::size_t rank = 0;
  Matrix mult; // d x d^2
  Matrix unit; // d x 1
};

Algebra dual_algebra(const Coalgebra& c);
AxiomReport check_algebra(const Algebra& a);
std::optional<std::pair<std::size_t, std::size_t>> noncommuting_pair(const Algebra& a);
// product of two elements given as coordinate columns
Matrix algebra_product(const Algebra& a, const Matrix& x, const Matrix& y);

Coalgebra grouplike(const Ring& ring, std::size_t d);
// basis e_ij at index i*n + j, Δ(e_ij) = Σ_k e_ik ⊗ e_kj, ε(e_ij) = δ_ij
Coalgebra matrix_coalgebra(const Ring& ring, std::size_t n);
Coalgebra direct_sum(const Coalgebra& a, const Coalgebra& b);

} // namespace comorita
