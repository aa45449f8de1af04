#pragma once
#include "comorita/coalgebra.hpp"

namespace comorita {

enum class Side { Right, Left };
const char* side_name(Side s);

// Right: ρ : M -> M ⊗ C (index m*d + c). Left: ρ : M -> C ⊗ M (index c*g + m).
class Comodule {
public:
  Comodule() = default;
  Comodule(Side side, Coalgebra coalgebra, PresentedModule carrier, const Matrix& coaction);

  Side side() const { return side_; }
  const Coalgebra& coalgebra() const { return coalgebra_; }
  const PresentedModule& carrier() const { return carrier_; }
  const ModuleMap& coaction() const { return coaction_; }
  const Ring& ring() const { return coalgebra_.ring(); }
  std::size_t generators() const { return carrier_.generators(); }

private:
  Side side_ = Side::Right;
  Coalgebra coalgebra_;
  PresentedModule carrier_;
  ModuleMap coaction_;
};

// Left C-coaction and right D-coaction on one carrier.
class Bicomodule {
public:
  Bicomodule() = default;
  Bicomodule(const Comodule& left, const Comodule& right);

  const Coalgebra& left_coalgebra() const { return left_.coalgebra(); }
  const Coalgebra& right_coalgebra() const { return right_.coalgebra(); }
  const PresentedModule& carrier() const { return left_.carrier(); }
  const ModuleMap& left_coaction() const { return left_.coaction(); }
  const ModuleMap& right_coaction() const { return right_.coaction(); }
  const Comodule& as_left() const { return left_; }
  const Comodule& as_right() const { return right_; }
  const Ring& ring() const { return left_.ring(); }

private:
  Comodule left_, right_;
};

PresentedModule coaction_codomain(Side side, const Coalgebra& c, const PresentedModule& carrier);

AxiomReport check_comodule(const Comodule& m);
AxiomReport check_bicomodule(const Bicomodule& m);

bool is_colinear(const ModuleMap& f, const Comodule& m, const Comodule& n);

// Com(m, n) with ambient n ⊗ R^{g_m} (Hom layout, see hom_module).
PresentedModule com_hom(const Comodule& m, const Comodule& n);
// matrix of the k-th generator of com (a result of com_hom(m, n))
Matrix com_generator(const Comodule& m, const Comodule& n, const PresentedModule& com, std::size_t k);
// is the identity of the carrier colinear (membership in com_hom(m, m))
bool contains_identity(const Comodule& m);

// Right: W ⊗ M with id ⊗ ρ. Left: M ⊗ W with ρ ⊗ id.
Comodule trivial_comodule(const PresentedModule& w, const Comodule& m);
// X ⊗ C (right) or C ⊗ X (left) with the coaction from Δ
Comodule cofree_comodule(const PresentedModule& x, const Coalgebra& c, Side side);
bool cofree_adjunction_check(const Comodule& m, const PresentedModule& x);

// coaction restricted to a submodule (sub must have ambient = carrier)
Comodule restrict_comodule(const Comodule& m, const PresentedModule& sub);
Comodule subcomodule(const Comodule& m, const Matrix& elements);

struct QuotientComodule {
  Comodule comodule;
  ModuleMap projection;
};
QuotientComodule quotient_comodule(const Comodule& m, const Matrix& elements);
// carry a comodule structure across an isomorphism of carriers
Comodule transport(const Comodule& m, const ModuleMap& iso, const ModuleMap& inverse);

Comodule regular_comodule(const Coalgebra& c, Side side);
Bicomodule regular_bicomodule(const Coalgebra& c);
// rank one comodule with ρ(m) = m ⊗ c_k (c_k must be grouplike)
Comodule point_comodule(const Coalgebra& c, std::size_t k, Side side);
// over matrix_coalgebra(n): ρ(x_j) = Σ_i x_i ⊗ e_ij
Comodule column_comodule(const Coalgebra& matrix_coalg, std::size_t n);
// over matrix_coalgebra(n), left: ρ(y_i) = Σ_j e_ij ⊗ y_j
Comodule row_comodule(const Coalgebra& matrix_coalg, std::size_t n);
Comodule direct_sum(const Comodule& a, const Comodule& b);
// pair a one-sided comodule with the trivial coaction of grouplike(R, 1) on the other side
Bicomodule with_trivial_left(const Comodule& right);
Bicomodule with_trivial_right(const Comodule& left);

} // namespace comorita
