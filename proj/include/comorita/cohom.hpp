#pragma once
#include <optional>
#include <stop_token>
#include <string>
#include <utility>
#include <vector>

#include "comorita/cotensor.hpp"

namespace comorita {

// h(m) = Com_D(m, x)* over a QF ring, with the unit η_m : m -> h(m) ⊗ x.
// Generator k of h(m) pairs with generator k of com as annihilator_k
// (the generator of ann(d_k), where d_k is the k-th relation of com).
struct CohomResult {
  Comodule x, m;
  PresentedModule com;
  PresentedModule module;
  std::vector<Scalar> pairing;
  ModuleMap unit; // m -> module ⊗ x
};

CohomResult cohom(const Comodule& x, const Comodule& m);

// (g ⊗ id) ∘ η for g : h(m) -> w
ModuleMap adjunction_image(const CohomResult& h, const ModuleMap& g);
// the unique g : h(m) -> w with (g ⊗ id) ∘ η = f, for colinear f : m -> w ⊗ x
ModuleMap adjunct(const CohomResult& h, const PresentedModule& w, const ModuleMap& f);
// both composites of the adjunction bijection are identities on generators
bool adjunction_round_trip(const CohomResult& h, const PresentedModule& w);

// λ_w : h(w ⊗ m) -> w ⊗ h(m) is an isomorphism
bool lambda_check(const Comodule& x, const Comodule& m, const PresentedModule& w);
// h(f) for colinear f : m -> n
ModuleMap cohom_map(const CohomResult& hm, const CohomResult& hn, const ModuleMap& f);

// Left C'-comodule structure on h(m) from a left coaction of m (m a C'-D bicomodule).
Comodule cohom_left_coaction(const CohomResult& h, const Comodule& m_left);
// Right C-comodule structure on h(m) from a left coaction of x (x a C-D bicomodule).
Comodule cohom_right_coaction(const CohomResult& h, const Comodule& x_left);

struct CoendCoalgebra {
  Coalgebra coalgebra; // on Com_D(x, x)*
  Bicomodule x;        // left coaction from η
  CohomResult cohom;
};

// throws DomainError when Com_D(x, x)* is not free
CoendCoalgebra coend(const Comodule& x);

// coalgebra map e(x) -> C induced by a left C-coaction on x
ModuleMap coend_to_coalgebra(const CoendCoalgebra& e, const Comodule& x_left);

struct AntiIsoReport {
  bool bijective = false;
  bool unit = false;
  bool reverses = false;
  bool commutative = true;
  // basis pair (i, j) of the dual algebra whose images do not commute
  std::optional<std::pair<std::size_t, std::size_t>> witness;
  bool passed() const { return bijective && unit && reverses; }
};
AntiIsoReport dual_anti_iso_check(const Comodule& x);

struct InjectorReport {
  ProbeReport probe;
  bool injective = false;
  bool injector = false;
  bool cogenerator = false;
  std::vector<std::string> chain;
};
InjectorReport injector_and_exactness_probe(const Comodule& x, const ProbeFamily& probes, std::stop_token stop = {});

struct DeltaResult {
  CohomResult hm, hd;
  Comodule hd_left;     // h(D) as a left D-comodule
  CotensorResult target; // m □ h(D)
  ModuleMap delta;      // h(m) -> m □ h(D)
  bool iso = false;
};
DeltaResult delta_map(const Comodule& x, const Comodule& m);
// delta_map(x, m).iso after the exactness probe; throws ExactnessNotCertified
bool delta_check(const Comodule& x, const Comodule& m, const ProbeFamily& probes);

} // namespace comorita
