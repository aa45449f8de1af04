#pragma once
#include <stop_token>
#include <string>
#include <vector>

#include "comorita/comodule.hpp"

namespace comorita {

// m □_C n as the kernel of α = ρ_m ⊗ id - id ⊗ ρ_n inside m ⊗ n.
struct CotensorResult {
  PresentedModule module; // ambient m ⊗ n
  ModuleMap alpha;        // m ⊗ n -> m ⊗ C ⊗ n
  ModuleMap inclusion;    // module -> m ⊗ n
  std::size_t left_generators = 0, right_generators = 0;
};

CotensorResult cotensor(const Comodule& m, const Comodule& n);

// Canonical maps between m □_C C (or C □_C m for left m) and m.
struct CounitIso {
  CotensorResult cotensor;
  ModuleMap forward;  // cotensor -> m
  ModuleMap backward; // m -> cotensor
  bool verified = false;
};
CounitIso counit_iso(const Comodule& m);

// f □ g between two cotensors, given maps of the factors
ModuleMap cotensor_map(const CotensorResult& src, const CotensorResult& dst, const ModuleMap& f, const ModuleMap& g);

// Right coaction on a □ l from a right coaction of the second factor l.
// Throws PurityObstruction when id ⊗ ρ does not land in (a □ l) ⊗ D.
Comodule induced_right(const CotensorResult& cot, const Comodule& second_right);
// Left coaction on a □ l from a left coaction of the first factor a.
Comodule induced_left(const CotensorResult& cot, const Comodule& first_left);
Comodule induced_comodule(const Comodule& m, const Bicomodule& l);
Comodule induced_left_comodule(const Bicomodule& l, const Comodule& n);
// a: C-D, b: D-E; result is a C-E bicomodule on a □_D b
Bicomodule cotensor_bicomodule(const Bicomodule& a, const Bicomodule& b);

struct CotensorPurityTest {
  PresentedModule w;
  bool pure = false;      // w ⊗ (m □ n) -> w ⊗ m ⊗ n injective
  bool gamma_iso = false; // w ⊗ (m □ n) -> (w ⊗ m) □ n
  bool mu_iso = false;    // (m □ n) ⊗ w -> m □ (n ⊗ w)
  bool agree() const { return pure == gamma_iso && gamma_iso == mu_iso; }
};

struct CotensorPurity {
  bool pure = true;
  bool consistent = true;
  std::string family;
  std::vector<CotensorPurityTest> tests;
};

ModuleMap gamma_map(const PresentedModule& w, const Comodule& m, const Comodule& n);
ModuleMap mu_map(const PresentedModule& w, const Comodule& m, const Comodule& n);
CotensorPurity purity_certificate(const Comodule& m, const Comodule& n, PurityMode mode = PurityMode::Complete,
                                  const std::vector<PresentedModule>& family = {});

struct AssocReport {
  bool left_pure = false;  // m □ l is n-pure in m ⊗ l
  bool right_pure = false; // l □ n is m-pure in l ⊗ n
  bool psi2_iso = false;
  bool psi3_iso = false;
  bool psi1_defined = false;
  bool psi1_iso = false;
  PresentedModule left_module;  // (m □ l) □ n
  PresentedModule right_module; // m □ (l □ n)
  bool preconditions() const { return left_pure && right_pure; }
  // preconditions hold but the comparison map is not an isomorphism
  bool violation() const { return preconditions() && !psi1_iso; }
};

AssocReport associativity_check(const Comodule& m, const Bicomodule& l, const Comodule& n,
                                std::stop_token stop = {});

// Short exact sequences of comodules used to probe exactness of m □ -.
struct ShortExactSequence {
  Comodule n1, n2, n3;
  ModuleMap i, p; // n1 -> n2 -> n3
  std::string label;
};

struct ProbeFamily {
  std::string name;
  std::vector<ShortExactSequence> sequences;
  std::string hash;
};

// Exactness in R-Mod and colinearity of both maps; throws NonExactProbe.
void validate_probe(const ShortExactSequence& s);
bool probe_is_pure(const ShortExactSequence& s);
// Sequences 0 -> S -> B -> B/S -> 0 for S the kernels and images of colinear
// endomorphisms of B = C, C ⊕ C (copies bases), keeping R-pure S only.
ProbeFamily standard_probes(const Coalgebra& c, Side side, std::size_t copies = 2);
std::string family_hash(const std::vector<ShortExactSequence>& seqs);

struct ProbeResult {
  std::string label;
  bool pure = false;
  bool left_exact = false;
  bool exact = false;
};

struct ProbeReport {
  std::vector<ProbeResult> results;
  bool exact = true;
  bool left_exact = true;
  bool faithful = true;
  std::vector<std::string> vanishing; // nonzero probe comodules n with m □ n = 0
  std::string family;
  std::string hash;
  std::string scope() const { return "certified against family " + family + " (" + hash + ")"; }
};

ProbeReport coflatness_probe(const Comodule& m, const ProbeFamily& probes, std::stop_token stop = {});

} // namespace comorita
