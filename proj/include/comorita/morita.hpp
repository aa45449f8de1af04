#pragma once
#include <optional>
#include <stop_token>
#include <string>
#include <vector>

#include "comorita/cohom.hpp"

namespace comorita {

// (D, C, M, N, f, g) with M a D-C and N a C-D bicomodule. f and g are given
// into the ambient tensor products: f : D -> M ⊗ N, g : C -> N ⊗ M.
struct MoritaContext {
  Coalgebra d, c;
  Bicomodule m, n;
  Matrix f, g;
};

struct ContextCheck {
  std::string name;
  bool pass = false;
  std::string detail;
  std::optional<std::size_t> witness; // first generator where a comparison fails
};

struct ContextReport {
  std::vector<ContextCheck> items;
  CotensorResult mn, nm;
  std::optional<ModuleMap> f_bar; // D -> M □_C N
  std::optional<ModuleMap> g_bar; // C -> N □_D M
  Matrix defect_m, defect_n;      // triangle differences in M⊗N⊗M and N⊗M⊗N
  bool passed() const;
  const ContextCheck* first_failure() const;
  const ContextCheck* find(const std::string& name) const;
};

// Throws AssociativityUnavailable when either cotensor fails its purity certificate.
ContextReport verify_context(const MoritaContext& ctx, std::stop_token stop = {});
// Throws UnverifiedContext when the report did not pass.
bool is_strict(const MoritaContext& ctx, const ContextReport& report);
bool is_strict(const MoritaContext& ctx);

struct RoundTrip {
  std::string functor; // "FG", "GF", "F'G'", "G'F'"
  std::string label;
  bool iso = false;
  bool colinear = false;
  bool ok() const { return iso && colinear; }
};

struct EquivalenceWitness {
  std::vector<RoundTrip> trips;
  bool passed() const;
  std::string scope;
};

struct TestFamily {
  std::vector<Comodule> right_c, right_d, left_c, left_d;
  std::size_t size() const { return right_c.size() + right_d.size() + left_c.size() + left_d.size(); }
};

// regular comodules, their doubles, and the context's own bicomodules on each side
TestFamily standard_tests(const MoritaContext& ctx);

// Round trips X -> (X □_C N) □_D M and Y -> (Y □_D M) □_C N, and the mirrored
// left versions. Throws UnverifiedContext unless the context is verified and strict.
EquivalenceWitness equivalence_from_context(const MoritaContext& ctx, const TestFamily& tests,
                                            std::stop_token stop = {});

struct SynthesizedContext {
  MoritaContext context;
  CoendCoalgebra coend;
  InjectorReport hypotheses;
  ContextReport report;
  bool strict = false;
};

// D := e(x), M := x, N := h(C), f from δ_x, g := η_C. Throws HypothesisNotCertified
// unless x is certified as a faithfully coflat injector against the probes.
SynthesizedContext context_from_comodule(const Comodule& x, const ProbeFamily& probes);

struct InvertibilityReport {
  InjectorReport hypotheses;
  std::size_t coend_rank = 0;
  bool coalgebra_map = false; // e(x) -> C respects Δ and ε
  bool coend_iso = false;
  std::optional<EquivalenceWitness> equivalence;
  bool invertible = false;
  std::string reason;
};

// x a C-D bicomodule; probes are left D-comodule sequences
InvertibilityReport invertibility_check(const Bicomodule& x, const ProbeFamily& probes);

} // namespace comorita
