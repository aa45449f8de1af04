#pragma once
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "comorita/matrix.hpp"

namespace comorita {

// R^g modulo the row span of `relations`, stored canonically. Elements are
// column vectors of generator coefficients. An optional ambient records an
// embedding into another presented module (generator images as columns).
class PresentedModule {
public:
  PresentedModule();
  PresentedModule(const Ring& ring, std::size_t generators, const Matrix& relations);

  static PresentedModule free(const Ring& ring, std::size_t rank);
  static PresentedModule cyclic(const Ring& ring, const Scalar& annihilator);
  static PresentedModule diagonal(const Ring& ring, const std::vector<Scalar>& annihilators);

  const Ring& ring() const;
  std::size_t generators() const;
  const Matrix& relations() const;
  bool is_free() const { return relations().rows() == 0; }
  bool is_zero() const;

  bool has_ambient() const;
  const PresentedModule& ambient() const;
  const Matrix& embedding() const;
  PresentedModule with_ambient(const PresentedModule& ambient, const Matrix& embedding) const;
  PresentedModule without_ambient() const;

  // canonical representatives of the given columns
  Matrix reduce(const Matrix& elements) const;
  bool is_zero_element(const Matrix& elements) const;

  bool same_presentation(const PresentedModule& other) const;
  // invariant factors of the relations padded with zeros for the free part;
  // unit factors dropped
  std::vector<Scalar> invariants() const;
  std::string describe() const;

private:
  struct Data;
  std::shared_ptr<const Data> d_;
};

bool isomorphic(const PresentedModule& a, const PresentedModule& b);

class ModuleMap {
public:
  ModuleMap() = default;
  ModuleMap(PresentedModule domain, PresentedModule codomain, Matrix matrix);

  static ModuleMap identity(const PresentedModule& m);
  static ModuleMap zero(const PresentedModule& domain, const PresentedModule& codomain);

  const PresentedModule& domain() const { return domain_; }
  const PresentedModule& codomain() const { return codomain_; }
  const Matrix& matrix() const { return matrix_; }

  bool is_well_defined() const;
  bool is_zero() const;
  bool equals(const ModuleMap& other) const;
  // first domain generator where the maps differ
  std::optional<std::size_t> difference_witness(const ModuleMap& other) const;
  ModuleMap operator*(const ModuleMap& inner) const;
  ModuleMap operator-(const ModuleMap& other) const;
  ModuleMap scaled(const Scalar& c) const;

private:
  PresentedModule domain_, codomain_;
  Matrix matrix_;
};

PresentedModule tensor_modules(const PresentedModule& m, const PresentedModule& n);
ModuleMap tensor_maps(const ModuleMap& f, const ModuleMap& g);
PresentedModule direct_sum(const PresentedModule& a, const PresentedModule& b);
ModuleMap swap_map(const PresentedModule& m, const PresentedModule& n);

struct Pruned {
  PresentedModule module; // diagonal presentation, no unit annihilators
  ModuleMap to_pruned;    // original -> pruned
  ModuleMap from_pruned;  // pruned -> original
};
Pruned prune(const PresentedModule& m);

// Submodule of m generated by the columns of `elements`, pruned, with ambient m.
PresentedModule submodule(const PresentedModule& m, const Matrix& elements);
PresentedModule kernel_of_map(const ModuleMap& f);
ModuleMap inclusion(const PresentedModule& sub);

struct Quotient {
  PresentedModule module;
  ModuleMap projection;
  Matrix section; // lifts of the quotient generators (not a module map in general)
};
Quotient quotient(const PresentedModule& m, const Matrix& elements);

struct IsoResult {
  bool iso = false;
  std::optional<ModuleMap> inverse;
  explicit operator bool() const { return iso; }
};
IsoResult is_isomorphism(const ModuleMap& f);
bool is_injective(const ModuleMap& f);
bool is_surjective(const ModuleMap& f);

// x with f(x) = targets modulo the codomain relations, column by column
std::optional<Matrix> solve_in(const ModuleMap& f, const Matrix& targets);
// g with incl∘g = f
std::optional<ModuleMap> factor_through(const ModuleMap& f, const ModuleMap& incl);
// element of the image of f mod codomain relations?
bool in_image(const ModuleMap& f, const Matrix& targets);

// Hom_R(m, n) with ambient n ⊗ R^{g_m}; element index i*g_m + j is entry (i, j).
PresentedModule hom_module(const PresentedModule& m, const PresentedModule& n);
Matrix hom_element(const PresentedModule& m, const PresentedModule& n, const Matrix& column);
Matrix flatten_map(const Matrix& f);

enum class PurityMode { Complete, AgainstFamily };

struct PurityEntry {
  PresentedModule w;
  bool injective = false;
};

struct PurityCertificate {
  bool pure = true;
  std::string family;
  std::vector<PurityEntry> tests;
};

std::vector<PresentedModule> complete_purity_family(const ModuleMap& incl, std::string* label = nullptr);
PurityCertificate purity_of_map(const ModuleMap& incl, PurityMode mode = PurityMode::Complete,
                                const std::vector<PresentedModule>& family = {});
PurityCertificate purity_test(const PresentedModule& k, PurityMode mode = PurityMode::Complete,
                              const std::vector<PresentedModule>& family = {});

} // namespace comorita
