#include "comorita/module.hpp"

#include <set>
#include <sstream>

#include "comorita/errors.hpp"
#include "comorita/normal_form.hpp"

namespace comorita {

struct PresentedModule::Data {
  Ring ring;
  std::size_t gens;
  Matrix relations;
  std::shared_ptr<const PresentedModule> ambient;
  Matrix embedding;
};

PresentedModule::PresentedModule()
    : d_(std::make_shared<Data>(Data{Ring::rationals(), 0, Matrix(Ring::rationals(), 0, 0), nullptr, {}})) {}

PresentedModule::PresentedModule(const Ring& ring, std::size_t generators, const Matrix& relations) {
  check_same_ring(ring, relations.ring(), "module relations");
  Matrix rel = relations;
  if (rel.rows() == 0) {
    rel = Matrix(ring, 0, generators);
  } else if (rel.cols() != generators) {
    throw DimensionError("relations have " + std::to_string(rel.cols()) + " columns for " +
                         std::to_string(generators) + " generators");
  } else {
    rel = echelon_rows(rel);
  }
  d_ = std::make_shared<Data>(Data{ring, generators, std::move(rel), nullptr, {}});
}

PresentedModule PresentedModule::free(const Ring& ring, std::size_t rank) {
  return PresentedModule(ring, rank, Matrix(ring, 0, rank));
}

PresentedModule PresentedModule::cyclic(const Ring& ring, const Scalar& annihilator) {
  return diagonal(ring, {annihilator});
}

PresentedModule PresentedModule::diagonal(const Ring& ring, const std::vector<Scalar>& ann) {
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < ann.size(); ++i)
    if (sgn(ring.normalize(ann[i])) != 0) rows.push_back(i);
  Matrix rel(ring, rows.size(), ann.size());
  for (std::size_t k = 0; k < rows.size(); ++k) rel.set(k, rows[k], ann[rows[k]]);
  return PresentedModule(ring, ann.size(), rel);
}

const Ring& PresentedModule::ring() const { return d_->ring; }
std::size_t PresentedModule::generators() const { return d_->gens; }
const Matrix& PresentedModule::relations() const { return d_->relations; }

bool PresentedModule::is_zero() const {
  return is_zero_element(Matrix::identity(ring(), generators()));
}

bool PresentedModule::has_ambient() const { return d_->ambient != nullptr; }

const PresentedModule& PresentedModule::ambient() const {
  if (!d_->ambient) throw DomainError("module has no ambient");
  return *d_->ambient;
}

const Matrix& PresentedModule::embedding() const {
  if (!d_->ambient) throw DomainError("module has no ambient");
  return d_->embedding;
}

PresentedModule PresentedModule::with_ambient(const PresentedModule& amb, const Matrix& emb) const {
  check_same_ring(ring(), amb.ring(), "ambient");
  if (emb.rows() != amb.generators() || emb.cols() != generators())
    throw DimensionError("embedding shape does not match module and ambient");
  if (relations().rows() > 0 && !amb.is_zero_element(emb * relations().transpose()))
    throw DomainError("embedding does not kill the relations");
  PresentedModule out;
  out.d_ = std::make_shared<Data>(
      Data{ring(), generators(), relations(), std::make_shared<const PresentedModule>(amb), emb});
  return out;
}

PresentedModule PresentedModule::without_ambient() const {
  if (!has_ambient()) return *this;
  PresentedModule out;
  out.d_ = std::make_shared<Data>(Data{ring(), generators(), relations(), nullptr, {}});
  return out;
}

Matrix PresentedModule::reduce(const Matrix& elements) const {
  if (elements.rows() != generators()) throw DimensionError("element has wrong length");
  if (relations().rows() == 0) return elements;
  return reduce_columns(relations(), elements);
}

bool PresentedModule::is_zero_element(const Matrix& elements) const { return reduce(elements).is_zero(); }

bool PresentedModule::same_presentation(const PresentedModule& o) const {
  return ring() == o.ring() && generators() == o.generators() && relations() == o.relations();
}

std::vector<Scalar> PresentedModule::invariants() const {
  std::vector<Scalar> d;
  if (relations().rows() > 0) d = invariant_factors(relations());
  d.resize(generators());
  std::vector<Scalar> out;
  for (const auto& x : d)
    if (!ring().is_unit(x)) out.push_back(x);
  return out;
}

std::string PresentedModule::describe() const {
  std::vector<Scalar> inv = invariants();
  std::size_t free_rank = 0;
  std::ostringstream os;
  bool first = true;
  for (const auto& x : inv) {
    if (sgn(x) == 0) {
      ++free_rank;
      continue;
    }
    os << (first ? "" : " + ") << ring().name() << "/(" << x.get_str() << ")";
    first = false;
  }
  if (free_rank > 0) {
    os << (first ? "" : " + ") << ring().name();
    if (free_rank > 1) os << "^" << free_rank;
    first = false;
  }
  return first ? std::string("0") : os.str();
}

bool isomorphic(const PresentedModule& a, const PresentedModule& b) {
  return a.ring() == b.ring() && a.invariants() == b.invariants();
}

ModuleMap::ModuleMap(PresentedModule domain, PresentedModule codomain, Matrix matrix)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), matrix_(std::move(matrix)) {
  check_same_ring(domain_.ring(), codomain_.ring(), "module map");
  check_same_ring(domain_.ring(), matrix_.ring(), "module map matrix");
  if (matrix_.rows() != codomain_.generators() || matrix_.cols() != domain_.generators())
    throw DimensionError("map matrix is " + std::to_string(matrix_.rows()) + "x" +
                         std::to_string(matrix_.cols()) + ", expected " +
                         std::to_string(codomain_.generators()) + "x" + std::to_string(domain_.generators()));
}

ModuleMap ModuleMap::identity(const PresentedModule& m) {
  return ModuleMap(m, m, Matrix::identity(m.ring(), m.generators()));
}

ModuleMap ModuleMap::zero(const PresentedModule& domain, const PresentedModule& codomain) {
  return ModuleMap(domain, codomain, Matrix(domain.ring(), codomain.generators(), domain.generators()));
}

bool ModuleMap::is_well_defined() const {
  if (domain_.relations().rows() == 0) return true;
  return codomain_.is_zero_element(matrix_ * domain_.relations().transpose());
}

bool ModuleMap::is_zero() const { return codomain_.is_zero_element(matrix_); }

bool ModuleMap::equals(const ModuleMap& o) const {
  if (o.matrix_.rows() != matrix_.rows() || o.matrix_.cols() != matrix_.cols()) return false;
  return codomain_.is_zero_element(matrix_ - o.matrix_);
}

std::optional<std::size_t> ModuleMap::difference_witness(const ModuleMap& o) const {
  Matrix diff = codomain_.reduce(matrix_ - o.matrix_);
  for (std::size_t j = 0; j < diff.cols(); ++j)
    if (!diff.col_is_zero(j)) return j;
  return std::nullopt;
}

ModuleMap ModuleMap::operator*(const ModuleMap& inner) const {
  if (inner.codomain_.generators() != domain_.generators())
    throw DimensionError("composition: codomain/domain generator mismatch");
  return ModuleMap(inner.domain_, codomain_, matrix_ * inner.matrix_);
}

ModuleMap ModuleMap::operator-(const ModuleMap& o) const {
  return ModuleMap(domain_, codomain_, matrix_ - o.matrix_);
}

ModuleMap ModuleMap::scaled(const Scalar& c) const { return ModuleMap(domain_, codomain_, matrix_.scaled(c)); }

PresentedModule tensor_modules(const PresentedModule& m, const PresentedModule& n) {
  check_same_ring(m.ring(), n.ring(), "tensor_modules");
  const Ring& R = m.ring();
  const std::size_t gm = m.generators(), gn = n.generators();
  const Matrix& rm = m.relations();
  const Matrix& rn = n.relations();
  Matrix rel(R, rm.rows() * gn + gm * rn.rows(), gm * gn);
  std::size_t row = 0;
  for (std::size_t r = 0; r < rm.rows(); ++r)
    for (std::size_t j = 0; j < gn; ++j, ++row)
      for (std::size_t i = 0; i < gm; ++i) rel.raw(row, i * gn + j) = rm(r, i);
  for (std::size_t i = 0; i < gm; ++i)
    for (std::size_t r = 0; r < rn.rows(); ++r, ++row)
      for (std::size_t j = 0; j < gn; ++j) rel.raw(row, i * gn + j) = rn(r, j);
  return PresentedModule(R, gm * gn, rel);
}

ModuleMap tensor_maps(const ModuleMap& f, const ModuleMap& g) {
  return ModuleMap(tensor_modules(f.domain(), g.domain()), tensor_modules(f.codomain(), g.codomain()),
                   kron(f.matrix(), g.matrix()));
}

PresentedModule direct_sum(const PresentedModule& a, const PresentedModule& b) {
  check_same_ring(a.ring(), b.ring(), "direct_sum");
  Matrix rel = block_diagonal(a.relations(), b.relations());
  return PresentedModule(a.ring(), a.generators() + b.generators(), rel);
}

ModuleMap swap_map(const PresentedModule& m, const PresentedModule& n) {
  const std::size_t gm = m.generators(), gn = n.generators();
  Matrix s(m.ring(), gm * gn, gm * gn);
  for (std::size_t i = 0; i < gm; ++i)
    for (std::size_t j = 0; j < gn; ++j) s.raw(j * gm + i, i * gn + j) = 1;
  return ModuleMap(tensor_modules(m, n), tensor_modules(n, m), s);
}

Pruned prune(const PresentedModule& m) {
  const Ring& R = m.ring();
  if (m.is_free()) {
    PresentedModule p = m.without_ambient();
    return {p, ModuleMap(m, p, Matrix::identity(R, m.generators())),
            ModuleMap(p, m, Matrix::identity(R, m.generators()))};
  }
  const std::size_t g = m.generators();
  Diagonalization d = diagonalize(m.relations(), true, true);
  std::vector<std::size_t> keep;
  std::vector<Scalar> ann;
  for (std::size_t i = 0; i < g; ++i) {
    Scalar di = i < d.d.size() ? d.d[i] : Scalar(0);
    if (R.is_unit(di)) continue;
    keep.push_back(i);
    ann.push_back(di);
  }
  PresentedModule p = PresentedModule::diagonal(R, ann);
  Matrix to(R, keep.size(), g), from(R, g, keep.size());
  for (std::size_t a = 0; a < keep.size(); ++a)
    for (std::size_t j = 0; j < g; ++j) {
      to.raw(a, j) = d.V(j, keep[a]);
      from.raw(j, a) = d.V_inv(keep[a], j);
    }
  return {p, ModuleMap(m, p, p.reduce(to)), ModuleMap(p, m, m.reduce(from))};
}

PresentedModule submodule(const PresentedModule& m, const Matrix& elements) {
  const Ring& R = m.ring();
  const std::size_t gm = m.generators();
  if (elements.rows() != gm) throw DimensionError("submodule generators have wrong length");
  Matrix e = echelon_rows(vstack(elements.transpose(), m.relations()));
  Matrix syz;
  if (m.is_free()) {
    syz = kernel_basis(e.transpose());
  } else {
    Matrix z = kernel_basis(hstack(e.transpose(), m.relations().transpose()));
    syz = z.block(0, 0, e.rows(), z.cols());
  }
  PresentedModule k0(R, e.rows(), syz.transpose());
  Pruned p = prune(k0);
  Matrix emb = e.transpose() * p.from_pruned.matrix();
  return p.module.with_ambient(m.without_ambient(), m.reduce(emb));
}

PresentedModule kernel_of_map(const ModuleMap& f) {
  const PresentedModule& n = f.codomain();
  const std::size_t gm = f.domain().generators();
  Matrix b = n.is_free() ? f.matrix() : hstack(f.matrix(), n.relations().transpose());
  Matrix z = kernel_basis(b);
  return submodule(f.domain(), z.block(0, 0, gm, z.cols()));
}

ModuleMap inclusion(const PresentedModule& sub) { return ModuleMap(sub, sub.ambient(), sub.embedding()); }

Quotient quotient(const PresentedModule& m, const Matrix& elements) {
  if (elements.rows() != m.generators()) throw DimensionError("quotient elements have wrong length");
  Matrix rel = elements.cols() ? vstack(m.relations(), elements.transpose()) : m.relations();
  PresentedModule q0(m.ring(), m.generators(), rel);
  Pruned p = prune(q0);
  return {p.module, ModuleMap(m, p.module, p.to_pruned.matrix()), p.from_pruned.matrix()};
}

std::optional<Matrix> solve_in(const ModuleMap& f, const Matrix& targets) {
  const PresentedModule& n = f.codomain();
  if (targets.rows() != n.generators()) throw DimensionError("solve_in target length mismatch");
  Matrix a = n.is_free() ? f.matrix() : hstack(f.matrix(), n.relations().transpose());
  auto x = solve(a, targets);
  if (!x) return std::nullopt;
  return x->block(0, 0, f.domain().generators(), targets.cols());
}

bool in_image(const ModuleMap& f, const Matrix& targets) { return solve_in(f, targets).has_value(); }

std::optional<ModuleMap> factor_through(const ModuleMap& f, const ModuleMap& incl) {
  if (f.codomain().generators() != incl.codomain().generators())
    throw DimensionError("factor_through: codomain mismatch");
  auto x = solve_in(incl, f.matrix());
  if (!x) return std::nullopt;
  ModuleMap g(f.domain(), incl.domain(), incl.domain().reduce(*x));
  if (!g.is_well_defined()) return std::nullopt;
  return g;
}

bool is_injective(const ModuleMap& f) { return kernel_of_map(f).generators() == 0; }

bool is_surjective(const ModuleMap& f) {
  return solve_in(f, Matrix::identity(f.codomain().ring(), f.codomain().generators())).has_value();
}

IsoResult is_isomorphism(const ModuleMap& f) {
  if (!is_injective(f)) return {};
  const PresentedModule& n = f.codomain();
  auto x = solve_in(f, Matrix::identity(n.ring(), n.generators()));
  if (!x) return {};
  ModuleMap g(n, f.domain(), f.domain().reduce(*x));
  if (!g.is_well_defined()) return {};
  if (!(f * g).equals(ModuleMap::identity(n))) return {};
  if (!(g * f).equals(ModuleMap::identity(f.domain()))) return {};
  return {true, g};
}

PresentedModule hom_module(const PresentedModule& m, const PresentedModule& n) {
  check_same_ring(m.ring(), n.ring(), "hom_module");
  const Ring& R = m.ring();
  PresentedModule amb = tensor_modules(n, PresentedModule::free(R, m.generators()));
  if (m.is_free()) return amb.with_ambient(amb, Matrix::identity(R, amb.generators()));
  PresentedModule target = tensor_modules(n, PresentedModule::free(R, m.relations().rows()));
  ModuleMap eval(amb, target, kron(Matrix::identity(R, n.generators()), m.relations()));
  return kernel_of_map(eval);
}

Matrix hom_element(const PresentedModule& m, const PresentedModule& n, const Matrix& column) {
  const std::size_t gm = m.generators(), gn = n.generators();
  if (column.rows() != gm * gn || column.cols() != 1) throw DimensionError("hom element has wrong length");
  Matrix f(m.ring(), gn, gm);
  for (std::size_t i = 0; i < gn; ++i)
    for (std::size_t j = 0; j < gm; ++j) f.raw(i, j) = column(i * gm + j, 0);
  return f;
}

Matrix flatten_map(const Matrix& f) {
  Matrix c(f.ring(), f.rows() * f.cols(), 1);
  for (std::size_t i = 0; i < f.rows(); ++i)
    for (std::size_t j = 0; j < f.cols(); ++j) c.raw(i * f.cols() + j, 0) = f(i, j);
  return c;
}

std::vector<PresentedModule> complete_purity_family(const ModuleMap& incl, std::string* label) {
  const Ring& R = incl.domain().ring();
  std::vector<PresentedModule> out;
  switch (R.kind()) {
  case RingKind::Rationals:
  case RingKind::PrimeField:
    if (label) *label = "field: every submodule is pure";
    return out;
  case RingKind::Integers: {
    Quotient q = quotient(incl.codomain(), incl.matrix());
    std::set<long> divisors;
    for (const auto& d : q.module.invariants()) {
      if (sgn(d) == 0) continue;
      long v = mpz_class(abs(d.get_num())).get_si();
      for (long k = 2; k <= v; ++k)
        if (v % k == 0) divisors.insert(k);
    }
    for (long k : divisors) out.push_back(PresentedModule::cyclic(R, Scalar(k)));
    if (label) *label = "Z/q for every q > 1 dividing the cokernel torsion";
    return out;
  }
  case RingKind::IntegersMod:
    for (long k : R.modulus_divisors()) out.push_back(PresentedModule::cyclic(R, Scalar(k)));
    if (label) *label = "Z/d for every divisor d > 1 of the modulus";
    return out;
  }
  return out;
}

PurityCertificate purity_of_map(const ModuleMap& incl, PurityMode mode,
                                const std::vector<PresentedModule>& family) {
  PurityCertificate cert;
  std::vector<PresentedModule> ws;
  if (mode == PurityMode::Complete) {
    ws = complete_purity_family(incl, &cert.family);
  } else {
    for (const auto& w : family) check_same_ring(w.ring(), incl.domain().ring(), "purity family");
    ws = family;
    cert.family = "explicit family of " + std::to_string(ws.size()) + " modules";
  }
  for (const auto& w : ws) {
    bool inj = is_injective(tensor_maps(incl, ModuleMap::identity(w)));
    cert.tests.push_back({w, inj});
    cert.pure = cert.pure && inj;
  }
  return cert;
}

PurityCertificate purity_test(const PresentedModule& k, PurityMode mode,
                              const std::vector<PresentedModule>& family) {
  return purity_of_map(inclusion(k), mode, family);
}

} // namespace comorita
