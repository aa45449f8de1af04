#include "comorita/comodule.hpp"

#include "comorita/errors.hpp"

namespace comorita {

const char* side_name(Side s) { return s == Side::Right ? "right" : "left"; }

PresentedModule coaction_codomain(Side side, const Coalgebra& c, const PresentedModule& carrier) {
  return side == Side::Right ? tensor_modules(carrier, c.module()) : tensor_modules(c.module(), carrier);
}

Comodule::Comodule(Side side, Coalgebra coalgebra, PresentedModule carrier, const Matrix& coaction)
    : side_(side), coalgebra_(std::move(coalgebra)), carrier_(std::move(carrier)) {
  check_same_ring(coalgebra_.ring(), carrier_.ring(), "comodule carrier");
  check_same_ring(coalgebra_.ring(), coaction.ring(), "comodule coaction");
  PresentedModule cod = coaction_codomain(side_, coalgebra_, carrier_.without_ambient());
  if (coaction.rows() != cod.generators() || coaction.cols() != carrier_.generators())
    throw DimensionError(std::string(side_name(side_)) + " coaction is " + std::to_string(coaction.rows()) + "x" +
                         std::to_string(coaction.cols()) + ", expected " + std::to_string(cod.generators()) +
                         "x" + std::to_string(carrier_.generators()));
  coaction_ = ModuleMap(carrier_, cod, coaction);
}

Bicomodule::Bicomodule(const Comodule& left, const Comodule& right) : left_(left), right_(right) {
  if (left.side() != Side::Left || right.side() != Side::Right)
    throw DomainError("bicomodule needs a left and a right coaction");
  if (!left.carrier().same_presentation(right.carrier()))
    throw DomainError("bicomodule coactions live on different carriers");
  check_same_ring(left.ring(), right.ring(), "bicomodule");
}

namespace {

std::optional<std::size_t> relation_witness(const ModuleMap& f) {
  const Matrix& rel = f.domain().relations();
  for (std::size_t i = 0; i < rel.rows(); ++i)
    if (!f.codomain().is_zero_element(f.matrix() * rel.row(i).transpose())) return i;
  return std::nullopt;
}

void compare(AxiomReport& rep, const std::string& name, const PresentedModule& dom, const PresentedModule& cod,
             const Matrix& lhs, const Matrix& rhs) {
  auto w = ModuleMap(dom, cod, lhs).difference_witness(ModuleMap(dom, cod, rhs));
  rep.items.push_back({name, !w, w});
}

void check_same_coalgebra(const Comodule& m, const Comodule& n, const char* where) {
  if (m.side() != n.side()) throw DomainError(std::string(where) + ": comodules on different sides");
  if (!(m.coalgebra() == n.coalgebra())) throw DomainError(std::string(where) + ": different coalgebras");
}

// f |-> (f ⊗ id_C)∘ρ (right) or (id_C ⊗ f)∘ρ (left) on flattened f : M -> Y
Matrix lift_operator(const Matrix& rho, Side side, std::size_t gm, std::size_t d, std::size_t gy) {
  Matrix out(rho.ring(), gy * d * gm, gy * gm);
  for (std::size_t r = 0; r < rho.rows(); ++r)
    for (std::size_t j = 0; j < rho.cols(); ++j) {
      if (sgn(rho(r, j)) == 0) continue;
      for (std::size_t y = 0; y < gy; ++y) {
        if (side == Side::Right) {
          std::size_t jp = r / d, c = r % d;
          out.raw(((y * d + c) * gm + j), y * gm + jp) = rho(r, j);
        } else {
          std::size_t c = r / gm, jp = r % gm;
          out.raw(((c * gy + y) * gm + j), y * gm + jp) = rho(r, j);
        }
      }
    }
  return out;
}

} // namespace

AxiomReport check_comodule(const Comodule& m) {
  const Ring& R = m.ring();
  const Coalgebra& C = m.coalgebra();
  const std::size_t g = m.generators(), d = C.rank();
  const Matrix& rho = m.coaction().matrix();
  const PresentedModule carrier = m.carrier().without_ambient();
  AxiomReport rep;
  auto w = relation_witness(m.coaction());
  rep.items.push_back({"well-defined", !w, w});
  Matrix ig = Matrix::identity(R, g), id = Matrix::identity(R, d);
  if (m.side() == Side::Right) {
    PresentedModule t3 = tensor_modules(tensor_modules(carrier, C.module()), C.module());
    compare(rep, "coassociativity", carrier, t3, kron(ig, C.delta()) * rho, kron(rho, id) * rho);
    compare(rep, "counit", carrier, carrier, kron(ig, C.epsilon()) * rho, ig);
  } else {
    PresentedModule t3 = tensor_modules(C.module(), tensor_modules(C.module(), carrier));
    compare(rep, "coassociativity", carrier, t3, kron(C.delta(), ig) * rho, kron(id, rho) * rho);
    compare(rep, "counit", carrier, carrier, kron(C.epsilon(), ig) * rho, ig);
  }
  return rep;
}

AxiomReport check_bicomodule(const Bicomodule& m) {
  AxiomReport rep;
  for (auto it : check_comodule(m.as_left()).items) {
    it.axiom = "left " + it.axiom;
    rep.items.push_back(it);
  }
  for (auto it : check_comodule(m.as_right()).items) {
    it.axiom = "right " + it.axiom;
    rep.items.push_back(it);
  }
  const Ring& R = m.ring();
  const Matrix& l = m.left_coaction().matrix();
  const Matrix& r = m.right_coaction().matrix();
  PresentedModule carrier = m.carrier().without_ambient();
  PresentedModule t3 =
      tensor_modules(m.left_coalgebra().module(), tensor_modules(carrier, m.right_coalgebra().module()));
  compare(rep, "compatibility", carrier, t3, kron(Matrix::identity(R, m.left_coalgebra().rank()), r) * l,
          kron(l, Matrix::identity(R, m.right_coalgebra().rank())) * r);
  return rep;
}

bool is_colinear(const ModuleMap& f, const Comodule& m, const Comodule& n) {
  check_same_coalgebra(m, n, "is_colinear");
  const Ring& R = m.ring();
  const std::size_t d = m.coalgebra().rank();
  Matrix id = Matrix::identity(R, d);
  Matrix lifted = m.side() == Side::Right ? kron(f.matrix(), id) : kron(id, f.matrix());
  const ModuleMap& rn = n.coaction();
  return ModuleMap(m.carrier(), rn.codomain(), rn.matrix() * f.matrix())
      .equals(ModuleMap(m.carrier(), rn.codomain(), lifted * m.coaction().matrix()));
}

PresentedModule com_hom(const Comodule& m, const Comodule& n) {
  check_same_coalgebra(m, n, "com_hom");
  const Ring& R = m.ring();
  const std::size_t gm = m.generators(), gn = n.generators(), d = m.coalgebra().rank();
  PresentedModule h = hom_module(m.carrier(), n.carrier());
  Matrix l = kron(n.coaction().matrix(), Matrix::identity(R, gm)) -
             lift_operator(m.coaction().matrix(), m.side(), gm, d, gn);
  PresentedModule target = tensor_modules(n.coaction().codomain(), PresentedModule::free(R, gm));
  PresentedModule k = kernel_of_map(ModuleMap(h, target, l * h.embedding()));
  const PresentedModule& amb = h.ambient();
  return k.without_ambient().with_ambient(amb, amb.reduce(h.embedding() * k.embedding()));
}

Matrix com_generator(const Comodule& m, const Comodule& n, const PresentedModule& com, std::size_t k) {
  return hom_element(m.carrier(), n.carrier(), com.embedding().column(k));
}

bool contains_identity(const Comodule& m) {
  PresentedModule com = com_hom(m, m);
  return in_image(inclusion(com), flatten_map(Matrix::identity(m.ring(), m.generators())));
}

Comodule trivial_comodule(const PresentedModule& w, const Comodule& m) {
  check_same_ring(w.ring(), m.ring(), "trivial_comodule");
  const Matrix iw = Matrix::identity(w.ring(), w.generators());
  PresentedModule base = w.without_ambient(), carrier = m.carrier().without_ambient();
  if (m.side() == Side::Right)
    return Comodule(Side::Right, m.coalgebra(), tensor_modules(base, carrier), kron(iw, m.coaction().matrix()));
  return Comodule(Side::Left, m.coalgebra(), tensor_modules(carrier, base), kron(m.coaction().matrix(), iw));
}

Comodule cofree_comodule(const PresentedModule& x, const Coalgebra& c, Side side) {
  check_same_ring(x.ring(), c.ring(), "cofree_comodule");
  const Matrix ix = Matrix::identity(x.ring(), x.generators());
  PresentedModule base = x.without_ambient();
  if (side == Side::Right) return Comodule(side, c, tensor_modules(base, c.module()), kron(ix, c.delta()));
  return Comodule(side, c, tensor_modules(c.module(), base), kron(c.delta(), ix));
}

bool cofree_adjunction_check(const Comodule& m, const PresentedModule& x) {
  const Ring& R = m.ring();
  const Coalgebra& C = m.coalgebra();
  const std::size_t gm = m.generators(), gx = x.generators();
  Comodule y = cofree_comodule(x, C, m.side());
  PresentedModule com = com_hom(m, y);
  PresentedModule hom = hom_module(m.carrier(), x);
  Matrix ix = Matrix::identity(R, gx), igm = Matrix::identity(R, gm);
  Matrix counit = m.side() == Side::Right ? kron(ix, C.epsilon()) : kron(C.epsilon(), ix);
  Matrix p = kron(counit, igm);
  Matrix b = lift_operator(m.coaction().matrix(), m.side(), gm, C.rank(), gx);
  auto fwd = factor_through(ModuleMap(com, hom.ambient(), p * com.embedding()), inclusion(hom));
  auto bwd = factor_through(ModuleMap(hom, com.ambient(), b * hom.embedding()), inclusion(com));
  if (!fwd || !bwd) return false;
  return ((*fwd) * (*bwd)).equals(ModuleMap::identity(hom)) && ((*bwd) * (*fwd)).equals(ModuleMap::identity(com));
}

Comodule restrict_comodule(const Comodule& m, const PresentedModule& sub) {
  if (!sub.has_ambient() || !sub.ambient().same_presentation(m.carrier().without_ambient()))
    throw DomainError("restrict_comodule: submodule does not sit in the carrier");
  const Ring& R = m.ring();
  const Coalgebra& C = m.coalgebra();
  Matrix id = Matrix::identity(R, C.rank());
  const Matrix& e = sub.embedding();
  PresentedModule s = sub.without_ambient();
  ModuleMap incl = m.side() == Side::Right
                       ? ModuleMap(tensor_modules(s, C.module()), m.coaction().codomain(), kron(e, id))
                       : ModuleMap(tensor_modules(C.module(), s), m.coaction().codomain(), kron(id, e));
  auto g = factor_through(ModuleMap(sub, m.coaction().codomain(), m.coaction().matrix() * e), incl);
  if (!g) throw DomainError("elements do not span a subcomodule");
  return Comodule(m.side(), C, sub, g->matrix());
}

Comodule subcomodule(const Comodule& m, const Matrix& elements) {
  return restrict_comodule(m, submodule(m.carrier(), elements));
}

QuotientComodule quotient_comodule(const Comodule& m, const Matrix& elements) {
  const Ring& R = m.ring();
  const Coalgebra& C = m.coalgebra();
  Quotient q = quotient(m.carrier(), elements);
  Matrix id = Matrix::identity(R, C.rank());
  const Matrix& p = q.projection.matrix();
  Matrix lifted = m.side() == Side::Right ? kron(p, id) : kron(id, p);
  PresentedModule cod = coaction_codomain(m.side(), C, q.module);
  Matrix f = lifted * m.coaction().matrix();
  if (!cod.is_zero_element(f * elements)) throw DomainError("elements do not span a subcomodule");
  return {Comodule(m.side(), C, q.module, cod.reduce(f * q.section)), q.projection};
}

Comodule transport(const Comodule& m, const ModuleMap& iso, const ModuleMap& inverse) {
  const Ring& R = m.ring();
  Matrix id = Matrix::identity(R, m.coalgebra().rank());
  Matrix lifted = m.side() == Side::Right ? kron(iso.matrix(), id) : kron(id, iso.matrix());
  PresentedModule cod = coaction_codomain(m.side(), m.coalgebra(), iso.codomain());
  return Comodule(m.side(), m.coalgebra(), iso.codomain(),
                  cod.reduce(lifted * m.coaction().matrix() * inverse.matrix()));
}

Comodule regular_comodule(const Coalgebra& c, Side side) { return Comodule(side, c, c.module(), c.delta()); }

Bicomodule regular_bicomodule(const Coalgebra& c) {
  return Bicomodule(regular_comodule(c, Side::Left), regular_comodule(c, Side::Right));
}

Comodule point_comodule(const Coalgebra& c, std::size_t k, Side side) {
  if (k >= c.rank()) throw DimensionError("point_comodule: basis index out of range");
  Matrix rho(c.ring(), c.rank(), 1);
  rho.set(k, 0, Scalar(1));
  return Comodule(side, c, PresentedModule::free(c.ring(), 1), rho);
}

Comodule column_comodule(const Coalgebra& matrix_coalg, std::size_t n) {
  const std::size_t d = n * n;
  if (matrix_coalg.rank() != d) throw DimensionError("column_comodule: coalgebra rank is not n^2");
  Matrix rho(matrix_coalg.ring(), n * d, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) rho.set(i * d + i * n + j, j, Scalar(1));
  return Comodule(Side::Right, matrix_coalg, PresentedModule::free(matrix_coalg.ring(), n), rho);
}

Comodule row_comodule(const Coalgebra& matrix_coalg, std::size_t n) {
  const std::size_t d = n * n;
  if (matrix_coalg.rank() != d) throw DimensionError("row_comodule: coalgebra rank is not n^2");
  Matrix rho(matrix_coalg.ring(), d * n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) rho.set((i * n + j) * n + j, i, Scalar(1));
  return Comodule(Side::Left, matrix_coalg, PresentedModule::free(matrix_coalg.ring(), n), rho);
}

Comodule direct_sum(const Comodule& a, const Comodule& b) {
  check_same_coalgebra(a, b, "direct_sum");
  const std::size_t ga = a.generators(), gb = b.generators(), g = ga + gb, d = a.coalgebra().rank();
  Matrix rho(a.ring(), g * d, g);
  const Matrix& ra = a.coaction().matrix();
  const Matrix& rb = b.coaction().matrix();
  for (std::size_t m = 0; m < ga; ++m)
    for (std::size_t c = 0; c < d; ++c)
      for (std::size_t j = 0; j < ga; ++j)
        if (a.side() == Side::Right)
          rho.raw(m * d + c, j) = ra(m * d + c, j);
        else
          rho.raw(c * g + m, j) = ra(c * ga + m, j);
  for (std::size_t m = 0; m < gb; ++m)
    for (std::size_t c = 0; c < d; ++c)
      for (std::size_t j = 0; j < gb; ++j)
        if (a.side() == Side::Right)
          rho.raw((ga + m) * d + c, ga + j) = rb(m * d + c, j);
        else
          rho.raw(c * g + ga + m, ga + j) = rb(c * gb + m, j);
  return Comodule(a.side(), a.coalgebra(), direct_sum(a.carrier().without_ambient(), b.carrier().without_ambient()),
                  rho);
}

Bicomodule with_trivial_left(const Comodule& right) {
  if (right.side() != Side::Right) throw DomainError("with_trivial_left needs a right comodule");
  Comodule left(Side::Left, grouplike(right.ring(), 1), right.carrier(),
                Matrix::identity(right.ring(), right.generators()));
  return Bicomodule(left, right);
}

Bicomodule with_trivial_right(const Comodule& left) {
  if (left.side() != Side::Left) throw DomainError("with_trivial_right needs a left comodule");
  Comodule right(Side::Right, grouplike(left.ring(), 1), left.carrier(),
                 Matrix::identity(left.ring(), left.generators()));
  return Bicomodule(left, right);
}

} // namespace comorita
