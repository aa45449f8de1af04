#include "comorita/cohom.hpp"

#include "comorita/errors.hpp"

namespace comorita {

namespace {

void require_qf(const Ring& R, const char* what) {
  if (!R.is_qf()) throw UnsupportedRing(std::string(what) + " needs a quasi-Frobenius ring, got " + R.name());
}

// annihilator of each generator of a diagonally presented module (0 = free)
std::vector<Scalar> diagonal_relations(const PresentedModule& m) {
  std::vector<Scalar> d(m.generators(), Scalar(0));
  const Matrix& rel = m.relations();
  for (std::size_t r = 0; r < rel.rows(); ++r) {
    std::size_t hits = 0;
    for (std::size_t c = 0; c < rel.cols(); ++c)
      if (sgn(rel(r, c)) != 0) {
        d[c] = rel(r, c);
        ++hits;
      }
    if (hits > 1) throw DomainError("colinear maps are not diagonally presented");
  }
  return d;
}

Matrix block_of(const Matrix& eta, std::size_t k, std::size_t gx) {
  Matrix t(eta.ring(), gx, eta.cols());
  for (std::size_t a = 0; a < gx; ++a)
    for (std::size_t b = 0; b < eta.cols(); ++b) t.raw(a, b) = eta(k * gx + a, b);
  return t;
}

} // namespace

CohomResult cohom(const Comodule& x, const Comodule& m) {
  const Ring& R = m.ring();
  require_qf(R, "cohom");
  if (x.side() != Side::Right || m.side() != Side::Right) throw DomainError("cohom takes right comodules");
  if (!(x.coalgebra() == m.coalgebra())) throw DomainError("cohom: different coalgebras");
  CohomResult h{x, m, com_hom(m, x)};
  std::vector<Scalar> d = diagonal_relations(h.com);
  h.module = PresentedModule::diagonal(R, d);
  const std::size_t s = d.size(), gx = x.generators(), gm = m.generators();
  Matrix eta(R, s * gx, gm);
  for (std::size_t k = 0; k < s; ++k) {
    Scalar a = R.annihilator(d[k]);
    h.pairing.push_back(a);
    Matrix f = com_generator(m, x, h.com, k);
    for (std::size_t i = 0; i < gx; ++i)
      for (std::size_t j = 0; j < gm; ++j) eta.set(k * gx + i, j, R.quotient(f(i, j), a));
  }
  PresentedModule target = tensor_modules(h.module, x.carrier().without_ambient());
  h.unit = ModuleMap(m.carrier(), target, target.reduce(eta));
  return h;
}

ModuleMap adjunction_image(const CohomResult& h, const ModuleMap& g) {
  const Ring& R = h.m.ring();
  PresentedModule xc = h.x.carrier().without_ambient();
  PresentedModule target = tensor_modules(g.codomain().without_ambient(), xc);
  Matrix f = kron(g.matrix(), Matrix::identity(R, xc.generators())) * h.unit.matrix();
  return ModuleMap(h.m.carrier(), target, target.reduce(f));
}

ModuleMap adjunct(const CohomResult& h, const PresentedModule& w, const ModuleMap& f) {
  const Ring& R = h.m.ring();
  const std::size_t s = h.module.generators(), gx = h.x.generators(), gm = h.m.generators(),
                    gw = w.generators();
  if (f.matrix().rows() != gw * gx || f.matrix().cols() != gm) throw DimensionError("adjunct: map has wrong shape");
  PresentedModule wb = w.without_ambient();
  PresentedModule hom = hom_module(h.module, wb);
  const Matrix& eta = h.unit.matrix();
  Matrix a(R, gw * gx * gm, gw * s);
  for (std::size_t iw = 0; iw < gw; ++iw)
    for (std::size_t k = 0; k < s; ++k)
      for (std::size_t ix = 0; ix < gx; ++ix)
        for (std::size_t j = 0; j < gm; ++j) a.raw((iw * gx + ix) * gm + j, iw * s + k) = eta(k * gx + ix, j);
  PresentedModule target =
      tensor_modules(tensor_modules(wb, h.x.carrier().without_ambient()), PresentedModule::free(R, gm));
  auto y = solve_in(ModuleMap(hom, target, a * hom.embedding()), flatten_map(f.matrix()));
  if (!y) throw DomainError("map does not factor through the cohom unit");
  Matrix g = hom_element(h.module, wb, hom.embedding() * (*y));
  return ModuleMap(h.module, wb, wb.reduce(g));
}

bool adjunction_round_trip(const CohomResult& h, const PresentedModule& w) {
  PresentedModule wb = w.without_ambient();
  PresentedModule hom = hom_module(h.module, wb);
  for (std::size_t k = 0; k < hom.generators(); ++k) {
    ModuleMap g(h.module, wb, hom_element(h.module, wb, hom.embedding().column(k)));
    if (!adjunct(h, wb, adjunction_image(h, g)).equals(g)) return false;
  }
  Comodule wx = trivial_comodule(wb, h.x);
  PresentedModule com = com_hom(h.m, wx);
  for (std::size_t k = 0; k < com.generators(); ++k) {
    ModuleMap f(h.m.carrier(), wx.carrier(), com_generator(h.m, wx, com, k));
    if (!adjunction_image(h, adjunct(h, wb, f)).equals(f)) return false;
  }
  return true;
}

bool lambda_check(const Comodule& x, const Comodule& m, const PresentedModule& w) {
  const Ring& R = m.ring();
  require_qf(R, "lambda_check");
  PresentedModule wb = w.without_ambient();
  CohomResult hm = cohom(x, m);
  CohomResult hwm = cohom(x, trivial_comodule(wb, m));
  PresentedModule whm = tensor_modules(wb, hm.module);
  Matrix f = kron(Matrix::identity(R, wb.generators()), hm.unit.matrix());
  PresentedModule target = tensor_modules(whm, x.carrier().without_ambient());
  ModuleMap lambda = adjunct(hwm, whm, ModuleMap(hwm.m.carrier(), target, target.reduce(f)));
  return is_isomorphism(lambda).iso;
}

ModuleMap cohom_map(const CohomResult& hm, const CohomResult& hn, const ModuleMap& f) {
  return adjunct(hm, hn.module, ModuleMap(hm.m.carrier(), hn.unit.codomain(), hn.unit.matrix() * f.matrix()));
}

Comodule cohom_left_coaction(const CohomResult& h, const Comodule& m_left) {
  if (m_left.side() != Side::Left || m_left.generators() != h.m.generators())
    throw DomainError("cohom_left_coaction needs a left coaction on the same carrier");
  const Ring& R = h.m.ring();
  const Coalgebra& C = m_left.coalgebra();
  PresentedModule ch = tensor_modules(C.module(), h.module);
  PresentedModule target = tensor_modules(ch, h.x.carrier().without_ambient());
  Matrix f = kron(Matrix::identity(R, C.rank()), h.unit.matrix()) * m_left.coaction().matrix();
  ModuleMap g = adjunct(h, ch, ModuleMap(h.m.carrier(), target, target.reduce(f)));
  return Comodule(Side::Left, C, h.module, g.matrix());
}

Comodule cohom_right_coaction(const CohomResult& h, const Comodule& x_left) {
  if (x_left.side() != Side::Left || x_left.generators() != h.x.generators())
    throw DomainError("cohom_right_coaction needs a left coaction on x");
  const Ring& R = h.m.ring();
  const Coalgebra& C = x_left.coalgebra();
  PresentedModule hc = tensor_modules(h.module, C.module());
  PresentedModule target = tensor_modules(hc, h.x.carrier().without_ambient());
  Matrix f = kron(Matrix::identity(R, h.module.generators()), x_left.coaction().matrix()) * h.unit.matrix();
  ModuleMap g = adjunct(h, hc, ModuleMap(h.m.carrier(), target, target.reduce(f)));
  return Comodule(Side::Right, C, h.module, g.matrix());
}

CoendCoalgebra coend(const Comodule& x) {
  const Ring& R = x.ring();
  require_qf(R, "coend");
  CohomResult h = cohom(x, x);
  if (!h.module.is_free()) throw DomainError("coendomorphism module " + h.module.describe() + " is not free");
  const std::size_t s = h.module.generators(), gx = x.generators();
  PresentedModule xc = x.carrier().without_ambient();
  PresentedModule hh = tensor_modules(h.module, h.module);
  Matrix twice = kron(Matrix::identity(R, s), h.unit.matrix()) * h.unit.matrix();
  ModuleMap delta = adjunct(h, hh, ModuleMap(x.carrier(), tensor_modules(hh, xc), twice));
  PresentedModule r = PresentedModule::free(R, 1);
  ModuleMap eps = adjunct(h, r, ModuleMap(x.carrier(), tensor_modules(r, xc), Matrix::identity(R, gx)));
  Coalgebra e(R, s, delta.matrix(), eps.matrix());
  Comodule left(Side::Left, e, x.carrier(), h.unit.matrix());
  return {e, Bicomodule(left, x), h};
}

ModuleMap coend_to_coalgebra(const CoendCoalgebra& e, const Comodule& x_left) {
  const Coalgebra& C = x_left.coalgebra();
  if (x_left.side() != Side::Left || x_left.generators() != e.cohom.x.generators())
    throw DomainError("coend_to_coalgebra needs a left coaction on x");
  return adjunct(e.cohom, C.module(), x_left.coaction());
}

AntiIsoReport dual_anti_iso_check(const Comodule& x) {
  const Ring& R = x.ring();
  CoendCoalgebra e = coend(x);
  const std::size_t s = e.coalgebra.rank(), gx = x.generators();
  AntiIsoReport rep;
  std::vector<Matrix> t;
  Matrix cols(R, gx * gx, s);
  for (std::size_t i = 0; i < s; ++i) {
    t.push_back(block_of(e.cohom.unit.matrix(), i, gx));
    Matrix f = flatten_map(t.back());
    for (std::size_t r = 0; r < f.rows(); ++r) cols.raw(r, i) = f(r, 0);
  }
  PresentedModule com = com_hom(x, x);
  auto into = factor_through(ModuleMap(PresentedModule::free(R, s), com.ambient(), cols), inclusion(com));
  rep.bijective = into && is_isomorphism(*into).iso;

  Matrix one(R, gx, gx);
  for (std::size_t i = 0; i < s; ++i) one = one + t[i].scaled(e.coalgebra.epsilon()(0, i));
  rep.unit = one == Matrix::identity(R, gx);

  Algebra a = dual_algebra(e.coalgebra);
  rep.reverses = true;
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < s; ++j) {
      Matrix img(R, gx, gx);
      for (std::size_t k = 0; k < s; ++k) img = img + t[k].scaled(a.mult(k, i * s + j));
      if (!(img == t[j] * t[i])) rep.reverses = false;
      if (!rep.witness && !(t[i] * t[j] == t[j] * t[i])) rep.witness = std::make_pair(i, j);
    }
  rep.commutative = !rep.witness.has_value();
  return rep;
}

InjectorReport injector_and_exactness_probe(const Comodule& x, const ProbeFamily& probes, std::stop_token stop) {
  require_qf(x.ring(), "injector check");
  if (x.side() != Side::Right) throw DomainError("injector check takes a right comodule");
  InjectorReport rep;
  rep.probe = coflatness_probe(x, probes, stop);
  rep.injective = rep.probe.exact;
  rep.injector = rep.injective && x.carrier().is_free();
  rep.cogenerator = rep.probe.faithful;
  rep.chain = {"injective: coflat over a QF ring, " + rep.probe.scope(),
               std::string("injector: injective with free carrier") + (x.carrier().is_free() ? "" : " (carrier not free)"),
               "cogenerator: faithfully coflat, " + rep.probe.scope()};
  return rep;
}

DeltaResult delta_map(const Comodule& x, const Comodule& m) {
  const Ring& R = m.ring();
  require_qf(R, "delta_map");
  const Coalgebra& D = x.coalgebra();
  DeltaResult out{cohom(x, m), cohom(x, regular_comodule(D, Side::Right))};
  out.hd_left = cohom_left_coaction(out.hd, regular_comodule(D, Side::Left));
  out.target = cotensor(m, out.hd_left);
  const std::size_t gx = x.generators();
  PresentedModule xc = x.carrier().without_ambient();
  Matrix kappa = kron(Matrix::identity(R, m.generators()), out.hd.unit.matrix()) * m.coaction().matrix();
  PresentedModule k = out.target.module.without_ambient();
  ModuleMap incl(tensor_modules(k, xc), tensor_modules(out.target.inclusion.codomain(), xc),
                 kron(out.target.inclusion.matrix(), Matrix::identity(R, gx)));
  auto through = factor_through(ModuleMap(m.carrier(), incl.codomain(), kappa), incl);
  if (!through) throw DomainError("unit of h(D) does not land in the cotensor");
  out.delta = adjunct(out.hm, k, *through);
  out.delta = ModuleMap(out.hm.module, out.target.module, out.delta.matrix());
  out.iso = is_isomorphism(out.delta).iso;
  return out;
}

bool delta_check(const Comodule& x, const Comodule& m, const ProbeFamily& probes) {
  InjectorReport inj = injector_and_exactness_probe(x, probes);
  if (!inj.injective) throw ExactnessNotCertified("cohom exactness not certified: " + inj.probe.scope());
  return delta_map(x, m).iso;
}

} // namespace comorita
