#include "comorita/cotensor.hpp"

#include <cstdio>
#include <set>

#include "comorita/errors.hpp"
#include "comorita/normal_form.hpp"

namespace comorita {

namespace {

void require_pair(const Comodule& m, const Comodule& n, const char* where) {
  if (m.side() != Side::Right || n.side() != Side::Left)
    throw DomainError(std::string(where) + ": needs a right comodule and a left comodule");
  if (!(m.coalgebra() == n.coalgebra())) throw DomainError(std::string(where) + ": different coalgebras");
}

ModuleMap factor_or_throw(const ModuleMap& f, const ModuleMap& incl, const char* what) {
  auto g = factor_through(f, incl);
  if (!g) throw DomainError(std::string(what) + " does not factor through the cotensor");
  return *g;
}

} // namespace

CotensorResult cotensor(const Comodule& m, const Comodule& n) {
  require_pair(m, n, "cotensor");
  const Ring& R = m.ring();
  const Coalgebra& C = m.coalgebra();
  PresentedModule a = m.carrier().without_ambient(), b = n.carrier().without_ambient();
  const std::size_t gm = a.generators(), gn = b.generators();
  PresentedModule mn = tensor_modules(a, b);
  PresentedModule mcn = tensor_modules(tensor_modules(a, C.module()), b);
  Matrix alpha = kron(m.coaction().matrix(), Matrix::identity(R, gn)) -
                 kron(Matrix::identity(R, gm), n.coaction().matrix());
  ModuleMap am(mn, mcn, mcn.reduce(alpha));
  PresentedModule k = kernel_of_map(am);
  return {k, am, inclusion(k), gm, gn};
}

CounitIso counit_iso(const Comodule& m) {
  const Ring& R = m.ring();
  const Coalgebra& C = m.coalgebra();
  const std::size_t g = m.generators();
  PresentedModule carrier = m.carrier().without_ambient();
  CotensorResult cot = m.side() == Side::Right ? cotensor(m, regular_comodule(C, Side::Left))
                                               : cotensor(regular_comodule(C, Side::Right), m);
  Matrix counit = m.side() == Side::Right ? kron(Matrix::identity(R, g), C.epsilon())
                                          : kron(C.epsilon(), Matrix::identity(R, g));
  ModuleMap fwd(cot.module, carrier, carrier.reduce(counit * cot.inclusion.matrix()));
  ModuleMap bwd = factor_or_throw(ModuleMap(carrier, cot.inclusion.codomain(), m.coaction().matrix()),
                                  cot.inclusion, "coaction");
  bool ok = (fwd * bwd).equals(ModuleMap::identity(carrier)) && (bwd * fwd).equals(ModuleMap::identity(cot.module));
  return {cot, fwd, bwd, ok};
}

ModuleMap cotensor_map(const CotensorResult& src, const CotensorResult& dst, const ModuleMap& f, const ModuleMap& g) {
  Matrix amb = kron(f.matrix(), g.matrix()) * src.inclusion.matrix();
  return factor_or_throw(ModuleMap(src.module, dst.inclusion.codomain(), amb), dst.inclusion, "tensor of maps");
}

Comodule induced_right(const CotensorResult& cot, const Comodule& second_right) {
  if (second_right.side() != Side::Right) throw DomainError("induced_right needs a right coaction");
  if (second_right.generators() != cot.right_generators)
    throw DimensionError("induced_right: coaction lives on a different carrier");
  const Ring& R = second_right.ring();
  const Coalgebra& D = second_right.coalgebra();
  const Matrix& e = cot.inclusion.matrix();
  PresentedModule k = cot.module.without_ambient();
  const PresentedModule& amb = cot.inclusion.codomain();
  ModuleMap f(cot.module, tensor_modules(amb, D.module()),
              kron(Matrix::identity(R, cot.left_generators), second_right.coaction().matrix()) * e);
  ModuleMap incl(tensor_modules(k, D.module()), f.codomain(), kron(e, Matrix::identity(R, D.rank())));
  auto g = factor_through(f, incl);
  if (!g) throw PurityObstruction("induced right coaction does not land in the cotensor tensored with the coalgebra");
  return Comodule(Side::Right, D, cot.module, g->matrix());
}

Comodule induced_left(const CotensorResult& cot, const Comodule& first_left) {
  if (first_left.side() != Side::Left) throw DomainError("induced_left needs a left coaction");
  if (first_left.generators() != cot.left_generators)
    throw DimensionError("induced_left: coaction lives on a different carrier");
  const Ring& R = first_left.ring();
  const Coalgebra& D = first_left.coalgebra();
  const Matrix& e = cot.inclusion.matrix();
  PresentedModule k = cot.module.without_ambient();
  const PresentedModule& amb = cot.inclusion.codomain();
  ModuleMap f(cot.module, tensor_modules(D.module(), amb),
              kron(first_left.coaction().matrix(), Matrix::identity(R, cot.right_generators)) * e);
  ModuleMap incl(tensor_modules(D.module(), k), f.codomain(), kron(Matrix::identity(R, D.rank()), e));
  auto g = factor_through(f, incl);
  if (!g) throw PurityObstruction("induced left coaction does not land in the coalgebra tensored with the cotensor");
  return Comodule(Side::Left, D, cot.module, g->matrix());
}

Comodule induced_comodule(const Comodule& m, const Bicomodule& l) {
  return induced_right(cotensor(m, l.as_left()), l.as_right());
}

Comodule induced_left_comodule(const Bicomodule& l, const Comodule& n) {
  return induced_left(cotensor(l.as_right(), n), l.as_left());
}

Bicomodule cotensor_bicomodule(const Bicomodule& a, const Bicomodule& b) {
  CotensorResult cot = cotensor(a.as_right(), b.as_left());
  return Bicomodule(induced_left(cot, a.as_left()), induced_right(cot, b.as_right()));
}

namespace {

ModuleMap gamma_from(const PresentedModule& w, const CotensorResult& cot, const Comodule& m, const Comodule& n) {
  const Ring& R = m.ring();
  CotensorResult cot2 = cotensor(trivial_comodule(w, m), n);
  PresentedModule dom = tensor_modules(w.without_ambient(), cot.module.without_ambient());
  ModuleMap f(dom, cot2.inclusion.codomain(), kron(Matrix::identity(R, w.generators()), cot.inclusion.matrix()));
  return factor_or_throw(f, cot2.inclusion, "gamma");
}

ModuleMap mu_from(const PresentedModule& w, const CotensorResult& cot, const Comodule& m, const Comodule& n) {
  const Ring& R = m.ring();
  CotensorResult cot3 = cotensor(m, trivial_comodule(w, n));
  PresentedModule dom = tensor_modules(cot.module.without_ambient(), w.without_ambient());
  ModuleMap f(dom, cot3.inclusion.codomain(), kron(cot.inclusion.matrix(), Matrix::identity(R, w.generators())));
  return factor_or_throw(f, cot3.inclusion, "mu");
}

} // namespace

ModuleMap gamma_map(const PresentedModule& w, const Comodule& m, const Comodule& n) {
  return gamma_from(w, cotensor(m, n), m, n);
}

ModuleMap mu_map(const PresentedModule& w, const Comodule& m, const Comodule& n) {
  return mu_from(w, cotensor(m, n), m, n);
}

CotensorPurity purity_certificate(const Comodule& m, const Comodule& n, PurityMode mode,
                                  const std::vector<PresentedModule>& family) {
  const Ring& R = m.ring();
  CotensorResult cot = cotensor(m, n);
  CotensorPurity out;
  std::vector<PresentedModule> ws;
  if (mode == PurityMode::Complete) {
    ws = complete_purity_family(cot.inclusion, &out.family);
  } else {
    for (const auto& w : family) check_same_ring(w.ring(), R, "purity family");
    ws = family;
    out.family = "explicit family of " + std::to_string(ws.size()) + " modules";
  }
  PresentedModule k = cot.module.without_ambient();
  for (const auto& w : ws) {
    CotensorPurityTest t{w};
    PresentedModule wb = w.without_ambient();
    t.pure = is_injective(ModuleMap(tensor_modules(wb, k), tensor_modules(wb, cot.inclusion.codomain()),
                                    kron(Matrix::identity(R, w.generators()), cot.inclusion.matrix())));
    t.gamma_iso = is_isomorphism(gamma_from(w, cot, m, n)).iso;
    t.mu_iso = is_isomorphism(mu_from(w, cot, m, n)).iso;
    out.pure = out.pure && t.pure;
    out.consistent = out.consistent && t.agree();
    out.tests.push_back(t);
  }
  return out;
}

AssocReport associativity_check(const Comodule& m, const Bicomodule& l, const Comodule& n, std::stop_token stop) {
  auto poll = [&] {
    if (stop.stop_requested()) throw Cancelled("associativity check cancelled");
  };
  require_pair(m, l.as_left(), "associativity_check");
  require_pair(l.as_right(), n, "associativity_check");
  const Ring& R = m.ring();
  AssocReport rep;
  PresentedModule mc = m.carrier().without_ambient(), nc = n.carrier().without_ambient();
  const std::size_t gm = mc.generators(), gn = nc.generators();

  CotensorResult ml = cotensor(m, l.as_left());
  poll();
  CotensorResult a = cotensor(induced_right(ml, l.as_right()), n);
  poll();
  CotensorResult ln = cotensor(l.as_right(), n);
  poll();
  CotensorResult b = cotensor(m, induced_left(ln, l.as_left()));
  poll();
  rep.left_module = a.module;
  rep.right_module = b.module;

  PresentedModule mlk = ml.module.without_ambient(), lnk = ln.module.without_ambient();
  rep.left_pure = is_injective(ModuleMap(tensor_modules(mlk, nc), tensor_modules(ml.inclusion.codomain(), nc),
                                         kron(ml.inclusion.matrix(), Matrix::identity(R, gn))));
  rep.right_pure = is_injective(ModuleMap(tensor_modules(mc, lnk), tensor_modules(mc, ln.inclusion.codomain()),
                                          kron(Matrix::identity(R, gm), ln.inclusion.matrix())));
  poll();

  // (m ⊗ l) □ n  <-  m ⊗ (l □ n)
  CotensorResult t2 = cotensor(trivial_comodule(mc, l.as_right()), n);
  ModuleMap gamma_m = factor_or_throw(ModuleMap(tensor_modules(mc, lnk), t2.inclusion.codomain(),
                                                kron(Matrix::identity(R, gm), ln.inclusion.matrix())),
                                      t2.inclusion, "gamma");
  IsoResult psi2 = is_isomorphism(gamma_m);
  rep.psi2_iso = psi2.iso;
  poll();

  PresentedModule mcc = tensor_modules(mc, m.coalgebra().module());
  CotensorResult t3 = cotensor(trivial_comodule(mcc, l.as_right()), n);
  ModuleMap gamma_mc = factor_or_throw(ModuleMap(tensor_modules(mcc, lnk), t3.inclusion.codomain(),
                                                 kron(Matrix::identity(R, mcc.generators()), ln.inclusion.matrix())),
                                       t3.inclusion, "gamma");
  rep.psi3_iso = is_isomorphism(gamma_mc).iso;
  poll();

  Matrix ea = kron(ml.inclusion.matrix(), Matrix::identity(R, gn)) * a.inclusion.matrix();
  std::optional<ModuleMap> psi1;
  if (psi2.iso) {
    ModuleMap ja = factor_or_throw(ModuleMap(a.module, t2.inclusion.codomain(), ea), t2.inclusion, "left cotensor");
    ModuleMap x = (*psi2.inverse) * ja;
    psi1 = factor_through(ModuleMap(a.module, b.inclusion.codomain(), x.matrix()), b.inclusion);
  } else {
    Matrix eb = kron(Matrix::identity(R, gm), ln.inclusion.matrix()) * b.inclusion.matrix();
    PresentedModule mln = t2.inclusion.codomain();
    psi1 = factor_through(ModuleMap(a.module, mln, ea), ModuleMap(b.module, mln, eb));
  }
  rep.psi1_defined = psi1.has_value();
  if (psi1) rep.psi1_iso = is_isomorphism(*psi1).iso;
  return rep;
}

void validate_probe(const ShortExactSequence& s) {
  auto fail = [&](const std::string& why) { throw NonExactProbe("probe " + s.label + ": " + why); };
  if (!is_colinear(s.i, s.n1, s.n2) || !is_colinear(s.p, s.n2, s.n3)) fail("maps are not colinear");
  if (!is_injective(s.i)) fail("first map is not injective");
  if (!is_surjective(s.p)) fail("second map is not surjective");
  if (!(s.p * s.i).is_zero()) fail("composite is not zero");
  PresentedModule k = kernel_of_map(s.p);
  if (k.generators() > 0 && !in_image(s.i, k.embedding())) fail("not exact in the middle");
}

bool probe_is_pure(const ShortExactSequence& s) { return purity_of_map(s.i).pure; }

std::string family_hash(const std::vector<ShortExactSequence>& seqs) {
  std::uint64_t h = 1469598103934665603ULL;
  auto feed = [&](const std::string& s) {
    for (unsigned char ch : s) {
      h ^= ch;
      h *= 1099511628211ULL;
    }
    h ^= 0xff;
    h *= 1099511628211ULL;
  };
  for (const auto& s : seqs) {
    for (const Comodule* c : {&s.n1, &s.n2, &s.n3}) {
      feed(std::to_string(c->generators()));
      feed(c->carrier().relations().to_string());
      feed(c->coaction().matrix().to_string());
    }
    feed(s.i.matrix().to_string());
    feed(s.p.matrix().to_string());
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

ProbeFamily standard_probes(const Coalgebra& c, Side side, std::size_t copies) {
  ProbeFamily fam;
  fam.name = std::string("standard/") + side_name(side) + "/" + std::to_string(copies);
  Comodule base = regular_comodule(c, side);
  std::set<std::string> seen;
  for (std::size_t b = 1; b <= copies; ++b) {
    PresentedModule com = com_hom(base, base);
    for (std::size_t k = 0; k < com.generators(); ++k) {
      Matrix phi = com_generator(base, base, com, k);
      ModuleMap f(base.carrier(), base.carrier(), phi);
      std::vector<std::pair<std::string, PresentedModule>> subs{
          {"ker", kernel_of_map(f)}, {"im", submodule(base.carrier(), phi)}};
      for (auto& [kind, s] : subs) {
        if (s.generators() == 0) continue;
        std::string key = std::to_string(b) + "|" + echelon_rows(s.embedding().transpose()).to_string();
        if (!seen.insert(key).second) continue;
        QuotientComodule q = quotient_comodule(base, s.embedding());
        if (q.comodule.carrier().is_zero()) continue;
        Comodule sub = restrict_comodule(base, s);
        ShortExactSequence seq{sub, base, q.comodule, inclusion(s), q.projection,
                               kind + " of endomorphism " + std::to_string(k) + " of C^" + std::to_string(b)};
        if (!probe_is_pure(seq)) continue;
        fam.sequences.push_back(seq);
      }
    }
    base = direct_sum(base, regular_comodule(c, side));
  }
  fam.hash = family_hash(fam.sequences);
  return fam;
}

ProbeReport coflatness_probe(const Comodule& m, const ProbeFamily& probes, std::stop_token stop) {
  ProbeReport rep;
  rep.family = probes.name;
  rep.hash = probes.hash.empty() ? family_hash(probes.sequences) : probes.hash;
  const bool right = m.side() == Side::Right;
  ModuleMap idm = ModuleMap::identity(m.carrier());
  auto cot = [&](const Comodule& n) { return right ? cotensor(m, n) : cotensor(n, m); };
  auto lift = [&](const CotensorResult& a, const CotensorResult& b, const ModuleMap& f) {
    return right ? cotensor_map(a, b, idm, f) : cotensor_map(a, b, f, idm);
  };
  std::set<std::string> vanishing;
  for (const auto& s : probes.sequences) {
    if (stop.stop_requested()) throw Cancelled("coflatness probe cancelled");
    if ((right ? Side::Left : Side::Right) != s.n2.side() || !(s.n2.coalgebra() == m.coalgebra()))
      throw DomainError("probe " + s.label + " is over the wrong side or coalgebra");
    validate_probe(s);
    CotensorResult k1 = cot(s.n1), k2 = cot(s.n2), k3 = cot(s.n3);
    ModuleMap ki = lift(k1, k2, s.i), kp = lift(k2, k3, s.p);
    ProbeResult r{s.label, probe_is_pure(s)};
    bool middle = (kp * ki).is_zero();
    if (middle) {
      PresentedModule ker = kernel_of_map(kp);
      middle = ker.generators() == 0 || in_image(ki, ker.embedding());
    }
    r.left_exact = middle && is_injective(ki);
    r.exact = r.left_exact && is_surjective(kp);
    rep.left_exact = rep.left_exact && r.left_exact;
    rep.exact = rep.exact && r.exact;
    rep.results.push_back(r);
    const std::pair<const Comodule*, const CotensorResult*> parts[] = {{&s.n1, &k1}, {&s.n2, &k2}, {&s.n3, &k3}};
    const char* names[] = {"sub", "middle", "quotient"};
    for (int j = 0; j < 3; ++j)
      if (!parts[j].first->carrier().is_zero() && parts[j].second->module.is_zero())
        vanishing.insert(s.label + " (" + names[j] + ")");
  }
  rep.vanishing.assign(vanishing.begin(), vanishing.end());
  rep.faithful = rep.vanishing.empty();
  return rep;
}

} // namespace comorita
