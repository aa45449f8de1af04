#include "comorita/morita.hpp"

#include "comorita/errors.hpp"

namespace comorita {

bool ContextReport::passed() const { return first_failure() == nullptr; }

const ContextCheck* ContextReport::first_failure() const {
  for (const auto& c : items)
    if (!c.pass) return &c;
  return nullptr;
}

const ContextCheck* ContextReport::find(const std::string& name) const {
  for (const auto& c : items)
    if (c.name == name) return &c;
  return nullptr;
}

bool EquivalenceWitness::passed() const {
  for (const auto& t : trips)
    if (!t.ok()) return false;
  return true;
}

namespace {

void check_shapes(const MoritaContext& ctx) {
  if (!(ctx.m.left_coalgebra() == ctx.d) || !(ctx.m.right_coalgebra() == ctx.c))
    throw DomainError("context: M must be a D-C bicomodule");
  if (!(ctx.n.left_coalgebra() == ctx.c) || !(ctx.n.right_coalgebra() == ctx.d))
    throw DomainError("context: N must be a C-D bicomodule");
  const std::size_t gm = ctx.m.carrier().generators(), gn = ctx.n.carrier().generators();
  if (ctx.f.rows() != gm * gn || ctx.f.cols() != ctx.d.rank())
    throw DimensionError("context: f must be " + std::to_string(gm * gn) + "x" + std::to_string(ctx.d.rank()));
  if (ctx.g.rows() != gn * gm || ctx.g.cols() != ctx.c.rank())
    throw DimensionError("context: g must be " + std::to_string(gn * gm) + "x" + std::to_string(ctx.c.rank()));
}

ContextCheck from_axioms(const std::string& name, const AxiomReport& r) {
  const AxiomResult* f = r.first_failure();
  if (!f) return {name, true, "", std::nullopt};
  return {name, false, f->axiom, f->witness};
}

// map into a cotensor, checked against both coactions of the bicomodule on it
ContextCheck bicolinear(const std::string& name, const ModuleMap& bar, const Coalgebra& src, const Bicomodule& target) {
  bool l = is_colinear(bar, regular_comodule(src, Side::Left), target.as_left());
  bool r = is_colinear(bar, regular_comodule(src, Side::Right), target.as_right());
  std::string detail = l && r ? "" : (!l ? "left coaction" : "right coaction");
  return {name, l && r, detail, std::nullopt};
}

ContextCheck triangle(const std::string& name, const PresentedModule& carrier, const PresentedModule& amb,
                      const Matrix& lhs, const Matrix& rhs, Matrix& defect) {
  ModuleMap a(carrier, amb, amb.reduce(lhs)), b(carrier, amb, amb.reduce(rhs));
  defect = amb.reduce(lhs - rhs);
  auto w = a.difference_witness(b);
  return {name, !w.has_value(), w ? "nonzero defect" : "", w};
}

// x -> (x □ p) □ q for a right comodule x, with u : C -> p ⊗ q
RoundTrip right_trip(const std::string& functor, const std::string& label, const Comodule& x, const Bicomodule& p,
                     const Bicomodule& q, const Matrix& u) {
  const Ring& R = x.ring();
  RoundTrip t{functor, label};
  CotensorResult a = cotensor(x, p.as_left());
  Comodule gx = induced_right(a, p.as_right());
  CotensorResult b = cotensor(gx, q.as_left());
  Comodule fgx = induced_right(b, q.as_right());
  PresentedModule xc = x.carrier().without_ambient();
  PresentedModule amb = tensor_modules(tensor_modules(xc, p.carrier().without_ambient()), q.carrier().without_ambient());
  Matrix unit = kron(Matrix::identity(R, x.generators()), u) * x.coaction().matrix();
  ModuleMap incl(b.module, amb, kron(a.inclusion.matrix(), Matrix::identity(R, q.carrier().generators())) * b.inclusion.matrix());
  auto lambda = factor_through(ModuleMap(x.carrier(), amb, unit), incl);
  if (!lambda) return t;
  t.iso = is_isomorphism(*lambda).iso;
  t.colinear = is_colinear(*lambda, x, fgx);
  return t;
}

// z -> q □ (p □ z) for a left comodule z, with u : C -> q ⊗ p
RoundTrip left_trip(const std::string& functor, const std::string& label, const Comodule& z, const Bicomodule& p,
                    const Bicomodule& q, const Matrix& u) {
  const Ring& R = z.ring();
  RoundTrip t{functor, label};
  CotensorResult a = cotensor(p.as_right(), z);
  Comodule gz = induced_left(a, p.as_left());
  CotensorResult b = cotensor(q.as_right(), gz);
  Comodule fgz = induced_left(b, q.as_left());
  PresentedModule zc = z.carrier().without_ambient();
  PresentedModule amb = tensor_modules(tensor_modules(q.carrier().without_ambient(), p.carrier().without_ambient()), zc);
  Matrix unit = kron(u, Matrix::identity(R, z.generators())) * z.coaction().matrix();
  ModuleMap incl(b.module, amb, kron(Matrix::identity(R, q.carrier().generators()), a.inclusion.matrix()) * b.inclusion.matrix());
  auto psi = factor_through(ModuleMap(z.carrier(), amb, unit), incl);
  if (!psi) return t;
  t.iso = is_isomorphism(*psi).iso;
  t.colinear = is_colinear(*psi, z, fgz);
  return t;
}

std::string describe(const Comodule& x, std::size_t k) {
  return std::string(side_name(x.side())) + " #" + std::to_string(k) + " (" + x.carrier().describe() + ")";
}

} // namespace

ContextReport verify_context(const MoritaContext& ctx, std::stop_token stop) {
  check_shapes(ctx);
  const Ring& R = ctx.d.ring();
  ContextReport rep;
  auto poll = [&] {
    if (stop.stop_requested()) throw Cancelled("context verification cancelled");
  };
  const PresentedModule mc = ctx.m.carrier().without_ambient(), nc = ctx.n.carrier().without_ambient();
  const std::size_t gm = mc.generators(), gn = nc.generators();

  bool flat = prune(mc).module.is_free() && prune(nc).module.is_free();
  rep.items.push_back({"flatness", flat, flat ? "carriers free" : "carrier not free", std::nullopt});
  rep.items.push_back(from_axioms("bicomodule M", check_bicomodule(ctx.m)));
  rep.items.push_back(from_axioms("bicomodule N", check_bicomodule(ctx.n)));

  rep.mn = cotensor(ctx.m.as_right(), ctx.n.as_left());
  rep.nm = cotensor(ctx.n.as_right(), ctx.m.as_left());
  CotensorPurity pmn = purity_certificate(ctx.m.as_right(), ctx.n.as_left());
  CotensorPurity pnm = purity_certificate(ctx.n.as_right(), ctx.m.as_left());
  rep.items.push_back({"purity M□N", pmn.pure, pmn.family, std::nullopt});
  rep.items.push_back({"purity N□M", pnm.pure, pnm.family, std::nullopt});
  if (!pmn.pure || !pnm.pure) throw AssociativityUnavailable("cotensor of the context is not pure; associativity is not available");
  poll();

  AssocReport amnm = associativity_check(ctx.m.as_right(), ctx.n, ctx.m.as_left(), stop);
  AssocReport anmn = associativity_check(ctx.n.as_right(), ctx.m, ctx.n.as_left(), stop);
  rep.items.push_back({"associativity M□N□M", amnm.preconditions() && amnm.psi1_iso, "", std::nullopt});
  rep.items.push_back({"associativity N□M□N", anmn.preconditions() && anmn.psi1_iso, "", std::nullopt});
  poll();

  rep.f_bar = factor_through(ModuleMap(ctx.d.module(), rep.mn.inclusion.codomain(), ctx.f), rep.mn.inclusion);
  rep.items.push_back({"f lands in M□N", rep.f_bar.has_value(), "", std::nullopt});
  rep.g_bar = factor_through(ModuleMap(ctx.c.module(), rep.nm.inclusion.codomain(), ctx.g), rep.nm.inclusion);
  rep.items.push_back({"g lands in N□M", rep.g_bar.has_value(), "", std::nullopt});
  for (int side = 0; side < 2; ++side) {
    const auto& bar = side == 0 ? rep.f_bar : rep.g_bar;
    std::string name = side == 0 ? "f bicolinear" : "g bicolinear";
    if (!bar) {
      rep.items.push_back({name, false, "map does not land in the cotensor", std::nullopt});
      continue;
    }
    try {
      Bicomodule target = side == 0 ? cotensor_bicomodule(ctx.m, ctx.n) : cotensor_bicomodule(ctx.n, ctx.m);
      rep.items.push_back(bicolinear(name, *bar, side == 0 ? ctx.d : ctx.c, target));
    } catch (const PurityObstruction& e) {
      rep.items.push_back({name, false, e.what(), std::nullopt});
    }
  }
  poll();

  // M ≅ M□C -> M□N□M <- D□M ≅ M, and the same for N
  PresentedModule mnm = tensor_modules(tensor_modules(mc, nc), mc);
  rep.items.push_back(triangle("triangle M", ctx.m.carrier(), mnm,
                               kron(Matrix::identity(R, gm), ctx.g) * ctx.m.right_coaction().matrix(),
                               kron(ctx.f, Matrix::identity(R, gm)) * ctx.m.left_coaction().matrix(), rep.defect_m));
  PresentedModule nmn = tensor_modules(tensor_modules(nc, mc), nc);
  rep.items.push_back(triangle("triangle N", ctx.n.carrier(), nmn,
                               kron(Matrix::identity(R, gn), ctx.f) * ctx.n.right_coaction().matrix(),
                               kron(ctx.g, Matrix::identity(R, gn)) * ctx.n.left_coaction().matrix(), rep.defect_n));
  return rep;
}

bool is_strict(const MoritaContext&, const ContextReport& report) {
  if (const ContextCheck* f = report.first_failure()) throw UnverifiedContext("context check failed: " + f->name);
  return is_isomorphism(*report.f_bar).iso && is_isomorphism(*report.g_bar).iso;
}

bool is_strict(const MoritaContext& ctx) { return is_strict(ctx, verify_context(ctx)); }

TestFamily standard_tests(const MoritaContext& ctx) {
  TestFamily t;
  for (Side side : {Side::Right, Side::Left}) {
    Comodule c = regular_comodule(ctx.c, side), d = regular_comodule(ctx.d, side);
    auto& cs = side == Side::Right ? t.right_c : t.left_c;
    auto& ds = side == Side::Right ? t.right_d : t.left_d;
    cs = {c, direct_sum(c, c), side == Side::Right ? ctx.m.as_right() : ctx.n.as_left()};
    ds = {d, direct_sum(d, d), side == Side::Right ? ctx.n.as_right() : ctx.m.as_left()};
  }
  return t;
}

EquivalenceWitness equivalence_from_context(const MoritaContext& ctx, const TestFamily& tests, std::stop_token stop) {
  if (!is_strict(ctx)) throw UnverifiedContext("context is not strict");
  EquivalenceWitness w;
  auto poll = [&] {
    if (stop.stop_requested()) throw Cancelled("equivalence check cancelled");
  };
  for (std::size_t k = 0; k < tests.right_c.size(); ++k) {
    poll();
    w.trips.push_back(right_trip("FG", describe(tests.right_c[k], k), tests.right_c[k], ctx.n, ctx.m, ctx.g));
  }
  for (std::size_t k = 0; k < tests.right_d.size(); ++k) {
    poll();
    w.trips.push_back(right_trip("GF", describe(tests.right_d[k], k), tests.right_d[k], ctx.m, ctx.n, ctx.f));
  }
  for (std::size_t k = 0; k < tests.left_c.size(); ++k) {
    poll();
    w.trips.push_back(left_trip("F'G'", describe(tests.left_c[k], k), tests.left_c[k], ctx.m, ctx.n, ctx.g));
  }
  for (std::size_t k = 0; k < tests.left_d.size(); ++k) {
    poll();
    w.trips.push_back(left_trip("G'F'", describe(tests.left_d[k], k), tests.left_d[k], ctx.n, ctx.m, ctx.f));
  }
  w.scope = "certified on a test family of " + std::to_string(tests.size()) + " comodules";
  return w;
}

SynthesizedContext context_from_comodule(const Comodule& x, const ProbeFamily& probes) {
  if (x.side() != Side::Right) throw DomainError("context_from_comodule takes a right comodule");
  SynthesizedContext out;
  out.hypotheses = injector_and_exactness_probe(x, probes);
  if (!out.hypotheses.injector || !out.hypotheses.cogenerator)
    throw HypothesisNotCertified("comodule is not certified as a faithfully coflat injector: " +
                                 out.hypotheses.probe.scope());
  out.coend = coend(x);
  DeltaResult dm = delta_map(x, x);
  Comodule n_right = cohom_right_coaction(dm.hd, out.coend.x.as_left());
  Bicomodule n(dm.hd_left, n_right);
  Matrix f = dm.target.inclusion.matrix() * dm.delta.matrix();
  out.context = {out.coend.coalgebra, x.coalgebra(), out.coend.x, n, f, dm.hd.unit.matrix()};
  out.report = verify_context(out.context);
  out.strict = out.report.passed() && is_strict(out.context, out.report);
  return out;
}

InvertibilityReport invertibility_check(const Bicomodule& x, const ProbeFamily& probes) {
  InvertibilityReport rep;
  const Comodule& xr = x.as_right();
  rep.hypotheses = injector_and_exactness_probe(xr, probes);
  if (!rep.hypotheses.injector || !rep.hypotheses.cogenerator) {
    rep.reason = !rep.hypotheses.cogenerator ? "not faithfully coflat against the probe family"
                                             : "not an injector against the probe family";
    return rep;
  }
  CoendCoalgebra e = coend(xr);
  rep.coend_rank = e.coalgebra.rank();
  ModuleMap pi = coend_to_coalgebra(e, x.as_left());
  rep.coalgebra_map = check_coalgebra_morphism(pi, e.coalgebra, x.left_coalgebra());
  rep.coend_iso = is_isomorphism(pi).iso;
  if (!rep.coalgebra_map || !rep.coend_iso) {
    rep.reason = !rep.coalgebra_map ? "induced map from the coend is not a coalgebra map"
                                    : "coend is not isomorphic to the left coalgebra";
    return rep;
  }
  SynthesizedContext s = context_from_comodule(xr, probes);
  if (!s.strict) {
    rep.reason = "synthesized context is not strict";
    return rep;
  }
  rep.equivalence = equivalence_from_context(s.context, standard_tests(s.context));
  rep.invertible = rep.equivalence->passed();
  if (!rep.invertible) rep.reason = "a round trip failed";
  return rep;
}

} // namespace comorita
