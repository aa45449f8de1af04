#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "comorita/cotensor.hpp"
#include "comorita/errors.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace comorita;

namespace {

const Ring QQ = Ring::rationals();
const Ring ZZ = Ring::integers();

std::vector<Ring> all_rings() {
  return {QQ, Ring::prime_field(2), Ring::prime_field(5), ZZ, Ring::integers_mod(4)};
}

Comodule point(const Coalgebra& c, std::size_t k, Side side) { return point_comodule(c, k, side); }

// every coaction whose structure maps φ_1..φ_{d-1} have entries in values;
// φ_0 is forced by the counit (needs ε_0 = 1)
std::vector<Comodule> enumerate_comodules(const Coalgebra& c, std::size_t g, Side side,
                                          const std::vector<long>& values) {
  const Ring& R = c.ring();
  const std::size_t d = c.rank(), free_entries = (d - 1) * g * g;
  std::vector<Comodule> out;
  std::vector<std::size_t> idx(free_entries, 0);
  for (;;) {
    std::vector<Matrix> phi(d, Matrix(R, g, g));
    for (std::size_t e = 0; e < free_entries; ++e) {
      std::size_t k = 1 + e / (g * g), r = (e / g) % g, s = e % g;
      phi[k].set(r, s, Scalar(values[idx[e]]));
    }
    phi[0] = Matrix::identity(R, g);
    for (std::size_t k = 1; k < d; ++k) phi[0] = phi[0] - phi[k].scaled(c.epsilon()(0, k));
    Matrix rho(R, g * d, g);
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t m = 0; m < g; ++m)
        for (std::size_t j = 0; j < g; ++j) rho.set(side == Side::Right ? m * d + k : k * g + m, j, phi[k](m, j));
    Comodule x(side, c, PresentedModule::free(R, g), rho);
    if (check_comodule(x).passed()) out.push_back(x);
    std::size_t e = 0;
    while (e < free_entries && ++idx[e] == values.size()) idx[e++] = 0;
    if (e == free_entries) break;
  }
  return out;
}

struct SearchResult {
  std::size_t pairs = 0;
  std::size_t non_pure = 0;
};

SearchResult purity_search(const Coalgebra& c, std::size_t max_rank, const std::vector<long>& values) {
  std::vector<Comodule> rights, lefts;
  for (std::size_t g = 1; g <= max_rank; ++g) {
    for (auto& x : enumerate_comodules(c, g, Side::Right, values)) rights.push_back(x);
    for (auto& x : enumerate_comodules(c, g, Side::Left, values)) lefts.push_back(x);
  }
  SearchResult r;
  for (const auto& m : rights)
    for (const auto& n : lefts) {
      ++r.pairs;
      if (!purity_of_map(cotensor(m, n).inclusion).pure) ++r.non_pure;
    }
  return r;
}

} // namespace

TEST_CASE("cotensor of grouplike points") {
  Coalgebra g2 = grouplike(QQ, 2);
  CHECK(cotensor(point(g2, 0, Side::Right), point(g2, 1, Side::Left)).module.is_zero());
  CotensorResult same = cotensor(point(g2, 0, Side::Right), point(g2, 0, Side::Left));
  CHECK(same.module.generators() == 1);
  CHECK(same.module.is_free());
  CHECK(same.alpha.is_zero());
}

TEST_CASE("cotensor arguments are checked") {
  Coalgebra g2 = grouplike(QQ, 2), g3 = grouplike(QQ, 3);
  CHECK_THROWS_AS(cotensor(point(g2, 0, Side::Left), point(g2, 0, Side::Left)), DomainError);
  CHECK_THROWS_AS(cotensor(point(g2, 0, Side::Right), point(g3, 0, Side::Left)), DomainError);
}

TEST_CASE("kernel embedding is annihilated by alpha") {
  std::mt19937 rng(11);
  for (const Ring& R : all_rings())
    for (const auto& s : fixture::settings(R)) {
      Comodule m = fixture::random_comodule(s, Side::Right, 3, rng);
      Comodule n = fixture::random_comodule(s, Side::Left, 3, rng);
      CotensorResult k = cotensor(m, n);
      CHECK((k.alpha * k.inclusion).is_zero());
      CHECK(is_injective(k.inclusion));
    }
}

TEST_CASE("cotensor equals the enumerated kernel over finite rings") {
  std::mt19937 rng(5);
  int cases = 0;
  for (const Ring& R : {Ring::prime_field(2), Ring::integers_mod(4)})
    for (const auto& s : fixture::settings(R))
      for (int t = 0; t < 6; ++t) {
        Comodule m = fixture::random_comodule(s, Side::Right, 4, rng);
        Comodule n = fixture::random_comodule(s, Side::Left, std::max<std::size_t>(1, 8 / m.generators()), rng);
        if (m.generators() * n.generators() > 8) continue;
        CotensorResult k = cotensor(m, n);
        CHECK(oracle::span_set(k.inclusion.matrix()) == oracle::kernel_set(k.alpha.matrix()));
        ++cases;
      }
  CHECK(cases >= 30);
}

TEST_CASE("counit isomorphism") {
  for (const Ring& R : all_rings()) {
    for (const Coalgebra& c : {grouplike(R, 2), matrix_coalgebra(R, 2)}) {
      CounitIso right = counit_iso(regular_comodule(c, Side::Right));
      CHECK(right.verified);
      CHECK(right.cotensor.module.generators() == c.rank());
      CHECK(counit_iso(regular_comodule(c, Side::Left)).verified);
    }
    CounitIso col = counit_iso(column_comodule(matrix_coalgebra(R, 2), 2));
    CHECK(col.verified);
    CHECK(col.cotensor.module.generators() == 2);
  }
  Comodule torsion(Side::Right, grouplike(ZZ, 1), PresentedModule::cyclic(ZZ, 2), Matrix::identity(ZZ, 1));
  REQUIRE(check_comodule(torsion).passed());
  CounitIso t = counit_iso(torsion);
  CHECK(t.verified);
  CHECK(t.cotensor.module.invariants() == std::vector<Scalar>{2});
}

TEST_CASE("induced comodule structures") {
  Coalgebra g2 = grouplike(QQ, 2), g1 = grouplike(QQ, 1), mc = matrix_coalgebra(QQ, 2);

  Comodule cc = induced_comodule(regular_comodule(g2, Side::Right), regular_bicomodule(g2));
  CHECK(check_comodule(cc).passed());
  CHECK(cc.generators() == 2);

  Bicomodule l = with_trivial_right(regular_comodule(g2, Side::Left));
  Comodule r = induced_comodule(point(g2, 0, Side::Right), l);
  CHECK(check_comodule(r).passed());
  CHECK(r.coalgebra() == g1);
  CHECK(r.generators() == 1);

  Comodule x = column_comodule(mc, 2);
  Comodule rx = induced_comodule(regular_comodule(g1, Side::Right), with_trivial_left(x));
  CHECK(check_comodule(rx).passed());
  REQUIRE(rx.generators() == 2);
  // R ⊗ X = X, so the embedding itself is a colinear isomorphism onto X
  ModuleMap onto(rx.carrier(), x.carrier(), rx.carrier().embedding());
  CHECK(is_isomorphism(onto).iso);
  CHECK(is_colinear(onto, rx, x));

  Comodule left = induced_left_comodule(with_trivial_right(row_comodule(mc, 2)), regular_comodule(g1, Side::Left));
  CHECK(check_comodule(left).passed());
  CHECK(left.generators() == 2);
}

TEST_CASE("cotensor of bicomodules") {
  Coalgebra g1 = grouplike(QQ, 1), mc = matrix_coalgebra(QQ, 2);
  Bicomodule m = with_trivial_right(row_comodule(mc, 2));  // D-C
  Bicomodule n = with_trivial_left(column_comodule(mc, 2)); // C-D
  Bicomodule mn = cotensor_bicomodule(m, n);
  CHECK(check_bicomodule(mn).passed());
  CHECK(mn.carrier().generators() == 4);
  Bicomodule nm = cotensor_bicomodule(n, m);
  CHECK(check_bicomodule(nm).passed());
  CHECK(nm.carrier().generators() == 1);
  CHECK(check_bicomodule(cotensor_bicomodule(regular_bicomodule(mc), regular_bicomodule(mc))).passed());
}

TEST_CASE("cotensor maps are functorial") {
  Coalgebra g2 = grouplike(QQ, 2);
  Comodule m = point(g2, 0, Side::Right);
  Comodule a = fixture::graded(g2, {0, 1, 0}, Side::Left);
  CotensorResult ka = cotensor(m, a);
  ModuleMap id = ModuleMap::identity(m.carrier());
  CHECK(cotensor_map(ka, ka, id, ModuleMap::identity(a.carrier())).equals(ModuleMap::identity(ka.module)));
  // swapping the two degree-0 generators acts on the rank-2 cotensor
  Matrix swap = Matrix::from_ints(QQ, 3, 3, {0, 0, 1, 0, 1, 0, 1, 0, 0});
  ModuleMap s(a.carrier(), a.carrier(), swap);
  REQUIRE(is_colinear(s, a, a));
  ModuleMap ks = cotensor_map(ka, ka, id, s);
  CHECK((ks * ks).equals(ModuleMap::identity(ka.module)));
  CHECK_FALSE(ks.equals(ModuleMap::identity(ka.module)));
}

TEST_CASE("purity over fields and for zero cotensors") {
  std::mt19937 rng(8);
  for (const Ring& R : {QQ, Ring::prime_field(2), Ring::prime_field(5)})
    for (const auto& s : fixture::settings(R)) {
      Comodule m = fixture::random_comodule(s, Side::Right, 3, rng);
      Comodule n = fixture::random_comodule(s, Side::Left, 3, rng);
      std::vector<PresentedModule> ws{PresentedModule::free(R, 1), PresentedModule::free(R, 2)};
      CotensorPurity p = purity_certificate(m, n, PurityMode::AgainstFamily, ws);
      CHECK(p.pure);
      CHECK(p.consistent);
      for (const auto& t : p.tests) CHECK((t.gamma_iso && t.mu_iso));
    }
  Coalgebra g2 = grouplike(ZZ, 2);
  std::vector<PresentedModule> ws{PresentedModule::cyclic(ZZ, 2), PresentedModule::cyclic(ZZ, 3)};
  CotensorPurity z = purity_certificate(point(g2, 0, Side::Right), point(g2, 1, Side::Left), PurityMode::AgainstFamily, ws);
  CHECK(z.pure);
  CHECK(z.consistent);
  REQUIRE(z.tests.size() == 2);
  CHECK(z.tests[0].gamma_iso);
}

TEST_CASE("non-pure cotensor over Z/4 agrees on all three verdicts") {
  const Ring R = Ring::integers_mod(4);
  Coalgebra c = fixture::divided_power(R);
  REQUIRE(check_coalgebra(c).passed());
  Comodule m = fixture::divided_power_comodule(c, Matrix::from_ints(R, 1, 1, {2}), Side::Right);
  Comodule n = fixture::divided_power_comodule(c, Matrix(R, 1, 1), Side::Left);
  REQUIRE(check_comodule(m).passed());
  REQUIRE(check_comodule(n).passed());
  CotensorPurity p = purity_certificate(m, n);
  CHECK_FALSE(p.pure);
  CHECK(p.consistent);
  bool saw_failure = false;
  for (const auto& t : p.tests)
    if (!t.pure) {
      saw_failure = true;
      CHECK_FALSE(t.gamma_iso);
      CHECK_FALSE(t.mu_iso);
    }
  CHECK(saw_failure);
}

TEST_CASE("pure cotensor whose gamma map is not surjective") {
  // ker φ is a direct summand of Z^2, but W ⊗ (M □ N) misses (W ⊗ M) □ N for W = Z/2
  Coalgebra c = fixture::divided_power(ZZ);
  Comodule m = fixture::divided_power_comodule(c, Matrix::from_ints(ZZ, 2, 2, {0, 2, 0, 0}), Side::Right);
  Comodule n = fixture::divided_power_comodule(c, Matrix(ZZ, 1, 1), Side::Left);
  REQUIRE(check_comodule(m).passed());
  PresentedModule w = PresentedModule::cyclic(ZZ, 2);
  CotensorPurity p = purity_certificate(m, n, PurityMode::AgainstFamily, {w});
  REQUIRE(p.tests.size() == 1);
  CHECK(p.tests[0].pure);
  CHECK_FALSE(p.tests[0].gamma_iso);
  CHECK_FALSE(p.consistent);
  ModuleMap g = gamma_map(w, m, n);
  CHECK(is_injective(g));
  CHECK_FALSE(is_surjective(g));
}

TEST_CASE("rank two search for non-pure cotensors") {
  // over Z a kernel of a map of free modules is saturated, so nothing turns up
  for (const Coalgebra& c : {grouplike(ZZ, 1), grouplike(ZZ, 2), fixture::divided_power(ZZ)}) {
    SearchResult r = purity_search(c, 2, {-1, 0, 1, 2});
    CHECK(r.pairs > 0);
    CHECK(r.non_pure == 0);
  }
  const Ring R = Ring::integers_mod(4);
  CHECK(purity_search(grouplike(R, 2), 1, {0, 1, 2, 3}).non_pure == 0);
  CHECK(purity_search(fixture::divided_power(R), 1, {0, 1, 2, 3}).non_pure > 0);
}

TEST_CASE("three verdicts agree on random fixture triples") {
  std::mt19937 rng(21);
  for (const Ring& R : all_rings())
    for (const auto& s : fixture::settings(R)) {
      Comodule m = fixture::random_comodule(s, Side::Right, 2, rng);
      Comodule n = fixture::random_comodule(s, Side::Left, 2, rng);
      std::vector<PresentedModule> ws;
      if (R.kind() == RingKind::Integers) ws = {PresentedModule::cyclic(R, 2), PresentedModule::cyclic(R, 6)};
      else if (R.kind() == RingKind::IntegersMod) ws = {PresentedModule::cyclic(R, 2)};
      else ws = {PresentedModule::free(R, 1)};
      CotensorPurity p = purity_certificate(m, n, PurityMode::AgainstFamily, ws);
      CHECK(p.consistent);
      CHECK(purity_certificate(m, n).consistent);
    }
}

TEST_CASE("associativity over fields") {
  std::mt19937 rng(4);
  for (const Ring& R : {QQ, Ring::prime_field(2), Ring::prime_field(5)}) {
    auto ss = fixture::settings(R);
    for (int t = 0; t < 4; ++t) {
      const auto& sc = ss[rng() % ss.size()];
      Comodule m = fixture::random_comodule(sc, Side::Right, 3, rng);
      Bicomodule l = regular_bicomodule(sc.c);
      Comodule n = fixture::random_comodule(sc, Side::Left, 3, rng);
      if (t % 2) {
        l = with_trivial_right(fixture::random_comodule(sc, Side::Left, 3, rng));
        n = fixture::random_comodule(ss[0], Side::Left, 3, rng);
      }
      AssocReport a = associativity_check(m, l, n);
      CHECK(a.preconditions());
      CHECK(a.psi1_iso);
      CHECK(a.psi2_iso);
      CHECK(a.psi3_iso);
      CHECK(isomorphic(a.left_module, a.right_module));
    }
  }
}

TEST_CASE("associativity on the comatrix fixture") {
  Coalgebra g1 = grouplike(QQ, 1), mc = matrix_coalgebra(QQ, 2);
  Bicomodule l = with_trivial_left(column_comodule(mc, 2));
  AssocReport a = associativity_check(regular_comodule(g1, Side::Right), l, row_comodule(mc, 2));
  CHECK(a.preconditions());
  CHECK(a.psi1_iso);
  CHECK(a.left_module.generators() == 1);
  CHECK(a.right_module.generators() == 1);

  Coalgebra g2 = grouplike(ZZ, 2);
  AssocReport z = associativity_check(regular_comodule(g2, Side::Right), regular_bicomodule(g2),
                                      fixture::graded(g2, {0, 1, 1}, Side::Left));
  CHECK(z.preconditions());
  CHECK(z.psi1_iso);
  CHECK(z.right_module.generators() == 3);
}

TEST_CASE("associativity honours cancellation") {
  Coalgebra g2 = grouplike(QQ, 2);
  std::stop_source src;
  src.request_stop();
  CHECK_THROWS_AS(associativity_check(regular_comodule(g2, Side::Right), regular_bicomodule(g2),
                                      regular_comodule(g2, Side::Left), src.get_token()),
                  Cancelled);
}

TEST_CASE("standard probes are exact pure sequences") {
  for (const Ring& R : {QQ, Ring::prime_field(2), ZZ, Ring::integers_mod(4)})
    for (const Coalgebra& c : {grouplike(R, 2), matrix_coalgebra(R, 2)})
      for (Side side : {Side::Left, Side::Right}) {
        ProbeFamily f = standard_probes(c, side);
        CHECK_FALSE(f.sequences.empty());
        for (const auto& s : f.sequences) {
          CHECK_NOTHROW(validate_probe(s));
          CHECK(probe_is_pure(s));
        }
        CHECK(f.hash == standard_probes(c, side).hash);
      }
  CHECK(standard_probes(grouplike(QQ, 2), Side::Left).hash != standard_probes(grouplike(QQ, 3), Side::Left).hash);
}

TEST_CASE("non-exact probe is rejected") {
  Coalgebra g2 = grouplike(QQ, 2);
  Comodule a = point(g2, 0, Side::Left);
  ShortExactSequence s{a, a, a, ModuleMap::identity(a.carrier()), ModuleMap::identity(a.carrier()), "bad"};
  CHECK_THROWS_AS(validate_probe(s), NonExactProbe);
}

TEST_CASE("coflatness probes") {
  Coalgebra g2 = grouplike(QQ, 2), mc = matrix_coalgebra(QQ, 2);
  ProbeFamily left = standard_probes(g2, Side::Left);

  ProbeReport c = coflatness_probe(regular_comodule(g2, Side::Right), left);
  CHECK(c.exact);
  CHECK(c.faithful);
  CHECK(c.scope().find(c.hash) != std::string::npos);

  ProbeReport p = coflatness_probe(point(g2, 0, Side::Right), left);
  CHECK(p.exact);
  CHECK_FALSE(p.faithful);
  CHECK_FALSE(p.vanishing.empty());

  ProbeReport row = coflatness_probe(row_comodule(mc, 2), standard_probes(mc, Side::Right));
  CHECK(row.exact);
  CHECK(row.faithful);
}

TEST_CASE("cotensor is left exact on pure probes") {
  std::mt19937 rng(17);
  for (const Ring& R : {QQ, ZZ, Ring::integers_mod(4)})
    for (const auto& s : fixture::settings(R)) {
      if (s.c.rank() == 1) continue;
      ProbeFamily f = standard_probes(s.c, Side::Left, 1);
      Comodule m = fixture::random_comodule(s, Side::Right, 2, rng);
      ProbeReport r = coflatness_probe(m, f);
      CHECK(r.left_exact);
    }
}

TEST_CASE("cotensor commands work over the integers") {
  Coalgebra mc = matrix_coalgebra(ZZ, 2);
  CotensorResult k = cotensor(column_comodule(mc, 2), row_comodule(mc, 2));
  CHECK(k.module.generators() == 1);
  CHECK(purity_certificate(column_comodule(mc, 2), row_comodule(mc, 2)).pure);
}
