#pragma once
#include <gmpxx.h>

#include <string>
#include <vector>

namespace comorita {

// Every ring element is carried as a rational; integer rings keep
// denominator 1 and residues are reduced into [0, n).
using Scalar = mpq_class;

enum class RingKind { Rationals, PrimeField, Integers, IntegersMod };

// Unimodular 2x2 step used by elimination: [s t; u v] applied to (a, b)
// gives (g, 0).
struct Xgcd {
  Scalar g, s, t, u, v;
};

class Ring {
public:
  static Ring rationals();
  static Ring prime_field(long p);
  static Ring integers();
  static Ring integers_mod(long n);

  RingKind kind() const noexcept { return kind_; }
  long modulus() const noexcept { return mod_; }
  bool is_field() const noexcept {
    return kind_ == RingKind::Rationals || kind_ == RingKind::PrimeField;
  }
  bool is_qf() const noexcept { return is_field() || kind_ == RingKind::IntegersMod; }
  bool is_finite() const noexcept {
    return kind_ == RingKind::PrimeField || kind_ == RingKind::IntegersMod;
  }
  bool purity_decidable() const noexcept { return true; }

  Scalar normalize(const Scalar& a) const;
  Scalar from_int(long v) const { return normalize(Scalar(v)); }
  Scalar add(const Scalar& a, const Scalar& b) const { return normalize(a + b); }
  Scalar sub(const Scalar& a, const Scalar& b) const { return normalize(a - b); }
  Scalar mul(const Scalar& a, const Scalar& b) const { return normalize(a * b); }
  Scalar neg(const Scalar& a) const { return normalize(-a); }

  static bool is_zero(const Scalar& a) { return sgn(a) == 0; }
  bool is_unit(const Scalar& a) const;
  Scalar inverse(const Scalar& a) const;

  // a | b in the ring
  bool divides(const Scalar& a, const Scalar& b) const;
  // some q with a*q = b; requires divides(a, b)
  Scalar quotient(const Scalar& b, const Scalar& a) const;
  // canonical generator of the ideal (a); unit receives u with u*a = result
  Scalar ideal_generator(const Scalar& a, Scalar* unit = nullptr) const;
  // canonical representative of a modulo the ideal (p), p canonical
  Scalar remainder(const Scalar& a, const Scalar& p) const;
  // generator of the annihilator ideal of a
  Scalar annihilator(const Scalar& a) const;
  // canonical generator of (a) + (b)
  Scalar gcd(const Scalar& a, const Scalar& b) const;
  Xgcd xgcd(const Scalar& a, const Scalar& b) const;
  // true when a is a strictly better elimination pivot than b
  bool better_pivot(const Scalar& a, const Scalar& b) const;

  // all elements; finite rings only
  std::vector<Scalar> elements() const;
  // divisors d > 1 of the modulus (IntegersMod only)
  std::vector<long> modulus_divisors() const;

  std::string name() const;
  std::string format(const Scalar& a) const;

  friend bool operator==(const Ring&, const Ring&) = default;

private:
  Ring(RingKind k, long m) : kind_(k), mod_(m) {}
  mpz_class rep(const Scalar& a) const { return a.get_num(); }

  RingKind kind_;
  long mod_;
};

} // namespace comorita
