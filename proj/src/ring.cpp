#include "comorita/ring.hpp"

#include "comorita/errors.hpp"

namespace comorita {

namespace {

bool is_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

mpz_class mod_floor(const mpz_class& a, const mpz_class& m) {
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

} // namespace

Ring Ring::rationals() { return Ring(RingKind::Rationals, 0); }

Ring Ring::prime_field(long p) {
  if (!is_prime(p)) throw DomainError("GF(" + std::to_string(p) + "): modulus is not prime");
  return Ring(RingKind::PrimeField, p);
}

Ring Ring::integers() { return Ring(RingKind::Integers, 0); }

Ring Ring::integers_mod(long n) {
  if (n < 2) throw DomainError("Z/" + std::to_string(n) + ": modulus must be at least 2");
  return Ring(RingKind::IntegersMod, n);
}

Scalar Ring::normalize(const Scalar& a) const {
  switch (kind_) {
  case RingKind::Rationals:
    return a;
  case RingKind::Integers:
    if (a.get_den() != 1) throw DomainError("non-integral value " + a.get_str() + " over Z");
    return a;
  default: {
    mpz_class n(mod_);
    mpz_class num = mod_floor(a.get_num(), n);
    if (a.get_den() != 1) {
      mpz_class inv;
      if (mpz_invert(inv.get_mpz_t(), a.get_den().get_mpz_t(), n.get_mpz_t()) == 0)
        throw DomainError("denominator of " + a.get_str() + " is not invertible in " + name());
      num = mod_floor(num * inv, n);
    }
    return Scalar(num);
  }
  }
}

bool Ring::is_unit(const Scalar& a) const {
  switch (kind_) {
  case RingKind::Rationals:
  case RingKind::PrimeField:
    return !is_zero(a);
  case RingKind::Integers:
    return abs(a) == 1;
  case RingKind::IntegersMod: {
    mpz_class g = ::gcd(rep(a), mpz_class(mod_));
    return g == 1;
  }
  }
  return false;
}

Scalar Ring::inverse(const Scalar& a) const {
  if (!is_unit(a)) throw DomainError(format(a) + " is not a unit in " + name());
  if (kind_ == RingKind::Rationals) return 1 / a;
  if (kind_ == RingKind::Integers) return a;
  mpz_class inv;
  mpz_class n(mod_);
  mpz_invert(inv.get_mpz_t(), rep(a).get_mpz_t(), n.get_mpz_t());
  return Scalar(inv);
}

bool Ring::divides(const Scalar& a, const Scalar& b) const {
  if (is_zero(b)) return true;
  switch (kind_) {
  case RingKind::Rationals:
  case RingKind::PrimeField:
    return !is_zero(a);
  case RingKind::Integers:
    return !is_zero(a) && mpz_divisible_p(rep(b).get_mpz_t(), rep(a).get_mpz_t()) != 0;
  case RingKind::IntegersMod: {
    mpz_class g = ::gcd(rep(a), mpz_class(mod_));
    return mpz_divisible_p(rep(b).get_mpz_t(), g.get_mpz_t()) != 0;
  }
  }
  return false;
}

Scalar Ring::quotient(const Scalar& b, const Scalar& a) const {
  if (is_zero(b)) return Scalar(0);
  if (!divides(a, b)) throw DomainError(format(a) + " does not divide " + format(b));
  switch (kind_) {
  case RingKind::Rationals:
    return b / a;
  case RingKind::PrimeField:
    return mul(b, inverse(a));
  case RingKind::Integers:
    return Scalar(mpz_class(rep(b) / rep(a)));
  case RingKind::IntegersMod: {
    mpz_class n(mod_);
    mpz_class g = ::gcd(rep(a), n);
    mpz_class n1 = n / g;
    if (n1 == 1) return Scalar(0);
    mpz_class a1 = rep(a) / g, b1 = rep(b) / g, inv;
    mpz_invert(inv.get_mpz_t(), a1.get_mpz_t(), n1.get_mpz_t());
    return Scalar(mod_floor(b1 * inv, n1));
  }
  }
  return Scalar(0);
}

Scalar Ring::ideal_generator(const Scalar& a, Scalar* unit) const {
  if (unit) *unit = 1;
  if (is_zero(a)) return Scalar(0);
  switch (kind_) {
  case RingKind::Rationals:
  case RingKind::PrimeField:
    if (unit) *unit = inverse(a);
    return Scalar(1);
  case RingKind::Integers:
    if (sgn(a) < 0) {
      if (unit) *unit = -1;
      return -a;
    }
    return a;
  case RingKind::IntegersMod: {
    mpz_class n(mod_);
    mpz_class g = ::gcd(rep(a), n);
    if (unit) {
      mpz_class n1 = n / g, a1 = rep(a) / g, u;
      if (n1 == 1) {
        u = 1;
      } else {
        mpz_invert(u.get_mpz_t(), a1.get_mpz_t(), n1.get_mpz_t());
        // lift the unit mod n1 to a unit mod n
        while (::gcd(u, n) != 1) u += n1;
      }
      *unit = Scalar(mod_floor(u, n));
    }
    return Scalar(g);
  }
  }
  return a;
}

Scalar Ring::remainder(const Scalar& a, const Scalar& p) const {
  if (is_zero(p)) return a;
  switch (kind_) {
  case RingKind::Rationals:
  case RingKind::PrimeField:
    return Scalar(0);
  case RingKind::Integers:
  case RingKind::IntegersMod:
    return Scalar(mod_floor(rep(a), rep(p)));
  }
  return a;
}

Scalar Ring::annihilator(const Scalar& a) const {
  switch (kind_) {
  case RingKind::Rationals:
  case RingKind::PrimeField:
  case RingKind::Integers:
    return Scalar(is_zero(a) ? 1 : 0);
  case RingKind::IntegersMod: {
    mpz_class n(mod_);
    mpz_class g = ::gcd(rep(a), n);
    return normalize(Scalar(mpz_class(n / g)));
  }
  }
  return Scalar(0);
}

Scalar Ring::gcd(const Scalar& a, const Scalar& b) const {
  if (is_zero(a)) return ideal_generator(b);
  if (is_zero(b)) return ideal_generator(a);
  switch (kind_) {
  case RingKind::Rationals:
  case RingKind::PrimeField:
    return Scalar(1);
  case RingKind::Integers:
    return Scalar(mpz_class(::gcd(rep(a), rep(b))));
  case RingKind::IntegersMod: {
    mpz_class g = ::gcd(::gcd(rep(a), rep(b)), mpz_class(mod_));
    return normalize(Scalar(g));
  }
  }
  return Scalar(0);
}

Xgcd Ring::xgcd(const Scalar& a, const Scalar& b) const {
  if (is_zero(b)) return {a, 1, 0, 0, 1};
  if (divides(a, b) && !is_zero(a)) return {a, 1, 0, neg(quotient(b, a)), 1};
  if (divides(b, a)) return {b, 0, 1, 1, neg(quotient(a, b))};
  // integer rings only from here on
  mpz_class g, s, t;
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), rep(a).get_mpz_t(), rep(b).get_mpz_t());
  mpz_class u = -rep(b) / g, v = rep(a) / g;
  return {normalize(Scalar(g)), normalize(Scalar(s)), normalize(Scalar(t)), normalize(Scalar(u)),
          normalize(Scalar(v))};
}

bool Ring::better_pivot(const Scalar& a, const Scalar& b) const {
  if (is_zero(a)) return false;
  if (is_zero(b)) return true;
  switch (kind_) {
  case RingKind::Rationals:
    return mpz_sizeinbase(a.get_num_mpz_t(), 2) + mpz_sizeinbase(a.get_den_mpz_t(), 2) <
           mpz_sizeinbase(b.get_num_mpz_t(), 2) + mpz_sizeinbase(b.get_den_mpz_t(), 2);
  case RingKind::PrimeField:
    return false;
  case RingKind::Integers:
    return abs(a) < abs(b);
  case RingKind::IntegersMod: {
    mpz_class n(mod_);
    return ::gcd(rep(a), n) < ::gcd(rep(b), n);
  }
  }
  return false;
}

std::vector<Scalar> Ring::elements() const {
  if (!is_finite()) throw DomainError(name() + " is infinite");
  std::vector<Scalar> out;
  for (long i = 0; i < mod_; ++i) out.emplace_back(i);
  return out;
}

std::vector<long> Ring::modulus_divisors() const {
  std::vector<long> out;
  if (kind_ != RingKind::IntegersMod) return out;
  for (long d = 2; d <= mod_; ++d)
    if (mod_ % d == 0) out.push_back(d);
  return out;
}

std::string Ring::name() const {
  switch (kind_) {
  case RingKind::Rationals:
    return "Q";
  case RingKind::PrimeField:
    return "GF(" + std::to_string(mod_) + ")";
  case RingKind::Integers:
    return "Z";
  case RingKind::IntegersMod:
    return "Z/" + std::to_string(mod_);
  }
  return "?";
}

std::string Ring::format(const Scalar& a) const { return a.get_str(); }

} // namespace comorita
