#pragma once

// Exact scalars: GF(p) for a prime p, and arbitrary-precision rationals.
// All arithmetic is exact; there is no floating point anywhere in the library.

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Core>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace aext {

using Rat = boost::multiprecision::mpq_rational;

// Element of GF(p). The modulus travels with the value; a default-constructed
// scalar is the modulus-free 0 (or small integer literal) that binds to the
// other operand's modulus on first contact. Representatives are kept in [0, p).
struct Gf {
  std::int64_t v = 0;
  std::int64_t p = 0;  // 0 = unbound literal

  Gf() = default;
  Gf(long long value) : v(value), p(0) {}
  Gf(int value) : v(value), p(0) {}
  Gf(std::int64_t value, std::int64_t mod) : v(value), p(mod) { normalize(); }

  void normalize() {
    if (p > 0) {
      v %= p;
      if (v < 0) v += p;
    }
  }
  bool is_zero() const { return p > 0 ? v == 0 : v == 0; }

  static std::int64_t join(std::int64_t a, std::int64_t b) {
    if (a == 0) return b;
    if (b == 0) return a;
    if (a != b) throw std::logic_error("GF(p) modulus mismatch");
    return a;
  }

  friend Gf operator+(const Gf& a, const Gf& b) { return Gf(a.v + b.v, join(a.p, b.p)); }
  friend Gf operator-(const Gf& a, const Gf& b) { return Gf(a.v - b.v, join(a.p, b.p)); }
  friend Gf operator-(const Gf& a) { return Gf(-a.v, a.p); }
  friend Gf operator*(const Gf& a, const Gf& b) {
    std::int64_t p = join(a.p, b.p);
    if (p > 0) return Gf(static_cast<std::int64_t>((__int128)a.v * b.v % p), p);
    return Gf(a.v * b.v, 0);
  }
  Gf inverse() const {
    if (p == 0) {
      if (v == 1 || v == -1) return *this;
      throw std::logic_error("cannot invert unbound GF scalar");
    }
    if (v == 0) throw std::domain_error("division by zero in GF(p)");
    // extended Euclid
    std::int64_t a = v, b = p, x0 = 1, x1 = 0;
    while (b != 0) {
      std::int64_t q = a / b;
      std::int64_t t = a - q * b; a = b; b = t;
      t = x0 - q * x1; x0 = x1; x1 = t;
    }
    return Gf(x0, p);
  }
  friend Gf operator/(const Gf& a, const Gf& b) { return a * b.inverse(); }
  Gf& operator+=(const Gf& b) { *this = *this + b; return *this; }
  Gf& operator-=(const Gf& b) { *this = *this - b; return *this; }
  Gf& operator*=(const Gf& b) { *this = *this * b; return *this; }
  Gf& operator/=(const Gf& b) { *this = *this / b; return *this; }

  friend bool operator==(const Gf& a, const Gf& b) {
    std::int64_t p = join(a.p, b.p);
    if (p == 0) return a.v == b.v;
    Gf x(a.v, p), y(b.v, p);
    return x.v == y.v;
  }
  friend bool operator!=(const Gf& a, const Gf& b) { return !(a == b); }
};

// Per-field glue used by templated code: construction from integers, zero
// tests, parsing and canonical printing.
template <class K> struct FieldOps;

template <> struct FieldOps<Gf> {
  std::int64_t p;
  explicit FieldOps(std::int64_t prime = 0) : p(prime) {}
  Gf from_int(long long n) const { return Gf(n, p); }
  static bool is_zero(const Gf& x) { return x.is_zero(); }
  static std::string str(const Gf& x) { return std::to_string(x.v); }
  Gf parse(const std::string& s) const { return Gf(std::stoll(s), p); }
  std::string name() const { return "GF(" + std::to_string(p) + ")"; }
};

template <> struct FieldOps<Rat> {
  explicit FieldOps(std::int64_t = 0) {}
  Rat from_int(long long n) const { return Rat(n); }
  static bool is_zero(const Rat& x) { return x.is_zero(); }
  static std::string str(const Rat& x) {
    if (denominator(x) == 1) return numerator(x).str();
    return numerator(x).str() + "/" + denominator(x).str();
  }
  Rat parse(const std::string& s) const { return Rat(s); }
  std::string name() const { return "QQ"; }
};

template <class K> bool is_zero(const K& x) { return FieldOps<K>::is_zero(x); }

}  // namespace aext

namespace Eigen {
template <> struct NumTraits<aext::Gf> {
  using Real = aext::Gf;
  using NonInteger = aext::Gf;
  using Literal = aext::Gf;
  using Nested = aext::Gf;
  enum {
    IsComplex = 0,
    IsInteger = 1,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 2,
    MulCost = 4
  };
  static inline aext::Gf epsilon() { return aext::Gf(); }
  static inline aext::Gf dummy_precision() { return aext::Gf(); }
  static inline int digits10() { return 18; }
};
}  // namespace Eigen
