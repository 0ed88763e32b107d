#pragma once

// Exact field scalars: Z/p with a runtime modulus carried in the value, and
// arbitrary-precision rationals. Both plug into Eigen dense matrices.

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>
#include <Eigen/Core>

namespace approxcat {

namespace detail {
inline void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}
[[noreturn]] inline void internal_error(const std::string& msg) {
  throw std::logic_error(msg);
}
}  // namespace detail

inline bool is_prime_u32(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

struct FieldSpec {
  enum class Kind { prime, rational };
  Kind kind = Kind::prime;
  std::uint32_t p = 2;  // only meaningful for Kind::prime

  static FieldSpec prime(std::uint32_t p) {
    detail::require(p >= 2 && p < (1u << 16) && is_prime_u32(p),
                    "FieldSpec: p must be prime with 2 <= p < 2^16");
    return FieldSpec{Kind::prime, p};
  }
  static FieldSpec rational() { return FieldSpec{Kind::rational, 0}; }

  bool is_prime_field() const { return kind == Kind::prime; }
  friend bool operator==(const FieldSpec& a, const FieldSpec& b) {
    return a.kind == b.kind && (a.kind != Kind::prime || a.p == b.p);
  }
  std::string name() const {
    return kind == Kind::prime ? "F" + std::to_string(p) : "Q";
  }
};

// Element of Z/p. The modulus travels with the value; p_ == 0 marks an
// unbound integer literal (Eigen constructs Scalar(0)/Scalar(1) internally,
// with no way to pass a modulus). Literals bind on first contact with a
// bound value; mixing two distinct bound moduli throws.
class Fp {
 public:
  Fp() : v_(0), p_(0) {}
  Fp(long long n) : v_(n), p_(0) {}  // NOLINT: implicit, Eigen needs Scalar(int)
  Fp(int n) : v_(n), p_(0) {}        // NOLINT
  Fp(long long n, std::uint32_t p) : v_(norm(n, p)), p_(p) {}

  long long raw() const { return v_; }
  std::uint32_t modulus() const { return p_; }
  bool bound() const { return p_ != 0; }

  // Canonical representative in [0, p). Literals require an explicit modulus.
  long long canonical(std::uint32_t p) const {
    if (p_ != 0 && p_ != p) detail::internal_error("Fp: modulus mismatch");
    return norm(v_, p);
  }

  bool is_zero() const { return v_ == 0 || (p_ != 0 && v_ % p_ == 0); }

  friend Fp operator+(const Fp& a, const Fp& b) {
    std::uint32_t p = join(a.p_, b.p_);
    if (p == 0) return Fp(a.v_ + b.v_);
    return Fp(norm(a.v_, p) + norm(b.v_, p), p);
  }
  friend Fp operator-(const Fp& a, const Fp& b) {
    std::uint32_t p = join(a.p_, b.p_);
    if (p == 0) return Fp(a.v_ - b.v_);
    return Fp(norm(a.v_, p) - norm(b.v_, p), p);
  }
  friend Fp operator*(const Fp& a, const Fp& b) {
    std::uint32_t p = join(a.p_, b.p_);
    if (p == 0) return Fp(a.v_ * b.v_);
    return Fp(norm(a.v_, p) * norm(b.v_, p), p);
  }
  friend Fp operator/(const Fp& a, const Fp& b) {
    std::uint32_t p = join(a.p_, b.p_);
    if (p == 0) {
      if (b.v_ == 1) return a;
      if (b.v_ == -1) return Fp(-a.v_);
      detail::internal_error("Fp: division of unbound literals");
    }
    return Fp(norm(a.v_, p) * inverse_mod(norm(b.v_, p), p), p);
  }
  Fp operator-() const { return p_ == 0 ? Fp(-v_) : Fp(p_ - v_, p_); }
  Fp& operator+=(const Fp& o) { return *this = *this + o; }
  Fp& operator-=(const Fp& o) { return *this = *this - o; }
  Fp& operator*=(const Fp& o) { return *this = *this * o; }
  Fp& operator/=(const Fp& o) { return *this = *this / o; }

  Fp inverse() const {
    if (p_ == 0) {
      if (v_ == 1 || v_ == -1) return *this;
      detail::internal_error("Fp: inverse of unbound literal");
    }
    return Fp(inverse_mod(v_, p_), p_);
  }

  friend bool operator==(const Fp& a, const Fp& b) {
    std::uint32_t p = join(a.p_, b.p_);
    if (p == 0) return a.v_ == b.v_;
    return norm(a.v_, p) == norm(b.v_, p);
  }
  friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }

  friend std::ostream& operator<<(std::ostream& os, const Fp& x) {
    return os << (x.p_ ? norm(x.v_, x.p_) : x.v_);
  }

 private:
  static long long norm(long long v, std::uint32_t p) {
    long long m = v % static_cast<long long>(p);
    return m < 0 ? m + p : m;
  }
  static std::uint32_t join(std::uint32_t a, std::uint32_t b) {
    if (a == 0) return b;
    if (b == 0) return a;
    if (a != b) detail::internal_error("Fp: mixed moduli " + std::to_string(a) +
                                       " and " + std::to_string(b));
    return a;
  }
  static long long inverse_mod(long long a, std::uint32_t p) {
    if (a % p == 0) detail::internal_error("Fp: division by zero");
    long long t = 0, nt = 1, r = p, nr = a % p;
    while (nr != 0) {
      long long q = r / nr;
      t = std::exchange(nt, t - q * nt);
      r = std::exchange(nr, r - q * nr);
    }
    return norm(t, p);
  }

  long long v_;
  std::uint32_t p_;
};

// Arbitrary-precision rational, always reduced. Thin wrapper so Eigen sees a
// plain value type with non-template constructors.
class Rat {
 public:
  using Big = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                            boost::multiprecision::et_off>;
  using BigInt = boost::multiprecision::cpp_int;

  Rat() : v_(0) {}
  Rat(long long n) : v_(n) {}  // NOLINT
  Rat(int n) : v_(n) {}        // NOLINT
  Rat(long long num, long long den) : v_(Big(num) / Big(den)) {
    detail::require(den != 0, "Rat: zero denominator");
  }
  explicit Rat(Big v) : v_(std::move(v)) {}

  const Big& value() const { return v_; }
  BigInt num() const { return boost::multiprecision::numerator(v_); }
  BigInt den() const { return boost::multiprecision::denominator(v_); }
  bool is_zero() const { return v_ == 0; }

  friend Rat operator+(const Rat& a, const Rat& b) { return Rat(a.v_ + b.v_); }
  friend Rat operator-(const Rat& a, const Rat& b) { return Rat(a.v_ - b.v_); }
  friend Rat operator*(const Rat& a, const Rat& b) { return Rat(a.v_ * b.v_); }
  friend Rat operator/(const Rat& a, const Rat& b) {
    if (b.v_ == 0) detail::internal_error("Rat: division by zero");
    return Rat(a.v_ / b.v_);
  }
  Rat operator-() const { return Rat(-v_); }
  Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
  Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
  Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
  Rat& operator/=(const Rat& o) { return *this = *this / o; }
  Rat inverse() const { return Rat(1) / *this; }

  friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rat& a, const Rat& b) { return a.v_ != b.v_; }

  std::string str() const { return v_.str(); }
  friend std::ostream& operator<<(std::ostream& os, const Rat& x) {
    return os << x.v_;
  }

 private:
  Big v_;
};

// Per-scalar glue: literal binding and canonical string form.
template <class K>
struct field_traits;

template <>
struct field_traits<Fp> {
  static constexpr bool prime_field = true;
  static Fp from_int(long long n, const FieldSpec& f) {
    detail::require(f.is_prime_field(), "Fp scalar requires a prime field");
    return Fp(n, f.p);
  }
  static bool is_zero(const Fp& x) { return x.is_zero(); }
  static std::string to_string(const Fp& x, const FieldSpec& f) {
    return std::to_string(x.canonical(f.p));
  }
};

template <>
struct field_traits<Rat> {
  static constexpr bool prime_field = false;
  static Rat from_int(long long n, const FieldSpec&) { return Rat(n); }
  static bool is_zero(const Rat& x) { return x.is_zero(); }
  static std::string to_string(const Rat& x, const FieldSpec&) {
    return x.str();
  }
};

}  // namespace approxcat

namespace Eigen {
template <>
struct NumTraits<approxcat::Fp> {
  using Self = approxcat::Fp;
  using Real = Self;
  using NonInteger = Self;
  using Literal = Self;
  using Nested = Self;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 3,
    MulCost = 6,
  };
  static Self epsilon() { return Self(0); }
  static Self dummy_precision() { return Self(0); }
  static int digits10() { return 0; }
};

template <>
struct NumTraits<approxcat::Rat> {
  using Self = approxcat::Rat;
  using Real = Self;
  using NonInteger = Self;
  using Literal = Self;
  using Nested = Self;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 4,
    AddCost = 20,
    MulCost = 30,
  };
  static Self epsilon() { return Self(0); }
  static Self dummy_precision() { return Self(0); }
  static int digits10() { return 0; }
};
}  // namespace Eigen
