#pragma once

// Exact coefficient fields: the rationals (GMP) and prime fields GF(p).
//
// Field elements are plain values; arithmetic goes through the field object so
// that GF(p) elements can stay 32-bit integers.

#include <gmpxx.h>

#include <concepts>
#include <cstdint>
#include <string>

#include "fpn/errors.hpp"

namespace fpn {

template <class F>
concept Field = requires(const F f, const typename F::value_type& a, long n) {
  { f.zero() } -> std::same_as<typename F::value_type>;
  { f.one() } -> std::same_as<typename F::value_type>;
  { f.from_int(n) } -> std::same_as<typename F::value_type>;
  { f.from_integer(mpz_class(n)) } -> std::same_as<typename F::value_type>;
  { f.add(a, a) } -> std::same_as<typename F::value_type>;
  { f.sub(a, a) } -> std::same_as<typename F::value_type>;
  { f.mul(a, a) } -> std::same_as<typename F::value_type>;
  { f.neg(a) } -> std::same_as<typename F::value_type>;
  { f.inv(a) } -> std::same_as<typename F::value_type>;
  { f.is_zero(a) } -> std::convertible_to<bool>;
  { f.is_one(a) } -> std::convertible_to<bool>;
  { f.equal(a, a) } -> std::convertible_to<bool>;
  { f.to_string(a) } -> std::convertible_to<std::string>;
  { f.name() } -> std::convertible_to<std::string>;
  { f.characteristic() } -> std::convertible_to<std::uint64_t>;
};

class RationalField {
 public:
  using value_type = mpq_class;

  value_type zero() const { return value_type(0); }
  value_type one() const { return value_type(1); }
  value_type from_int(long n) const { return value_type(n); }
  value_type from_integer(const mpz_class& n) const { return value_type(n); }

  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type neg(const value_type& a) const { return -a; }
  value_type inv(const value_type& a) const {
    if (sgn(a) == 0) throw Error("division by zero");
    return 1 / a;
  }

  // a += c * b, the inner loop of elimination.
  void add_mul(value_type& a, const value_type& c, const value_type& b) const { a += c * b; }

  bool is_zero(const value_type& a) const { return sgn(a) == 0; }
  bool is_one(const value_type& a) const { return a == 1; }
  bool equal(const value_type& a, const value_type& b) const { return a == b; }
  std::string to_string(const value_type& a) const { return a.get_str(); }
  std::string name() const { return "Q"; }
  std::uint64_t characteristic() const { return 0; }

  bool operator==(const RationalField&) const = default;
};

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// GF(p) for primes p < 2^31, so products of canonical representatives fit in 64 bits.
class PrimeField {
 public:
  using value_type = std::uint32_t;

  explicit PrimeField(std::uint32_t p) : p_(p) {
    if (p >= (1u << 31) || !is_prime(p)) throw Error("GF(" + std::to_string(p) + "): modulus must be a prime below 2^31");
  }

  std::uint32_t modulus() const { return p_; }

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type from_int(long n) const {
    long r = n % static_cast<long>(p_);
    return static_cast<value_type>(r < 0 ? r + p_ : r);
  }
  value_type from_integer(const mpz_class& n) const {
    mpz_class r = n % p_;
    if (r < 0) r += p_;
    return static_cast<value_type>(r.get_ui());
  }

  value_type add(value_type a, value_type b) const {
    std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  value_type sub(value_type a, value_type b) const { return a >= b ? a - b : a + p_ - b; }
  value_type mul(value_type a, value_type b) const {
    return static_cast<value_type>(static_cast<std::uint64_t>(a) * b % p_);
  }
  value_type neg(value_type a) const { return a == 0 ? 0 : p_ - a; }
  value_type inv(value_type a) const {
    if (a == 0) throw Error("division by zero");
    // Extended Euclid on signed 64-bit values.
    std::int64_t t = 0, new_t = 1, r = p_, new_r = a;
    while (new_r != 0) {
      std::int64_t q = r / new_r;
      std::int64_t tmp = t - q * new_t;
      t = new_t;
      new_t = tmp;
      tmp = r - q * new_r;
      r = new_r;
      new_r = tmp;
    }
    if (t < 0) t += p_;
    return static_cast<value_type>(t);
  }
  void add_mul(value_type& a, value_type c, value_type b) const { a = add(a, mul(c, b)); }

  bool is_zero(value_type a) const { return a == 0; }
  bool is_one(value_type a) const { return a == 1; }
  bool equal(value_type a, value_type b) const { return a == b; }
  std::string to_string(value_type a) const { return std::to_string(a); }
  std::string name() const { return "GF(" + std::to_string(p_) + ")"; }
  std::uint64_t characteristic() const { return p_; }

  bool operator==(const PrimeField&) const = default;

 private:
  std::uint32_t p_;
};

static_assert(Field<RationalField>);
static_assert(Field<PrimeField>);

// Runtime description of a field, as read from an input file or a flag.
struct FieldSpec {
  std::uint32_t characteristic = 0;  // 0 means Q

  bool operator==(const FieldSpec&) const = default;

  std::string name() const { return characteristic == 0 ? "Q" : "GF(" + std::to_string(characteristic) + ")"; }
};

// Accepts "Q", "QQ", "GF(p)", "GF p" or "Fp".
inline FieldSpec parse_field_spec(const std::string& text) {
  std::string s;
  for (char c : text)
    if (c != ' ' && c != '\t') s += c;
  if (s == "Q" || s == "QQ") return {};
  std::string digits;
  if (s.rfind("GF(", 0) == 0 && s.back() == ')') {
    digits = s.substr(3, s.size() - 4);
  } else if (s.rfind("GF", 0) == 0) {
    digits = s.substr(2);
  } else if (s.size() > 1 && s[0] == 'F') {
    digits = s.substr(1);
  } else {
    throw Error("unknown field '" + text + "' (expected Q or GF(p))");
  }
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos || digits.size() > 10)
    throw Error("unknown field '" + text + "' (expected Q or GF(p))");
  std::uint64_t p = std::stoull(digits);
  if (p >= (1ull << 31) || !is_prime(p)) throw Error("GF(" + digits + "): modulus must be a prime below 2^31");
  return FieldSpec{static_cast<std::uint32_t>(p)};
}

// Calls fn with a concrete field object chosen by the spec.
template <class Fn>
decltype(auto) with_field(const FieldSpec& spec, Fn&& fn) {
  if (spec.characteristic == 0) return fn(RationalField{});
  return fn(PrimeField{spec.characteristic});
}

}  // namespace fpn
