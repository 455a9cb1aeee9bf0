#pragma once

// Exact scalar fields: the rationals (GMP) and finite fields F_{p^k}.
//
// Generic code in this library is written against a `Field` type with
//   using Elem = ...;           // value type with + - * / unary- == !=
//   Elem zero() const, one() const, from_int(long) const;
//   Elem from_rational(const mpq_class&) const;
//   int characteristic() const;
// plus the free functions is_zero(), canonical_less(), to_string().

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "fano/errors.hpp"

namespace fano {

namespace detail {
struct GfImpl;
struct Embedding;
}  // namespace detail

/// Element of a finite field. Stores the canonical integer code
/// c0 + c1 p + ... + c_{k-1} p^{k-1} of the residue polynomial and a pointer
/// to the owning field; the field must outlive the element.
class Gf {
 public:
  Gf() = default;
  Gf(uint32_t code, const detail::GfImpl* field) : code_(code), field_(field) {}

  uint32_t code() const { return code_; }
  const detail::GfImpl* field() const { return field_; }

  friend Gf operator+(const Gf& a, const Gf& b);
  friend Gf operator-(const Gf& a, const Gf& b);
  friend Gf operator*(const Gf& a, const Gf& b);
  friend Gf operator/(const Gf& a, const Gf& b);
  friend Gf operator-(const Gf& a);
  Gf& operator+=(const Gf& b) { return *this = *this + b; }
  Gf& operator-=(const Gf& b) { return *this = *this - b; }
  Gf& operator*=(const Gf& b) { return *this = *this * b; }
  Gf& operator/=(const Gf& b) { return *this = *this / b; }

  friend bool operator==(const Gf& a, const Gf& b) { return a.code_ == b.code_; }
  friend bool operator!=(const Gf& a, const Gf& b) { return a.code_ != b.code_; }

 private:
  uint32_t code_ = 0;
  const detail::GfImpl* field_ = nullptr;
};

/// Parsed `--field` value: 0 for Q, `p` or `p^k` for F_{p^k}.
struct FieldSpec {
  uint32_t p = 0;
  uint32_t k = 1;
  bool allow_small_characteristic = false;

  bool is_rational() const { return p == 0; }
  std::string to_string() const;
  static FieldSpec parse(std::string_view text, bool allow_small = false);
};

/// Handle to an immutable finite field F_{p^k}. Copies share one instance;
/// instances are interned per (p, k) for the lifetime of the process.
class GaloisField {
 public:
  using Elem = Gf;

  GaloisField() = default;

  /// Builds (or fetches) F_{p^k} with the lexicographically smallest monic
  /// irreducible modulus. Rejects p in {2, 3} unless `allow_small_char`.
  static GaloisField get(uint32_t p, uint32_t k = 1, bool allow_small_char = false);

  int characteristic() const;
  uint32_t degree() const;
  uint32_t order() const;
  bool is_prime_field() const { return degree() == 1; }
  /// Monic modulus, coefficients low to high (length k + 1).
  const std::vector<uint32_t>& modulus() const;

  Gf zero() const { return Gf(0, impl_); }
  Gf one() const { return Gf(1, impl_); }
  Gf from_code(uint32_t code) const;
  Gf from_int(long long v) const;
  /// Throws MathError("division_by_characteristic") when p divides the denominator.
  Gf from_rational(const mpq_class& v) const;
  Gf random(std::mt19937_64& rng) const;
  Gf pow(Gf x, uint64_t e) const;

  /// Parses `c` (prime field) or `c0,...,c{k-1}` (extension coefficients).
  Gf parse(std::string_view text) const;
  std::string format(const Gf& x) const;

  /// F_{q^m} where q is this field's order.
  GaloisField extension(uint32_t m) const;
  /// Field homomorphism into a field of the same characteristic whose degree
  /// is a multiple of this one's. The root image of the modulus is the
  /// smallest-code root, so the map is deterministic.
  Gf embed(const Gf& x, const GaloisField& big) const;
  /// Inverse of embed on its image. Throws if `x` is not in the image.
  Gf restrict_from(const Gf& x, const GaloisField& big) const;
  /// x is fixed by the q^j-power Frobenius, i.e. lies in F_{q^j} within F_{q^k}.
  bool in_subfield(const Gf& x, uint32_t j) const;

  const detail::GfImpl* impl() const { return impl_; }
  friend bool operator==(const GaloisField& a, const GaloisField& b) { return a.impl_ == b.impl_; }
  friend bool operator!=(const GaloisField& a, const GaloisField& b) { return a.impl_ != b.impl_; }

 private:
  explicit GaloisField(const detail::GfImpl* impl) : impl_(impl) {}
  const detail::GfImpl* impl_ = nullptr;
};

/// The rational numbers, backed by GMP.
class RationalField {
 public:
  using Elem = mpq_class;

  int characteristic() const { return 0; }
  mpq_class zero() const { return mpq_class(0); }
  mpq_class one() const { return mpq_class(1); }
  mpq_class from_int(long long v) const { return mpq_class(static_cast<long>(v)); }
  mpq_class from_rational(const mpq_class& v) const { return v; }
  /// Uniform integer in [-bound, bound].
  mpq_class random(std::mt19937_64& rng, long bound = 3) const;
  mpq_class pow(mpq_class x, uint64_t e) const;
  mpq_class parse(std::string_view text) const;
  std::string format(const mpq_class& x) const;

  friend bool operator==(const RationalField&, const RationalField&) { return true; }
  friend bool operator!=(const RationalField&, const RationalField&) { return false; }
};

inline bool is_zero(const Gf& x) { return x.code() == 0; }
inline bool is_zero(const mpq_class& x) { return sgn(x) == 0; }

/// Total order used for canonical sorting: codes for Gf, value for Q.
inline bool canonical_less(const Gf& a, const Gf& b) { return a.code() < b.code(); }
inline bool canonical_less(const mpq_class& a, const mpq_class& b) { return cmp(a, b) < 0; }

std::string to_string(const Gf& x);
std::string to_string(const mpq_class& x);

/// Parses "a" or "a/b" (optionally signed) into a rational.
mpq_class parse_rational(std::string_view text);

template <class F>
inline constexpr bool is_finite_field_v = std::is_same_v<F, GaloisField>;

}  // namespace fano
