#pragma once

// Roots of binary forms on P^1, over the base field and (for finite fields)
// over extensions up to a tower bound.

#include <array>
#include <map>
#include <vector>

#include "fano/homform.hpp"
#include "fano/poly1.hpp"

namespace fano {

/// A point of P^1 normalized as (1 : y) or (0 : 1), defined over the
/// extension of degree `ext_degree` (1 = base field). `field` is that
/// extension.
template <class F>
struct P1Root {
  F field;
  uint32_t ext_degree = 1;
  std::array<typename F::Elem, 2> point;
  int multiplicity = 1;
};

template <class F>
struct BinaryRoots {
  std::vector<P1Root<F>> roots;
  /// Product of the irreducible factors not resolved, including the leading
  /// constant; degree 0 when everything was resolved.
  BinaryForm<F> unresolved;

  int resolved_degree() const {
    int d = 0;
    for (const auto& r : roots) d += r.multiplicity;
    return d;
  }
};

namespace detail {

template <class F>
BinaryForm<F> homogenize(const F& field, poly::Poly<F> u, int degree) {
  u.resize(degree + 1, field.zero());
  return BinaryForm<F>(field, std::move(u));
}

}  // namespace detail

/// Finite fields: factor b(1, y) over F_q; every irreducible factor of degree
/// d <= tower_bound contributes its d conjugate roots over F_{q^d}.
inline BinaryRoots<GaloisField> binary_roots(const BinaryForm<GaloisField>& b, uint32_t tower_bound) {
  using P = poly::Poly<GaloisField>;
  const GaloisField& field = b.field();
  if (b.is_zero()) throw MathError("zero_form", "binary_roots of the zero form");
  BinaryRoots<GaloisField> out;
  P f(b.coeffs().begin(), b.coeffs().end());  // f(y) = b(1, y)
  poly::trim<GaloisField>(f);
  const int at_infinity = b.degree() - poly::degree<GaloisField>(f);
  if (at_infinity > 0) out.roots.push_back({field, 1, {field.zero(), field.one()}, at_infinity});
  P unresolved{f.back()};
  for (const auto& fac : poly::factor(field, f)) {
    const int d = poly::degree<GaloisField>(fac.poly);
    if (static_cast<uint32_t>(d) > tower_bound) {
      for (int i = 0; i < fac.multiplicity; ++i) unresolved = poly::mul(field, unresolved, fac.poly);
      continue;
    }
    GaloisField ext = d == 1 ? field : field.extension(static_cast<uint32_t>(d));
    P g;
    for (const auto& c : fac.poly) g.push_back(field.embed(c, ext));
    for (const auto& r : poly::roots_in_field(ext, g))
      out.roots.push_back({ext, static_cast<uint32_t>(d), {ext.one(), r}, fac.multiplicity});
  }
  std::sort(out.roots.begin(), out.roots.end(), [](const auto& a, const auto& b) {
    if (a.ext_degree != b.ext_degree) return a.ext_degree < b.ext_degree;
    if (a.point[0] != b.point[0]) return a.point[0].code() < b.point[0].code();
    return a.point[1].code() < b.point[1].code();
  });
  out.unresolved = detail::homogenize(field, unresolved, poly::degree<GaloisField>(unresolved));
  return out;
}

namespace detail {

inline std::vector<mpz_class> positive_divisors(mpz_class n) {
  if (n < 0) n = -n;
  std::vector<std::pair<mpz_class, int>> fac;
  for (mpz_class d = 2; d * d <= n; ++d) {
    int e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    if (e) fac.emplace_back(d, e);
  }
  if (n > 1) fac.emplace_back(n, 1);
  std::vector<mpz_class> divs{1};
  for (auto& [pr, e] : fac) {
    std::vector<mpz_class> next;
    for (auto& d : divs) {
      mpz_class m = d;
      for (int i = 0; i <= e; ++i) {
        next.push_back(m);
        m *= pr;
      }
    }
    divs = std::move(next);
  }
  return divs;
}

}  // namespace detail

/// Rationals: rational roots only (rational root theorem); the rest is
/// reported as the unresolved factor.
inline BinaryRoots<RationalField> binary_roots(const BinaryForm<RationalField>& b, uint32_t /*tower_bound*/ = 1) {
  using P = poly::Poly<RationalField>;
  RationalField field;
  if (b.is_zero()) throw MathError("zero_form", "binary_roots of the zero form");
  BinaryRoots<RationalField> out;
  P f(b.coeffs().begin(), b.coeffs().end());
  poly::trim<RationalField>(f);
  const int at_infinity = b.degree() - poly::degree<RationalField>(f);
  if (at_infinity > 0) out.roots.push_back({field, 1, {mpq_class(0), mpq_class(1)}, at_infinity});

  auto remaining = f;
  // root y = 0
  {
    int m = 0;
    while (remaining.size() > 1 && is_zero(remaining[0])) {
      remaining.erase(remaining.begin());
      ++m;
    }
    if (m) out.roots.push_back({field, 1, {mpq_class(1), mpq_class(0)}, m});
  }
  if (remaining.size() > 1) {
    mpz_class lcm_den = 1;
    for (auto& c : remaining) lcm_den = lcm(lcm_den, c.get_den());
    std::vector<mpz_class> ints;
    for (auto& c : remaining) ints.push_back(mpz_class(c * lcm_den));
    std::vector<mpq_class> candidates;
    for (auto& num : detail::positive_divisors(ints.front()))
      for (auto& den : detail::positive_divisors(ints.back())) {
        candidates.push_back(mpq_class(num, den));
        candidates.push_back(mpq_class(-num, den));
      }
    for (auto& c : candidates) c.canonicalize();
    std::sort(candidates.begin(), candidates.end(), [](const mpq_class& a, const mpq_class& b) { return cmp(a, b) < 0; });
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    for (const auto& y : candidates) {
      int m = 0;
      while (remaining.size() > 1 && is_zero(poly::eval(field, remaining, y))) {
        remaining = poly::divmod(field, remaining, P{-y, mpq_class(1)}).first;
        ++m;
      }
      if (m) out.roots.push_back({field, 1, {mpq_class(1), y}, m});
    }
  }
  std::sort(out.roots.begin(), out.roots.end(), [](const auto& a, const auto& b) {
    if (a.point[0] != b.point[0]) return cmp(a.point[0], b.point[0]) < 0;
    return cmp(a.point[1], b.point[1]) < 0;
  });
  out.unresolved = detail::homogenize(field, remaining, poly::degree<RationalField>(remaining));
  return out;
}

}  // namespace fano
