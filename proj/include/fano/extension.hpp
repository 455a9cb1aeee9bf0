#pragma once

// Moving data between a base field and its extensions, and base-field roots
// of binary forms, written so that generic code works over Q and F_q alike.

#include <array>
#include <utility>
#include <vector>

#include "fano/homform.hpp"
#include "fano/roots.hpp"

namespace fano {

inline Gf lift_elem(const GaloisField& base, const Gf& x, const GaloisField& target) { return base.embed(x, target); }
inline mpq_class lift_elem(const RationalField&, const mpq_class& x, const RationalField&) { return x; }

template <class F>
Vec<F> lift_vec(const F& base, const Vec<F>& v, const F& target) {
  Vec<F> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(lift_elem(base, x, target));
  return out;
}

template <class F>
HomForm<F> lift_form(const HomForm<F>& f, const F& target) {
  const F& base = f.field();
  return f.map_field(target, [&](const typename F::Elem& x) { return lift_elem(base, x, target); });
}

/// The i-th element in a fixed enumeration: codes for F_q; 0, 1, -1, 2, -2, ... for Q.
inline Gf enumerate_elem(const GaloisField& f, uint64_t i) { return f.from_code(static_cast<uint32_t>(i)); }
inline mpq_class enumerate_elem(const RationalField&, uint64_t i) {
  long v = static_cast<long>((i + 1) / 2);
  return mpq_class(i % 2 ? v : -v);
}

/// How many elements enumerate_elem may be asked for.
inline uint64_t enumeration_limit(const GaloisField& f) { return f.order(); }
inline uint64_t enumeration_limit(const RationalField&) { return 2001; }

template <class F>
struct P1Point {
  std::array<typename F::Elem, 2> point;
  int multiplicity = 1;
};

/// Roots of b in P^1 over its own field of coefficients.
inline std::vector<P1Point<GaloisField>> base_points(const BinaryForm<GaloisField>& b) {
  std::vector<P1Point<GaloisField>> out;
  for (auto& r : binary_roots(b, 1).roots)
    if (r.ext_degree == 1) out.push_back({r.point, r.multiplicity});
  return out;
}

inline std::vector<P1Point<RationalField>> base_points(const BinaryForm<RationalField>& b) {
  std::vector<P1Point<RationalField>> out;
  for (auto& r : binary_roots(b).roots) out.push_back({r.point, r.multiplicity});
  return out;
}

/// Smallest j such that the projective point v over L = F_{q^m} is
/// defined over F_{q^j}, where q is the order of `base`.
inline uint32_t definition_degree(const GaloisField& base, const GaloisField& L, Vec<GaloisField> v) {
  normalize_leading(L, v);
  const uint32_t m = L.degree() / base.degree();
  for (uint32_t j = 1; j < m; ++j) {
    if (m % j != 0) continue;
    bool inside = true;
    for (const auto& x : v) inside = inside && L.in_subfield(x, base.degree() * j);
    if (inside) return j;
  }
  return m;
}

}  // namespace fano
