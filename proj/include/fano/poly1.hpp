#pragma once

// Univariate polynomials over a field (coefficients low to high) and their
// factorization over finite fields.

#include <random>
#include <utility>
#include <vector>

#include "fano/field.hpp"
#include "fano/linalg.hpp"

namespace fano::poly {

template <class F>
using Poly = Vec<F>;

template <class F>
void trim(Poly<F>& a) {
  while (!a.empty() && is_zero(a.back())) a.pop_back();
}

template <class F>
int degree(const Poly<F>& a) {
  return static_cast<int>(a.size()) - 1;  // -1 for the zero polynomial (after trim)
}

template <class F>
Poly<F> monic(const F& field, Poly<F> a) {
  trim<F>(a);
  if (a.empty()) return a;
  typename F::Elem inv = field.one() / a.back();
  for (auto& c : a) c = c * inv;
  return a;
}

template <class F>
Poly<F> add(const F& field, Poly<F> a, const Poly<F>& b) {
  if (a.size() < b.size()) a.resize(b.size(), field.zero());
  for (size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  trim<F>(a);
  return a;
}

template <class F>
Poly<F> sub(const F& field, Poly<F> a, const Poly<F>& b) {
  if (a.size() < b.size()) a.resize(b.size(), field.zero());
  for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim<F>(a);
  return a;
}

template <class F>
Poly<F> mul(const F& field, const Poly<F>& a, const Poly<F>& b) {
  if (a.empty() || b.empty()) return {};
  Poly<F> c(a.size() + b.size() - 1, field.zero());
  for (size_t i = 0; i < a.size(); ++i) {
    if (is_zero(a[i])) continue;
    for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  }
  trim<F>(c);
  return c;
}

/// (quotient, remainder); b nonzero.
template <class F>
std::pair<Poly<F>, Poly<F>> divmod(const F& field, Poly<F> a, Poly<F> b) {
  trim<F>(a);
  trim<F>(b);
  if (b.empty()) throw MathError("division_by_zero", "polynomial division by zero");
  if (a.size() < b.size()) return {{}, a};
  typename F::Elem inv = field.one() / b.back();
  Poly<F> q(a.size() - b.size() + 1, field.zero());
  for (size_t i = a.size() - 1;; --i) {
    typename F::Elem c = a[i] * inv;
    q[i - (b.size() - 1)] = c;
    if (!is_zero(c))
      for (size_t j = 0; j < b.size(); ++j) a[i - (b.size() - 1) + j] -= c * b[j];
    if (i == b.size() - 1) break;
  }
  a.resize(b.size() - 1);
  trim<F>(a);
  trim<F>(q);
  return {q, a};
}

template <class F>
Poly<F> mod(const F& field, Poly<F> a, const Poly<F>& b) {
  return divmod(field, std::move(a), b).second;
}

template <class F>
Poly<F> gcd(const F& field, Poly<F> a, Poly<F> b) {
  trim<F>(a);
  trim<F>(b);
  while (!b.empty()) {
    Poly<F> r = mod(field, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(field, a);
}

template <class F>
Poly<F> derivative(const F& field, const Poly<F>& a) {
  Poly<F> d;
  for (size_t i = 1; i < a.size(); ++i) d.push_back(a[i] * field.from_int(static_cast<long long>(i)));
  trim<F>(d);
  return d;
}

template <class F>
Poly<F> powmod(const F& field, Poly<F> base, uint64_t e, const Poly<F>& m) {
  Poly<F> result{field.one()};
  result = mod(field, result, m);
  base = mod(field, base, m);
  while (e > 0) {
    if (e & 1) result = mod(field, mul(field, result, base), m);
    base = mod(field, mul(field, base, base), m);
    e >>= 1;
  }
  return result;
}

template <class F>
typename F::Elem eval(const F& field, const Poly<F>& a, const typename F::Elem& x) {
  typename F::Elem acc = field.zero();
  for (size_t i = a.size(); i-- > 0;) acc = acc * x + a[i];
  return acc;
}

template <class F>
bool is_one(const F& field, const Poly<F>& a) {
  return a.size() == 1 && a[0] == field.one();
}

// ---- finite-field factorization ----

/// Squarefree decomposition of a monic f: pairs (g, e) with f = prod g^e.
inline std::vector<std::pair<Poly<GaloisField>, int>> squarefree(const GaloisField& field, Poly<GaloisField> f) {
  using P = Poly<GaloisField>;
  std::vector<std::pair<P, int>> out;
  f = monic(field, f);
  if (degree<GaloisField>(f) <= 0) return out;
  const uint32_t p = static_cast<uint32_t>(field.characteristic());
  P df = derivative(field, f);
  P c = gcd(field, f, df);
  P w = divmod(field, f, c).first;
  int i = 1;
  while (!is_one(field, w) && !w.empty()) {
    P y = gcd(field, w, c);
    P fac = divmod(field, w, y).first;
    if (degree<GaloisField>(fac) > 0) out.emplace_back(monic(field, fac), i);
    w = y;
    c = divmod(field, c, y).first;
    ++i;
  }
  if (degree<GaloisField>(c) > 0) {
    // c is a p-th power: c(x) = h(x^p) with coefficients taken to the 1/p.
    const uint64_t root_exp = field.order() / p;  // a^(q/p) is the p-th root
    P h;
    for (size_t j = 0; j < c.size(); j += p) h.push_back(field.pow(c[j], root_exp));
    for (auto& [g, e] : squarefree(field, h)) out.emplace_back(g, e * static_cast<int>(p));
  }
  return out;
}

/// Distinct-degree factorization of a squarefree monic f.
inline std::vector<std::pair<Poly<GaloisField>, int>> distinct_degree(const GaloisField& field,
                                                                      Poly<GaloisField> f) {
  using P = Poly<GaloisField>;
  std::vector<std::pair<P, int>> out;
  const P x{field.zero(), field.one()};
  P h = mod(field, x, f);
  int i = 1;
  while (degree<GaloisField>(f) >= 2 * i) {
    h = powmod(field, h, field.order(), f);
    P g = gcd(field, f, sub(field, h, x));
    if (!is_one(field, g)) {
      out.emplace_back(g, i);
      f = divmod(field, f, g).first;
      h = mod(field, h, f);
    }
    ++i;
  }
  if (degree<GaloisField>(f) > 0) out.emplace_back(monic(field, f), degree<GaloisField>(f));
  return out;
}

/// Splits a monic f that is a product of distinct irreducibles of degree d
/// (Cantor-Zassenhaus, odd characteristic). Deterministic: fixed-seed PRNG.
inline std::vector<Poly<GaloisField>> equal_degree(const GaloisField& field, const Poly<GaloisField>& f, int d) {
  using P = Poly<GaloisField>;
  const int n = degree<GaloisField>(f);
  if (n <= d) return {f};
  std::mt19937_64 rng(0x5eed0ff1e1dULL + static_cast<uint64_t>(n) * 131 + d);
  const uint64_t q = field.order();
  for (;;) {
    P a;
    for (int i = 0; i < n; ++i) a.push_back(field.random(rng));
    trim<GaloisField>(a);
    if (degree<GaloisField>(a) < 1) continue;
    P g = gcd(field, a, f);
    if (degree<GaloisField>(g) > 0 && degree<GaloisField>(g) < n) {
      auto left = equal_degree(field, g, d);
      auto right = equal_degree(field, divmod(field, f, g).first, d);
      left.insert(left.end(), right.begin(), right.end());
      return left;
    }
    P b;
    if (q % 2 == 1) {
      // a^((q^d - 1)/2) = (a^(1 + q + ... + q^(d-1)))^((q-1)/2)
      P norm{field.one()};
      P conj = mod(field, a, f);
      for (int j = 0; j < d; ++j) {
        norm = mod(field, mul(field, norm, conj), f);
        conj = powmod(field, conj, q, f);
      }
      b = powmod(field, norm, (q - 1) / 2, f);
    } else {
      // trace map for characteristic 2
      P t = mod(field, a, f), acc = t;
      for (uint64_t j = 1; j < static_cast<uint64_t>(d) * field.degree(); ++j) {
        t = mod(field, mul(field, t, t), f);
        acc = add(field, acc, t);
      }
      b = add(field, acc, P{field.one()});
    }
    b = sub(field, b, P{field.one()});
    g = gcd(field, b, f);
    if (degree<GaloisField>(g) > 0 && degree<GaloisField>(g) < n) {
      auto left = equal_degree(field, g, d);
      auto right = equal_degree(field, divmod(field, f, g).first, d);
      left.insert(left.end(), right.begin(), right.end());
      return left;
    }
  }
}

struct IrreducibleFactor {
  Poly<GaloisField> poly;  // monic
  int multiplicity = 1;
};

/// Complete factorization of a nonzero f into monic irreducibles (leading
/// coefficient dropped). Factors sorted by (degree, coefficient codes).
inline std::vector<IrreducibleFactor> factor(const GaloisField& field, const Poly<GaloisField>& f) {
  std::vector<IrreducibleFactor> out;
  for (auto& [sqf, e] : squarefree(field, f))
    for (auto& [g, d] : distinct_degree(field, sqf))
      for (auto& h : equal_degree(field, g, d)) out.push_back({monic(field, h), e});
  std::sort(out.begin(), out.end(), [](const IrreducibleFactor& a, const IrreducibleFactor& b) {
    if (a.poly.size() != b.poly.size()) return a.poly.size() < b.poly.size();
    for (size_t i = a.poly.size(); i-- > 0;)
      if (a.poly[i] != b.poly[i]) return a.poly[i].code() < b.poly[i].code();
    return a.multiplicity < b.multiplicity;
  });
  return out;
}

/// Distinct roots of f lying in `field`, sorted by code.
inline std::vector<Gf> roots_in_field(const GaloisField& field, Poly<GaloisField> f) {
  using P = Poly<GaloisField>;
  trim<GaloisField>(f);
  std::vector<Gf> roots;
  if (degree<GaloisField>(f) < 1) return roots;
  f = monic(field, f);
  const P x{field.zero(), field.one()};
  P h = powmod(field, x, field.order(), f);
  P g = gcd(field, f, sub(field, h, x));
  if (degree<GaloisField>(g) < 1) return roots;
  for (auto& lin : equal_degree(field, g, 1)) roots.push_back(-lin[0] / lin[1]);
  std::sort(roots.begin(), roots.end(), [](const Gf& a, const Gf& b) { return a.code() < b.code(); });
  return roots;
}

}  // namespace fano::poly
