#pragma once

// Shared helpers for the test binaries.

#include <random>
#include <string>

#include "fano/geometry.hpp"
#include "fano/homform.hpp"
#include "fano/jacobian_ring.hpp"
#include "fano/line_geometry.hpp"

namespace fano::testing {

template <class F>
HomForm<F> random_form(const F& field, int degree, std::mt19937_64& rng) {
  HomForm<F> f(field, degree);
  for (auto& c : f.coeffs()) c = field.random(rng);
  return f;
}

/// Random cubic whose Jacobian ring has the smooth profile.
template <class F>
HomForm<F> random_smooth_cubic(const F& field, std::mt19937_64& rng) {
  for (;;) {
    auto E = random_form(field, 3, rng);
    if (CubicContext<F>(E).smooth()) return E;
  }
}

template <class F>
Vec<F> vec(const F& field, std::initializer_list<long long> xs) {
  Vec<F> v;
  for (auto x : xs) v.push_back(field.from_int(x));
  return v;
}

/// Form from (coefficient, exponent) pairs.
template <class F>
HomForm<F> form(const F& field, int degree, std::initializer_list<std::pair<long long, Exponent>> terms) {
  HomForm<F> f(field, degree);
  for (const auto& [c, e] : terms) f.set_coeff(e, f.coeff(e) + field.from_int(c));
  return f;
}

template <class F>
ProjLine<F> line_of(const F& field, std::initializer_list<long long> a, std::initializer_list<long long> b) {
  return ProjLine<F>::from_points(field, vec(field, a), vec(field, b));
}

/// Uniformly random line through two random independent points.
template <class F>
ProjLine<F> random_line(const F& field, std::mt19937_64& rng) {
  for (;;) {
    Vec<F> a(kVars), b(kVars);
    for (int i = 0; i < kVars; ++i) {
      a[i] = field.random(rng);
      b[i] = field.random(rng);
    }
    if (rank(Matrix<F>::from_rows(field, {a, b}, kVars)) == 2) return ProjLine<F>::from_points(field, a, b);
  }
}

/// A random smooth cubic of the shape z0 Q0 + z1 Q1 + z2^2 z3.
inline HomForm<GaloisField> random_normalized(const GaloisField& F, std::mt19937_64& rng) {
  for (;;) {
    auto Q0 = random_form(F, 2, rng), Q1 = random_form(F, 2, rng);
    auto z = [&](int i) { return HomForm<GaloisField>::variable(F, i); };
    auto E = z(0) * Q0 + z(1) * Q1 + z(2) * z(2) * z(3);
    if (CubicContext<GaloisField>(E).smooth()) return E;
  }
}

/// Random second-type lines not on V, found by sampling.
inline std::vector<ProjLine<GaloisField>> sample_sigma_lines(const CubicContext<GaloisField>& ctx, std::mt19937_64& rng,
                                                             size_t want, size_t budget) {
  std::vector<ProjLine<GaloisField>> out;
  for (size_t i = 0; i < budget && out.size() < want; ++i) {
    auto l = random_line(ctx.field(), rng);
    if (rank(restricted_partials(ctx, l)) == 2 && !line_in_cubic(ctx, l)) out.push_back(l);
  }
  return out;
}

}  // namespace fano::testing
