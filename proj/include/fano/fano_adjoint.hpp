#pragma once

// Two-forms on the space of linear forms, Schubert forms of planes, the
// adjoint class of a rank-two deformation and the finite scheme D_r of lines
// of V meeting a given line.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "fano/line_geometry.hpp"

namespace fano {

/// Element of the exterior square of the linear forms, coefficients on
/// z_i ^ z_j in kPairs order.
template <class F>
struct TwoForm {
  Vec<F> coeffs;

  bool is_zero() const { return is_zero_vector<F>(coeffs); }
  friend bool operator==(const TwoForm& a, const TwoForm& b) { return a.coeffs == b.coeffs; }
};

template <class F>
TwoForm<F> wedge_forms(const Vec<F>& h1, const Vec<F>& h2) {
  return {wedge<F>(h1, h2)};
}

/// H1 ^ H2 for the dual forms of the plane, first nonzero coefficient 1.
template <class F>
TwoForm<F> schubert_form(const ProjPlane<F>& pi) {
  auto w = wedge_forms<F>(pi.dual().row(0), pi.dual().row(1));
  normalize_leading(pi.field(), w.coeffs);
  return w;
}

/// Pairing of the two-form with the Pluecker point of l.
template <class F>
typename F::Elem evaluate_on_line(const TwoForm<F>& omega, const ProjLine<F>& l) {
  typename F::Elem acc = l.field().zero();
  const auto& p = l.pluecker();
  for (int k = 0; k < 10; ++k) acc += omega.coeffs[k] * p[k];
  return acc;
}

template <class F>
struct WSpaces {
  EchelonSpace<F> W;   // linear forms vanishing on the line
  EchelonSpace<F> W2;  // wedges of pairs of elements of W
};

template <class F>
WSpaces<F> w_spaces(const ProjLine<F>& l) {
  WSpaces<F> s;
  s.W = l.annihilator_forms();
  auto b = s.W.basis();
  std::vector<Vec<F>> wedges;
  for (size_t i = 0; i < b.size(); ++i)
    for (size_t j = i + 1; j < b.size(); ++j) wedges.push_back(wedge<F>(b[i], b[j]));
  s.W2 = EchelonSpace<F>::span(l.field(), 10, wedges);
  return s;
}

// ---- the adjoint class ----

enum class Degeneracy { transverse, tangency, eckardt_on_line, in_F };

inline std::string to_string(Degeneracy d) {
  switch (d) {
    case Degeneracy::transverse: return "transverse";
    case Degeneracy::tangency: return "tangency";
    case Degeneracy::eckardt_on_line: return "eckardt_on_line";
    case Degeneracy::in_F: return "in_F";
  }
  return "unknown";
}

template <class F>
struct AdjointReport {
  ProjLine<F> line;
  Vec<F> xi;  // R^3 coordinates, normalized
  EchelonSpace<F> W;
  EchelonSpace<F> W2;
  bool vanishes = false;
  /// Schubert form of the base plane reduced against W2 and normalized;
  /// zero when the class vanishes.
  TwoForm<F> representative;
  /// The unreduced Schubert form of the base plane.
  TwoForm<F> schubert;
  std::vector<Vec<F>> tangent_hyperplanes;  // at the base-field points of l cap V
  std::optional<ProjPlane<F>> base_plane;
  Degeneracy degeneracy = Degeneracy::transverse;
  bool transverse = true;
};

namespace detail {

/// Discriminant of a binary cubic a s^3 + b s^2 t + c s t^2 + d t^3.
template <class F>
typename F::Elem cubic_discriminant(const BinaryForm<F>& f) {
  const F& field = f.field();
  const auto& a = f[0];
  const auto& b = f[1];
  const auto& c = f[2];
  const auto& d = f[3];
  typename F::Elem r = b * b * c * c;
  r -= field.from_int(4) * a * c * c * c;
  r -= field.from_int(4) * b * b * b * d;
  r -= field.from_int(27) * a * a * d * d;
  r += field.from_int(18) * a * b * c * d;
  return r;
}

template <class F>
void require_rank_two(const XiClass<F>& xi) {
  if (xi.rank != 2)
    throw MathError("rank", "rank of delta(xi) is " + std::to_string(xi.rank) + ", expected 2");
}

template <class F>
AdjointReport<F> adjoint_report(const CubicContext<F>& ctx, const XiClass<F>& xi, const ProjLine<F>& l,
                                uint32_t tower) {
  const F& field = ctx.field();
  AdjointReport<F> rep;
  rep.line = l;
  rep.xi = xi.coords;
  normalize_leading(field, rep.xi);
  auto ws = w_spaces(l);
  rep.W = ws.W;
  rep.W2 = ws.W2;
  auto dual = dual_map_image(ctx, l);
  rep.base_plane = dual.base_plane;
  if (rep.base_plane) rep.schubert = schubert_form(*rep.base_plane);

  auto cls = classify_line(ctx, l, tower);
  if (cls.in_V) {
    rep.vanishes = true;
    rep.representative = {Vec<F>(10, field.zero())};
    rep.degeneracy = Degeneracy::in_F;
    rep.transverse = false;
    return rep;
  }
  if (!rep.base_plane) throw std::logic_error("second-type line without a base plane");
  for (const auto& ip : cls.intersection) {
    if (ip.ext_degree != 1) continue;
    auto g = ctx.cubic().gradient(ip.point);
    normalize_leading(field, g);
    if (std::find(rep.tangent_hyperplanes.begin(), rep.tangent_hyperplanes.end(), g) == rep.tangent_hyperplanes.end())
      rep.tangent_hyperplanes.push_back(g);
  }
  if (is_zero(cubic_discriminant(cls.restriction)))
    rep.degeneracy = Degeneracy::tangency;
  else if (cls.eckardt_hits > 0)
    rep.degeneracy = Degeneracy::eckardt_on_line;
  rep.transverse = rep.degeneracy == Degeneracy::transverse;
  rep.representative = {ws.W2.reduce(rep.schubert.coeffs)};
  if (rep.representative.is_zero()) throw std::logic_error("Schubert form of the base plane lies in W(r)^2");
  normalize_leading(field, rep.representative.coeffs);
  return rep;
}

}  // namespace detail

/// Adjoint class of a rank-two xi; the line is the one cut out by K_1(xi).
template <class F>
AdjointReport<F> adjoint_class(const CubicContext<F>& ctx, const XiClass<F>& xi, uint32_t tower = 3) {
  ctx.require_smooth();
  detail::require_rank_two(xi);
  return detail::adjoint_report(ctx, xi, sigma_line_of_xi(ctx, xi), tower);
}

/// Adjoint class of a line of the second type.
template <class F>
AdjointReport<F> adjoint_class(const CubicContext<F>& ctx, const ProjLine<F>& l, uint32_t tower = 3) {
  auto xi = xi_of_line(ctx, l);
  detail::require_rank_two(xi);
  return detail::adjoint_report(ctx, xi, l, tower);
}

// ---- primitive forms ----

/// Index of z_i ^ z_j ^ z_k (i < j < k) in lexicographic order.
inline constexpr std::array<std::array<int, 3>, 10> kTriples{{{0, 1, 2},
                                                              {0, 1, 3},
                                                              {0, 1, 4},
                                                              {0, 2, 3},
                                                              {0, 2, 4},
                                                              {0, 3, 4},
                                                              {1, 2, 3},
                                                              {1, 2, 4},
                                                              {1, 3, 4},
                                                              {2, 3, 4}}};

template <class F>
Vec<F> wedge3(const F& field, const Vec<F>& a, const Vec<F>& b, const Vec<F>& c) {
  Vec<F> out;
  for (const auto& [i, j, k] : kTriples) {
    auto m = Matrix<F>::from_rows(field, {{a[i], a[j], a[k]}, {b[i], b[j], b[k]}, {c[i], c[j], c[k]}}, 3);
    out.push_back(determinant(m));
  }
  return out;
}

template <class F>
struct PrimitiveFormData {
  EchelonSpace<F> K1;
  Vec<F> phi;  // wedge of the K1 basis in kTriples order, normalized
  Vec<F> omega4, omega5;  // linear forms completing K1 to a basis
  Vec<F> xi_omega4, xi_omega5;  // their products with xi, in R^4 coordinates
  bool decomposable = false;  // image of delta(xi) = span(xi omega4, xi omega5)
};

template <class F>
PrimitiveFormData<F> primitive_form(const CubicContext<F>& ctx, const XiClass<F>& xi) {
  ctx.require_smooth();
  detail::require_rank_two(xi);
  const F& field = ctx.field();
  PrimitiveFormData<F> d;
  d.K1 = xi.K1;
  auto b = d.K1.basis();
  d.phi = wedge3(field, b[0], b[1], b[2]);
  normalize_leading(field, d.phi);
  auto M = complete_to_basis(field, b);
  d.omega4 = M.col(3);
  d.omega5 = M.col(4);
  d.xi_omega4 = xi.delta.apply(d.omega4);
  d.xi_omega5 = xi.delta.apply(d.omega5);
  auto images = EchelonSpace<F>::span(field, ctx.dim(4), {d.xi_omega4, d.xi_omega5});
  std::vector<Vec<F>> cols;
  for (int a = 0; a < kVars; ++a) cols.push_back(xi.delta.col(a));
  auto full = EchelonSpace<F>::span(field, ctx.dim(4), cols);
  d.decomposable = images.dim() == 2 && images == full;
  return d;
}

// ---- the scheme D_r ----

struct DrLines {
  std::vector<LevelLine> lines;  // level = degree of the field of definition over the base
  bool infinite = false;
  std::string reason;    // why the family is infinite
  bool complete = false;  // 18 distinct lines found
  int span_dim = -1;      // projective dimension of the span of the Pluecker points
  size_t eckardt_hits = 0;
};

namespace detail {

/// Tr_{L/K}(x) as an element of K.
inline Gf trace_down(const GaloisField& K, const GaloisField& L, const Gf& x) {
  const uint32_t m = L.degree() / K.degree();
  Gf acc = L.zero();
  Gf y = x;
  for (uint32_t i = 0; i < m; ++i) {
    acc += y;
    y = L.pow(y, K.order());
  }
  return K.restrict_from(acc, L);
}

/// Base-field vectors spanning the same space over the closure as the
/// Galois conjugates of v.
inline std::vector<Vec<GaloisField>> trace_span(const GaloisField& K, const GaloisField& L,
                                                const Vec<GaloisField>& v) {
  std::vector<Vec<GaloisField>> out;
  const uint32_t m = L.degree() / K.degree();
  const Gf x = L.degree() == 1 ? L.one() : L.from_code(static_cast<uint32_t>(L.characteristic()));
  Gf beta = L.one();
  for (uint32_t j = 0; j < m; ++j) {
    Vec<GaloisField> t;
    for (const auto& c : v) t.push_back(trace_down(K, L, beta * c));
    out.push_back(std::move(t));
    beta *= x;
  }
  return out;
}

}  // namespace detail

/// Lines of V meeting l, over extensions of degree at most `tower`.
inline DrLines d_r_lines(const CubicContext<GaloisField>& ctx, const ProjLine<GaloisField>& l, uint32_t tower = 4) {
  ctx.require_smooth();
  const GaloisField& base = ctx.field();
  DrLines out;
  auto cls = classify_line(ctx, l, std::min<uint32_t>(tower, 3));
  out.eckardt_hits = cls.eckardt_hits;
  if (cls.in_V) {
    out.infinite = true;
    out.reason = "line_in_F";
    return out;
  }
  if (cls.eckardt_hits > 0) {
    out.infinite = true;
    out.reason = "eckardt_point";
    return out;
  }
  for (const auto& ip : cls.intersection) {
    const uint32_t d = ip.ext_degree;
    if (d > tower) continue;
    auto EK = lift_form(ctx.cubic(), ip.field);
    auto lt = lines_through_point(EK, ip.point, tower / d);
    if (lt.infinite) {
      out.infinite = true;
      out.reason = "eckardt_point";
      out.lines.clear();
      return out;
    }
    for (auto& ll : lt.lines) out.lines.push_back({ll.level * d, ll.field, ll.line});
  }
  out.complete = out.lines.size() == 18;
  std::vector<Vec<GaloisField>> vs;
  for (const auto& ll : out.lines)
    for (auto& t : detail::trace_span(base, ll.field, ll.line.pluecker())) vs.push_back(std::move(t));
  out.span_dim = static_cast<int>(EchelonSpace<GaloisField>::span(base, 10, vs).dim()) - 1;
  return out;
}

inline DrLines d_r_lines(const CubicContext<RationalField>&, const ProjLine<RationalField>&, uint32_t = 4) {
  throw MathError("rational_field", "D_r enumeration needs a finite field");
}

}  // namespace fano
