#pragma once

// Line classification on a cubic threefold: containment, first/second type,
// double lines and their tangent planes, the dual map, Eckardt points, lines
// through a point, the Hessian and plane sections.

#include <optional>
#include <vector>

#include "fano/extension.hpp"
#include "fano/geometry.hpp"
#include "fano/jacobian_ring.hpp"

namespace fano {

/// 5x3 matrix whose rows are the (s^2, st, t^2) coefficients of the
/// partials of E restricted to l.
template <class F>
Matrix<F> restricted_partials(const CubicContext<F>& ctx, const ProjLine<F>& l) {
  Matrix<F> m(ctx.field(), kVars, 3);
  for (int i = 0; i < kVars; ++i) {
    auto b = restrict_to_line(ctx.partials()[i], l);
    for (int j = 0; j < 3; ++j) m(i, j) = b[j];
  }
  return m;
}

/// Value of sum_i v_i (d E / d z_i) along l, as a binary quadric.
template <class F>
BinaryForm<F> directional_partial(const Matrix<F>& partials_on_line, const Vec<F>& v) {
  BinaryForm<F> b(partials_on_line.field(), 2);
  for (int i = 0; i < kVars; ++i)
    for (int j = 0; j < 3; ++j) b[j] += v[i] * partials_on_line(i, j);
  return b;
}

// ---- dual map ----

template <class F>
struct DualImage {
  size_t rank = 0;      // dimension of the span of the restricted partials
  bool is_line = false;  // rank == 2
  int degree = 2;        // degree of P^1 -> image; 1 when the pencil has a base point
  /// Hyperplanes spanning the image (rows, reduced echelon form).
  Matrix<F> span;
  std::optional<ProjPlane<F>> base_plane;
};

namespace detail {

/// Resultant of two binary quadrics given by (s^2, st, t^2) coefficients.
template <class F>
typename F::Elem quadric_resultant(const Vec<F>& a, const Vec<F>& b) {
  // Sylvester resultant of a0 s^2 + a1 st + a2 t^2 and the same for b.
  const auto& a0 = a[0];
  const auto& a1 = a[1];
  const auto& a2 = a[2];
  const auto& b0 = b[0];
  const auto& b1 = b[1];
  const auto& b2 = b[2];
  // Res = (a0 b2 - a2 b0)^2 - (a0 b1 - a1 b0)(a1 b2 - a2 b1)
  typename F::Elem u = a0 * b2 - a2 * b0;
  return u * u - (a0 * b1 - a1 * b0) * (a1 * b2 - a2 * b1);
}

}  // namespace detail

template <class F>
DualImage<F> dual_map_image(const CubicContext<F>& ctx, const ProjLine<F>& l) {
  const F& field = ctx.field();
  auto C = restricted_partials(ctx, l);
  DualImage<F> d;
  // image span: columns of C are the hyperplane vectors of s^2, st, t^2
  auto cols = C.transpose();
  auto span_rows = cols;
  rref_in_place(span_rows);
  d.rank = span_rows.rows();
  if (d.rank == 0) throw MathError("singular_cubic", "restricted partials vanish identically");
  d.span = span_rows;
  d.is_line = d.rank == 2;
  if (d.is_line) {
    d.base_plane = ProjPlane<F>::from_forms(field, span_rows.row(0), span_rows.row(1));
    // the two spanning binary quadrics: a basis of the row space of C
    auto q = C;
    rref_in_place(q);
    if (is_zero(detail::quadric_resultant<F>(q.row(0), q.row(1)))) d.degree = 1;
  }
  return d;
}

// ---- tangent plane along a line of V ----

template <class F>
struct TangentWitness {
  ProjPlane<F> plane;
  ProjLine<F> residual;
  bool triple = false;
  /// E restricted to the plane is u^2 (b0 s + b1 t + c u) in coordinates
  /// s P + t Q + u V with (P, Q) the canonical rows of l.
  Vec<F> residual_form;
  Vec<F> third_point;  // V
};

template <class F>
bool line_in_cubic(const CubicContext<F>& ctx, const ProjLine<F>& l) {
  return restrict_to_line(ctx.cubic(), l).is_zero();
}

/// The plane tangent to V along l and the residual line, or nothing when l
/// is of the first type. Throws when l is not contained in V.
template <class F>
std::optional<TangentWitness<F>> tangent_plane_witness(const CubicContext<F>& ctx, const ProjLine<F>& l) {
  const F& field = ctx.field();
  if (!line_in_cubic(ctx, l)) throw MathError("line_not_in_cubic", "the line is not contained in V");
  auto C = restricted_partials(ctx, l);
  // v with sum_i v_i dE/dz_i = 0 along l: the tangent directions
  auto k = kernel(C.transpose());
  if (k.dim() != 3) return std::nullopt;
  Vec<F> V;
  for (const auto& v : k.basis())
    if (!l.contains_point(v)) {
      V = v;
      break;
    }
  TangentWitness<F> w;
  w.third_point = V;
  w.plane = ProjPlane<F>::from_points(field, {l.point(0), l.point(1), V});
  Matrix<F> M(field, kVars, kVars);
  for (int i = 0; i < kVars; ++i) {
    M(i, 0) = l.point(0)[i];
    M(i, 1) = l.point(1)[i];
    M(i, 2) = V[i];
  }
  auto g = ctx.cubic().compose(M);
  // re-expansion check: only u^2 s, u^2 t, u^3 survive
  const Exponent us{1, 0, 2, 0, 0}, ut{0, 1, 2, 0, 0}, uu{0, 0, 3, 0, 0};
  const auto& ms = monomials(3);
  for (size_t i = 0; i < ms.size(); ++i)
    if (ms[i] != us && ms[i] != ut && ms[i] != uu && !is_zero(g.coeffs()[i]))
      throw std::logic_error("tangent plane witness failed re-expansion");
  w.residual_form = {g.coeff(us), g.coeff(ut), g.coeff(uu)};
  if (is_zero(w.residual_form[0]) && is_zero(w.residual_form[1])) {
    if (is_zero(w.residual_form[2])) throw MathError("plane_in_cubic", "V contains a plane");
    w.triple = true;
    w.residual = l;
    return w;
  }
  Matrix<F> lin(field, 1, 3);
  for (int j = 0; j < 3; ++j) lin(0, j) = w.residual_form[j];
  auto pts = kernel(lin).basis();  // two points in (s, t, u)
  std::vector<Vec<F>> img;
  for (const auto& pt : pts) {
    Vec<F> x(kVars, field.zero());
    for (int i = 0; i < kVars; ++i) x[i] = pt[0] * M(i, 0) + pt[1] * M(i, 1) + pt[2] * M(i, 2);
    img.push_back(x);
  }
  w.residual = ProjLine<F>::from_points(field, img[0], img[1]);
  w.triple = w.residual == l;
  return w;
}

// ---- Eckardt points ----

template <class F>
struct TangentFrame {
  Matrix<F> M;          // columns: p, three more vectors of T_p V, a vector off T_p V
  HomForm<F> E;         // E(M y); p = e0 and T_p V = {y4 = 0}
  HomForm<F> quadric;   // coefficient of y0 on {y4 = 0}: a form in y1, y2, y3
  HomForm<F> cone_base; // E(0, y1, y2, y3, 0)
};

template <class F>
TangentFrame<F> tangent_frame(const HomForm<F>& E, const Vec<F>& p) {
  const F& field = E.field();
  if (is_zero_vector<F>(p)) throw UsageError("the zero vector is not a point");
  if (!is_zero(E.evaluate(p))) throw MathError("point_not_on_cubic", "E(p) != 0");
  auto grad = E.gradient(p);
  if (is_zero_vector<F>(grad)) throw MathError("singular_point", "p is a singular point of V");
  auto T = kernel(Matrix<F>::from_rows(field, {grad}, kVars));
  std::vector<Vec<F>> cols{p};
  for (const auto& v : T.basis()) {
    auto trial = cols;
    trial.push_back(v);
    if (rank(Matrix<F>::from_rows(field, trial, kVars)) == trial.size()) cols = std::move(trial);
  }
  for (int i = 0; i < kVars; ++i)
    if (!is_zero(grad[i])) {
      cols.push_back(standard_vector(field, i));
      break;
    }
  TangentFrame<F> fr;
  fr.M = Matrix<F>::from_rows(field, cols, kVars).transpose();
  fr.E = E.compose(fr.M);
  fr.quadric = HomForm<F>(field, 2);
  fr.cone_base = HomForm<F>(field, 3);
  const auto& ms = monomials(3);
  for (size_t i = 0; i < ms.size(); ++i) {
    const auto& e = ms[i];
    if (e[4] != 0) continue;
    if (e[0] == 1) fr.quadric.set_coeff({0, e[1], e[2], e[3], 0}, fr.E.coeffs()[i]);
    if (e[0] == 0) fr.cone_base.coeffs()[monomial_index(e)] = fr.E.coeffs()[i];
  }
  return fr;
}

template <class F>
struct EckardtResult {
  bool eckardt = false;
  TangentFrame<F> frame;
};

/// p is an Eckardt point iff in the tangent frame no monomial with y0 > 0 and
/// y4 = 0 occurs, i.e. E = K(y1, y2, y3) + y4 Q.
template <class F>
EckardtResult<F> eckardt_test(const HomForm<F>& E, const Vec<F>& p) {
  EckardtResult<F> r;
  r.frame = tangent_frame(E, p);
  const auto& ms = monomials(3);
  r.eckardt = true;
  for (size_t i = 0; i < ms.size(); ++i)
    if (ms[i][0] > 0 && ms[i][4] == 0 && !is_zero(r.frame.E.coeffs()[i])) r.eckardt = false;
  return r;
}

template <class F>
EckardtResult<F> eckardt_test(const CubicContext<F>& ctx, const Vec<F>& p) {
  return eckardt_test(ctx.cubic(), p);
}

// ---- lines through a point ----

namespace detail {

/// f(phi_0, ..., phi_4) for binary forms phi_i of a common degree.
template <class F>
BinaryForm<F> substitute_binary(const HomForm<F>& f, const std::array<BinaryForm<F>, kVars>& phi) {
  const F& field = f.field();
  const int m = phi[0].degree();
  std::array<std::vector<BinaryForm<F>>, kVars> pw;
  for (int v = 0; v < kVars; ++v) {
    pw[v].push_back(BinaryForm<F>(field, Vec<F>{field.one()}));
    for (int e = 1; e <= f.degree(); ++e) pw[v].push_back(pw[v].back() * phi[v]);
  }
  BinaryForm<F> out(field, m * f.degree());
  const auto& ms = monomials(f.degree());
  for (size_t i = 0; i < ms.size(); ++i) {
    if (is_zero(f.coeffs()[i])) continue;
    BinaryForm<F> term(field, Vec<F>{f.coeffs()[i]});
    for (int v = 0; v < kVars; ++v) term = term * pw[v][ms[i][v]];
    out = out + term;
  }
  return out;
}

template <class F>
Vec<F> combine(const Vec<F>& a, const typename F::Elem& s, const Vec<F>& b, const typename F::Elem& t) {
  Vec<F> v(a.size());
  for (size_t i = 0; i < a.size(); ++i) v[i] = s * a[i] + t * b[i];
  return v;
}

template <class F>
void add_point(const F& field, std::vector<Vec<F>>& pts, Vec<F> v) {
  normalize_leading(field, v);
  for (const auto& w : pts)
    if (w == v) return;
  pts.push_back(std::move(v));
}

/// Points of P^1-parametrized curve phi with C(phi) = 0, over the field of C.
template <class F>
bool points_on_line(const HomForm<F>& C, const Vec<F>& A, const Vec<F>& B, std::vector<Vec<F>>& pts) {
  auto b = C.restrict_to_points(A, B);
  if (b.is_zero()) return false;
  for (const auto& r : base_points(b)) add_point(C.field(), pts, combine<F>(A, r.point[0], B, r.point[1]));
  return true;
}

}  // namespace detail

template <class F>
struct ConicCubicSolution {
  bool infinite = false;  // the quadric vanishes identically or shares a component with the cubic
  size_t quadric_rank = 0;
  std::vector<Vec<F>> points;  // normalized 5-vectors supported on coordinates 1..3
};

/// Common zeros of a ternary quadric Q and cubic C (forms in y1, y2, y3)
/// in P^2 over their field of definition.
template <class F>
ConicCubicSolution<F> solve_conic_cubic(const HomForm<F>& Q, const HomForm<F>& C) {
  const F& field = Q.field();
  ConicCubicSolution<F> out;
  const auto two = field.from_int(2);
  // Gram matrix of Q on y1..y3
  Matrix<F> G(field, 3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Exponent e{};
      e[i + 1] += 1;
      e[j + 1] += 1;
      G(i, j) = i == j ? Q.coeff(e) : Q.coeff(e) / two;
    }
  auto embed3 = [&](const Vec<F>& v) {
    Vec<F> x(kVars, field.zero());
    for (int i = 0; i < 3; ++i) x[i + 1] = v[i];
    return x;
  };
  auto e3 = [&](int i) {
    Vec<F> v(kVars, field.zero());
    v[i + 1] = field.one();
    return v;
  };
  out.quadric_rank = rank(G);
  auto& pts = out.points;
  switch (out.quadric_rank) {
    case 0:
      out.infinite = true;
      return out;
    case 1: {
      auto rows = G;
      rref_in_place(rows);
      auto line = kernel(rows).basis();
      if (!detail::points_on_line(C, embed3(line[0]), embed3(line[1]), pts)) out.infinite = true;
      return out;
    }
    case 2: {
      auto v = embed3(kernel(G).basis_vector(0));
      std::vector<Vec<F>> span{v};
      for (int i = 0; i < 3 && span.size() < 3; ++i) {
        auto trial = span;
        trial.push_back(e3(i));
        if (rank(Matrix<F>::from_rows(field, trial, kVars)) == trial.size()) span = std::move(trial);
      }
      auto q = Q.restrict_to_points(span[1], span[2]);
      auto roots = base_points(q);
      if (roots.empty()) {
        if (is_zero(C.evaluate(v))) detail::add_point(field, pts, v);
        return out;
      }
      for (const auto& r : roots) {
        auto w = detail::combine<F>(span[1], r.point[0], span[2], r.point[1]);
        if (!detail::points_on_line(C, v, w, pts)) out.infinite = true;
      }
      return out;
    }
    default:
      break;
  }
  // smooth conic: find a point P0 on lines through e3
  Vec<F> P0;
  {
    // lines span(e3, e1 + a e2), a running through field elements, then span(e3, e2)
    auto try_line = [&](const Vec<F>& A, const Vec<F>& B) {
      auto roots = base_points(Q.restrict_to_points(A, B));
      if (roots.empty()) return false;
      P0 = detail::combine<F>(A, roots[0].point[0], B, roots[0].point[1]);
      return true;
    };
    // every point of P^2 lies on one of these lines; over Q a point may not exist
    bool found = try_line(e3(2), e3(1));
    const uint64_t limit = enumeration_limit(field);
    for (uint64_t a = 0; !found && a < limit; ++a)
      found = try_line(e3(2), detail::combine<F>(e3(0), field.one(), e3(1), enumerate_elem(field, a)));
    if (!found) throw MathError("no_rational_point", "no point found on the conic");
  }
  // parametrize: phi(d) = Q(d) P0 - 2 B(P0, d) d with d on a line avoiding P0
  std::vector<Vec<F>> span{P0};
  for (int i = 0; i < 3 && span.size() < 3; ++i) {
    auto trial = span;
    trial.push_back(e3(i));
    if (rank(Matrix<F>::from_rows(field, trial, kVars)) == trial.size()) span = std::move(trial);
  }
  const auto& D1 = span[1];
  const auto& D2 = span[2];
  auto qd = Q.restrict_to_points(D1, D2);
  // B(P0, d) = (1/2) grad Q(P0) . d
  auto gq = Q.gradient(P0);
  auto dot = [&](const Vec<F>& d) {
    auto acc = field.zero();
    for (int i = 0; i < kVars; ++i) acc += gq[i] * d[i];
    return acc;
  };
  // 2 B(P0, d) = grad Q(P0) . d
  auto bl = BinaryForm<F>::linear(field, dot(D1), dot(D2));
  std::array<BinaryForm<F>, kVars> phi;
  for (int i = 0; i < kVars; ++i) {
    auto di = BinaryForm<F>::linear(field, D1[i], D2[i]);
    phi[i] = qd.scaled(P0[i]) - bl * di;
  }
  auto c = detail::substitute_binary(C, phi);
  if (c.is_zero()) {
    out.infinite = true;
    return out;
  }
  for (const auto& r : base_points(c)) {
    Vec<F> x(kVars, field.zero());
    for (int i = 0; i < kVars; ++i) x[i] = phi[i].evaluate(r.point[0], r.point[1]);
    if (is_zero_vector<F>(x)) continue;
    detail::add_point(field, pts, x);
  }
  return out;
}

template <class F>
struct PointLines {
  bool eckardt = false;
  bool infinite = false;
  std::vector<ProjLine<F>> lines;  // over the field of p
};

/// Lines of V through p with coordinates in the field of p (no extension).
template <class F>
PointLines<F> lines_through_point_over(const HomForm<F>& E, const Vec<F>& p) {
  const F& field = E.field();
  auto er = eckardt_test(E, p);
  PointLines<F> out;
  out.eckardt = er.eckardt;
  if (er.eckardt) {
    out.infinite = true;
    return out;
  }
  auto sol = solve_conic_cubic(er.frame.quadric, er.frame.cone_base);
  if (sol.infinite) {
    out.infinite = true;
    return out;
  }
  for (const auto& d : sol.points) {
    auto dir = er.frame.M.apply(d);
    out.lines.push_back(ProjLine<F>::from_points(field, p, dir));
  }
  return out;
}

struct LevelLine {
  uint32_t level = 1;  // minimal degree of the field of definition over the base
  GaloisField field;   // F_{q^level}
  ProjLine<GaloisField> line;
};

struct LinesThroughPoint {
  bool eckardt = false;
  bool infinite = false;
  std::vector<LevelLine> lines;  // each line over its own minimal field, one per conjugate
  size_t distinct() const { return lines.size(); }
};

/// Lines of V through a base-field point p over F_{q^k}, k <= tower. Lines
/// are listed at the level of their minimal field of definition.
inline LinesThroughPoint lines_through_point(const HomForm<GaloisField>& E, const Vec<GaloisField>& p,
                                             uint32_t tower) {
  const GaloisField& base = E.field();
  LinesThroughPoint out;
  for (uint32_t k = 1; k <= tower; ++k) {
    GaloisField L = k == 1 ? base : base.extension(k);
    auto EL = lift_form(E, L);
    auto pl = lift_vec(base, p, L);
    auto res = lines_through_point_over(EL, pl);
    if (res.eckardt || res.infinite) {
      out.eckardt = res.eckardt;
      out.infinite = true;
      out.lines.clear();
      return out;
    }
    for (auto& l : res.lines)
      if (definition_degree(base, L, l.pluecker()) == k) out.lines.push_back({k, L, l});
  }
  return out;
}

inline LinesThroughPoint lines_through_point(const CubicContext<GaloisField>& ctx, const Vec<GaloisField>& p,
                                             uint32_t tower) {
  return lines_through_point(ctx.cubic(), p, tower);
}

inline LinesThroughPoint lines_through_point(const CubicContext<RationalField>&, const Vec<RationalField>&,
                                             uint32_t) {
  throw MathError("rational_field", "lines through a point need a finite field");
}

// ---- line report ----

template <class F>
struct IntersectionPoint {
  F field;                 // field of definition used for the coordinates
  uint32_t ext_degree = 1; // over the base field
  Vec<F> point;
  int multiplicity = 1;
  bool eckardt = false;
};

template <class F>
struct LineReport {
  ProjLine<F> line;
  BinaryForm<F> restriction;
  bool in_V = false;
  size_t j2_restricted_dim = 0;
  bool second_type = false;
  std::vector<IntersectionPoint<F>> intersection;  // empty when in_V
  BinaryForm<F> unresolved;                        // factor of E|l with no listed roots
  bool intersection_unresolved = false;
  bool is_double = false;
  std::optional<TangentWitness<F>> witness;
  DualImage<F> dual_image;
  size_t eckardt_hits = 0;
};

template <class F>
std::vector<IntersectionPoint<F>> intersection_points(const CubicContext<F>& ctx, const ProjLine<F>& l,
                                                      const BinaryForm<F>& restriction, uint32_t tower,
                                                      BinaryForm<F>* unresolved) {
  std::vector<IntersectionPoint<F>> out;
  const F& base = ctx.field();
  auto roots = binary_roots(restriction, tower);
  for (const auto& r : roots.roots) {
    IntersectionPoint<F> ip;
    ip.field = r.field;
    ip.ext_degree = r.ext_degree;
    ip.multiplicity = r.multiplicity;
    auto P = lift_vec(base, l.point(0), r.field);
    auto Q = lift_vec(base, l.point(1), r.field);
    ip.point = detail::combine<F>(P, r.point[0], Q, r.point[1]);
    auto EL = lift_form(ctx.cubic(), r.field);
    if (!is_zero_vector<F>(EL.gradient(ip.point))) ip.eckardt = eckardt_test(EL, ip.point).eckardt;
    out.push_back(std::move(ip));
  }
  if (unresolved) *unresolved = roots.unresolved;
  return out;
}

template <class F>
LineReport<F> classify_line(const CubicContext<F>& ctx, const ProjLine<F>& l, uint32_t tower = 1) {
  ctx.require_smooth();
  LineReport<F> r;
  r.line = l;
  r.restriction = restrict_to_line(ctx.cubic(), l);
  r.in_V = r.restriction.is_zero();
  r.j2_restricted_dim = rank(restricted_partials(ctx, l));
  r.second_type = r.j2_restricted_dim <= 2;
  r.dual_image = dual_map_image(ctx, l);
  if (!r.in_V) {
    r.intersection = intersection_points(ctx, l, r.restriction, tower, &r.unresolved);
    r.intersection_unresolved = r.unresolved.degree() > 0;
    for (const auto& ip : r.intersection) r.eckardt_hits += ip.eckardt ? 1 : 0;
  } else {
    r.witness = tangent_plane_witness(ctx, l);
    r.is_double = r.witness.has_value();
  }
  return r;
}

// ---- Hessian ----

namespace detail {

template <class T, class Entry>
T leibniz_determinant(const std::vector<std::vector<Entry>>& m, T zero) {
  const int n = static_cast<int>(m.size());
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  T acc = zero;
  do {
    int inversions = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) inversions += perm[i] > perm[j] ? 1 : 0;
    T term = m[0][perm[0]];
    for (int i = 1; i < n; ++i) term = term * m[i][perm[i]];
    acc = inversions % 2 ? acc - term : acc + term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return acc;
}

}  // namespace detail

/// det of the Hessian matrix of E: a quintic form.
template <class F>
HomForm<F> hessian_form(const CubicContext<F>& ctx) {
  std::vector<std::vector<HomForm<F>>> H(kVars);
  for (int i = 0; i < kVars; ++i)
    for (int j = 0; j < kVars; ++j) H[i].push_back(ctx.partials()[i].derivative(j));
  return detail::leibniz_determinant(H, HomForm<F>(ctx.field(), 5));
}

template <class F>
struct HessianOnLine {
  BinaryForm<F> quintic;
  bool degenerate = false;
};

template <class F>
HessianOnLine<F> hessian_on_line(const CubicContext<F>& ctx, const ProjLine<F>& l) {
  if (!line_in_cubic(ctx, l)) throw MathError("line_not_in_cubic", "the line is not contained in V");
  std::vector<std::vector<BinaryForm<F>>> H(kVars);
  for (int i = 0; i < kVars; ++i)
    for (int j = 0; j < kVars; ++j) H[i].push_back(restrict_to_line(ctx.partials()[i].derivative(j), l));
  HessianOnLine<F> h;
  h.quintic = detail::leibniz_determinant(H, BinaryForm<F>(ctx.field(), 5));
  h.degenerate = h.quintic.is_zero();
  return h;
}

// ---- plane sections ----

template <class F>
struct PlaneSection {
  HomForm<F> restriction;  // E(a S0 + b S1 + c S2) as a form in y0, y1, y2
  /// Linear factors (coefficients of a, b, c) with multiplicities.
  std::vector<std::pair<Vec<F>, int>> linear_factors;
  std::vector<ProjLine<F>> lines;  // one per distinct linear factor
  HomForm<F> residual;             // product of the factors without linear factors
  std::optional<bool> rare_triangle;
};

namespace detail {

template <class F>
HomForm<F> ternary_linear(const F& field, const Vec<F>& abc) {
  Vec<F> c(kVars, field.zero());
  for (int i = 0; i < 3; ++i) c[i] = abc[i];
  return HomForm<F>::linear(field, c);
}

/// Candidates for linear factors of a ternary form f in y0, y1, y2.
template <class F>
std::vector<Vec<F>> linear_factor_candidates(const HomForm<F>& f) {
  const F& field = f.field();
  std::vector<Vec<F>> cand;
  const auto o = field.one();
  const auto z = field.zero();
  cand.push_back({o, z, z});
  cand.push_back({z, o, z});
  cand.push_back({z, z, o});
  auto e = [&](int i) { return standard_vector(field, i); };
  // y1 - x y0 with f(1, x, 0) = 0
  auto b01 = f.restrict_to_points(e(0), e(1));
  std::vector<typename F::Elem> xs01, xs02, xs12;
  if (!b01.is_zero())
    for (const auto& r : base_points(b01))
      if (!is_zero(r.point[0])) xs01.push_back(r.point[1] / r.point[0]);
  auto b02 = f.restrict_to_points(e(0), e(2));
  if (!b02.is_zero())
    for (const auto& r : base_points(b02))
      if (!is_zero(r.point[0])) xs02.push_back(r.point[1] / r.point[0]);
  auto b12 = f.restrict_to_points(e(1), e(2));
  if (!b12.is_zero())
    for (const auto& r : base_points(b12))
      if (!is_zero(r.point[0])) xs12.push_back(r.point[1] / r.point[0]);
  for (const auto& x : xs01) cand.push_back({-x, o, z});
  // y2 - x y0 - y y1: f(1, 0, x) = 0 and f(0, 1, y) = 0
  for (const auto& x : xs02)
    for (const auto& y : xs12) cand.push_back({-x, -y, o});
  return cand;
}

}  // namespace detail

template <class F>
PlaneSection<F> plane_section(const CubicContext<F>& ctx, const ProjPlane<F>& pi) {
  const F& field = ctx.field();
  Matrix<F> M(field, kVars, kVars);
  for (int i = 0; i < kVars; ++i)
    for (int j = 0; j < 3; ++j) M(i, j) = pi.span()(j, i);
  PlaneSection<F> ps;
  ps.restriction = ctx.cubic().compose(M);
  if (ps.restriction.is_zero()) throw MathError("plane_in_cubic", "V contains the plane");
  HomForm<F> rest = ps.restriction;
  bool progress = true;
  while (progress && rest.degree() > 0) {
    progress = false;
    for (const auto& c : detail::linear_factor_candidates(rest)) {
      auto q = divide_exact(rest, detail::ternary_linear(field, c));
      if (!q) continue;
      rest = *q;
      bool seen = false;
      for (auto& [v, m] : ps.linear_factors)
        if (proportional<F>(v, c)) {
          ++m;
          seen = true;
        }
      if (!seen) ps.linear_factors.emplace_back(c, 1);
      progress = true;
      break;
    }
  }
  ps.residual = rest;
  for (const auto& [c, m] : ps.linear_factors) {
    auto pts = kernel(Matrix<F>::from_rows(field, {c}, 3)).basis();
    std::vector<Vec<F>> img;
    for (const auto& pt : pts) {
      Vec<F> x(kVars, field.zero());
      for (int i = 0; i < kVars; ++i) x[i] = pt[0] * M(i, 0) + pt[1] * M(i, 1) + pt[2] * M(i, 2);
      img.push_back(x);
    }
    ps.lines.push_back(ProjLine<F>::from_points(field, img[0], img[1]));
  }
  if (ps.linear_factors.size() == 3) {
    std::vector<Vec<F>> rows;
    for (const auto& [c, m] : ps.linear_factors) rows.push_back(c);
    ps.rare_triangle = rank(Matrix<F>::from_rows(field, rows, 3)) == 2;
  }
  return ps;
}

}  // namespace fano
