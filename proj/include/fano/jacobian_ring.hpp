#pragma once

// The Jacobian ring R = S/J of a cubic form in five variables, its perfect
// pairings, and the multiplication maps delta(xi): R^1 -> R^4.

#include <array>
#include <vector>

#include "fano/geometry.hpp"
#include "fano/homform.hpp"
#include "fano/linalg.hpp"

namespace fano {

inline constexpr std::array<size_t, 7> kSmoothProfile{1, 5, 10, 10, 5, 1, 0};

template <class F>
class CubicContext {
 public:
  using Elem = typename F::Elem;

  CubicContext() = default;

  explicit CubicContext(const HomForm<F>& E) : field_(E.field()), E_(E) {
    if (E.degree() != 3) throw UsageError("cubic form expected");
    if (E.is_zero()) throw MathError("zero_form", "the cubic form is zero");
    for (int i = 0; i < kVars; ++i) partials_[i] = E.derivative(i);
    for (int k = 0; k <= kMaxRing; ++k) build_degree(k);
    smooth_ = true;
    for (int k = 0; k <= kMaxRing; ++k) smooth_ = smooth_ && basis_[k].size() == kSmoothProfile[k];
    if (smooth_) build_multiplication();
  }

  static constexpr int kMaxRing = 6;

  const F& field() const { return field_; }
  const HomForm<F>& cubic() const { return E_; }
  const std::array<HomForm<F>, kVars>& partials() const { return partials_; }
  bool smooth() const { return smooth_; }

  /// J_k inside S^k (k >= 2), pivots taken from the deglex-last monomial.
  const EchelonSpace<F>& J(int k) const { return J_[k]; }
  /// Monomial indices (into monomials(k)) forming the basis of R^k.
  const std::vector<size_t>& basis(int k) const { return basis_[k]; }
  size_t dim(int k) const { return basis_[k].size(); }
  std::array<size_t, kMaxRing + 1> dims() const {
    std::array<size_t, kMaxRing + 1> d{};
    for (int k = 0; k <= kMaxRing; ++k) d[k] = basis_[k].size();
    return d;
  }

  void require_smooth() const {
    if (!smooth_) throw MathError("singular_cubic", "the cubic is singular");
  }

  /// Coordinates of the class of f in the basis of R^deg(f).
  Vec<F> reduce(const HomForm<F>& f) const { return reduce_vector(f.degree(), f.coeffs()); }

  Vec<F> reduce_vector(int k, Vec<F> v) const {
    if (k >= 2) v = J_[k].reduce(std::move(v));
    Vec<F> c;
    c.reserve(basis_[k].size());
    for (size_t idx : basis_[k]) c.push_back(v[idx]);
    return c;
  }

  /// The normal-form representative with the given R^k coordinates.
  HomForm<F> lift(int k, const Vec<F>& coords) const {
    HomForm<F> f(field_, k);
    for (size_t i = 0; i < coords.size(); ++i) f.coeffs()[basis_[k][i]] = coords[i];
    return f;
  }

  /// Product of classes in R^i and R^j, in R^{i+j} coordinates.
  Vec<F> multiply(int i, const Vec<F>& a, int j, const Vec<F>& b) const {
    return reduce(lift(i, a) * lift(j, b));
  }

  /// Multiplication by the linear form w as a matrix R^j -> R^{j+1}.
  Matrix<F> linear_multiplication(int j, const Vec<F>& w) const {
    require_smooth();
    Matrix<F> m(field_, dim(j + 1), dim(j));
    for (int a = 0; a < kVars; ++a) {
      if (is_zero(w[a])) continue;
      const auto& t = times_var_[j][a];
      for (size_t r = 0; r < m.rows(); ++r)
        for (size_t c = 0; c < m.cols(); ++c) m(r, c) += w[a] * t(r, c);
    }
    return m;
  }

  /// Multiplication by z_a as a matrix R^j -> R^{j+1} (smooth cubics only).
  const Matrix<F>& times_variable(int j, int a) const { return times_var_[j][a]; }

  /// Entries are socle coefficients of products of basis monomials of R^i
  /// and R^{5-i}.
  Matrix<F> pairing_matrix(int i) const {
    require_smooth();
    if (i < 0 || i > 5) throw UsageError("pairing degree must lie in 0..5");
    return pairing_[i];
  }

 private:
  void build_degree(int k) {
    const auto& ms = monomials(k);
    const size_t n = ms.size();
    if (k < 2) {
      basis_[k].resize(n);
      for (size_t i = 0; i < n; ++i) basis_[k][i] = i;
      return;
    }
    std::vector<Vec<F>> gens;
    const auto& mq = monomials(k - 2);
    for (const auto& p : partials_)
      for (const auto& e : mq) gens.push_back((HomForm<F>::monomial(field_, e, field_.one()) * p).coeffs());
    std::vector<size_t> order(n);
    for (size_t i = 0; i < n; ++i) order[i] = n - 1 - i;
    J_[k] = EchelonSpace<F>::span(field_, n, gens, order);
    std::vector<bool> pivot(n, false);
    for (size_t p : J_[k].pivots()) pivot[p] = true;
    for (size_t i = 0; i < n; ++i)
      if (!pivot[i]) basis_[k].push_back(i);
  }

  void build_multiplication() {
    for (int j = 0; j < 5; ++j)
      for (int a = 0; a < kVars; ++a) {
        Matrix<F> m(field_, dim(j + 1), dim(j));
        const auto za = HomForm<F>::variable(field_, a);
        for (size_t c = 0; c < dim(j); ++c) {
          Vec<F> e(dim(j), field_.zero());
          e[c] = field_.one();
          auto img = reduce(za * lift(j, e));
          for (size_t r = 0; r < img.size(); ++r) m(r, c) = img[r];
        }
        times_var_[j][a] = std::move(m);
      }
    for (int i = 0; i <= 5; ++i) {
      Matrix<F> p(field_, dim(i), dim(5 - i));
      for (size_t r = 0; r < dim(i); ++r) {
        Vec<F> a(dim(i), field_.zero());
        a[r] = field_.one();
        for (size_t c = 0; c < dim(5 - i); ++c) {
          Vec<F> b(dim(5 - i), field_.zero());
          b[c] = field_.one();
          p(r, c) = multiply(i, a, 5 - i, b)[0];
        }
      }
      pairing_[i] = std::move(p);
    }
  }

  F field_{};
  HomForm<F> E_;
  std::array<HomForm<F>, kVars> partials_;
  std::array<EchelonSpace<F>, kMaxRing + 1> J_;
  std::array<std::vector<size_t>, kMaxRing + 1> basis_;
  std::array<std::array<Matrix<F>, kVars>, 5> times_var_;
  std::array<Matrix<F>, 6> pairing_;
  bool smooth_ = false;
};

/// V = {E = 0} is smooth iff E and its partials have no common zero, i.e. iff
/// the ideal (E, dE/dz_0, ..., dE/dz_4) contains all of S^7 (for these
/// degrees an Artinian ideal is saturated from degree 7 on). Unlike the
/// Jacobian ring profile this holds in every characteristic, including 3
/// where E need not lie in J.
template <class F>
bool smooth_hypersurface(const HomForm<F>& E) {
  const F& field = E.field();
  std::vector<Vec<F>> gens;
  for (const auto& m : monomials(4)) gens.push_back((HomForm<F>::monomial(field, m, field.one()) * E).coeffs());
  for (int i = 0; i < kVars; ++i) {
    const auto d = E.derivative(i);
    for (const auto& m : monomials(5)) gens.push_back((HomForm<F>::monomial(field, m, field.one()) * d).coeffs());
  }
  return rank(Matrix<F>::from_rows(field, gens, num_monomials(7))) == num_monomials(7);
}

template <class F>
struct XiClass {
  HomForm<F> representative;  // normal form in S^3
  Vec<F> coords;              // coordinates in the R^3 basis
  Matrix<F> delta;            // R^1 -> R^4, columns indexed by z_0..z_4
  size_t rank = 0;
  EchelonSpace<F> K1;  // linear forms w with w xi = 0 in R^4
  EchelonSpace<F> K2;  // in R^2 coordinates
};

template <class F>
XiClass<F> make_xi_from_coords(const CubicContext<F>& ctx, Vec<F> coords) {
  ctx.require_smooth();
  const F& field = ctx.field();
  if (is_zero_vector<F>(coords)) throw MathError("zero_class", "the cubic lies in the Jacobian ideal");
  XiClass<F> xi;
  xi.representative = ctx.lift(3, coords);
  xi.delta = Matrix<F>(field, ctx.dim(4), kVars);
  for (int a = 0; a < kVars; ++a) {
    auto img = ctx.times_variable(3, a).apply(coords);
    for (size_t r = 0; r < img.size(); ++r) xi.delta(r, a) = img[r];
  }
  auto rk = rref_rank_kernel(xi.delta);
  xi.rank = rk.rank;
  xi.K1 = std::move(rk.kernel);
  const auto& P2 = ctx.pairing_matrix(2);
  Matrix<F> row(field, 1, ctx.dim(2));
  auto pv = P2.apply(coords);
  for (size_t c = 0; c < pv.size(); ++c) row(0, c) = pv[c];
  xi.K2 = kernel(row);
  xi.coords = std::move(coords);
  return xi;
}

template <class F>
XiClass<F> make_xi(const CubicContext<F>& ctx, const HomForm<F>& f) {
  if (f.degree() != 3) throw UsageError("xi must be a cubic form");
  return make_xi_from_coords(ctx, ctx.reduce(f));
}

template <class F>
struct QuadricRank {
  Matrix<F> matrix;  // q(z_a, z_b) = socle coefficient of z_a z_b xi
  size_t rank = 0;
  bool in_xi2 = false;
};

template <class F>
QuadricRank<F> xi_quadric_rank(const CubicContext<F>& ctx, const XiClass<F>& xi) {
  ctx.require_smooth();
  QuadricRank<F> q;
  q.matrix = Matrix<F>(ctx.field(), kVars, kVars);
  for (int b = 0; b < kVars; ++b) {
    auto zb_xi = xi.delta.col(b);
    for (int a = 0; a < kVars; ++a) q.matrix(a, b) = ctx.times_variable(4, a).apply(zb_xi)[0];
  }
  q.rank = rank(q.matrix);
  q.in_xi2 = q.rank <= 2;
  return q;
}

/// The line cut out by K_1(xi) when that kernel is three-dimensional.
template <class F>
ProjLine<F> sigma_line_of_xi(const CubicContext<F>& ctx, const XiClass<F>& xi) {
  if (xi.K1.dim() != 3) throw MathError("kernel_dimension", "K1(xi) is not three-dimensional");
  auto pts = kernel(xi.K1.rows()).basis();
  return ProjLine<F>::from_points(ctx.field(), pts[0], pts[1]);
}

/// Span of W(r) R^1 inside R^2, in R^2 coordinates.
template <class F>
EchelonSpace<F> w_times_r1(const CubicContext<F>& ctx, const ProjLine<F>& l) {
  std::vector<Vec<F>> vs;
  auto W = l.annihilator_forms();
  for (const auto& w : W.basis()) {
    auto m = ctx.linear_multiplication(1, w);
    for (int a = 0; a < kVars; ++a) vs.push_back(m.col(a));
  }
  return EchelonSpace<F>::span(ctx.field(), ctx.dim(2), vs);
}

/// The class xi, unique up to scale, with K_1(xi) = W(r); first nonzero
/// coordinate normalized to one.
template <class F>
XiClass<F> xi_of_line(const CubicContext<F>& ctx, const ProjLine<F>& l) {
  ctx.require_smooth();
  auto wr = w_times_r1(ctx, l);
  if (wr.dim() != ctx.dim(2) - 1) throw MathError("not_in_sigma", "W(r) R^1 is not a hyperplane of R^2");
  auto cond = wr.rows() * ctx.pairing_matrix(2);
  auto k = kernel(cond);
  if (k.dim() != 1) throw MathError("not_in_sigma", "annihilator of W(r) R^1 is not one-dimensional");
  auto x = k.basis_vector(0);
  normalize_leading(ctx.field(), x);
  return make_xi_from_coords(ctx, std::move(x));
}

}  // namespace fano
