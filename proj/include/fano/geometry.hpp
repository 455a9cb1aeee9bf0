#pragma once

// Lines and planes in P^4 in canonical (reduced row-echelon) form.

#include <array>
#include <string>

#include "fano/homform.hpp"
#include "fano/linalg.hpp"

namespace fano {

/// Index of the Pluecker coordinate p_ij (i < j) in the order
/// (0,1),(0,2),(0,3),(0,4),(1,2),(1,3),(1,4),(2,3),(2,4),(3,4).
inline constexpr std::array<std::array<int, 2>, 10> kPairs{
    {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}}};

inline int pair_index(int i, int j) {
  for (int k = 0; k < 10; ++k)
    if (kPairs[k][0] == i && kPairs[k][1] == j) return k;
  return -1;
}

/// Exterior product of two vectors of length 5, in kPairs order.
template <class F>
Vec<F> wedge(const Vec<F>& a, const Vec<F>& b) {
  Vec<F> w;
  w.reserve(10);
  for (const auto& [i, j] : kPairs) w.push_back(a[i] * b[j] - a[j] * b[i]);
  return w;
}

template <class F>
class ProjLine {
 public:
  ProjLine() = default;

  /// Line through two points; throws if they are dependent.
  static ProjLine from_points(const F& field, const Vec<F>& a, const Vec<F>& b) {
    auto m = Matrix<F>::from_rows(field, {a, b}, kVars);
    auto piv = rref_in_place(m);
    if (piv.size() != 2) throw MathError("degenerate_line", "points do not span a line");
    return from_rref(std::move(m));
  }

  /// Inverse of pluecker(); throws if p is zero or not decomposable.
  static ProjLine from_pluecker(const F& field, const Vec<F>& p) {
    if (p.size() != 10) throw UsageError("expected 10 Pluecker coordinates");
    auto coord = [&](int i, int j) {
      if (i == j) return field.zero();
      return i < j ? p[pair_index(i, j)] : -p[pair_index(j, i)];
    };
    for (int k = 0; k < 10; ++k) {
      if (is_zero(p[k])) continue;
      const int i = kPairs[k][0], j = kPairs[k][1];
      Vec<F> u, v;
      for (int c = 0; c < kVars; ++c) {
        u.push_back(coord(i, c));
        v.push_back(coord(j, c));
      }
      ProjLine l = from_points(field, u, v);
      if (!proportional<F>(l.pluecker_, p)) throw MathError("not_decomposable", "Pluecker relations fail");
      return l;
    }
    throw MathError("degenerate_line", "zero Pluecker vector");
  }

  /// `m` must already be a 2x5 reduced echelon matrix.
  static ProjLine from_rref(Matrix<F> m) {
    ProjLine l;
    l.field_ = m.field();
    l.span_ = std::move(m);
    l.pluecker_ = wedge<F>(l.span_.row(0), l.span_.row(1));
    normalize_leading(l.field_, l.pluecker_);
    return l;
  }

  const F& field() const { return field_; }
  const Matrix<F>& span() const { return span_; }
  const Vec<F>& pluecker() const { return pluecker_; }
  Vec<F> point(int i) const { return span_.row(i); }
  /// s P + t Q for the canonical spanning rows P, Q.
  Vec<F> point_at(const typename F::Elem& s, const typename F::Elem& t) const {
    Vec<F> v(kVars, field_.zero());
    for (int c = 0; c < kVars; ++c) v[c] = s * span_(0, c) + t * span_(1, c);
    return v;
  }

  bool contains_point(const Vec<F>& x) const {
    auto m = Matrix<F>::from_rows(field_, {span_.row(0), span_.row(1), x}, kVars);
    return rank(m) == 2;
  }

  /// The three-dimensional space of linear forms vanishing on the line.
  EchelonSpace<F> annihilator_forms() const { return kernel(span_); }

  friend bool operator==(const ProjLine& a, const ProjLine& b) { return a.span_ == b.span_; }
  friend bool operator!=(const ProjLine& a, const ProjLine& b) { return !(a == b); }

 private:
  F field_{};
  Matrix<F> span_;
  Vec<F> pluecker_;
};

template <class F>
class ProjPlane {
 public:
  ProjPlane() = default;

  static ProjPlane from_points(const F& field, const std::vector<Vec<F>>& pts) {
    auto m = Matrix<F>::from_rows(field, pts, kVars);
    if (rref_in_place(m).size() != 3) throw MathError("degenerate_plane", "points do not span a plane");
    ProjPlane p;
    p.field_ = field;
    p.span_ = std::move(m);
    p.dual_ = kernel(p.span_).rows();
    return p;
  }

  /// Plane cut out by two independent linear forms.
  static ProjPlane from_forms(const F& field, const Vec<F>& h1, const Vec<F>& h2) {
    auto forms = Matrix<F>::from_rows(field, {h1, h2}, kVars);
    auto k = kernel(forms);
    if (k.dim() != 3) throw MathError("degenerate_plane", "forms do not cut a plane");
    return from_points(field, k.basis());
  }

  const F& field() const { return field_; }
  const Matrix<F>& span() const { return span_; }
  /// Two linear forms cutting the plane, in reduced echelon form.
  const Matrix<F>& dual() const { return dual_; }

  bool contains_point(const Vec<F>& x) const {
    for (size_t i = 0; i < 2; ++i) {
      typename F::Elem acc = field_.zero();
      for (int c = 0; c < kVars; ++c) acc += dual_(i, c) * x[c];
      if (!is_zero(acc)) return false;
    }
    return true;
  }

  bool contains_line(const ProjLine<F>& l) const { return contains_point(l.point(0)) && contains_point(l.point(1)); }

  friend bool operator==(const ProjPlane& a, const ProjPlane& b) { return a.span_ == b.span_; }
  friend bool operator!=(const ProjPlane& a, const ProjPlane& b) { return !(a == b); }

 private:
  F field_{};
  Matrix<F> span_;
  Matrix<F> dual_;
};

/// f(s P + t Q) for the canonical spanning points of l.
template <class F>
BinaryForm<F> restrict_to_line(const HomForm<F>& f, const ProjLine<F>& l) {
  return f.restrict_to_points(l.point(0), l.point(1));
}

template <class F>
Vec<F> standard_vector(const F& field, int i) {
  Vec<F> v(kVars, field.zero());
  v[i] = field.one();
  return v;
}

/// Square matrix whose first columns are the given independent vectors,
/// completed by the first standard vectors that keep it invertible.
template <class F>
Matrix<F> complete_to_basis(const F& field, const std::vector<Vec<F>>& cols) {
  std::vector<Vec<F>> chosen = cols;
  for (int i = 0; i < kVars && chosen.size() < static_cast<size_t>(kVars); ++i) {
    auto trial = chosen;
    trial.push_back(standard_vector(field, i));
    if (rank(Matrix<F>::from_rows(field, trial, kVars)) == trial.size()) chosen = std::move(trial);
  }
  if (chosen.size() != static_cast<size_t>(kVars)) throw MathError("dependent_vectors", "cannot complete to a basis");
  return Matrix<F>::from_rows(field, chosen, kVars).transpose();
}

}  // namespace fano
