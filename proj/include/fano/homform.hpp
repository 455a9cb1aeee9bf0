#pragma once

// Dense homogeneous forms in z0..z4 and binary forms in (s, t).

#include <array>
#include <optional>
#include <vector>

#include "fano/field.hpp"
#include "fano/linalg.hpp"
#include "fano/monomials.hpp"

namespace fano {

/// b(s, t) = sum_i c_i s^(d-i) t^i.
template <class F>
class BinaryForm {
 public:
  using Elem = typename F::Elem;

  BinaryForm() = default;
  BinaryForm(const F& field, int degree) : field_(field), coeffs_(degree + 1, field.zero()) {}
  BinaryForm(const F& field, Vec<F> coeffs) : field_(field), coeffs_(std::move(coeffs)) {}

  /// a s + b t
  static BinaryForm linear(const F& field, const Elem& a, const Elem& b) { return BinaryForm(field, Vec<F>{a, b}); }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const Vec<F>& coeffs() const { return coeffs_; }
  Elem& operator[](size_t i) { return coeffs_[i]; }
  const Elem& operator[](size_t i) const { return coeffs_[i]; }
  const F& field() const { return field_; }

  bool is_zero() const { return is_zero_vector<F>(coeffs_); }

  Elem evaluate(const Elem& s, const Elem& t) const {
    Elem acc = field_.zero();
    Elem tpow = field_.one();
    std::vector<Elem> spow(coeffs_.size(), field_.one());
    for (size_t i = 1; i < coeffs_.size(); ++i) spow[i] = spow[i - 1] * s;
    const size_t d = coeffs_.size() - 1;
    for (size_t i = 0; i <= d; ++i) {
      acc += coeffs_[i] * spow[d - i] * tpow;
      tpow = tpow * t;
    }
    return acc;
  }

  friend BinaryForm operator*(const BinaryForm& a, const BinaryForm& b) {
    BinaryForm c(a.field_, a.degree() + b.degree());
    for (size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (fano::is_zero(a.coeffs_[i])) continue;
      for (size_t j = 0; j < b.coeffs_.size(); ++j) c.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return c;
  }
  friend BinaryForm operator+(BinaryForm a, const BinaryForm& b) {
    for (size_t i = 0; i < a.coeffs_.size(); ++i) a.coeffs_[i] += b.coeffs_[i];
    return a;
  }
  friend BinaryForm operator-(BinaryForm a, const BinaryForm& b) {
    for (size_t i = 0; i < a.coeffs_.size(); ++i) a.coeffs_[i] -= b.coeffs_[i];
    return a;
  }
  BinaryForm scaled(const Elem& c) const {
    BinaryForm r = *this;
    for (auto& x : r.coeffs_) x = x * c;
    return r;
  }
  friend bool operator==(const BinaryForm& a, const BinaryForm& b) { return a.coeffs_ == b.coeffs_; }

 private:
  F field_{};
  Vec<F> coeffs_;
};

template <class F>
class HomForm {
 public:
  using Elem = typename F::Elem;

  HomForm() = default;
  HomForm(const F& field, int degree) : field_(field), degree_(degree), coeffs_(num_monomials(degree), field.zero()) {}
  HomForm(const F& field, int degree, Vec<F> coeffs) : field_(field), degree_(degree), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != num_monomials(degree)) throw UsageError("coefficient count does not match degree");
  }

  static HomForm variable(const F& field, int i) {
    HomForm f(field, 1);
    f.coeffs_[i] = field.one();
    return f;
  }
  static HomForm monomial(const F& field, const Exponent& e, const Elem& c) {
    HomForm f(field, exponent_degree(e));
    f.coeffs_[monomial_index(e)] = c;
    return f;
  }
  static HomForm linear(const F& field, const Vec<F>& coeffs) { return HomForm(field, 1, coeffs); }

  int degree() const { return degree_; }
  const Vec<F>& coeffs() const { return coeffs_; }
  Vec<F>& coeffs() { return coeffs_; }
  const F& field() const { return field_; }
  Elem coeff(const Exponent& e) const { return coeffs_[monomial_index(e)]; }
  void set_coeff(const Exponent& e, const Elem& c) { coeffs_[monomial_index(e)] = c; }
  bool is_zero() const { return is_zero_vector<F>(coeffs_); }

  friend HomForm operator+(HomForm a, const HomForm& b) {
    for (size_t i = 0; i < a.coeffs_.size(); ++i) a.coeffs_[i] += b.coeffs_[i];
    return a;
  }
  friend HomForm operator-(HomForm a, const HomForm& b) {
    for (size_t i = 0; i < a.coeffs_.size(); ++i) a.coeffs_[i] -= b.coeffs_[i];
    return a;
  }
  HomForm scaled(const Elem& c) const {
    HomForm r = *this;
    for (auto& x : r.coeffs_) x = x * c;
    return r;
  }

  friend HomForm operator*(const HomForm& a, const HomForm& b) {
    HomForm c(a.field_, a.degree_ + b.degree_);
    const auto& ma = monomials(a.degree_);
    const auto& mb = monomials(b.degree_);
    for (size_t i = 0; i < ma.size(); ++i) {
      if (fano::is_zero(a.coeffs_[i])) continue;
      for (size_t j = 0; j < mb.size(); ++j) {
        if (fano::is_zero(b.coeffs_[j])) continue;
        c.coeffs_[monomial_index(add_exponents(ma[i], mb[j]))] += a.coeffs_[i] * b.coeffs_[j];
      }
    }
    return c;
  }

  friend bool operator==(const HomForm& a, const HomForm& b) {
    return a.degree_ == b.degree_ && a.coeffs_ == b.coeffs_;
  }
  friend bool operator!=(const HomForm& a, const HomForm& b) { return !(a == b); }

  HomForm derivative(int var) const {
    if (degree_ == 0) return HomForm(field_, 0);
    HomForm d(field_, degree_ - 1);
    const auto& ms = monomials(degree_);
    for (size_t i = 0; i < ms.size(); ++i) {
      if (ms[i][var] == 0 || fano::is_zero(coeffs_[i])) continue;
      Exponent e = ms[i];
      Elem mult = field_.from_int(e[var]);
      --e[var];
      d.coeffs_[monomial_index(e)] += coeffs_[i] * mult;
    }
    return d;
  }

  Elem evaluate(const Vec<F>& x) const {
    std::array<std::vector<Elem>, kVars> pw;
    for (int v = 0; v < kVars; ++v) {
      pw[v].assign(degree_ + 1, field_.one());
      for (int e = 1; e <= degree_; ++e) pw[v][e] = pw[v][e - 1] * x[v];
    }
    Elem acc = field_.zero();
    const auto& ms = monomials(degree_);
    for (size_t i = 0; i < ms.size(); ++i) {
      if (fano::is_zero(coeffs_[i])) continue;
      Elem term = coeffs_[i];
      for (int v = 0; v < kVars; ++v)
        if (ms[i][v]) term = term * pw[v][ms[i][v]];
      acc += term;
    }
    return acc;
  }

  Vec<F> gradient(const Vec<F>& x) const {
    Vec<F> g;
    for (int i = 0; i < kVars; ++i) g.push_back(derivative(i).evaluate(x));
    return g;
  }

  /// f(s P + t Q).
  BinaryForm<F> restrict_to_points(const Vec<F>& P, const Vec<F>& Q) const {
    std::array<std::vector<BinaryForm<F>>, kVars> pw;
    for (int v = 0; v < kVars; ++v) {
      pw[v].push_back(BinaryForm<F>(field_, Vec<F>{field_.one()}));
      auto lin = BinaryForm<F>::linear(field_, P[v], Q[v]);
      for (int e = 1; e <= degree_; ++e) pw[v].push_back(pw[v].back() * lin);
    }
    BinaryForm<F> out(field_, degree_);
    const auto& ms = monomials(degree_);
    for (size_t i = 0; i < ms.size(); ++i) {
      if (fano::is_zero(coeffs_[i])) continue;
      BinaryForm<F> term(field_, Vec<F>{coeffs_[i]});
      for (int v = 0; v < kVars; ++v)
        if (ms[i][v]) term = term * pw[v][ms[i][v]];
      out = out + term;
    }
    return out;
  }

  /// g(y) = f(M y), i.e. z_i -> sum_j M(i, j) y_j. No invertibility check.
  HomForm compose(const Matrix<F>& M) const {
    std::array<std::vector<HomForm>, kVars> pw;
    for (int v = 0; v < kVars; ++v) {
      Vec<F> lin(kVars, field_.zero());
      for (int j = 0; j < kVars; ++j) lin[j] = M(v, j);
      pw[v].push_back(HomForm(field_, 0, Vec<F>{field_.one()}));
      HomForm l = linear(field_, lin);
      for (int e = 1; e <= degree_; ++e) pw[v].push_back(pw[v].back() * l);
    }
    HomForm out(field_, degree_);
    const auto& ms = monomials(degree_);
    for (size_t i = 0; i < ms.size(); ++i) {
      if (fano::is_zero(coeffs_[i])) continue;
      HomForm term(field_, 0, Vec<F>{coeffs_[i]});
      for (int v = 0; v < kVars; ++v)
        if (ms[i][v]) term = term * pw[v][ms[i][v]];
      out = out + term;
    }
    return out;
  }

  /// Coefficient-wise image under a field map (e.g. an embedding into an extension).
  template <class G, class Map>
  HomForm<G> map_field(const G& target, Map&& map) const {
    Vec<G> c;
    c.reserve(coeffs_.size());
    for (const auto& x : coeffs_) c.push_back(map(x));
    return HomForm<G>(target, degree_, std::move(c));
  }

 private:
  F field_{};
  int degree_ = 0;
  Vec<F> coeffs_;
};

/// f(M z) for invertible M; throws MathError("singular_matrix") otherwise.
template <class F>
HomForm<F> substitute_linear(const HomForm<F>& f, const Matrix<F>& M) {
  if (M.rows() != kVars || M.cols() != kVars) throw UsageError("substitution matrix must be 5x5");
  if (is_zero(determinant(M))) throw MathError("singular_matrix", "substitution matrix is singular");
  return f.compose(M);
}

/// Exact quotient f / g when g divides f, by solving the linear system h g = f.
template <class F>
std::optional<HomForm<F>> divide_exact(const HomForm<F>& f, const HomForm<F>& g) {
  const F& field = f.field();
  const int dq = f.degree() - g.degree();
  if (dq < 0) return std::nullopt;
  const size_t nq = num_monomials(dq), nf = num_monomials(f.degree());
  // columns: coefficients of h; rows: monomials of f; augmented with f
  Matrix<F> sys(field, nf, nq + 1);
  const auto& mq = monomials(dq);
  for (size_t j = 0; j < nq; ++j) {
    HomForm<F> prod = HomForm<F>::monomial(field, mq[j], field.one()) * g;
    for (size_t i = 0; i < nf; ++i) sys(i, j) = prod.coeffs()[i];
  }
  for (size_t i = 0; i < nf; ++i) sys(i, nq) = f.coeffs()[i];
  auto pivots = rref_in_place(sys);
  if (!pivots.empty() && pivots.back() == nq) return std::nullopt;
  Vec<F> h(nq, field.zero());
  for (size_t r = 0; r < pivots.size(); ++r) h[pivots[r]] = sys(r, nq);
  return HomForm<F>(field, dq, std::move(h));
}

template <class F>
HomForm<F> fermat_cubic(const F& field) {
  HomForm<F> f(field, 3);
  for (int i = 0; i < kVars; ++i) {
    Exponent e{};
    e[i] = 3;
    f.set_coeff(e, field.one());
  }
  return f;
}

}  // namespace fano
