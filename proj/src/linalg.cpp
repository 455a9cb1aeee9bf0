#include "fano/linalg.hpp"

namespace fano {

namespace {

using IntRow = std::vector<mpz_class>;

void make_primitive(IntRow& row) {
  mpz_class g = 0;
  for (const auto& x : row) {
    if (sgn(x) == 0) continue;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 1) return;
  }
  if (g > 1)
    for (auto& x : row)
      if (sgn(x) != 0) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

}  // namespace

std::vector<size_t> rref_rational(Matrix<RationalField>& m, std::span<const size_t> order) {
  const size_t n = m.cols();
  std::vector<size_t> cols_order(order.begin(), order.end());
  if (cols_order.empty()) {
    cols_order.resize(n);
    std::iota(cols_order.begin(), cols_order.end(), size_t{0});
  }

  std::vector<IntRow> rows;
  rows.reserve(m.rows());
  for (size_t i = 0; i < m.rows(); ++i) {
    mpz_class den = 1;
    for (size_t j = 0; j < n; ++j) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), m(i, j).get_den_mpz_t());
    IntRow row(n);
    bool nonzero = false;
    for (size_t j = 0; j < n; ++j) {
      row[j] = m(i, j).get_num() * (den / m(i, j).get_den());
      nonzero = nonzero || sgn(row[j]) != 0;
    }
    if (!nonzero) continue;
    make_primitive(row);
    rows.push_back(std::move(row));
  }

  std::vector<size_t> pivots;
  size_t r = 0;
  mpz_class g, a, b;
  for (size_t c : cols_order) {
    if (r == rows.size()) break;
    // Smallest pivot entry keeps the integers short.
    size_t piv = rows.size();
    for (size_t i = r; i < rows.size(); ++i)
      if (sgn(rows[i][c]) != 0 && (piv == rows.size() || mpz_sizeinbase(rows[i][c].get_mpz_t(), 2) <
                                                            mpz_sizeinbase(rows[piv][c].get_mpz_t(), 2)))
        piv = i;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[r]);
    const IntRow& pr = rows[r];
    for (size_t i = 0; i < rows.size(); ++i) {
      if (i == r || sgn(rows[i][c]) == 0) continue;
      mpz_gcd(g.get_mpz_t(), pr[c].get_mpz_t(), rows[i][c].get_mpz_t());
      mpz_divexact(a.get_mpz_t(), pr[c].get_mpz_t(), g.get_mpz_t());
      mpz_divexact(b.get_mpz_t(), rows[i][c].get_mpz_t(), g.get_mpz_t());
      IntRow& row = rows[i];
      for (size_t j = 0; j < n; ++j) {
        if (sgn(row[j]) != 0) row[j] *= a;
        if (sgn(pr[j]) != 0) row[j] -= b * pr[j];
      }
      make_primitive(row);
    }
    pivots.push_back(c);
    ++r;
  }

  Matrix<RationalField> out(m.field(), r, n);
  for (size_t i = 0; i < r; ++i) {
    const mpz_class& p = rows[i][pivots[i]];
    for (size_t j = 0; j < n; ++j) {
      if (sgn(rows[i][j]) == 0) continue;
      out(i, j) = mpq_class(rows[i][j], p);
      out(i, j).canonicalize();
    }
  }
  m = std::move(out);
  return pivots;
}

}  // namespace fano
