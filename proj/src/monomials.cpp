#include "fano/monomials.hpp"

#include <stdexcept>

#include "fano/errors.hpp"

namespace fano {

namespace {

struct Tables {
  std::array<std::vector<Exponent>, kMaxDegree + 1> lists;
  std::array<std::vector<int>, kMaxDegree + 1> index;  // keyed by base-(d+1) code

  static size_t key(const Exponent& e, int d) {
    size_t k = 0;
    for (int i = kVars - 1; i >= 0; --i) k = k * (d + 1) + e[i];
    return k;
  }

  Tables() {
    for (int d = 0; d <= kMaxDegree; ++d) {
      auto& list = lists[d];
      // Descending lex: e0 from d down to 0, then e1 from what remains, ...
      Exponent e{};
      for (int a = d; a >= 0; --a)
        for (int b = d - a; b >= 0; --b)
          for (int c = d - a - b; c >= 0; --c)
            for (int g = d - a - b - c; g >= 0; --g) {
              e = {static_cast<uint8_t>(a), static_cast<uint8_t>(b), static_cast<uint8_t>(c),
                   static_cast<uint8_t>(g), static_cast<uint8_t>(d - a - b - c - g)};
              list.push_back(e);
            }
      size_t size = 1;
      for (int i = 0; i < kVars; ++i) size *= (d + 1);
      index[d].assign(size, -1);
      for (size_t i = 0; i < list.size(); ++i) index[d][key(list[i], d)] = static_cast<int>(i);
    }
  }
};

const Tables& tables() {
  static const Tables t;
  return t;
}

}  // namespace

const std::vector<Exponent>& monomials(int degree) {
  if (degree < 0 || degree > kMaxDegree) throw UsageError("monomial degree out of range");
  return tables().lists[degree];
}

int exponent_degree(const Exponent& e) {
  int d = 0;
  for (auto x : e) d += x;
  return d;
}

size_t monomial_index(const Exponent& e) {
  int d = exponent_degree(e);
  if (d > kMaxDegree) throw UsageError("monomial degree out of range");
  return static_cast<size_t>(tables().index[d][Tables::key(e, d)]);
}

size_t num_monomials(int degree) { return monomials(degree).size(); }

Exponent add_exponents(const Exponent& a, const Exponent& b) {
  Exponent c;
  for (int i = 0; i < kVars; ++i) c[i] = static_cast<uint8_t>(a[i] + b[i]);
  return c;
}

}  // namespace fano
