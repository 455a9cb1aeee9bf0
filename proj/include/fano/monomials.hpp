#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace fano {

inline constexpr int kVars = 5;
inline constexpr int kMaxDegree = 8;

using Exponent = std::array<uint8_t, kVars>;

/// Monomials of degree d in z0..z4, in deglex order: exponent tuples
/// compared lexicographically, descending. Degree 3 starts
/// z0^3, z0^2 z1, z0^2 z2, z0^2 z3, z0^2 z4, z0 z1^2, ...
const std::vector<Exponent>& monomials(int degree);

/// Position of `e` in monomials(sum of e).
size_t monomial_index(const Exponent& e);

/// C(d + 4, 4).
size_t num_monomials(int degree);

int exponent_degree(const Exponent& e);

Exponent add_exponents(const Exponent& a, const Exponent& b);

}  // namespace fano
