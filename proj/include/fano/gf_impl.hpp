#pragma once

// Raw-code arithmetic for F_{p^k}. Exposed so that hot enumeration loops can
// work on uint32 codes without carrying field pointers.

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

namespace fano::detail {

struct Embedding {
  // image[i] = code of beta^i in the big field, where beta is the chosen root
  // of the small field's modulus.
  std::vector<uint32_t> basis_image;
  // Full lookup tables when the small field is tiny enough.
  std::vector<uint32_t> forward;
  std::map<uint32_t, uint32_t> backward;
};

struct GfImpl {
  uint32_t p = 0;
  uint32_t k = 1;
  uint32_t q = 0;
  std::vector<uint32_t> modulus;  // monic, low to high, length k + 1

  // Prime fields with q <= kMulTableMax keep a full multiplication table.
  std::vector<uint32_t> mul_table;
  std::vector<uint32_t> inv_table;
  // Extension fields with q <= kLogTableMax keep discrete log tables.
  std::vector<uint32_t> log_table;  // log_table[code], code != 0
  std::vector<uint32_t> exp_table;  // exp_table[i], i < 2(q-1)
  std::vector<uint32_t> pow_p;      // p^i

  mutable std::mutex embed_mutex;
  mutable std::map<const GfImpl*, std::shared_ptr<const Embedding>> embeddings;

  static constexpr uint32_t kMulTableMax = 128;
  static constexpr uint32_t kLogTableMax = 1u << 22;

  uint32_t add(uint32_t a, uint32_t b) const {
    if (k == 1) {
      uint32_t s = a + b;
      return s >= p ? s - p : s;
    }
    return add_ext(a, b);
  }
  uint32_t neg(uint32_t a) const {
    if (k == 1) return a == 0 ? 0 : p - a;
    return neg_ext(a);
  }
  uint32_t sub(uint32_t a, uint32_t b) const { return add(a, neg(b)); }
  uint32_t mul(uint32_t a, uint32_t b) const {
    if (k == 1) {
      if (!mul_table.empty()) return mul_table[a * q + b];
      return static_cast<uint32_t>(static_cast<uint64_t>(a) * b % p);
    }
    if (a == 0 || b == 0) return 0;
    if (!log_table.empty()) return exp_table[log_table[a] + log_table[b]];
    return mul_poly(a, b);
  }
  uint32_t inv(uint32_t a) const;  // a != 0
  uint32_t pow(uint32_t a, uint64_t e) const;

  uint32_t add_ext(uint32_t a, uint32_t b) const;
  uint32_t neg_ext(uint32_t a) const;
  uint32_t mul_poly(uint32_t a, uint32_t b) const;

  std::vector<uint32_t> digits(uint32_t code) const;
  uint32_t from_digits(const std::vector<uint32_t>& d) const;
};

}  // namespace fano::detail
