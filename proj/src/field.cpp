#include "fano/field.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <mutex>
#include <sstream>
#include <tuple>

#include "fano/gf_impl.hpp"

namespace fano {

namespace {

using U32 = uint32_t;
using U64 = uint64_t;
using Poly = std::vector<U32>;  // coefficients over F_p, low to high

bool is_prime(U64 n) {
  if (n < 2) return false;
  for (U64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<U64> prime_factors(U64 n) {
  std::vector<U64> out;
  for (U64 d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

U32 inv_mod(U32 a, U32 p) {
  long long t = 0, nt = 1, r = p, nr = a;
  while (nr != 0) {
    long long qt = r / nr;
    std::tie(t, nt) = std::make_tuple(nt, t - qt * nt);
    std::tie(r, nr) = std::make_tuple(nr, r - qt * nr);
  }
  if (t < 0) t += p;
  return static_cast<U32>(t);
}

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// a mod m over F_p; m monic.
Poly poly_mod(Poly a, const Poly& m, U32 p) {
  trim(a);
  const size_t dm = m.size() - 1;
  while (a.size() > dm && !a.empty()) {
    U32 lead = a.back();
    size_t shift = a.size() - 1 - dm;
    for (size_t i = 0; i <= dm; ++i) {
      U64 sub = static_cast<U64>(lead) * m[i] % p;
      a[shift + i] = static_cast<U32>((a[shift + i] + p - sub) % p);
    }
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, U32 p) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j)
      c[i + j] = static_cast<U32>((c[i + j] + static_cast<U64>(a[i]) * b[j]) % p);
  }
  return poly_mod(std::move(c), m, p);
}

Poly poly_powmod(Poly base, U64 e, const Poly& m, U32 p) {
  Poly result{1};
  base = poly_mod(std::move(base), m, p);
  while (e > 0) {
    if (e & 1) result = poly_mulmod(result, base, m, p);
    base = poly_mulmod(base, base, m, p);
    e >>= 1;
  }
  return result;
}

Poly poly_gcd(Poly a, Poly b, U32 p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    U32 li = inv_mod(b.back(), p);
    Poly bm = b;
    for (auto& c : bm) c = static_cast<U32>(static_cast<U64>(c) * li % p);
    a = poly_mod(std::move(a), bm, p);
    std::swap(a, b);
  }
  return a;
}

// x^(p^e) mod m.
Poly frobenius_power(U64 e, const Poly& m, U32 p) {
  Poly x{0, 1};
  Poly r = poly_mod(x, m, p);
  for (U64 i = 0; i < e; ++i) r = poly_powmod(r, p, m, p);
  return r;
}

bool is_irreducible(const Poly& f, U32 p) {
  const U64 k = f.size() - 1;
  if (k == 1) return true;
  Poly x{0, 1};
  // x^(p^k) == x mod f
  Poly xk = frobenius_power(k, f, p);
  Poly diff = xk;
  diff.resize(std::max<size_t>(diff.size(), 2), 0);
  diff[1] = (diff[1] + p - 1) % p;
  trim(diff);
  if (!diff.empty()) return false;
  for (U64 r : prime_factors(k)) {
    Poly xr = frobenius_power(k / r, f, p);
    xr.resize(std::max<size_t>(xr.size(), 2), 0);
    xr[1] = (xr[1] + p - 1) % p;
    trim(xr);
    Poly g = poly_gcd(f, xr, p);
    if (g.size() != 1) return false;
  }
  return true;
}

// Lexicographically smallest monic irreducible of degree k, comparing the
// coefficient sequence from x^{k-1} down to x^0.
Poly smallest_irreducible(U32 p, U32 k) {
  U64 total = 1;
  for (U32 i = 0; i < k; ++i) total *= p;
  for (U64 n = 0; n < total; ++n) {
    Poly f(k + 1, 0);
    f[k] = 1;
    U64 m = n;
    for (U32 i = 0; i < k; ++i) {
      f[i] = static_cast<U32>(m % p);
      m /= p;
    }
    if (k > 1 && f[0] == 0) continue;
    if (is_irreducible(f, p)) return f;
  }
  throw MathError("no_irreducible", "no irreducible polynomial found");
}

std::mutex& registry_mutex() {
  static std::mutex m;
  return m;
}

std::map<std::pair<U32, U32>, std::unique_ptr<detail::GfImpl>>& registry() {
  static std::map<std::pair<U32, U32>, std::unique_ptr<detail::GfImpl>> r;
  return r;
}

std::unique_ptr<detail::GfImpl> build_field(U32 p, U32 k) {
  auto f = std::make_unique<detail::GfImpl>();
  f->p = p;
  f->k = k;
  U64 q = 1;
  for (U32 i = 0; i < k; ++i) {
    f->pow_p.push_back(static_cast<U32>(q));
    q *= p;
  }
  if (q >= (1ull << 31)) throw UsageError("field order too large");
  f->q = static_cast<U32>(q);
  f->modulus = smallest_irreducible(p, k);

  if (k == 1) {
    if (f->q <= detail::GfImpl::kMulTableMax) {
      f->mul_table.resize(static_cast<size_t>(q) * q);
      for (U32 a = 0; a < q; ++a)
        for (U32 b = 0; b < q; ++b) f->mul_table[a * q + b] = static_cast<U32>(static_cast<U64>(a) * b % p);
    }
    if (f->q <= detail::GfImpl::kLogTableMax) {
      f->inv_table.assign(q, 0);
      for (U32 a = 1; a < q; ++a) f->inv_table[a] = inv_mod(a, p);
    }
    return f;
  }

  if (f->q <= detail::GfImpl::kLogTableMax) {
    // Smallest-code generator of the multiplicative group.
    const U64 order = q - 1;
    const auto factors = prime_factors(order);
    U32 gen = 0;
    for (U32 g = 2; g < q; ++g) {
      bool ok = true;
      for (U64 r : factors) {
        U64 e = order / r;
        // pow via poly arithmetic (tables not built yet)
        U32 acc = 1, base = g;
        while (e > 0) {
          if (e & 1) acc = f->mul_poly(acc, base);
          base = f->mul_poly(base, base);
          e >>= 1;
        }
        if (acc == 1) {
          ok = false;
          break;
        }
      }
      if (ok) {
        gen = g;
        break;
      }
    }
    f->log_table.assign(q, 0);
    f->exp_table.assign(2 * order, 0);
    U32 x = 1;
    for (U64 i = 0; i < order; ++i) {
      f->exp_table[i] = x;
      f->exp_table[i + order] = x;
      f->log_table[x] = static_cast<U32>(i);
      x = f->mul_poly(x, gen);
    }
  }
  return f;
}

const detail::GfImpl* checked(const Gf& a, const Gf& b) {
  if (a.field() != b.field() || a.field() == nullptr)
    throw MathError("mixed_fields", "arithmetic on elements of different fields");
  return a.field();
}

}  // namespace

namespace detail {

std::vector<uint32_t> GfImpl::digits(uint32_t code) const {
  std::vector<uint32_t> d(k);
  for (uint32_t i = 0; i < k; ++i) {
    d[i] = code % p;
    code /= p;
  }
  return d;
}

uint32_t GfImpl::from_digits(const std::vector<uint32_t>& d) const {
  uint32_t c = 0;
  for (uint32_t i = 0; i < k; ++i) c += d[i] * pow_p[i];
  return c;
}

uint32_t GfImpl::add_ext(uint32_t a, uint32_t b) const {
  uint32_t c = 0;
  for (uint32_t i = 0; i < k; ++i) {
    uint32_t s = a % p + b % p;
    if (s >= p) s -= p;
    c += s * pow_p[i];
    a /= p;
    b /= p;
  }
  return c;
}

uint32_t GfImpl::neg_ext(uint32_t a) const {
  uint32_t c = 0;
  for (uint32_t i = 0; i < k; ++i) {
    uint32_t d = a % p;
    c += (d == 0 ? 0 : p - d) * pow_p[i];
    a /= p;
  }
  return c;
}

uint32_t GfImpl::mul_poly(uint32_t a, uint32_t b) const {
  auto da = digits(a), db = digits(b);
  std::vector<U64> c(2 * k - 1, 0);
  for (uint32_t i = 0; i < k; ++i)
    for (uint32_t j = 0; j < k; ++j) c[i + j] = (c[i + j] + static_cast<U64>(da[i]) * db[j]) % p;
  for (size_t i = c.size(); i-- > k;) {
    U64 lead = c[i];
    if (lead == 0) continue;
    for (uint32_t j = 0; j <= k; ++j) {
      size_t idx = i - k + j;
      c[idx] = (c[idx] + static_cast<U64>(p - 1) * lead % p * modulus[j]) % p;
    }
  }
  std::vector<uint32_t> r(k);
  for (uint32_t i = 0; i < k; ++i) r[i] = static_cast<uint32_t>(c[i]);
  return from_digits(r);
}

uint32_t GfImpl::pow(uint32_t a, uint64_t e) const {
  uint32_t acc = 1;
  while (e > 0) {
    if (e & 1) acc = mul(acc, a);
    a = mul(a, a);
    e >>= 1;
  }
  return acc;
}

uint32_t GfImpl::inv(uint32_t a) const {
  if (a == 0) throw MathError("division_by_zero", "inverse of zero");
  if (k == 1) return inv_table.empty() ? inv_mod(a, p) : inv_table[a];
  if (!log_table.empty()) return exp_table[(q - 1) - log_table[a]];
  return pow(a, q - 2);
}

}  // namespace detail

// ---- Gf ----

Gf operator+(const Gf& a, const Gf& b) { return Gf(checked(a, b)->add(a.code_, b.code_), a.field_); }
Gf operator-(const Gf& a, const Gf& b) { return Gf(checked(a, b)->sub(a.code_, b.code_), a.field_); }
Gf operator*(const Gf& a, const Gf& b) { return Gf(checked(a, b)->mul(a.code_, b.code_), a.field_); }
Gf operator/(const Gf& a, const Gf& b) {
  auto f = checked(a, b);
  return Gf(f->mul(a.code_, f->inv(b.code_)), a.field_);
}
Gf operator-(const Gf& a) { return Gf(a.field_->neg(a.code_), a.field_); }

std::string to_string(const Gf& x) {
  if (x.field() == nullptr || x.field()->k == 1) return std::to_string(x.code());
  std::string out;
  auto d = x.field()->digits(x.code());
  for (size_t i = 0; i < d.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(d[i]);
  }
  return out;
}

std::string to_string(const mpq_class& x) { return x.get_str(); }

mpq_class parse_rational(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  auto valid_int = [](std::string_view t) {
    size_t i = 0;
    if (!t.empty() && (t[0] == '-' || t[0] == '+')) i = 1;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
  };
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
    throw UsageError("malformed rational '" + std::string(text) + "'");
  if (num[0] == '+') num = num.substr(1);
  mpz_class n(num), d(den);
  if (d == 0) throw UsageError("zero denominator in '" + std::string(text) + "'");
  mpq_class r(n, d);
  r.canonicalize();
  return r;
}

// ---- FieldSpec ----

std::string FieldSpec::to_string() const {
  if (p == 0) return "0";
  if (k == 1) return std::to_string(p);
  return std::to_string(p) + "^" + std::to_string(k);
}

FieldSpec FieldSpec::parse(std::string_view text, bool allow_small) {
  FieldSpec spec;
  spec.allow_small_characteristic = allow_small;
  auto parse_uint = [&](std::string_view t) {
    uint32_t v = 0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size() || t.empty())
      throw UsageError("malformed field spec '" + std::string(text) + "'");
    return v;
  };
  auto caret = text.find('^');
  spec.p = parse_uint(text.substr(0, caret));
  spec.k = caret == std::string_view::npos ? 1 : parse_uint(text.substr(caret + 1));
  if (spec.p == 0) {
    if (spec.k != 1) throw UsageError("field 0 (rationals) takes no extension degree");
    return spec;
  }
  if (!is_prime(spec.p)) throw UsageError("field characteristic " + std::to_string(spec.p) + " is not prime");
  if (spec.k == 0) throw UsageError("extension degree must be >= 1");
  return spec;
}

// ---- GaloisField ----

GaloisField GaloisField::get(uint32_t p, uint32_t k, bool allow_small_char) {
  if (!is_prime(p)) throw UsageError("characteristic " + std::to_string(p) + " is not prime");
  if (k == 0) throw UsageError("extension degree must be >= 1");
  if ((p == 2 || p == 3) && !allow_small_char)
    throw UsageError("characteristic 2 and 3 are rejected without override");
  std::lock_guard<std::mutex> lock(registry_mutex());
  auto& reg = registry();
  auto key = std::make_pair(p, k);
  auto it = reg.find(key);
  if (it == reg.end()) it = reg.emplace(key, build_field(p, k)).first;
  return GaloisField(it->second.get());
}

int GaloisField::characteristic() const { return static_cast<int>(impl_->p); }
uint32_t GaloisField::degree() const { return impl_->k; }
uint32_t GaloisField::order() const { return impl_->q; }
const std::vector<uint32_t>& GaloisField::modulus() const { return impl_->modulus; }

Gf GaloisField::from_code(uint32_t code) const {
  if (code >= impl_->q) throw UsageError("field code out of range");
  return Gf(code, impl_);
}

Gf GaloisField::from_int(long long v) const {
  long long p = impl_->p;
  long long r = v % p;
  if (r < 0) r += p;
  return Gf(static_cast<uint32_t>(r), impl_);
}

Gf GaloisField::from_rational(const mpq_class& v) const {
  mpz_class p(impl_->p);
  mpz_class num = v.get_num() % p;
  mpz_class den = v.get_den() % p;
  if (num < 0) num += p;
  if (den == 0) throw MathError("division_by_characteristic", "denominator divisible by the characteristic");
  uint32_t n = static_cast<uint32_t>(num.get_ui());
  uint32_t d = static_cast<uint32_t>(den.get_ui());
  return Gf(impl_->mul(n, impl_->inv(d)), impl_);
}

Gf GaloisField::random(std::mt19937_64& rng) const { return Gf(static_cast<uint32_t>(rng() % impl_->q), impl_); }

Gf GaloisField::pow(Gf x, uint64_t e) const { return Gf(impl_->pow(x.code(), e), impl_); }

Gf GaloisField::parse(std::string_view text) const {
  if (text.find(',') == std::string_view::npos) return from_rational(parse_rational(text));
  std::vector<uint32_t> d;
  std::string s(text);
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    mpq_class c = parse_rational(item);
    if (c.get_den() != 1) throw UsageError("extension coefficients must be integers");
    d.push_back(GaloisField::get(impl_->p, 1, true).from_rational(c).code());
  }
  if (d.size() != impl_->k)
    throw UsageError("expected " + std::to_string(impl_->k) + " extension coefficients, got '" + s + "'");
  return Gf(impl_->from_digits(d), impl_);
}

std::string GaloisField::format(const Gf& x) const { return to_string(x); }

GaloisField GaloisField::extension(uint32_t m) const {
  return GaloisField::get(impl_->p, impl_->k * m, true);
}

namespace {

std::shared_ptr<const detail::Embedding> embedding_for(const detail::GfImpl* small, const detail::GfImpl* big) {
  if (small->p != big->p || big->k % small->k != 0)
    throw MathError("no_embedding", "target field does not contain the source field");
  std::lock_guard<std::mutex> lock(small->embed_mutex);
  auto it = small->embeddings.find(big);
  if (it != small->embeddings.end()) return it->second;

  auto emb = std::make_shared<detail::Embedding>();
  uint32_t beta = 0;
  if (small->k == 1) {
    beta = 0;  // unused: prime-field codes embed as constants
  } else {
    bool found = false;
    for (uint32_t c = 1; c < big->q && !found; ++c) {
      // evaluate modulus at c by Horner
      uint32_t acc = 0;
      for (size_t i = small->modulus.size(); i-- > 0;) acc = big->add(big->mul(acc, c), small->modulus[i]);
      if (acc == 0) {
        beta = c;
        found = true;
      }
    }
    if (!found) throw MathError("no_embedding", "modulus has no root in the target field");
  }
  emb->basis_image.resize(small->k);
  uint32_t power = 1;
  for (uint32_t i = 0; i < small->k; ++i) {
    emb->basis_image[i] = power;
    if (small->k > 1) power = big->mul(power, beta);
  }
  if (small->q <= (1u << 20)) {
    emb->forward.resize(small->q);
    for (uint32_t c = 0; c < small->q; ++c) {
      auto d = small->digits(c);
      uint32_t img = 0;
      for (uint32_t i = 0; i < small->k; ++i) img = big->add(img, big->mul(d[i], emb->basis_image[i]));
      emb->forward[c] = img;
      emb->backward[img] = c;
    }
  }
  small->embeddings.emplace(big, emb);
  return emb;
}

}  // namespace

Gf GaloisField::embed(const Gf& x, const GaloisField& big) const {
  if (big.impl_ == impl_) return x;
  auto emb = embedding_for(impl_, big.impl_);
  if (!emb->forward.empty()) return Gf(emb->forward[x.code()], big.impl_);
  auto d = impl_->digits(x.code());
  uint32_t img = 0;
  for (uint32_t i = 0; i < impl_->k; ++i)
    img = big.impl_->add(img, big.impl_->mul(d[i], emb->basis_image[i]));
  return Gf(img, big.impl_);
}

Gf GaloisField::restrict_from(const Gf& x, const GaloisField& big) const {
  if (big.impl_ == impl_) return x;
  auto emb = embedding_for(impl_, big.impl_);
  auto it = emb->backward.find(x.code());
  if (it == emb->backward.end()) throw MathError("not_in_subfield", "element is not in the embedded subfield");
  return Gf(it->second, impl_);
}

bool GaloisField::in_subfield(const Gf& x, uint32_t j) const {
  uint64_t pj = 1;
  for (uint32_t i = 0; i < j; ++i) pj *= impl_->p;
  return impl_->pow(x.code(), pj) == x.code();
}

// ---- RationalField ----

mpq_class RationalField::random(std::mt19937_64& rng, long bound) const {
  long span = 2 * bound + 1;
  return mpq_class(static_cast<long>(rng() % static_cast<uint64_t>(span)) - bound);
}

mpq_class RationalField::pow(mpq_class x, uint64_t e) const {
  mpq_class acc(1);
  while (e > 0) {
    if (e & 1) acc *= x;
    x *= x;
    e >>= 1;
  }
  return acc;
}

mpq_class RationalField::parse(std::string_view text) const {
  if (text.find(',') != std::string_view::npos) throw UsageError("extension coefficients over Q");
  return parse_rational(text);
}

std::string RationalField::format(const mpq_class& x) const { return x.get_str(); }

}  // namespace fano
