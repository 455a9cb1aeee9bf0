#include "fano/census.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <sstream>
#include <thread>

#include "fano/gf_impl.hpp"

namespace fano {

uint64_t line_count(uint64_t q) {
  const uint64_t q2 = q * q, q3 = q2 * q, q4 = q3 * q, q5 = q4 * q;
  return (q5 - 1) * (q4 - 1) / ((q2 - 1) * (q - 1));
}

namespace {

uint64_t ipow(uint64_t b, int e) {
  uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

int free_entries(int i, int j) { return (3 - i) + (4 - j); }

}  // namespace

LineEnumerator::LineEnumerator(const GaloisField& field, uint32_t cap) : field_(field) {
  if (field.order() > cap)
    throw UsageError("line census over a field of order " + std::to_string(field.order()) + " exceeds the cap " +
                     std::to_string(cap));
  const uint64_t q = field.order();
  offset_[0] = 0;
  for (int k = 0; k < 10; ++k) offset_[k + 1] = offset_[k] + ipow(q, free_entries(kPairs[k][0], kPairs[k][1]));
  total_ = offset_[10];
}

void LineEnumerator::rows(uint64_t index, std::array<uint32_t, 5>& p, std::array<uint32_t, 5>& q) const {
  const uint64_t order = field_.order();
  int k = 0;
  while (index >= offset_[k + 1]) ++k;
  uint64_t x = index - offset_[k];
  const int i = kPairs[k][0], j = kPairs[k][1];
  p.fill(0);
  q.fill(0);
  p[i] = 1;
  q[j] = 1;
  for (int c = i + 1; c < kVars; ++c) {
    if (c == j) continue;
    p[c] = static_cast<uint32_t>(x % order);
    x /= order;
  }
  for (int c = j + 1; c < kVars; ++c) {
    q[c] = static_cast<uint32_t>(x % order);
    x /= order;
  }
}

GfLine LineEnumerator::line(uint64_t index) const {
  std::array<uint32_t, 5> p, q;
  rows(index, p, q);
  Matrix<GaloisField> m(field_, 2, kVars);
  for (int c = 0; c < kVars; ++c) {
    m(0, c) = field_.from_code(p[c]);
    m(1, c) = field_.from_code(q[c]);
  }
  return GfLine::from_rref(std::move(m));
}

uint64_t LineEnumerator::index_of(const GfLine& l) const {
  const auto& m = l.span();
  int i = 0, j = 0;
  while (is_zero(m(0, i))) ++i;
  while (is_zero(m(1, j))) ++j;
  const int k = pair_index(i, j);
  const uint64_t order = field_.order();
  uint64_t x = 0, scale = 1;
  for (int c = i + 1; c < kVars; ++c) {
    if (c == j) continue;
    x += scale * m(0, c).code();
    scale *= order;
  }
  for (int c = j + 1; c < kVars; ++c) {
    x += scale * m(1, c).code();
    scale *= order;
  }
  return offset_[k] + x;
}

void CensusConfig::set_tasks(const std::string& list) {
  lines = sigma = double_lines = eckardt = points = false;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "lines")
      lines = true;
    else if (item == "sigma")
      sigma = true;
    else if (item == "double")
      double_lines = true;
    else if (item == "eckardt")
      eckardt = true;
    else if (item == "points")
      points = true;
    else if (!item.empty())
      throw UsageError("unknown census task '" + item + "'");
  }
}

// ---- the per-line kernel ----

LineKernel::LineKernel(const HomForm<GaloisField>& E) : f_(E.field().impl()) {
  auto collect = [](const HomForm<GaloisField>& g) {
    std::vector<Term> out;
    const auto& ms = monomials(g.degree());
    for (size_t i = 0; i < ms.size(); ++i) {
      if (is_zero(g.coeffs()[i])) continue;
      Term t{g.coeffs()[i].code(), {}};
      for (int v = 0; v < kVars; ++v) t.exp[v] = static_cast<uint8_t>(ms[i][v]);
      out.push_back(t);
    }
    return out;
  };
  cubic_ = collect(E);
  for (int i = 0; i < kVars; ++i) partials_[i] = collect(E.derivative(i));
  half_ = f_->inv(f_->add(1, 1));
}

uint32_t LineKernel::eval(const std::vector<Term>& terms, const std::array<uint32_t, 5>& x) const {
  std::array<std::array<uint32_t, 4>, 5> pw;
  for (int v = 0; v < kVars; ++v) {
    pw[v][0] = 1;
    for (int e = 1; e < 4; ++e) pw[v][e] = f_->mul(pw[v][e - 1], x[v]);
  }
  uint32_t acc = 0;
  for (const auto& t : terms) {
    uint32_t m = t.coeff;
    for (int v = 0; v < kVars; ++v)
      if (t.exp[v]) m = f_->mul(m, pw[v][t.exp[v]]);
    acc = f_->add(acc, m);
  }
  return acc;
}

std::array<uint32_t, 4> LineKernel::restriction(const std::array<uint32_t, 5>& p,
                                                const std::array<uint32_t, 5>& q) const {
  std::array<uint32_t, 5> sum, diff;
  for (int v = 0; v < kVars; ++v) {
    sum[v] = f_->add(p[v], q[v]);
    diff[v] = f_->sub(p[v], q[v]);
  }
  const uint32_t c0 = eval(cubic_, p), c3 = eval(cubic_, q);
  // E(P+Q) = c0 + c1 + c2 + c3 and E(P-Q) = c0 - c1 + c2 - c3
  const uint32_t a = f_->sub(f_->sub(eval(cubic_, sum), c0), c3);
  const uint32_t b = f_->add(f_->sub(eval(cubic_, diff), c0), c3);
  return {c0, f_->mul(f_->sub(a, b), half_), f_->mul(f_->add(a, b), half_), c3};
}

FastLineClass LineKernel::classify(const std::array<uint32_t, 5>& p, const std::array<uint32_t, 5>& q) const {
  FastLineClass out;
  std::array<uint32_t, 5> sum, diff;
  for (int v = 0; v < kVars; ++v) {
    sum[v] = f_->add(p[v], q[v]);
    diff[v] = f_->sub(p[v], q[v]);
  }
  // a binary cubic vanishing at four distinct points of P^1 is zero
  out.in_V = eval(cubic_, p) == 0 && eval(cubic_, q) == 0 && eval(cubic_, sum) == 0 && eval(cubic_, diff) == 0;
  std::array<std::array<uint32_t, 3>, 5> m;
  for (int i = 0; i < kVars; ++i) {
    const uint32_t a = eval(partials_[i], p), c = eval(partials_[i], q);
    m[i] = {a, f_->sub(f_->sub(eval(partials_[i], sum), a), c), c};
  }
  size_t r = 0;
  for (int col = 0; col < 3 && r < 5; ++col) {
    size_t piv = r;
    while (piv < 5 && m[piv][col] == 0) ++piv;
    if (piv == 5) continue;
    std::swap(m[r], m[piv]);
    const uint32_t inv = f_->inv(m[r][col]);
    for (size_t i = r + 1; i < 5; ++i) {
      if (m[i][col] == 0) continue;
      const uint32_t factor = f_->mul(m[i][col], inv);
      for (int c = col; c < 3; ++c) m[i][c] = f_->sub(m[i][c], f_->mul(factor, m[r][c]));
    }
    ++r;
  }
  out.partial_rank = r;
  return out;
}

// ---- census ----

namespace {

struct ChunkResult {
  uint64_t scanned = 0, on_V = 0, sigma = 0, sigma_in_F = 0, witness = 0, triple = 0, unresolved = 0;
  bool agree = true;
  std::vector<uint64_t> doubles, sigmas;
  std::vector<uint64_t> per_ext;
};

ChunkResult scan_chunk(const CubicContext<GaloisField>& ctx, const LineEnumerator& en, const LineKernel& kernel,
                       const CensusConfig& cfg, uint64_t begin, uint64_t end) {
  ChunkResult r;
  r.per_ext.assign(cfg.tower, 0);
  const GaloisField& field = ctx.field();
  const bool need_rank = cfg.sigma || cfg.double_lines;
  std::array<uint32_t, 5> p, q;
  for (uint64_t idx = begin; idx < end; ++idx) {
    en.rows(idx, p, q);
    ++r.scanned;
    auto c = kernel.classify(p, q);
    if (c.in_V) ++r.on_V;
    if (need_rank && c.second_type()) {
      ++r.sigma;
      if (cfg.keep_lists && cfg.sigma) r.sigmas.push_back(idx);
      if (c.in_V) ++r.sigma_in_F;
      if (!c.in_V && cfg.sigma && cfg.tower > 0) {
        auto raw = kernel.restriction(p, q);
        BinaryForm<GaloisField> b(field, Vec<GaloisField>{field.from_code(raw[0]), field.from_code(raw[1]),
                                                            field.from_code(raw[2]), field.from_code(raw[3])});
        auto roots = binary_roots(b, cfg.tower);
        for (const auto& root : roots.roots) ++r.per_ext[root.ext_degree - 1];
        r.unresolved += static_cast<uint64_t>(roots.unresolved.degree());
      }
    }
    if (cfg.double_lines && c.in_V) {
      auto l = en.line(idx);
      auto w = tangent_plane_witness(ctx, l);
      if (w) {
        ++r.witness;
        if (w->triple) ++r.triple;
        r.doubles.push_back(idx);
      }
      if (w.has_value() != c.second_type()) r.agree = false;
    }
  }
  return r;
}

/// In characteristic 2 and 3 the Jacobian ring profile does not detect
/// smoothness, so the ideal test decides there.
void require_smooth_variety(const CubicContext<GaloisField>& ctx) {
  if (ctx.field().characteristic() > 3) {
    ctx.require_smooth();
  } else if (!smooth_hypersurface(ctx.cubic())) {
    throw MathError("singular_cubic", "the cubic is singular");
  }
}

}  // namespace

std::vector<GfVec> all_points(const GaloisField& field) {
  std::vector<GfVec> pts;
  const uint64_t q = field.order();
  for (int lead = 0; lead < kVars; ++lead) {
    const uint64_t count = ipow(q, kVars - 1 - lead);
    for (uint64_t c = 0; c < count; ++c) {
      GfVec v(kVars, field.zero());
      v[lead] = field.one();
      uint64_t x = c;
      for (int i = lead + 1; i < kVars; ++i) {
        v[i] = field.from_code(static_cast<uint32_t>(x % q));
        x /= q;
      }
      pts.push_back(std::move(v));
    }
  }
  return pts;
}

std::vector<GfVec> eckardt_census(const CubicContext<GaloisField>& ctx) {
  require_smooth_variety(ctx);
  std::vector<GfVec> out;
  for (auto& p : all_points(ctx.field())) {
    if (!is_zero(ctx.cubic().evaluate(p))) continue;
    if (eckardt_test(ctx, p).eckardt) out.push_back(std::move(p));
  }
  std::sort(out.begin(), out.end(), [](const GfVec& a, const GfVec& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                        [](const Gf& x, const Gf& y) { return x.code() < y.code(); });
  });
  return out;
}

CensusReport census_run(const CubicContext<GaloisField>& ctx, const CensusConfig& cfg,
                        const std::function<void(double)>& progress) {
  require_smooth_variety(ctx);
  const auto start = std::chrono::steady_clock::now();
  const GaloisField& field = ctx.field();
  CensusReport rep;
  {
    FieldSpec spec;
    spec.p = static_cast<uint32_t>(field.characteristic());
    spec.k = field.degree();
    rep.field = spec.to_string();
  }
  rep.ran_lines = cfg.lines;
  rep.ran_sigma = cfg.sigma;
  rep.ran_double = cfg.double_lines;
  rep.ran_eckardt = cfg.eckardt;
  rep.ran_points = cfg.points;
  rep.per_extension.assign(cfg.sigma ? cfg.tower : 0, 0);

  if (cfg.lines || cfg.sigma || cfg.double_lines) {
    LineEnumerator en(field, cfg.cap);
    LineKernel kernel(ctx.cubic());
    const uint64_t chunk = std::max<uint64_t>(cfg.chunk, 1);
    const uint64_t nchunks = (en.size() + chunk - 1) / chunk;
    std::vector<ChunkResult> results(nchunks);
    std::atomic<uint64_t> next{0}, done{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
      for (;;) {
        const uint64_t c = next.fetch_add(1);
        if (c >= nchunks) return;
        try {
          results[c] = scan_chunk(ctx, en, kernel, cfg, c * chunk, std::min(en.size(), (c + 1) * chunk));
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = nchunks;
          return;
        }
        const uint64_t d = done.fetch_add(1) + 1;
        if (progress && (d % 64 == 0 || d == nchunks)) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          progress(static_cast<double>(d) / static_cast<double>(nchunks));
        }
      }
    };
    const size_t nworkers = std::max<size_t>(cfg.workers, 1);
    if (nworkers == 1) {
      work();
    } else {
      std::vector<std::thread> threads;
      for (size_t i = 0; i < nworkers; ++i) threads.emplace_back(work);
      for (auto& t : threads) t.join();
    }
    if (failure) std::rethrow_exception(failure);
    for (const auto& r : results) {
      rep.lines_scanned += r.scanned;
      rep.lines_on_V += r.on_V;
      rep.sigma += r.sigma;
      rep.sigma_in_F += r.sigma_in_F;
      rep.double_witness += r.witness;
      rep.triple += r.triple;
      rep.sigma_unresolved += r.unresolved;
      rep.double_agree = rep.double_agree && r.agree;
      rep.double_lines.insert(rep.double_lines.end(), r.doubles.begin(), r.doubles.end());
      rep.sigma_lines.insert(rep.sigma_lines.end(), r.sigmas.begin(), r.sigmas.end());
      for (size_t k = 0; k < rep.per_extension.size(); ++k) rep.per_extension[k] += r.per_ext[k];
    }
    std::sort(rep.double_lines.begin(), rep.double_lines.end());
    std::sort(rep.sigma_lines.begin(), rep.sigma_lines.end());
    if (!cfg.keep_lists) rep.double_lines.clear();
  }
  if (cfg.eckardt) {
    rep.eckardt_points = eckardt_census(ctx);
    rep.eckardt = rep.eckardt_points.size();
  }
  if (cfg.points) {
    for (const auto& p : all_points(field))
      if (is_zero(ctx.cubic().evaluate(p))) ++rep.points_on_V;
  }
  if (!cfg.keep_lists) rep.eckardt_points.clear();
  if (cfg.timing)
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

// ---- reconstruction ----

Reconstruction reconstruct(const std::vector<GfLine>& lines, const GaloisField& field,
                           const HomForm<GaloisField>* source) {
  if (lines.empty()) throw MathError("empty_input", "reconstruction needs at least one line");
  const auto& ms = monomials(3);
  std::vector<GfVec> rows;
  for (const auto& l : lines) {
    std::vector<GfVec> pts{l.point(1)};
    for (uint32_t c = 0; c < field.order(); ++c) pts.push_back(l.point_at(field.one(), field.from_code(c)));
    for (const auto& x : pts) {
      GfVec row;
      row.reserve(ms.size());
      for (const auto& e : ms) row.push_back(HomForm<GaloisField>::monomial(field, e, field.one()).evaluate(x));
      rows.push_back(std::move(row));
    }
  }
  Reconstruction r;
  r.points = rows.size();
  auto k = kernel(Matrix<GaloisField>::from_rows(field, rows, ms.size()));
  r.kernel_dim = k.dim();
  for (const auto& v : k.basis()) r.kernel.emplace_back(field, 3, v);
  if (source) {
    r.contains_source = k.contains(source->coeffs());
    r.proportional_to_source = r.kernel_dim == 1 && proportional<GaloisField>(r.kernel[0].coeffs(), source->coeffs());
  }
  return r;
}

// ---- dPhi ----

std::optional<NormalShape> normal_shape(const HomForm<GaloisField>& E) {
  const GaloisField& field = E.field();
  if (E.degree() != 3) return std::nullopt;
  NormalShape s{HomForm<GaloisField>(field, 2), HomForm<GaloisField>(field, 2), field.zero()};
  const Exponent top{0, 0, 2, 1, 0};
  const auto& ms = monomials(3);
  for (size_t i = 0; i < ms.size(); ++i) {
    const Gf c = E.coeffs()[i];
    if (is_zero(c)) continue;
    Exponent e = ms[i];
    if (e[0] > 0) {
      --e[0];
      s.Q0.set_coeff(e, c);
    } else if (e[1] > 0) {
      --e[1];
      s.Q1.set_coeff(e, c);
    } else if (e == top) {
      s.c = c;
    } else {
      return std::nullopt;
    }
  }
  if (is_zero(s.c)) return std::nullopt;
  return s;
}

namespace {

/// The part of a form not involving z0 and z1.
HomForm<GaloisField> drop_z01(const HomForm<GaloisField>& f) {
  HomForm<GaloisField> g(f.field(), f.degree());
  const auto& ms = monomials(f.degree());
  for (size_t i = 0; i < ms.size(); ++i)
    if (ms[i][0] == 0 && ms[i][1] == 0) g.coeffs()[i] = f.coeffs()[i];
  return g;
}

}  // namespace

DphiResult dphi_rank(const CubicContext<GaloisField>& ctx, bool require_smooth) {
  const auto& E = ctx.cubic();
  const GaloisField& field = ctx.field();
  auto shape = normal_shape(E);
  if (!shape) throw MathError("not_normalized", "the cubic is not of the form z0 Q0 + z1 Q1 + c z2^2 z3");
  if (require_smooth) ctx.require_smooth();
  using H = HomForm<GaloisField>;
  auto z = [&](int i) { return H::variable(field, i); };
  const H c(field, 0, Vec<GaloisField>{shape->c});
  std::vector<GfVec> image;
  for (int a = 0; a < kVars; ++a) {
    image.push_back((z(a) * shape->Q0).coeffs());                          // L0
    image.push_back((z(a) * shape->Q1).coeffs());                          // L1
    image.push_back((c * z(2) * z(3) * z(a) * H(field, 0, Vec<GaloisField>{field.from_int(2)})).coeffs());  // L2
    image.push_back((c * z(2) * z(2) * z(a)).coeffs());                    // L3
  }
  for (const auto& e : monomials(2)) {
    auto m = H::monomial(field, e, field.one());
    image.push_back((z(0) * m).coeffs());  // A0
    image.push_back((z(1) * m).coeffs());  // A1
  }
  DphiResult r;
  r.rank = EchelonSpace<GaloisField>::span(field, num_monomials(3), image).dim();

  const H C0 = drop_z01(shape->Q0), C1 = drop_z01(shape->Q1), z22 = z(2) * z(2), z23 = z(2) * z(3);
  // common zeros of C0, C1, z2^2 lie on z2 = 0: a common root of two binary quadrics in (z3, z4)
  auto binary = [&](const H& q) {
    return GfVec{q.coeff({0, 0, 0, 2, 0}), q.coeff({0, 0, 0, 1, 1}), q.coeff({0, 0, 0, 0, 2})};
  };
  r.claim_a = !is_zero(detail::quadric_resultant<GaloisField>(binary(C0), binary(C1)));
  const size_t n2 = num_monomials(2);
  const size_t base = EchelonSpace<GaloisField>::span(field, n2, {C0.coeffs(), C1.coeffs(), z22.coeffs()}).dim();
  const size_t with =
      EchelonSpace<GaloisField>::span(field, n2, {C0.coeffs(), C1.coeffs(), z22.coeffs(), z23.coeffs()}).dim();
  r.claim_b = with == base + 1;
  std::vector<GfVec> deg3;
  for (int a = 2; a < kVars; ++a)
    for (const auto& g : {C0, C1, z22}) deg3.push_back((z(a) * g).coeffs());
  r.r_i_top_dim = 10 - EchelonSpace<GaloisField>::span(field, num_monomials(3), deg3).dim();
  return r;
}

// ---- normalization ----

NormalizedCubic normalize_double_line(const CubicContext<GaloisField>& ctx, const GfLine& l) {
  const GaloisField& field = ctx.field();
  auto w = tangent_plane_witness(ctx, l);
  if (!w) throw MathError("not_double", "the line is of the first type");
  if (w->triple) throw MathError("triple_line", "the residual line equals the line");
  const GfLine& res = w->residual;
  std::vector<GfVec> forms = l.annihilator_forms().basis();
  for (const auto& f : res.annihilator_forms().basis()) forms.push_back(f);
  auto meet = kernel(Matrix<GaloisField>::from_rows(field, forms, kVars));
  if (meet.dim() != 1) throw std::logic_error("line and residual do not meet in a point");
  const GfVec X = meet.basis_vector(0);
  auto other = [&](const GfLine& m) { return proportional<GaloisField>(m.point(0), X) ? m.point(1) : m.point(0); };
  auto B = complete_to_basis(field, {other(res), other(l), X});
  Matrix<GaloisField> M(field, kVars, kVars);
  const int order[kVars] = {3, 4, 0, 1, 2};
  for (int j = 0; j < kVars; ++j)
    for (int i = 0; i < kVars; ++i) M(i, j) = B(i, order[j]);
  NormalizedCubic out{ctx.cubic().compose(M), M};
  if (!normal_shape(out.cubic)) throw std::logic_error("normalized cubic is not of the expected shape");
  return out;
}

}  // namespace fano
