#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "fano/census.hpp"
#include "support.hpp"

using namespace fano;
using namespace fano::testing;

namespace {

std::vector<uint32_t> codes(const GfLine& l) {
  std::vector<uint32_t> c;
  for (size_t i = 0; i < 2; ++i)
    for (int j = 0; j < 5; ++j) c.push_back(l.span()(i, j).code());
  return c;
}

Matrix<GaloisField> random_invertible(const GaloisField& F, std::mt19937_64& rng) {
  for (;;) {
    Matrix<GaloisField> M(F, 5, 5);
    for (size_t i = 0; i < 5; ++i)
      for (size_t j = 0; j < 5; ++j) M(i, j) = F.random(rng);
    if (!is_zero(determinant(M))) return M;
  }
}

CensusConfig all_line_tasks() {
  CensusConfig c;
  c.set_tasks("lines,sigma,double");
  return c;
}

}  // namespace

TEST_CASE("line enumeration") {
  CHECK(line_count(2) == 155);
  CHECK(line_count(3) == 1210);
  CHECK(line_count(5) == 20306);
  for (uint32_t p : {2u, 3u, 5u}) {
    auto F = GaloisField::get(p, 1, true);
    LineEnumerator en(F);
    CHECK(en.size() == line_count(p));
    std::set<std::vector<uint32_t>> seen;
    for (uint64_t i = 0; i < en.size(); ++i) {
      auto l = en.line(i);
      CHECK(en.index_of(l) == i);
      seen.insert(codes(l));
      if (p < 5) CHECK(GfLine::from_pluecker(F, l.pluecker()) == l);
    }
    CHECK(seen.size() == en.size());
  }
  CHECK_THROWS_AS(LineEnumerator(GaloisField::get(17)), UsageError);
  CHECK(LineEnumerator(GaloisField::get(2, 2, true)).size() == line_count(4));
}

TEST_CASE("fast kernel agrees with the generic classification") {
  auto F5 = GaloisField::get(5);
  std::mt19937_64 rng(1);
  CubicContext<GaloisField> ctx(random_smooth_cubic(F5, rng));
  LineEnumerator en(F5);
  LineKernel kernel(ctx.cubic());
  std::array<uint32_t, 5> p, q;
  size_t mismatches = 0;
  for (uint64_t i = 0; i < en.size(); ++i) {
    en.rows(i, p, q);
    auto l = en.line(i);
    auto fast = kernel.classify(p, q);
    auto b = restrict_to_line(ctx.cubic(), l);
    auto raw = kernel.restriction(p, q);
    for (int k = 0; k < 4; ++k) mismatches += b[k].code() != raw[k] ? 1 : 0;
    mismatches += fast.in_V != b.is_zero() ? 1 : 0;
    mismatches += fast.partial_rank != rank(restricted_partials(ctx, l)) ? 1 : 0;
  }
  CHECK(mismatches == 0);
}

TEST_CASE("Fermat census over F7") {
  auto F7 = GaloisField::get(7);
  CubicContext<GaloisField> ctx(fermat_cubic(F7));
  auto cfg = all_line_tasks();
  auto rep = census_run(ctx, cfg);
  CHECK(rep.lines_scanned == line_count(7));
  CHECK(rep.sigma > 0);
  CHECK(rep.double_agree);
  CHECK(rep.double_witness == rep.sigma_in_F);
  CHECK(rep.double_witness <= rep.lines_on_V);
  CHECK(rep.sigma_in_F <= rep.sigma);
  LineEnumerator en(F7);
  for (uint64_t idx : rep.sigma_lines) {
    auto l = en.line(idx);
    CHECK(rank(restricted_partials(ctx, l)) == 2);
    CHECK(w_times_r1(ctx, l).dim() == 9);
    CHECK(dual_map_image(ctx, l).is_line);
  }
  for (uint64_t idx : rep.double_lines) CHECK(classify_line(ctx, en.line(idx)).is_double);

  // every rational line of the Fermat cubic lies on an Eckardt cone and is
  // of the second type
  CHECK(rep.lines_on_V == 135);
  CHECK(rep.sigma_in_F == rep.lines_on_V);
}

TEST_CASE("first-type lines of V have no tangent plane") {
  auto F7 = GaloisField::get(7);
  std::mt19937_64 rng(3);
  CubicContext<GaloisField> ctx(random_smooth_cubic(F7, rng));
  LineEnumerator en(F7);
  bool found = false;
  for (uint64_t i = 0; i < en.size() && !found; ++i) {
    auto l = en.line(i);
    if (!line_in_cubic(ctx, l) || rank(restricted_partials(ctx, l)) != 3) continue;
    CHECK_FALSE(tangent_plane_witness(ctx, l).has_value());
    found = true;
  }
  CHECK(found);
}

TEST_CASE("double lines two ways on random cubics") {
  std::mt19937_64 rng(5);
  for (uint32_t p : {5u, 7u}) {
    auto F = GaloisField::get(p);
    CubicContext<GaloisField> ctx(random_smooth_cubic(F, rng));
    auto rep = census_run(ctx, all_line_tasks());
    CHECK(rep.double_agree);
    CHECK(rep.double_witness == rep.sigma_in_F);
  }
}

TEST_CASE("census is independent of the worker count") {
  auto F5 = GaloisField::get(5);
  std::mt19937_64 rng(9);
  CubicContext<GaloisField> ctx(random_smooth_cubic(F5, rng));
  auto cfg = all_line_tasks();
  cfg.eckardt = cfg.points = true;
  cfg.chunk = 777;
  cfg.workers = 1;
  auto a = census_run(ctx, cfg);
  for (size_t w : {2u, 8u}) {
    cfg.workers = w;
    auto b = census_run(ctx, cfg);
    CHECK(b.lines_on_V == a.lines_on_V);
    CHECK(b.sigma == a.sigma);
    CHECK(b.sigma_lines == a.sigma_lines);
    CHECK(b.double_lines == a.double_lines);
    CHECK(b.per_extension == a.per_extension);
    CHECK(b.points_on_V == a.points_on_V);
  }
}

TEST_CASE("counts are invariant under a change of coordinates") {
  auto F5 = GaloisField::get(5);
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 2; ++trial) {
    auto E = random_smooth_cubic(F5, rng);
    auto E2 = substitute_linear(E, random_invertible(F5, rng));
    CensusConfig cfg = all_line_tasks();
    cfg.points = true;
    auto a = census_run(CubicContext<GaloisField>(E), cfg);
    auto b = census_run(CubicContext<GaloisField>(E2), cfg);
    CHECK(a.lines_on_V == b.lines_on_V);
    CHECK(a.sigma == b.sigma);
    CHECK(a.double_witness == b.double_witness);
    CHECK(a.points_on_V == b.points_on_V);
  }
}

TEST_CASE("Eckardt census") {
  auto F7 = GaloisField::get(7);
  auto pts = eckardt_census(CubicContext<GaloisField>(fermat_cubic(F7)));
  CHECK(pts.size() == 30);
  for (const auto& p : pts) {
    int zeros = 0;
    std::vector<Gf> nz;
    for (const auto& x : p) {
      if (is_zero(x))
        ++zeros;
      else
        nz.push_back(x);
    }
    CHECK(zeros == 3);
    REQUIRE(nz.size() == 2);
    // (1, -w) with w^3 = 1
    auto w = -nz[1] / nz[0];
    CHECK(w * w * w == F7.one());
  }
  auto F5 = GaloisField::get(5);
  CHECK(eckardt_census(CubicContext<GaloisField>(fermat_cubic(F5))).size() == 10);
}

TEST_CASE("reconstruction") {
  auto F11 = GaloisField::get(11);
  std::mt19937_64 rng(17);
  auto E = random_smooth_cubic(F11, rng);
  auto one = reconstruct({random_line(F11, rng)}, F11, &E);
  CHECK(one.kernel_dim >= 23);
  CHECK(one.kernel_dim == 31);  // a line imposes four conditions on cubics
  std::vector<GfLine> off;
  while (off.size() < 3) {
    auto l = random_line(F11, rng);
    if (!restrict_to_line(E, l).is_zero()) off.push_back(l);
  }
  CHECK_FALSE(*reconstruct(off, F11, &E).contains_source);
  CHECK_THROWS_AS(reconstruct({}, F11), MathError);

  // lines of V always lie in the kernel; many of them pin V down
  auto F7 = GaloisField::get(7);
  CubicContext<GaloisField> ctx(random_smooth_cubic(F7, rng));
  CensusConfig cfg;
  cfg.set_tasks("double");
  auto rep = census_run(ctx, cfg);
  LineEnumerator en(F7);
  std::vector<GfLine> on;
  LineKernel kernel(ctx.cubic());
  std::array<uint32_t, 5> p, q;
  for (uint64_t i = 0; i < en.size() && on.size() < 30; ++i) {
    en.rows(i, p, q);
    if (kernel.classify(p, q).in_V) on.push_back(en.line(i));
  }
  REQUIRE(!on.empty());
  auto r = reconstruct(on, F7, &ctx.cubic());
  CHECK(*r.contains_source);
  if (on.size() >= 20) CHECK(*r.proportional_to_source);
}

TEST_CASE("dPhi rank") {
  auto F7 = GaloisField::get(7);
  std::mt19937_64 rng(23);
  for (int i = 0; i < 3; ++i) {
    CubicContext<GaloisField> ctx(random_normalized(F7, rng));
    auto d = dphi_rank(ctx);
    CHECK(d.rank == 35);
    CHECK(d.claim_a);
    CHECK(d.claim_b);
    CHECK(d.r_i_top_dim == 1);
  }
  auto z = [&](int i) { return HomForm<GaloisField>::variable(F7, i); };
  CubicContext<GaloisField> bare(z(2) * z(2) * z(3));
  CHECK_THROWS_AS(dphi_rank(bare), MathError);
  CHECK_THROWS_AS(dphi_rank(CubicContext<GaloisField>(fermat_cubic(F7))), MathError);

  // C0 and C1 both vanish at (0:0:0:1:0): a singular point over the line
  auto Q0 = random_form(F7, 2, rng), Q1 = random_form(F7, 2, rng);
  Q0.set_coeff({0, 0, 0, 2, 0}, F7.zero());
  Q1.set_coeff({0, 0, 0, 2, 0}, F7.zero());
  CubicContext<GaloisField> sing(z(0) * Q0 + z(1) * Q1 + z(2) * z(2) * z(3));
  CHECK_FALSE(sing.smooth());
  auto d = dphi_rank(sing, false);
  CHECK_FALSE(d.claim_a);
  CHECK(d.rank < 35);
}

TEST_CASE("normalizing a double line") {
  auto F7 = GaloisField::get(7);
  CubicContext<GaloisField> fermat(fermat_cubic(F7));
  auto triple = line_of(F7, {1, -1, 0, 0, 0}, {0, 0, 1, -1, 0});
  CHECK_THROWS_AS(normalize_double_line(fermat, triple), MathError);
  CHECK_THROWS_AS(normalize_double_line(fermat, line_of(F7, {1, 0, 0, 0, 0}, {0, 1, 0, 0, 0})), MathError);

  std::mt19937_64 rng(29);
  int done = 0;
  for (int attempt = 0; attempt < 10 && done < 2; ++attempt) {
    CubicContext<GaloisField> ctx(random_smooth_cubic(F7, rng));
    CensusConfig cfg;
    cfg.set_tasks("double");
    auto rep = census_run(ctx, cfg);
    LineEnumerator en(F7);
    for (uint64_t idx : rep.double_lines) {
      auto l = en.line(idx);
      if (tangent_plane_witness(ctx, l)->triple) continue;
      auto n = normalize_double_line(ctx, l);
      CHECK(normal_shape(n.cubic).has_value());
      auto Minv = inverse(n.M);
      REQUIRE(Minv.has_value());
      CHECK(substitute_linear(n.cubic, *Minv) == ctx.cubic());
      CHECK(dphi_rank(CubicContext<GaloisField>(n.cubic)).rank == 35);
      ++done;
      break;
    }
  }
  CHECK(done == 2);
}
