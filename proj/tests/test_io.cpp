#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>

#include "fano/io.hpp"
#include "support.hpp"

using namespace fano;
using namespace fano::testing;

namespace {

template <class F>
void require_parse_error(const F& field, const std::string& text, const std::string& kind) {
  try {
    parse_cubic(field, text);
    FAIL("no error for '" << text << "'");
  } catch (const ParseError& e) {
    CHECK_MESSAGE(e.kind() == kind, text << ": got " << e.kind());
  }
}

std::string temp_file(const std::string& name, const std::string& body) {
  const std::string path = std::string(P_tmpdir) + "/" + name;
  std::ofstream(path) << body;
  return path;
}

}  // namespace

TEST_CASE("parse examples") {
  RationalField Q;
  auto fermat = parse_cubic(Q, "z0^3+z1^3+z2^3+z3^3+z4^3");
  for (size_t i = 0; i < fermat.coeffs().size(); ++i) {
    const auto& e = monomials(3)[i];
    const bool pure = std::count(e.begin(), e.end(), 3) == 1;
    CHECK(fermat.coeffs()[i] == (pure ? 1 : 0));
  }

  auto f = parse_cubic(Q, "z0^2*z1 - z0*z1^2");
  size_t nonzero = 0;
  for (const auto& c : f.coeffs()) nonzero += sgn(c) != 0;
  CHECK(nonzero == 2);
  CHECK(f.coeff({2, 1, 0, 0, 0}) == 1);
  CHECK(f.coeff({1, 2, 0, 0, 0}) == -1);

  CHECK(parse_cubic(Q, " 3/2 z0 z1 z2 - z4^3 + z4*z4*z4 ").coeff({1, 1, 1, 0, 0}) == mpq_class(3, 2));
  CHECK(parse_cubic(Q, "z0*z1*z2 + 2*z0*z1*z2").coeff({1, 1, 1, 0, 0}) == 3);
  CHECK(parse_cubic(Q, "0").is_zero());
  CHECK(parse_cubic(Q, "-z3^3").coeff({0, 0, 0, 3, 0}) == -1);

  auto F7 = GaloisField::get(7);
  CHECK(parse_cubic(F7, "1/2*z0^3").coeff({3, 0, 0, 0, 0}) == F7.from_int(4));
  CHECK(parse_cubic(F7, "-z0^3").coeff({3, 0, 0, 0, 0}) == F7.from_int(6));
}

TEST_CASE("parse errors") {
  RationalField Q;
  require_parse_error(Q, "z0^2 + z1^3", "non_homogeneous");
  require_parse_error(Q, "z0^2*z5", "unknown_variable");
  require_parse_error(Q, "x^3", "unknown_variable");
  require_parse_error(Q, "z0^2", "wrong_degree");
  require_parse_error(Q, "1/0*z0^3", "malformed_rational");
  require_parse_error(Q, "1/*z0^3", "malformed_rational");
  require_parse_error(Q, "z0^3 +", "syntax");
  require_parse_error(Q, "z0^3 ++ z1^3", "syntax");
  require_parse_error(Q, "", "syntax");
  require_parse_error(Q, "z0^", "syntax");
  require_parse_error(GaloisField::get(7), "1/7*z0^3", "division_by_characteristic");
  // ParseError is a usage error, so the CLI maps it to exit code 2.
  CHECK_THROWS_AS(parse_cubic(Q, "z0"), UsageError);
}

TEST_CASE("elements, vectors and lines") {
  auto F49 = GaloisField::get(7, 2);
  const Gf a = parse_elem(F49, "[3,5]");
  CHECK(parse_elem(F49, format_elem(F49, a)) == a);
  CHECK(format_elem(F49, parse_elem(F49, "4")) == "4");
  CHECK_THROWS_AS(parse_elem(F49, "[3"), ParseError);

  CHECK(split_top("[1,2],3;4", ',') == std::vector<std::string>{"[1,2]", "3;4"});

  auto F7 = GaloisField::get(7);
  auto l = parse_line(F7, "1,0,0,0,0;0,1,0,0,0");
  CHECK(l == line_of(F7, {1, 0, 0, 0, 0}, {0, 1, 0, 0, 0}));
  CHECK(parse_line(F7, format_line(l)) == l);
  CHECK(parse_line(F7, format_vec(F7, l.pluecker())) == l);
  CHECK_THROWS_AS(parse_line(F7, "1,0,0,0;0,1,0,0,0"), ParseError);

  auto plane = parse_plane(F7, "forms:0,0,0,1,0;0,0,0,0,1");
  CHECK(plane == parse_plane(F7, "1,0,0,0,0;0,1,0,0,0;0,0,1,0,0"));
}

TEST_CASE("round trip on random forms") {
  std::mt19937_64 rng(11);
  RationalField Q;
  for (int i = 0; i < 1000; ++i) {
    auto f = random_form(Q, 3, rng);
    for (auto& c : f.coeffs()) c /= static_cast<long>(rng() % 5 + 1);
    REQUIRE(parse_cubic(Q, format_form(f)) == f);
  }
  auto F101 = GaloisField::get(101);
  for (int i = 0; i < 1000; ++i) {
    auto f = random_form(F101, 3, rng);
    REQUIRE(parse_cubic(F101, format_form(f)) == f);
  }
  auto F25 = GaloisField::get(5, 2);
  for (int i = 0; i < 100; ++i) {
    auto f = random_form(F25, 3, rng);
    REQUIRE(parse_cubic(F25, format_form(f)) == f);
  }
  CHECK(format_form(HomForm<RationalField>(Q, 3)) == "0");
}

TEST_CASE("cubic files") {
  RationalField Q;
  const auto fermat = parse_cubic(Q, "z0^3+z1^3+z2^3+z3^3+z4^3");
  auto expr = temp_file("fano_io_expr.txt", "# Fermat\nz0^3 + z1^3\n + z2^3 + z3^3 + z4^3  # five cubes\n");
  CHECK(load_cubic(Q, expr) == fermat);

  std::string coeffs;
  for (const auto& c : fermat.coeffs()) coeffs += c.get_str() + " ";
  auto list = temp_file("fano_io_coeffs.txt", coeffs);
  CHECK(load_cubic(Q, list) == fermat);

  auto short_list = temp_file("fano_io_short.txt", "1 2 3");
  CHECK_THROWS_AS(load_cubic(Q, short_list), ParseError);
  CHECK_THROWS_AS(load_cubic(Q, "/nonexistent/cubic.txt"), UsageError);
  std::remove(expr.c_str());
  std::remove(list.c_str());
  std::remove(short_list.c_str());
}

TEST_CASE("census JSON is stable") {
  auto F5 = GaloisField::get(5);
  CubicContext<GaloisField> ctx(parse_cubic(F5, "z0^3+z1^3+z2^3+z3^3+z4^3"));
  CensusConfig cfg;
  cfg.eckardt = true;
  LineEnumerator en(F5);
  std::string reference;
  for (size_t w : {1, 2, 8}) {
    cfg.workers = w;
    const std::string out = census_json(census_run(ctx, cfg), F5, &en).dump(2);
    if (reference.empty()) reference = out;
    CHECK(out == reference);
  }
  auto j = Json::parse(reference);
  CHECK(j["timing"].is_null());
  CHECK(j["paper_constants"]["double_curve_degree"] == 90);
  CHECK(j["counts"]["eckardt"] == 10);
  CHECK(j["counts"]["double_criteria_agree"] == true);
  CHECK(j["lists"]["double_lines"].size() == j["counts"]["double"].get<size_t>());
}
