// Command-line front end. Every subcommand prints one JSON document with
// sorted keys. Exit codes: 0 success, 1 mathematical precondition failure,
// 2 usage or parse error.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "fano/io.hpp"

using namespace fano;

namespace {

struct Options {
  std::string command;
  std::string cubic_file, expr, field = "0";
  std::string line, xi, plane, point, lines_file, tasks = "lines,sigma,double";
  uint32_t tower = 0;  // 0 = command default
  size_t workers = 1;
  uint64_t seed = 0;
  bool random = false;
  std::string out;
  bool quiet = false, timing = false, allow_singular = false, allow_small_char = false, dr = false;
};

// ---- shared input handling ----

/// The Jacobian ring profile detects smoothness only in characteristic >= 5;
/// in characteristic 2 and 3 the ideal test decides.
template <class F>
bool is_smooth(const CubicContext<F>& ctx) {
  if constexpr (std::is_same_v<F, GaloisField>)
    if (ctx.field().characteristic() <= 3) return smooth_hypersurface(ctx.cubic());
  return ctx.smooth();
}

template <class F>
HomForm<F> read_cubic(const F& field, const Options& o) {
  if (o.random) {
    // The single PRNG: std::mt19937_64 seeded with --seed.
    std::mt19937_64 rng(o.seed);
    for (;;) {
      HomForm<F> E(field, 3);
      for (auto& c : E.coeffs()) c = field.random(rng);
      if (!E.is_zero() && is_smooth(CubicContext<F>(E))) return E;
    }
  }
  if (!o.expr.empty()) return parse_cubic(field, o.expr);
  if (!o.cubic_file.empty()) return load_cubic(field, o.cubic_file);
  throw UsageError("a cubic is required: --cubic FILE, --expr TEXT or --random");
}

template <class F>
CubicContext<F> smooth_context(const F& field, const Options& o) {
  CubicContext<F> ctx(read_cubic(field, o));
  if (!is_smooth(ctx) && !o.allow_singular) throw MathError("singular_cubic", "the cubic is singular");
  return ctx;
}

const std::string& require(const std::string& value, const char* flag) {
  if (value.empty()) throw UsageError(std::string("missing ") + flag);
  return value;
}

uint32_t tower_or(const Options& o, uint32_t fallback) { return o.tower ? o.tower : fallback; }

template <class F>
XiClass<F> read_xi(const CubicContext<F>& ctx, const Options& o) {
  if (!o.xi.empty()) {
    if (o.xi.find('z') != std::string::npos) return make_xi(ctx, parse_form(ctx.field(), o.xi, 3));
    return make_xi_from_coords(ctx, parse_vec(ctx.field(), o.xi, ctx.dim(3)));
  }
  return xi_of_line(ctx, parse_line(ctx.field(), require(o.line, "--line or --xi")));
}

template <class F>
Json cubic_json(const CubicContext<F>& ctx) {
  return Json{{"expression", format_form(ctx.cubic())}, {"smooth", ctx.smooth()}};
}

GaloisField finite(const RationalField&, const char* what) {
  throw MathError("rational_field", std::string(what) + " needs a finite field");
}
GaloisField finite(const GaloisField& f, const char*) { return f; }

CubicContext<GaloisField> finite_context(const CubicContext<RationalField>&, const char* what) {
  throw MathError("rational_field", std::string(what) + " needs a finite field");
}
CubicContext<GaloisField> finite_context(const CubicContext<GaloisField>& ctx, const char*) { return ctx; }

// ---- subcommands ----

template <class F>
Json cmd_ring(const F& field, const Options& o) {
  CubicContext<F> ctx(read_cubic(field, o));
  Json j = ring_json(ctx);
  j["cubic"] = format_form(ctx.cubic());
  return j;
}

template <class F>
Json cmd_classify(const F& field, const Options& o) {
  auto ctx = smooth_context(field, o);
  auto l = parse_line(field, require(o.line, "--line"));
  return line_report_json(classify_line(ctx, l, tower_or(o, 1)));
}

template <class F>
Json cmd_xi(const F& field, const Options& o) {
  auto ctx = smooth_context(field, o);
  auto xi = read_xi(ctx, o);
  Json j = xi_json(ctx, xi);
  j["primitive_form"] = xi.rank == 2 ? primitive_json(primitive_form(ctx, xi)) : Json(nullptr);
  return j;
}

template <class F>
Json cmd_adjoint(const F& field, const Options& o) {
  auto ctx = smooth_context(field, o);
  auto report = o.xi.empty() ? adjoint_class(ctx, parse_line(field, require(o.line, "--line or --xi")), tower_or(o, 3))
                             : adjoint_class(ctx, read_xi(ctx, o), tower_or(o, 3));
  Json j = adjoint_json(report);
  if (o.dr) {
    if constexpr (std::is_same_v<F, GaloisField>) {
      auto dr = d_r_lines(ctx, report.line, tower_or(o, 4));
      Json dj = dr_json(dr);
      Json values = Json::array();
      for (const auto& m : dr.lines) {
        TwoForm<GaloisField> omega{lift_vec(field, report.representative.coeffs, m.field)};
        values.push_back(is_zero(evaluate_on_line(omega, m.line)));
      }
      dj["representative_vanishes"] = values;
      j["d_r"] = dj;
    } else {
      throw MathError("rational_field", "D_r needs a finite field");
    }
  }
  return j;
}

template <class F>
Json cmd_census(const F& field, const Options& o) {
  auto ctx = finite_context(smooth_context(field, o), "census");
  CensusConfig cfg;
  cfg.set_tasks(o.tasks);
  cfg.workers = o.workers;
  cfg.seed = o.seed;
  cfg.timing = o.timing;
  cfg.tower = tower_or(o, 3);
  std::function<void(double)> progress;
  if (!o.quiet)
    progress = [](double frac) { std::fprintf(stderr, "\rcensus %5.1f%%", 100.0 * frac); };
  LineEnumerator en(ctx.field(), cfg.cap);
  auto report = census_run(ctx, cfg, progress);
  if (!o.quiet) std::fprintf(stderr, "\n");
  Json j = census_json(report, ctx.field(), &en);
  j["cubic"] = format_form(ctx.cubic());
  return j;
}

std::vector<GfLine> read_lines(const GaloisField& field, const std::string& path) {
  std::vector<GfLine> lines;
  std::stringstream ss(read_text(path));
  std::string row;
  while (std::getline(ss, row)) {
    row = row.substr(0, row.find('#'));
    if (row.find_first_not_of(" \t\r") == std::string::npos) continue;
    lines.push_back(parse_line(field, row));
  }
  return lines;
}

template <class F>
Json cmd_reconstruct(const F& field, const Options& o) {
  const GaloisField gf = finite(field, "reconstruction");
  std::optional<CubicContext<GaloisField>> ctx;
  if (o.random || !o.expr.empty() || !o.cubic_file.empty()) ctx = finite_context(smooth_context(field, o), "reconstruction");
  std::vector<GfLine> lines;
  Json j;
  if (!o.lines_file.empty()) {
    lines = read_lines(gf, o.lines_file);
    j["source"] = "file";
  } else {
    if (!ctx) throw UsageError("reconstruct needs --lines FILE or a cubic to harvest double lines from");
    CensusConfig cfg;
    cfg.set_tasks("double");
    cfg.workers = o.workers;
    LineEnumerator en(gf, cfg.cap);
    auto report = census_run(*ctx, cfg);
    for (uint64_t idx : report.double_lines) lines.push_back(en.line(idx));
    j["source"] = "census";
  }
  j["lines"] = lines.size();
  if (lines.size() < kMinReconstructionLines) {
    j["status"] = "insufficient_sample";
    j["required"] = kMinReconstructionLines;
    return j;
  }
  auto rec = reconstruct(lines, gf, ctx ? &ctx->cubic() : nullptr);
  Json kernel = Json::array();
  for (const auto& f : rec.kernel) kernel.push_back(format_form(f));
  j["status"] = "ok";
  j["points"] = rec.points;
  j["kernel_dim"] = rec.kernel_dim;
  j["kernel"] = kernel;
  j["contains_source"] = rec.contains_source ? Json(*rec.contains_source) : Json(nullptr);
  j["proportional_to_source"] = rec.proportional_to_source ? Json(*rec.proportional_to_source) : Json(nullptr);
  return j;
}

template <class F>
Json cmd_dphi(const F& field, const Options& o) {
  finite(field, "dphi");
  auto ctx = finite_context(CubicContext<F>(read_cubic(field, o)), "dphi");
  Json j;
  if (!o.line.empty()) {
    auto norm = normalize_double_line(ctx, parse_line(ctx.field(), o.line));
    ctx = CubicContext<GaloisField>(norm.cubic);
    j["normalized_cubic"] = format_form(norm.cubic);
  }
  auto r = dphi_rank(ctx, !o.allow_singular);
  j["rank"] = r.rank;
  j["surjective"] = r.rank == num_monomials(3);
  j["claim_a"] = r.claim_a;
  j["claim_b"] = r.claim_b;
  j["quotient_degree3_dim"] = r.r_i_top_dim;
  j["smooth"] = ctx.smooth();
  return j;
}

template <class F>
Json cmd_eckardt(const F& field, const Options& o) {
  auto ctx = smooth_context(field, o);
  if (o.point.empty()) {
    auto gctx = finite_context(ctx, "an Eckardt census");
    Json pts = Json::array();
    for (const auto& p : eckardt_census(gctx)) pts.push_back(format_vec(gctx.field(), p));
    return Json{{"count", pts.size()}, {"points", pts}};
  }
  auto p = parse_vec(field, o.point);
  if (!is_zero(ctx.cubic().evaluate(p))) throw MathError("point_not_on_cubic", "the point is not on V");
  auto r = eckardt_test(ctx, p);
  Json j{{"point", vec_json(field, p)}, {"eckardt", r.eckardt}, {"cone_base", format_form(r.frame.cone_base)},
         {"quadric", format_form(r.frame.quadric)}};
  if constexpr (std::is_same_v<F, GaloisField>) {
    auto lt = lines_through_point(ctx, p, tower_or(o, 6));
    Json ls = Json::array();
    for (const auto& ll : lt.lines)
      ls.push_back(Json{{"level", ll.level}, {"line", line_json(ll.line)}});
    j["lines_through_point"] = Json{{"infinite", lt.infinite}, {"distinct", lt.distinct()}, {"lines", ls}};
  }
  return j;
}

template <class F>
Json cmd_hessian(const F& field, const Options& o) {
  auto ctx = smooth_context(field, o);
  auto l = parse_line(field, require(o.line, "--line"));
  auto h = hessian_on_line(ctx, l);
  return Json{{"line", line_json(l)}, {"quintic", binary_json(h.quintic)}, {"degenerate", h.degenerate}};
}

template <class F>
Json cmd_section(const F& field, const Options& o) {
  auto ctx = smooth_context(field, o);
  auto pi = parse_plane(field, require(o.plane, "--plane"));
  auto s = plane_section(ctx, pi);
  Json factors = Json::array(), lines = Json::array();
  for (const auto& [v, m] : s.linear_factors) factors.push_back(Json{{"form", format_vec(field, v)}, {"multiplicity", m}});
  for (const auto& l : s.lines) lines.push_back(line_json(l));
  return Json{{"plane", plane_json(pi)},
              {"restriction", format_form(s.restriction)},
              {"linear_factors", factors},
              {"lines", lines},
              {"residual", format_form(s.residual)},
              {"rare_triangle", s.rare_triangle ? Json(*s.rare_triangle) : Json(nullptr)}};
}

template <class F>
Json dispatch(const F& field, const Options& o) {
  const std::string& c = o.command;
  if (c == "ring") return cmd_ring(field, o);
  if (c == "classify") return cmd_classify(field, o);
  if (c == "xi") return cmd_xi(field, o);
  if (c == "adjoint") return cmd_adjoint(field, o);
  if (c == "census") return cmd_census(field, o);
  if (c == "reconstruct") return cmd_reconstruct(field, o);
  if (c == "dphi") return cmd_dphi(field, o);
  if (c == "eckardt") return cmd_eckardt(field, o);
  if (c == "hessian") return cmd_hessian(field, o);
  if (c == "section") return cmd_section(field, o);
  throw UsageError("unknown command '" + c + "'");
}

void emit(const Json& j, const Options& o) {
  const std::string text = j.dump(2) + "\n";
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw UsageError("cannot write '" + o.out + "'");
  f << text;
}

Json error_json(const std::string& reason, const std::string& message) {
  return Json{{"error", Json{{"reason", reason}, {"message", message}}}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Jacobian rings, lines and Fano surfaces of cubic threefolds"};
  app.require_subcommand(1, 1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--cubic", o.cubic_file, "file with an expression or 35 coefficients");
    sub->add_option("--expr", o.expr, "cubic as an expression in z0..z4");
    sub->add_flag("--random", o.random, "random smooth cubic drawn from --seed");
    sub->add_option("--field", o.field, "0 for Q, p or p^k")->capture_default_str();
    sub->add_flag("--allow-small-char", o.allow_small_char, "permit characteristic 2 and 3");
    sub->add_option("--seed", o.seed, "seed for std::mt19937_64")->capture_default_str();
    sub->add_option("--tower", o.tower, "extension degree bound");
    sub->add_option("--out", o.out, "write JSON here instead of stdout");
    sub->add_flag("--quiet", o.quiet, "no progress on stderr");
    sub->add_flag("--allow-singular", o.allow_singular, "skip the smoothness requirement where possible");
  };

  struct Spec {
    const char* name;
    const char* help;
  };
  const Spec specs[] = {{"ring", "graded dimensions and monomial bases of the Jacobian ring"},
                        {"classify", "classify a line: on V, type, restriction, dual image"},
                        {"xi", "class xi in R^3 from coordinates, a cubic form or a second-type line"},
                        {"adjoint", "adjoint class of a second-type line"},
                        {"census", "exhaustive census over a finite field"},
                        {"reconstruct", "cubics vanishing on a set of double lines"},
                        {"dphi", "rank of the differential at a normalized double line"},
                        {"eckardt", "Eckardt census, or the lines through one point"},
                        {"hessian", "Hessian restricted to a line of V"},
                        {"section", "factor the section of V by a plane"}};
  for (const auto& s : specs) {
    auto* sub = app.add_subcommand(s.name, s.help);
    add_common(sub);
    sub->callback([&o, name = std::string(s.name)] { o.command = name; });
    const std::string n = s.name;
    if (n == "classify" || n == "hessian" || n == "adjoint" || n == "xi" || n == "dphi")
      sub->add_option("--line", o.line, "'a;b' or ten Pluecker coordinates");
    if (n == "xi" || n == "adjoint") sub->add_option("--xi", o.xi, "coordinates in the basis of R^3, or a cubic form");
    if (n == "adjoint") sub->add_flag("--dr", o.dr, "also list the lines of V meeting the line");
    if (n == "section") sub->add_option("--plane", o.plane, "'a;b;c' or 'forms:h1;h2'");
    if (n == "eckardt") sub->add_option("--point", o.point, "a point of V");
    if (n == "census" || n == "reconstruct") sub->add_option("--workers", o.workers)->capture_default_str();
    if (n == "census") {
      sub->add_option("--tasks", o.tasks, "comma list of lines, sigma, double, eckardt, points")->capture_default_str();
      sub->add_flag("--timing", o.timing, "include wall-clock seconds in the report");
    }
    if (n == "reconstruct") sub->add_option("--lines", o.lines_file, "file with one line per row");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    const FieldSpec spec = FieldSpec::parse(o.field, o.allow_small_char);
    Json j = spec.is_rational() ? dispatch(RationalField{}, o)
                                : dispatch(GaloisField::get(spec.p, spec.k, spec.allow_small_characteristic), o);
    j["command"] = o.command;
    j["field"] = spec.to_string();
    emit(j, o);
    return 0;
  } catch (const MathError& e) {
    emit(error_json(e.reason(), e.what()), o);
    return 1;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    std::cout << error_json(e.kind(), e.what()).dump(2) << "\n";
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    std::cout << error_json("usage", e.what()).dump(2) << "\n";
    return 2;
  }
}
