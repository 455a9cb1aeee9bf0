#pragma once

// Text formats: polynomial expressions, field elements, points, lines and
// planes, cubic files, and JSON renderings of the reports.

#include <string>
#include <string_view>
#include <vector>

#include "fano/census.hpp"
#include "json.hpp"

namespace fano {

using Json = nlohmann::json;

// ---- scalars and vectors ----

std::string format_elem(const RationalField& field, const mpq_class& x);
std::string format_elem(const GaloisField& field, const Gf& x);

/// Integers and a/b; for F_{p^k} also "[c0,...,c{k-1}]".
mpq_class parse_elem(const RationalField& field, std::string_view text);
Gf parse_elem(const GaloisField& field, std::string_view text);

/// Splits at `sep` outside square brackets, trimming whitespace.
std::vector<std::string> split_top(std::string_view text, char sep);

template <class F>
std::string format_vec(const F& field, const Vec<F>& v) {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += format_elem(field, v[i]);
  }
  return out;
}

template <class F>
Vec<F> parse_vec(const F& field, std::string_view text, size_t expected = kVars) {
  auto parts = split_top(text, ',');
  if (parts.size() != expected)
    throw ParseError("wrong_arity", "expected " + std::to_string(expected) + " entries in '" + std::string(text) + "'");
  Vec<F> v;
  for (const auto& p : parts) v.push_back(parse_elem(field, p));
  return v;
}

/// "p;q" (two points) or ten Pluecker coordinates.
template <class F>
ProjLine<F> parse_line(const F& field, std::string_view text) {
  auto groups = split_top(text, ';');
  if (groups.size() == 2) return ProjLine<F>::from_points(field, parse_vec(field, groups[0]), parse_vec(field, groups[1]));
  if (groups.size() == 1) return ProjLine<F>::from_pluecker(field, parse_vec(field, groups[0], 10));
  throw ParseError("wrong_arity", "a line is two points 'a;b' or ten Pluecker coordinates");
}

template <class F>
std::string format_line(const ProjLine<F>& l) {
  return format_vec(l.field(), l.point(0)) + ";" + format_vec(l.field(), l.point(1));
}

/// Three points "a;b;c", or two linear forms "forms:h1;h2".
template <class F>
ProjPlane<F> parse_plane(const F& field, std::string_view text) {
  constexpr std::string_view prefix = "forms:";
  if (text.substr(0, prefix.size()) == prefix) {
    auto g = split_top(text.substr(prefix.size()), ';');
    if (g.size() != 2) throw ParseError("wrong_arity", "forms: expects two linear forms");
    return ProjPlane<F>::from_forms(field, parse_vec(field, g[0]), parse_vec(field, g[1]));
  }
  auto g = split_top(text, ';');
  if (g.size() != 3) throw ParseError("wrong_arity", "a plane is three points 'a;b;c' or 'forms:h1;h2'");
  return ProjPlane<F>::from_points(field, {parse_vec(field, g[0]), parse_vec(field, g[1]), parse_vec(field, g[2])});
}

// ---- polynomials ----

/// Parses a homogeneous form of the given degree in z0..z4:
///   expr := term (('+'|'-') term)*
///   term := coeff? ('*'? var ('^' int)?)*
/// with coeff an integer, a/b, or [c0,...] over an extension field.
/// Throws ParseError.
HomForm<RationalField> parse_form(const RationalField& field, std::string_view text, int degree = 3);
HomForm<GaloisField> parse_form(const GaloisField& field, std::string_view text, int degree = 3);

inline HomForm<RationalField> parse_cubic(const RationalField& f, std::string_view text) { return parse_form(f, text); }
inline HomForm<GaloisField> parse_cubic(const GaloisField& f, std::string_view text) { return parse_form(f, text); }

/// Inverse of parse_form: terms in monomial order, "0" for the zero form.
std::string format_form(const HomForm<RationalField>& f);
std::string format_form(const HomForm<GaloisField>& f);

std::string format_monomial(const Exponent& e);

/// A cubic file holds either an expression or the 35 coefficients in
/// monomial order; '#' starts a comment.
HomForm<RationalField> load_cubic(const RationalField& field, const std::string& path);
HomForm<GaloisField> load_cubic(const GaloisField& field, const std::string& path);
std::string read_text(const std::string& path);

// ---- JSON ----

template <class F>
Json vec_json(const F& field, const Vec<F>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(format_elem(field, x));
  return a;
}

template <class F>
Json line_json(const ProjLine<F>& l) {
  return Json{{"span", format_line(l)}, {"pluecker", vec_json(l.field(), l.pluecker())}};
}

template <class F>
Json plane_json(const ProjPlane<F>& p) {
  Json pts = Json::array(), forms = Json::array();
  for (size_t i = 0; i < 3; ++i) pts.push_back(format_vec(p.field(), p.span().row(i)));
  for (size_t i = 0; i < 2; ++i) forms.push_back(format_vec(p.field(), p.dual().row(i)));
  return Json{{"points", pts}, {"forms", forms}};
}

template <class F>
Json space_json(const EchelonSpace<F>& s) {
  Json b = Json::array();
  for (const auto& v : s.basis()) b.push_back(format_vec(s.field(), v));
  return Json{{"dim", s.dim()}, {"basis", b}};
}

template <class F>
Json binary_json(const BinaryForm<F>& b) {
  return vec_json(b.field(), b.coeffs());
}

template <class F>
Json ring_json(const CubicContext<F>& ctx) {
  Json dims = Json::array();
  for (int k = 0; k <= 5; ++k) dims.push_back(ctx.dim(k));
  Json basis = Json::object();
  for (int k = 0; k <= 5; ++k) {
    Json b = Json::array();
    for (size_t idx : ctx.basis(k)) b.push_back(format_monomial(monomials(k)[idx]));
    basis[std::to_string(k)] = b;
  }
  return Json{{"smooth", ctx.smooth()}, {"dims", dims}, {"r6_dim", ctx.dim(6)}, {"r6_zero", ctx.dim(6) == 0}, {"basis", basis}};
}

template <class F>
Json witness_json(const TangentWitness<F>& w) {
  return Json{{"plane", plane_json(w.plane)},
              {"residual", line_json(w.residual)},
              {"triple", w.triple},
              {"residual_form", vec_json(w.plane.field(), w.residual_form)}};
}

template <class F>
Json dual_image_json(const DualImage<F>& d) {
  Json j{{"rank", d.rank}, {"is_line", d.is_line}};
  if (d.is_line) j["degree"] = d.degree;
  j["base_plane"] = d.base_plane ? plane_json(*d.base_plane) : Json(nullptr);
  return j;
}

template <class F>
Json line_report_json(const LineReport<F>& r) {
  Json pts = Json::array();
  for (const auto& ip : r.intersection)
    pts.push_back(Json{{"point", vec_json(ip.field, ip.point)},
                       {"ext_degree", ip.ext_degree},
                       {"multiplicity", ip.multiplicity},
                       {"eckardt", ip.eckardt}});
  return Json{{"line", line_json(r.line)},
              {"in_V", r.in_V},
              {"type", r.second_type ? "second" : "first"},
              {"j2_restricted_dim", r.j2_restricted_dim},
              {"restriction", binary_json(r.restriction)},
              {"intersection", pts},
              {"intersection_unresolved", r.intersection_unresolved},
              {"double", r.is_double},
              {"witness", r.witness ? witness_json(*r.witness) : Json(nullptr)},
              {"dual_image", dual_image_json(r.dual_image)},
              {"eckardt_hits", r.eckardt_hits}};
}

template <class F>
Json xi_json(const CubicContext<F>& ctx, const XiClass<F>& xi) {
  auto q = xi_quadric_rank(ctx, xi);
  Json j{{"coords", vec_json(ctx.field(), xi.coords)},
         {"representative", format_form(xi.representative)},
         {"rank", xi.rank},
         {"K1", space_json(xi.K1)},
         {"K2_dim", xi.K2.dim()},
         {"quadric_rank", q.rank},
         {"in_xi2", q.in_xi2}};
  j["sigma_line"] = xi.K1.dim() == 3 ? line_json(sigma_line_of_xi(ctx, xi)) : Json(nullptr);
  return j;
}

template <class F>
Json adjoint_json(const AdjointReport<F>& r) {
  const F& field = r.line.field();
  Json th = Json::array();
  for (const auto& h : r.tangent_hyperplanes) th.push_back(format_vec(field, h));
  return Json{{"line", line_json(r.line)},
              {"xi", vec_json(field, r.xi)},
              {"W", space_json(r.W)},
              {"W2", space_json(r.W2)},
              {"vanishes", r.vanishes},
              {"representative", vec_json(field, r.representative.coeffs)},
              {"schubert_form", r.base_plane ? vec_json(field, r.schubert.coeffs) : Json(nullptr)},
              {"tangent_hyperplanes", th},
              {"base_plane", r.base_plane ? plane_json(*r.base_plane) : Json(nullptr)},
              {"degeneracy", to_string(r.degeneracy)},
              {"transverse", r.transverse}};
}

template <class F>
Json primitive_json(const PrimitiveFormData<F>& d) {
  const F& field = d.K1.field();
  return Json{{"K1", space_json(d.K1)},
              {"phi", vec_json(field, d.phi)},
              {"omega4", vec_json(field, d.omega4)},
              {"omega5", vec_json(field, d.omega5)},
              {"xi_omega4", vec_json(field, d.xi_omega4)},
              {"xi_omega5", vec_json(field, d.xi_omega5)},
              {"decomposable", d.decomposable}};
}

Json dr_json(const DrLines& d);
Json census_json(const CensusReport& r, const GaloisField& field, const LineEnumerator* en = nullptr);
Json constants_json();

}  // namespace fano
