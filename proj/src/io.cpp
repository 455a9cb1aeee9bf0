#include "fano/io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace fano {

// ---- scalars ----

std::string format_elem(const RationalField&, const mpq_class& x) { return x.get_str(); }

std::string format_elem(const GaloisField& field, const Gf& x) {
  if (field.degree() == 1 || x.code() < static_cast<uint32_t>(field.characteristic())) return std::to_string(x.code());
  return "[" + field.format(x) + "]";
}

namespace {

mpq_class checked_rational(std::string_view text) {
  try {
    return parse_rational(text);
  } catch (const UsageError& e) {
    throw ParseError("malformed_rational", e.what());
  }
}

std::string trim(std::string_view s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

}  // namespace

mpq_class parse_elem(const RationalField&, std::string_view text) { return checked_rational(trim(text)); }

Gf parse_elem(const GaloisField& field, std::string_view text) {
  const std::string t = trim(text);
  if (!t.empty() && t.front() == '[') {
    if (t.back() != ']') throw ParseError("malformed_element", "unbalanced bracket in '" + t + "'");
    const std::string inner = t.substr(1, t.size() - 2);
    if (inner.find(',') == std::string::npos && field.degree() > 1)
      throw ParseError("malformed_element", "expected " + std::to_string(field.degree()) + " coefficients in '" + t + "'");
    try {
      return field.parse(inner);
    } catch (const ParseError&) {
      throw;
    } catch (const UsageError& e) {
      throw ParseError("malformed_element", e.what());
    }
  }
  const mpq_class r = checked_rational(t);
  try {
    return field.from_rational(r);
  } catch (const MathError& e) {
    throw ParseError("division_by_characteristic", e.what());
  }
}

std::vector<std::string> split_top(std::string_view text, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : text) {
    if (c == '[') ++depth;
    if (c == ']') --depth;
    if (c == sep && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

// ---- polynomial parsing ----

namespace {

template <class F>
class FormParser {
 public:
  FormParser(const F& field, std::string_view text) : field_(field) {
    for (char c : text)
      if (!std::isspace(static_cast<unsigned char>(c))) s_ += c;
  }

  HomForm<F> parse(int degree) {
    if (s_.empty()) throw ParseError("syntax", "empty expression");
    if (s_ == "0") return HomForm<F>(field_, degree);
    std::vector<std::pair<typename F::Elem, Exponent>> terms;
    int term_degree = -1;
    bool first = true;
    while (pos_ < s_.size() || first) {
      bool negative = false;
      if (peek() == '+' || peek() == '-') {
        negative = s_[pos_] == '-';
        ++pos_;
      } else if (!first) {
        throw ParseError("syntax", "expected '+' or '-' at position " + std::to_string(pos_));
      }
      first = false;
      auto [c, e] = term();
      if (negative) c = -c;
      int d = 0;
      for (int v : e) d += v;
      if (term_degree >= 0 && d != term_degree)
        throw ParseError("non_homogeneous", "terms of degree " + std::to_string(term_degree) + " and " +
                                                std::to_string(d));
      term_degree = d;
      terms.emplace_back(c, e);
    }
    if (term_degree != degree)
      throw ParseError("wrong_degree",
                       "expected degree " + std::to_string(degree) + ", got " + std::to_string(term_degree));
    HomForm<F> f(field_, degree);
    for (const auto& [c, e] : terms) f.set_coeff(e, f.coeff(e) + c);
    return f;
  }

 private:
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

  std::string digits() {
    std::string d;
    while (std::isdigit(static_cast<unsigned char>(peek()))) d += s_[pos_++];
    return d;
  }

  std::pair<typename F::Elem, Exponent> term() {
    typename F::Elem c = field_.one();
    bool any = false;
    if (peek() == '[') {
      const size_t close = s_.find(']', pos_);
      if (close == std::string::npos) throw ParseError("malformed_element", "unbalanced '['");
      c = element(s_.substr(pos_, close - pos_ + 1));
      pos_ = close + 1;
      any = true;
    } else if (std::isdigit(static_cast<unsigned char>(peek()))) {
      std::string num = digits();
      if (peek() == '/') {
        ++pos_;
        std::string den = digits();
        if (den.empty()) throw ParseError("malformed_rational", "missing denominator after '" + num + "/'");
        num += "/" + den;
      }
      c = element(num);
      any = true;
    }
    Exponent e{};
    for (;;) {
      const size_t save = pos_;
      if (peek() == '*') ++pos_;
      if (peek() != 'z') {
        if (peek() != '\0' && peek() != '+' && peek() != '-')
          throw ParseError(std::isalpha(static_cast<unsigned char>(peek())) ? "unknown_variable" : "syntax",
                           "unexpected '" + std::string(1, peek()) + "' at position " + std::to_string(pos_));
        if (pos_ != save) throw ParseError("syntax", "dangling '*'");
        break;
      }
      ++pos_;
      const std::string idx = digits();
      if (idx.size() != 1 || idx[0] > '4') throw ParseError("unknown_variable", "unknown variable 'z" + idx + "'");
      int power = 1;
      if (peek() == '^') {
        ++pos_;
        const std::string pw = digits();
        if (pw.empty()) throw ParseError("syntax", "missing exponent after '^'");
        power = std::stoi(pw);
      }
      e[idx[0] - '0'] += power;
      any = true;
    }
    if (!any) throw ParseError("syntax", "empty term at position " + std::to_string(pos_));
    return {c, e};
  }

  typename F::Elem element(const std::string& text) { return parse_elem(field_, text); }

  F field_;
  std::string s_;
  size_t pos_ = 0;
};

}  // namespace

HomForm<RationalField> parse_form(const RationalField& field, std::string_view text, int degree) {
  return FormParser<RationalField>(field, text).parse(degree);
}

HomForm<GaloisField> parse_form(const GaloisField& field, std::string_view text, int degree) {
  return FormParser<GaloisField>(field, text).parse(degree);
}

// ---- printing ----

std::string format_monomial(const Exponent& e) {
  std::string out;
  for (int v = 0; v < kVars; ++v) {
    if (e[v] == 0) continue;
    if (!out.empty()) out += '*';
    out += "z" + std::to_string(v);
    if (e[v] > 1) out += "^" + std::to_string(e[v]);
  }
  return out.empty() ? "1" : out;
}

std::string format_form(const HomForm<RationalField>& f) {
  std::string out;
  const auto& ms = monomials(f.degree());
  for (size_t i = 0; i < ms.size(); ++i) {
    const mpq_class& c = f.coeffs()[i];
    if (sgn(c) == 0) continue;
    const bool neg = sgn(c) < 0;
    out += out.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
    const mpq_class a = abs(c);
    const std::string m = format_monomial(ms[i]);
    if (f.degree() == 0)
      out += a.get_str();
    else if (a == 1)
      out += m;
    else
      out += a.get_str() + "*" + m;
  }
  return out.empty() ? "0" : out;
}

std::string format_form(const HomForm<GaloisField>& f) {
  std::string out;
  const auto& field = f.field();
  const auto& ms = monomials(f.degree());
  for (size_t i = 0; i < ms.size(); ++i) {
    const Gf& c = f.coeffs()[i];
    if (is_zero(c)) continue;
    if (!out.empty()) out += " + ";
    const std::string m = format_monomial(ms[i]);
    if (f.degree() == 0)
      out += format_elem(field, c);
    else if (c == field.one())
      out += m;
    else
      out += format_elem(field, c) + "*" + m;
  }
  return out.empty() ? "0" : out;
}

// ---- files ----

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {

std::string strip_comments(const std::string& text) {
  std::string out;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    const auto hash = line.find('#');
    out += line.substr(0, hash) + "\n";
  }
  return out;
}

template <class F>
HomForm<F> load_cubic_impl(const F& field, const std::string& path) {
  const std::string text = strip_comments(read_text(path));
  if (text.find('z') != std::string::npos) return parse_form(field, text, 3);
  std::stringstream ss(text);
  std::string tok;
  Vec<F> c;
  while (ss >> tok) c.push_back(parse_elem(field, tok));
  if (c.size() != num_monomials(3))
    throw ParseError("wrong_arity", "a coefficient file needs 35 entries, found " + std::to_string(c.size()));
  return HomForm<F>(field, 3, std::move(c));
}

}  // namespace

HomForm<RationalField> load_cubic(const RationalField& field, const std::string& path) {
  return load_cubic_impl(field, path);
}

HomForm<GaloisField> load_cubic(const GaloisField& field, const std::string& path) {
  return load_cubic_impl(field, path);
}

// ---- JSON ----

Json dr_json(const DrLines& d) {
  Json lines = Json::array();
  for (const auto& l : d.lines) lines.push_back(Json{{"level", l.level}, {"line", line_json(l.line)}});
  return Json{{"lines", lines},
              {"count", d.lines.size()},
              {"infinite", d.infinite},
              {"reason", d.reason.empty() ? Json(nullptr) : Json(d.reason)},
              {"complete", d.complete},
              {"span_dim", d.span_dim},
              {"eckardt_hits", d.eckardt_hits}};
}

Json constants_json() {
  return Json{{"canonical_self_intersection", kCanonicalSelfIntersection},
              {"double_curve_degree", kDoubleCurveDegree},
              {"ruled_surface_degree_lower_bound", kRuledSurfaceDegreeLowerBound}};
}

Json census_json(const CensusReport& r, const GaloisField& field, const LineEnumerator* en) {
  auto count = [](bool ran, uint64_t v) { return ran ? Json(v) : Json(nullptr); };
  const bool line_tasks = r.ran_lines || r.ran_sigma || r.ran_double;
  Json counts{{"lines_scanned", count(line_tasks, r.lines_scanned)},
              {"lines_on_V", count(line_tasks, r.lines_on_V)},
              {"sigma", count(r.ran_sigma || r.ran_double, r.sigma)},
              {"sigma_in_F", count(r.ran_sigma || r.ran_double, r.sigma_in_F)},
              {"double", count(r.ran_double, r.double_witness)},
              {"triple", count(r.ran_double, r.triple)},
              {"double_criteria_agree", r.ran_double ? Json(r.double_agree) : Json(nullptr)},
              {"eckardt", count(r.ran_eckardt, r.eckardt)},
              {"points_on_V", count(r.ran_points, r.points_on_V)}};
  Json doubles = Json::array(), eck = Json::array();
  if (en)
    for (uint64_t idx : r.double_lines) doubles.push_back(format_line(en->line(idx)));
  for (const auto& p : r.eckardt_points) eck.push_back(format_vec(field, p));
  Json per = Json::array();
  for (size_t k = 0; k < r.per_extension.size(); ++k)
    per.push_back(Json{{"degree", k + 1}, {"sigma_intersection_points", r.per_extension[k]}});
  return Json{{"field", r.field},
              {"counts", counts},
              {"lists", Json{{"double_lines", doubles}, {"eckardt_points", eck}}},
              {"per_extension", Json{{"table", per}, {"unresolved_points", r.sigma_unresolved}}},
              {"timing", r.seconds ? Json{{"seconds", *r.seconds}} : Json(nullptr)},
              {"paper_constants", constants_json()}};
}

}  // namespace fano
