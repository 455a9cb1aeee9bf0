#pragma once

// Exhaustive censuses over finite fields: every line of P^4(F_q), the lines
// of V, second-type and double lines, Eckardt points, the differential of
// the double-line parametrization, and reconstruction of V from its double
// lines.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fano/fano_adjoint.hpp"

namespace fano {

using GfLine = ProjLine<GaloisField>;
using GfVec = Vec<GaloisField>;

// ---- line enumeration ----

inline constexpr uint32_t kDefaultCensusCap = 13;

/// Gaussian binomial [5 choose 2]_q.
uint64_t line_count(uint64_t q);

/// All lines of P^4(F_q) in a fixed order: pivot pattern in kPairs order,
/// then the free entries read as base-q digits. Lines are indexed by their
/// position in that order.
class LineEnumerator {
 public:
  explicit LineEnumerator(const GaloisField& field, uint32_t cap = kDefaultCensusCap);

  const GaloisField& field() const { return field_; }
  uint64_t size() const { return total_; }
  /// Raw codes of the two canonical rows of line `index`.
  void rows(uint64_t index, std::array<uint32_t, 5>& p, std::array<uint32_t, 5>& q) const;
  GfLine line(uint64_t index) const;
  /// Inverse of line(); the line must be over the enumerator's field.
  uint64_t index_of(const GfLine& l) const;

 private:
  GaloisField field_;
  uint64_t total_ = 0;
  std::array<uint64_t, 11> offset_{};
};

// ---- the census ----

struct CensusConfig {
  bool lines = true;     // count lines of V
  bool sigma = true;     // second-type lines
  bool double_lines = true;
  bool eckardt = false;  // scan points of V for Eckardt points
  bool points = false;   // count points of V
  size_t workers = 1;
  uint64_t chunk = 4096;
  uint64_t seed = 0;
  uint32_t tower = 3;    // extension bound for intersection points of second-type lines
  uint32_t cap = kDefaultCensusCap;
  bool timing = false;
  bool keep_lists = true;

  /// Parses a comma list drawn from {lines, sigma, double, eckardt, points}.
  void set_tasks(const std::string& list);
};

struct CensusReport {
  std::string field;  // field spec string
  uint64_t lines_scanned = 0;
  uint64_t lines_on_V = 0;          // #F(F_q)
  uint64_t sigma = 0;               // #Sigma(F_q)
  uint64_t sigma_in_F = 0;          // second type and on V
  uint64_t double_witness = 0;      // lines of V with a tangent plane along them
  uint64_t triple = 0;
  uint64_t eckardt = 0;
  uint64_t points_on_V = 0;
  bool double_agree = true;         // the two double-line criteria gave the same set
  std::vector<uint64_t> double_lines;   // line indices, sorted
  std::vector<uint64_t> sigma_lines;    // line indices, sorted (kept only on request)
  std::vector<GfVec> eckardt_points;    // normalized, sorted
  /// per_extension[k-1] = number of intersection points with V of degree
  /// exactly k over F_q, summed over second-type lines not on V.
  std::vector<uint64_t> per_extension;
  uint64_t sigma_unresolved = 0;    // intersection points beyond the tower bound
  std::optional<double> seconds;
  bool ran_lines = false, ran_sigma = false, ran_double = false, ran_eckardt = false, ran_points = false;
};

/// Runs the requested tasks. Throws singular_cubic for singular cubics.
/// `progress`, when set, is called with the fraction of lines done.
CensusReport census_run(const CubicContext<GaloisField>& ctx, const CensusConfig& config,
                        const std::function<void(double)>& progress = {});

/// All points of P^4(F_q) in a fixed order (leading coordinate 1).
std::vector<GfVec> all_points(const GaloisField& field);

/// Points of V(F_q) that are Eckardt points, sorted.
std::vector<GfVec> eckardt_census(const CubicContext<GaloisField>& ctx);

/// Cheap per-line classification used by the census, exposed for cross
/// checks against classify_line.
struct FastLineClass {
  bool in_V = false;
  size_t partial_rank = 0;
  bool second_type() const { return partial_rank <= 2; }
};

class LineKernel {
 public:
  explicit LineKernel(const HomForm<GaloisField>& E);
  FastLineClass classify(const std::array<uint32_t, 5>& p, const std::array<uint32_t, 5>& q) const;
  /// E(s P + t Q) coefficients (s^3, s^2 t, s t^2, t^3) as raw codes.
  std::array<uint32_t, 4> restriction(const std::array<uint32_t, 5>& p, const std::array<uint32_t, 5>& q) const;

 private:
  struct Term {
    uint32_t coeff;
    std::array<uint8_t, 5> exp;
  };
  uint32_t eval(const std::vector<Term>& terms, const std::array<uint32_t, 5>& x) const;

  const detail::GfImpl* f_ = nullptr;
  std::vector<Term> cubic_;
  std::array<std::vector<Term>, 5> partials_;
  uint32_t half_ = 0;
};

// ---- reconstruction ----

struct Reconstruction {
  size_t points = 0;       // rows of the evaluation system
  size_t kernel_dim = 0;
  std::vector<HomForm<GaloisField>> kernel;  // cubics vanishing on every input line
  std::optional<bool> contains_source;       // set when a source cubic was given
  std::optional<bool> proportional_to_source;
};

/// Cubics vanishing at every rational point of every input line.
Reconstruction reconstruct(const std::vector<GfLine>& lines, const GaloisField& field,
                           const HomForm<GaloisField>* source = nullptr);

inline constexpr size_t kMinReconstructionLines = 12;

// ---- the differential of the double-line parametrization ----

struct NormalShape {
  HomForm<GaloisField> Q0, Q1;
  Gf c;  // coefficient of z2^2 z3
};

/// Splits E = z0 Q0 + z1 Q1 + c z2^2 z3; nullopt when E is not of that shape.
std::optional<NormalShape> normal_shape(const HomForm<GaloisField>& E);

struct DphiResult {
  size_t rank = 0;           // of the 50 -> 35 differential
  bool claim_a = false;      // C0, C1, z2^2 have no common zero
  bool claim_b = false;      // z2 z3 is independent of C0, C1, z2^2
  size_t r_i_top_dim = 0;    // dimension of the degree-3 part of k[z2,z3,z4]/(C0,C1,z2^2)
};

/// Throws not_normalized when E is not in normal shape and singular_cubic
/// when `require_smooth` is set and the cubic is singular.
DphiResult dphi_rank(const CubicContext<GaloisField>& ctx, bool require_smooth = true);

struct NormalizedCubic {
  HomForm<GaloisField> cubic;  // E' = E(M y)
  Matrix<GaloisField> M;       // old coordinates = M * new coordinates
};

/// Coordinates in which l = {z0=z1=z2=0} and its residual line in the
/// tangent plane is {z0=z1=z3=0}.
NormalizedCubic normalize_double_line(const CubicContext<GaloisField>& ctx, const GfLine& l);

// ---- constants attached to census reports ----

/// Degree of the curve of double lines in the Pluecker embedding and the
/// resulting lower bound for the degree of the ruled surface they sweep.
inline constexpr int kDoubleCurveDegree = 90;
inline constexpr int kCanonicalSelfIntersection = 45;
inline constexpr int kRuledSurfaceDegreeLowerBound = 15;

}  // namespace fano
