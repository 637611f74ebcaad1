// Rational curves S^2 -> CP^{2n+1} in exact polynomial homogeneous
// coordinates, their osculating flags with ramification deflated away by
// polynomial GCDs, and the check that the n-th osculating space stays clear
// of quaternionic subspaces (the twistor admissibility hypothesis).
//
// Chart A carries the coordinate z on |z| <= 1+eps; chart B the coordinate
// w = 1/z, realized by the degree-reversed polynomials. Both charts are
// holomorphic, so the complex structure of the sphere acts the same way in
// each.
#pragma once

#include <string>
#include <vector>

#include "hpn/cpoly.hpp"
#include "hpn/hquat.hpp"

namespace hpn {

struct RationalCurve {
  int n = 1;                 // target CP^{2n+1}
  std::vector<Poly> coords;  // 2n+2 entries

  int dim_c() const { return 2 * n + 2; }
  int common_degree() const;
  // divide out any common polynomial factor
  void remove_content(double gap_tol = 1e-7);
  // degree-reversed representation (the chart-B curve)
  RationalCurve chart_b_curve() const;

  static RationalCurve load(const std::string& path);
  void save(const std::string& path) const;
};

// Deflated osculating data of one chart at one flag level k:
// the (k+1) x (k+1) minors of the derivative matrix [h; h'; ...; h^(k)],
// divided by their common polynomial factor (the content).
struct OscLevel {
  int k = -1;
  bool degenerate = false;
  std::vector<std::vector<int>> idx;  // column subsets, lex order
  std::vector<Poly> minors;           // deflated, family-normalized
  std::vector<Poly> minors_d;         // exact derivatives of the deflated minors
  std::vector<Poly> minors_dd;        // second derivatives
  Poly content;                       // what was divided out
};

struct CurveOsculation {
  RationalCurve chart[2];                 // [0] = curve, [1] = reversed
  std::vector<OscLevel> levels[2];        // index = flag level k, 0..kmax
};

// Precomputes levels 0..kmax for both charts. Levels k <= need_rank_upto must
// be nondegenerate or a PreconditionError is thrown.
CurveOsculation osculate_curve(const RationalCurve& c, int kmax, int need_rank_upto,
                               double gap_tol = 1e-7);

// Unnormalized basis rows of W_k at a chart point, recovered from the
// deflated Plucker coordinates (pivot = largest minor), plus exact
// z-derivatives of the same rows. Smooth across ramification points.
struct PluckerBasis {
  int k = 0;
  std::vector<CVec> rows, rows_d, rows_dd;
  double pivot_abs = 0;  // |largest minor| relative to the family scale at zeta
};
PluckerBasis plucker_basis(const OscLevel& lvl, Cd zeta, int dim_c);

// Normalized curve evaluation in a chart (unit vector).
CVec evaluate_curve(const CurveOsculation& osc, int chart, Cd zeta);

// Orthonormal flag W_0 c ... c W_k at a point (the complex osculating flag).
struct ComplexFlag {
  Cd point;
  int chart = 0;
  std::vector<std::vector<CVec>> spaces;  // spaces[j] = basis of W_j
};
ComplexFlag osculating_space(const CurveOsculation& osc, int k, int chart, Cd zeta);

// Scans both charts for points where W_n meets W_n j. The margin is the
// minimum over samples of |det[B | sigma(B)]| with orthonormal blocks, which
// is the product of the sines of the principal angles; an empty dip list
// together with a positive margin certifies admissibility.
struct QuaternionicLocus {
  double min_margin = 1.0;
  std::vector<std::pair<int, Cd>> dips;  // (chart, point) where margin < threshold
};
QuaternionicLocus quaternionic_locus(const CurveOsculation& osc, int grid_n = 64,
                                     double dip_threshold = 1e-3);

// complex helpers shared with tests
Cd cvec_dot(const CVec& a, const CVec& b);  // conj(a) . b
double cvec_norm(const CVec& a);
std::vector<CVec> cvec_orthonormalize(const std::vector<CVec>& vs, double tol = 1e-12);
Cd cvec_det(std::vector<CVec> cols);  // square, complex LU

}  // namespace hpn
