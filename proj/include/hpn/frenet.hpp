// Frenet data of curves in HP^n: the twistor projection of an admissible
// rational curve (with algebraically exact chart derivatives of lift, flag
// projectors and canonical structure S), the residuals of the defining
// identities, Weierstrass point detection, and the exact degree count
// deg K R_+ = -2(n+1) - ord(delta_{n-1} o ... o delta_0) on the sphere.
#pragma once

#include <string>
#include <vector>

#include "hpn/curve_field.hpp"
#include "hpn/rational_curve.hpp"

namespace hpn {

struct TwistorOptions {
  bool need_d2 = false;           // also build exact second derivatives
  double locus_threshold = 1e-3;  // admissibility margin for W_n + W_n j
  int locus_grid = 48;
  double gap_tol = 1e-7;  // approximate-GCD gap for deflation
};

CurveField twistor_project(const CurveOsculation& osc, const ChartGrid& grid,
                           const TwistorOptions& opt = {});
CurveField twistor_project(const RationalCurve& curve, const ChartGrid& grid,
                           const TwistorOptions& opt = {});

// Consolidated residual report. Keys:
//   s2_max              |S^2 + 1|
//   flag_stab_max       |(1 - P_k) S P_k|
//   proj_defect_max     projector idempotency and rank
//   eq3_fd_max/_l2      |*delta_k - S delta_k| + |*delta_k - delta_k S|,
//                       delta from order-4 stencils of the P_k grids
//   eq3_exact_max       same from stored exact dP (when present)
//   eq5_Q_max, eq5_A_max   Q|V_{n-1} and (1-P_0) A V, from exact dS if stored
//   eq5_Q_fd_max, ...      same from stencil Hopf fields
//   delta_scale_max     size of delta for context
struct FrenetReport {
  std::vector<std::pair<std::string, double>> values;
  void set(const std::string& k, double v);
  double get(const std::string& k) const;  // -1 when missing
};

FrenetReport canonical_residuals(const CurveField& f);

struct WeierstrassEntry {
  int chart = 0;
  Cd point;   // chart coordinate
  int level = 0;  // flag level k of the vanishing delta_k
  int order = 1;
};
struct WeierstrassReport {
  std::vector<WeierstrassEntry> entries;
  int total_order = 0;
};

// Exact orders from the polynomial contents: ord of delta_k at a point is
// c_{k+1} - 2 c_k + c_{k-1} with c_j the content multiplicity at that point.
WeierstrassReport weierstrass_points_poly(const CurveOsculation& osc);

// Grid fallback: dips of |delta_k| below dip_tol, clustered within 2 cells.
WeierstrassReport weierstrass_points_grid(const CurveField& f, double dip_tol = 1e-6);

struct DegreeCheck {
  int ord_total = 0;
  int deg_kr_plus = 0;
  bool negative = false;  // deg K R_+ < 0, must hold on the sphere
};
DegreeCheck degree_check(const CurveOsculation& osc);

// Rebuilds the flag at one sample from the lift and stencil derivatives of
// the stored lift grid (a verification path, independent of the stored
// projectors). Returns the orthonormal bases of V_0..V_{n-1}.
std::vector<std::vector<HVec>> frenet_flag_at(const CurveField& f, int chart, int i, int j);

// delta_k chart components at one sample, as matrices (1-P_k) dP_k P_k from
// stencil derivatives, with the Frenet identity residuals attached.
struct DeltaAtSample {
  std::vector<HMat> delta_x, delta_y;  // level k
  std::vector<double> eq3_residual;
};
DeltaAtSample delta_maps(const CurveField& f, int chart, int i, int j);

}  // namespace hpn
