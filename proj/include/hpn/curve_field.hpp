// A sampled Frenet curve in HP^n: per grid sample the lift psi, the flag
// projectors P_0..P_{n-1}, the canonical complex structure S, and (cached)
// Hopf fields A, Q. Twistor-projected fields carry algebraically exact first
// (optionally second) chart derivatives of psi and S; constructions transport
// that exactness where the defining formulas allow it, and consumers fall
// back to order-4 stencils otherwise.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hpn/chart_grid.hpp"
#include "hpn/hquat.hpp"

namespace hpn {

enum class Provenance : std::uint32_t { twistor = 0, tangent = 1, envelope = 2, osculate = 3 };

const char* provenance_name(Provenance p);

// Deterministic ordered key/value metadata; doubles stored as %.17g strings
// so replay parameters round-trip exactly.
struct Meta {
  std::vector<std::pair<std::string, std::string>> kv;

  void set(const std::string& k, const std::string& v);
  void set_f(const std::string& k, double v);
  void set_i(const std::string& k, long long v);
  const std::string* get(const std::string& k) const;
  double get_f(const std::string& k, double fallback) const;
};

struct ChartData {
  QGrid psi, dpsi_x, dpsi_y;                 // comps = dim
  QGrid d2psi_xx, d2psi_xy, d2psi_yy;        // optional
  QGrid S, dS_x, dS_y;                       // comps = dim^2
  QGrid d2S_xx, d2S_xy, d2S_yy;              // optional
  std::vector<QGrid> P;                      // flag projectors, levels 0..n-1
  std::vector<QGrid> dP_x, dP_y;             // optional, same levels
  // stencil-based Hopf fields (order-4 differences of the S grid)
  QGrid Ax, Ay, Qx, Qy;
  bool hopf_cached = false;
};

struct CurveField {
  int n = 1;    // target HP^n
  int dim = 2;  // ambient quaternionic dimension n+1
  ChartGrid grid;
  Provenance provenance = Provenance::twistor;
  bool exact_first = false;   // dpsi, dS, dP are exact (not stencils)
  bool exact_second = false;  // d2S (and d2psi when present) are exact
  Meta meta;
  ChartData chart[2];

  std::size_t samples() const { return grid.samples(); }
};

// Stencil first derivatives for any field missing exact ones; no-op when the
// grids are already populated.
void ensure_first_derivs(CurveField& f);

// Order-4 stencil Hopf fields from the S grid (cached):
//   A_x = (S_y + S S_x)/4,  A_y = (-S_x + S S_y)/4,
//   Q_x = (S S_x - S_y)/4,  Q_y = (S S_y + S_x)/4.
void compute_hopf(CurveField& f);

// Hopf fields from the stored (exact) dS grids; throws if absent.
struct HopfGrids {
  QGrid Ax, Ay, Qx, Qy;
};
HopfGrids hopf_from_exact(const CurveField& f, int chart);

// Stencil route without touching the cache.
HopfGrids hopf_stencil(const CurveField& f, int chart);

// Second derivatives of S: stored exact grids when present, else stencils of
// dS. Order xx, xy, yy.
void second_derivs_of_S(const CurveField& f, int chart, QGrid& sxx, QGrid& sxy, QGrid& syy);

// versioned binary dump; round-trips bit-exactly
void save_field(const CurveField& f, const std::string& path);
CurveField load_field(const std::string& path);

}  // namespace hpn
