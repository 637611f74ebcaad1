#include "hpn/curve_field.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>

#include "hpn/errors.hpp"
#include "hpn/simd.hpp"

namespace hpn {

const char* provenance_name(Provenance p) {
  switch (p) {
    case Provenance::twistor: return "twistor";
    case Provenance::tangent: return "tangent";
    case Provenance::envelope: return "envelope";
    case Provenance::osculate: return "osculate";
  }
  return "?";
}

void Meta::set(const std::string& k, const std::string& v) {
  for (auto& [key, val] : kv)
    if (key == k) {
      val = v;
      return;
    }
  kv.emplace_back(k, v);
}

void Meta::set_f(const std::string& k, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  set(k, buf);
}

void Meta::set_i(const std::string& k, long long v) { set(k, std::to_string(v)); }

const std::string* Meta::get(const std::string& k) const {
  for (const auto& [key, val] : kv)
    if (key == k) return &val;
  return nullptr;
}

double Meta::get_f(const std::string& k, double fallback) const {
  const std::string* s = get(k);
  return s ? std::strtod(s->c_str(), nullptr) : fallback;
}

void ensure_first_derivs(CurveField& f) {
  for (int c = 0; c < 2; ++c) {
    ChartData& cd = f.chart[c];
    if (cd.dpsi_x.empty()) {
      deriv_x(f.grid, cd.psi, cd.dpsi_x);
      deriv_y(f.grid, cd.psi, cd.dpsi_y);
    }
    if (cd.dS_x.empty()) {
      deriv_x(f.grid, cd.S, cd.dS_x);
      deriv_y(f.grid, cd.S, cd.dS_y);
    }
    if (cd.dP_x.empty() && !cd.P.empty()) {
      cd.dP_x.resize(cd.P.size());
      cd.dP_y.resize(cd.P.size());
      for (std::size_t k = 0; k < cd.P.size(); ++k) {
        deriv_x(f.grid, cd.P[k], cd.dP_x[k]);
        deriv_y(f.grid, cd.P[k], cd.dP_y[k]);
      }
    }
  }
}

namespace {

// out = (a + sign_b * b * scale_b) with a, b matrix grids; used to assemble
// quarter combinations below
void combine(const QGrid& a, double ca, const QGrid& b, double cb, QGrid& out) {
  out.comps = a.comps;
  out.q.assign(a.q.size(), Quat{});
  simd::saxpy(ca, a.raw(), out.raw(), a.doubles());
  simd::saxpy(cb, b.raw(), out.raw(), b.doubles());
}

}  // namespace

HopfGrids hopf_stencil(const CurveField& f, int chart) {
  const ChartData& cd = f.chart[chart];
  const int d2 = f.dim * f.dim;
  HopfGrids h;
  QGrid sx, sy;
  deriv_x(f.grid, cd.S, sx);
  deriv_y(f.grid, cd.S, sy);
  QGrid ssx(f.grid, d2), ssy(f.grid, d2);
  simd::qgemm(cd.S.q.data(), sx.q.data(), ssx.q.data(), f.dim, f.samples());
  simd::qgemm(cd.S.q.data(), sy.q.data(), ssy.q.data(), f.dim, f.samples());
  combine(sy, 0.25, ssx, 0.25, h.Ax);
  combine(sx, -0.25, ssy, 0.25, h.Ay);
  combine(ssx, 0.25, sy, -0.25, h.Qx);
  combine(ssy, 0.25, sx, 0.25, h.Qy);
  return h;
}

void compute_hopf(CurveField& f) {
  for (int c = 0; c < 2; ++c) {
    ChartData& cd = f.chart[c];
    if (cd.hopf_cached) continue;
    HopfGrids h = hopf_stencil(f, c);
    cd.Ax = std::move(h.Ax);
    cd.Ay = std::move(h.Ay);
    cd.Qx = std::move(h.Qx);
    cd.Qy = std::move(h.Qy);
    cd.hopf_cached = true;
  }
}

HopfGrids hopf_from_exact(const CurveField& f, int chart) {
  const ChartData& cd = f.chart[chart];
  if (cd.dS_x.empty() || cd.dS_y.empty())
    throw PreconditionError("hopf_from_exact: field has no stored dS grids");
  const int d2 = f.dim * f.dim;
  HopfGrids h;
  QGrid ssx(f.grid, d2), ssy(f.grid, d2);
  simd::qgemm(cd.S.q.data(), cd.dS_x.q.data(), ssx.q.data(), f.dim, f.samples());
  simd::qgemm(cd.S.q.data(), cd.dS_y.q.data(), ssy.q.data(), f.dim, f.samples());
  combine(cd.dS_y, 0.25, ssx, 0.25, h.Ax);
  combine(cd.dS_x, -0.25, ssy, 0.25, h.Ay);
  combine(ssx, 0.25, cd.dS_y, -0.25, h.Qx);
  combine(ssy, 0.25, cd.dS_x, 0.25, h.Qy);
  return h;
}

void second_derivs_of_S(const CurveField& f, int chart, QGrid& sxx, QGrid& sxy, QGrid& syy) {
  const ChartData& cd = f.chart[chart];
  if (!cd.d2S_xx.empty()) {
    sxx = cd.d2S_xx;
    sxy = cd.d2S_xy;
    syy = cd.d2S_yy;
    return;
  }
  QGrid sx = cd.dS_x, sy = cd.dS_y;
  if (sx.empty()) {
    deriv_x(f.grid, cd.S, sx);
    deriv_y(f.grid, cd.S, sy);
  }
  deriv_x(f.grid, sx, sxx);
  deriv_y(f.grid, sx, sxy);
  deriv_y(f.grid, sy, syy);
}

namespace {

constexpr char kMagic[8] = {'H', 'P', 'N', 'F', 'L', 'D', '1', '\n'};

void put_u32(std::ofstream& out, std::uint32_t v) {
  out.write(reinterpret_cast<const char*>(&v), 4);
}
std::uint32_t get_u32(std::ifstream& in) {
  std::uint32_t v = 0;
  in.read(reinterpret_cast<char*>(&v), 4);
  return v;
}

void put_grid(std::ofstream& out, const QGrid& g) {
  put_u32(out, g.empty() ? 0u : 1u);
  if (g.empty()) return;
  put_u32(out, static_cast<std::uint32_t>(g.comps));
  out.write(reinterpret_cast<const char*>(g.q.data()),
            static_cast<std::streamsize>(g.q.size() * sizeof(Quat)));
}

void get_grid(std::ifstream& in, const ChartGrid& grid, QGrid& g) {
  const std::uint32_t present = get_u32(in);
  if (!present) {
    g = QGrid{};
    return;
  }
  g.comps = static_cast<int>(get_u32(in));
  g.q.resize(grid.samples() * static_cast<std::size_t>(g.comps));
  in.read(reinterpret_cast<char*>(g.q.data()),
          static_cast<std::streamsize>(g.q.size() * sizeof(Quat)));
}

void put_str(std::ofstream& out, const std::string& s) {
  put_u32(out, static_cast<std::uint32_t>(s.size()));
  out.write(s.data(), static_cast<std::streamsize>(s.size()));
}
std::string get_str(std::ifstream& in) {
  std::string s(get_u32(in), '\0');
  in.read(s.data(), static_cast<std::streamsize>(s.size()));
  return s;
}

}  // namespace

void save_field(const CurveField& f, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write field dump: " + path);
  out.write(kMagic, 8);
  put_u32(out, static_cast<std::uint32_t>(f.n));
  put_u32(out, static_cast<std::uint32_t>(f.dim));
  put_u32(out, static_cast<std::uint32_t>(f.grid.n_side));
  const double eps = f.grid.eps;
  out.write(reinterpret_cast<const char*>(&eps), 8);
  put_u32(out, static_cast<std::uint32_t>(f.provenance));
  put_u32(out, (f.exact_first ? 1u : 0u) | (f.exact_second ? 2u : 0u));
  put_u32(out, static_cast<std::uint32_t>(f.meta.kv.size()));
  for (const auto& [k, v] : f.meta.kv) {
    put_str(out, k);
    put_str(out, v);
  }
  for (int c = 0; c < 2; ++c) {
    const ChartData& cd = f.chart[c];
    for (const QGrid* g : {&cd.psi, &cd.dpsi_x, &cd.dpsi_y, &cd.d2psi_xx, &cd.d2psi_xy,
                           &cd.d2psi_yy, &cd.S, &cd.dS_x, &cd.dS_y, &cd.d2S_xx, &cd.d2S_xy,
                           &cd.d2S_yy})
      put_grid(out, *g);
    put_u32(out, static_cast<std::uint32_t>(cd.P.size()));
    for (const QGrid& g : cd.P) put_grid(out, g);
    put_u32(out, static_cast<std::uint32_t>(cd.dP_x.size()));
    for (const QGrid& g : cd.dP_x) put_grid(out, g);
    for (const QGrid& g : cd.dP_y) put_grid(out, g);
  }
  if (!out) throw IoError("write failed: " + path);
}

CurveField load_field(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open field dump: " + path);
  char magic[8];
  in.read(magic, 8);
  if (std::memcmp(magic, kMagic, 8) != 0) throw IoError("bad field dump header: " + path);
  CurveField f;
  f.n = static_cast<int>(get_u32(in));
  f.dim = static_cast<int>(get_u32(in));
  const int n_side = static_cast<int>(get_u32(in));
  double eps = 0.1;
  in.read(reinterpret_cast<char*>(&eps), 8);
  f.grid = ChartGrid(n_side, eps);
  f.provenance = static_cast<Provenance>(get_u32(in));
  const std::uint32_t flags = get_u32(in);
  f.exact_first = flags & 1u;
  f.exact_second = flags & 2u;
  const std::uint32_t nmeta = get_u32(in);
  for (std::uint32_t i = 0; i < nmeta; ++i) {
    std::string k = get_str(in);
    std::string v = get_str(in);
    f.meta.kv.emplace_back(std::move(k), std::move(v));
  }
  for (int c = 0; c < 2; ++c) {
    ChartData& cd = f.chart[c];
    for (QGrid* g : {&cd.psi, &cd.dpsi_x, &cd.dpsi_y, &cd.d2psi_xx, &cd.d2psi_xy, &cd.d2psi_yy,
                     &cd.S, &cd.dS_x, &cd.dS_y, &cd.d2S_xx, &cd.d2S_xy, &cd.d2S_yy})
      get_grid(in, f.grid, *g);
    const std::uint32_t np = get_u32(in);
    cd.P.resize(np);
    for (QGrid& g : cd.P) get_grid(in, f.grid, g);
    const std::uint32_t ndp = get_u32(in);
    cd.dP_x.resize(ndp);
    cd.dP_y.resize(ndp);
    for (QGrid& g : cd.dP_x) get_grid(in, f.grid, g);
    for (QGrid& g : cd.dP_y) get_grid(in, f.grid, g);
  }
  if (!in) throw IoError("truncated field dump: " + path);
  return f;
}

}  // namespace hpn
