#include "erpic/deposit.hpp"

#include <cmath>
#include <vector>

#include "erpic/bspline.hpp"
#include "erpic/errors.hpp"
#include "erpic/threads.hpp"

namespace erpic {

namespace {

// Index-space coordinate in [0, n). Positions are normally canonical, so the
// two-branch wrap covers them; stage positions of the reference integrator
// may sit further outside and fall back to the full wrap.
inline double wrap_index(double g, double n) {
  if (g >= 0.0 && g < n) return g;
  if (g >= n) {
    g -= n;
    if (g < n) return g;
  } else {
    g += n;
    if (g >= 0.0) return g;
  }
  g -= n * std::floor(g / n);
  if (g >= n || g < 0.0) g = 0.0;
  return g;
}

// Per-call precomputed geometry: keeps the hot loops free of divisions.
struct Geom {
  double x_lo, y_lo, inv_dx, inv_dy, fnx, fny;
  int nx, ny;
  explicit Geom(const Grid2D& g)
      : x_lo(g.x_lo),
        y_lo(g.y_lo),
        inv_dx(1.0 / g.dx()),
        inv_dy(1.0 / g.dy()),
        fnx(static_cast<double>(g.nx)),
        fny(static_cast<double>(g.ny)),
        nx(g.nx),
        ny(g.ny) {}
};

struct Stencil {
  int ix[6];
  int iy[6];
  double wx[6];
  double wy[6];
};

inline void build_stencil(const Geom& g, double x, double y, Stencil& st) {
  const double gx = wrap_index((x - g.x_lo) * g.inv_dx, g.fnx);
  const double gy = wrap_index((y - g.y_lo) * g.inv_dy, g.fny);
  const int ix0 = static_cast<int>(gx);
  const int iy0 = static_cast<int>(gy);
  detail::quintic_weights(gx - ix0, st.wx);
  detail::quintic_weights(gy - iy0, st.wy);
  for (int m = 0; m < 6; ++m) {
    int i = ix0 + m - 2;
    if (i < 0) i += g.nx;
    if (i >= g.nx) i -= g.nx;
    st.ix[m] = i;
    int j = iy0 + m - 2;
    if (j < 0) j += g.ny;
    if (j >= g.ny) j -= g.ny;
    st.iy[m] = j;
  }
}

// The row-contiguous fast path below keeps the exact per-particle, row-major
// accumulation order of the generic path, so deposits stay bitwise
// translation-equivariant; only the addressing differs.
void deposit_range(const Geom& g, const double* xs, const double* ys, const double* ws,
                   std::size_t begin, std::size_t end, double* rho) {
  const double inv_area = g.inv_dx * g.inv_dy;
  const int nx = g.nx;
  const int ny = g.ny;
  double wx[6], wy[6];
  int jdx[6];
  for (std::size_t k = begin; k < end; ++k) {
    const double gx = wrap_index((xs[k] - g.x_lo) * g.inv_dx, g.fnx);
    const double gy = wrap_index((ys[k] - g.y_lo) * g.inv_dy, g.fny);
    const int ix0 = static_cast<int>(gx);
    const int iy0 = static_cast<int>(gy);
    detail::quintic_weights(gx - ix0, wx);
    detail::quintic_weights(gy - iy0, wy);
    for (int m = 0; m < 6; ++m) {
      int j = iy0 + m - 2;
      if (j < 0) j += ny;
      if (j >= ny) j -= ny;
      jdx[m] = j;
    }
    const double c = ws[k] * inv_area;
    if (ix0 >= 2 && ix0 <= nx - 4) {
      const int col = ix0 - 2;
      for (int b = 0; b < 6; ++b) {
        const double cy = c * wy[b];
        double* seg = rho + static_cast<std::size_t>(jdx[b]) * nx + col;
        for (int a = 0; a < 6; ++a) seg[a] += cy * wx[a];
      }
    } else {
      int idx[6];
      for (int m = 0; m < 6; ++m) {
        int i = ix0 + m - 2;
        if (i < 0) i += nx;
        if (i >= nx) i -= nx;
        idx[m] = i;
      }
      for (int b = 0; b < 6; ++b) {
        const double cy = c * wy[b];
        double* row = rho + static_cast<std::size_t>(jdx[b]) * nx;
        for (int a = 0; a < 6; ++a) row[idx[a]] += cy * wx[a];
      }
    }
  }
}

}  // namespace

ScalarField deposit_weighted(const Grid2D& grid, std::span<const double> xs,
                             std::span<const double> ys, std::span<const double> weights) {
  if (ys.size() != xs.size() || weights.size() != xs.size()) {
    throw NumericalError("deposit_weighted: mismatched array sizes");
  }
  ScalarField out(grid);
  const Geom geom(grid);
  const int workers = thread_count();
  if (workers <= 1) {
    deposit_range(geom, xs.data(), ys.data(), weights.data(), 0, xs.size(), out.values.data());
    return out;
  }
  // One buffer per chunk, combined in chunk order: bitwise-reproducible for
  // a fixed thread configuration.
  std::vector<std::vector<double>> partial(static_cast<std::size_t>(workers));
  parallel_chunks(xs.size(), workers, [&](int t, std::size_t b, std::size_t e) {
    auto& buf = partial[static_cast<std::size_t>(t)];
    buf.assign(static_cast<std::size_t>(grid.size()), 0.0);
    deposit_range(geom, xs.data(), ys.data(), weights.data(), b, e, buf.data());
  });
  for (const auto& buf : partial) {
    if (buf.empty()) continue;
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] += buf[i];
  }
  return out;
}

ScalarField deposit_density(const ParticleEnsemble& ensemble, const Grid2D& grid) {
  if (ensemble.velocity_dim() != 2) {
    throw NumericalError("deposit_density: ensemble must have 2-component velocities");
  }
  return deposit_weighted(grid, ensemble.x, ensemble.y, ensemble.w);
}

namespace {

struct CachedStencil {
  double wx[6];
  double wy[6];
  int jrow[6];
  int ix0;
};

void build_stencil_cache(const Geom& g, const double* xs, const double* ys, std::size_t b,
                         std::size_t e, CachedStencil* cache) {
  for (std::size_t k = b; k < e; ++k) {
    CachedStencil& st = cache[k];
    const double gx = wrap_index((xs[k] - g.x_lo) * g.inv_dx, g.fnx);
    const double gy = wrap_index((ys[k] - g.y_lo) * g.inv_dy, g.fny);
    st.ix0 = static_cast<int>(gx);
    const int iy0 = static_cast<int>(gy);
    detail::quintic_weights(gx - st.ix0, st.wx);
    detail::quintic_weights(gy - iy0, st.wy);
    for (int m = 0; m < 6; ++m) {
      int j = iy0 + m - 2;
      if (j < 0) j += g.ny;
      if (j >= g.ny) j -= g.ny;
      st.jrow[m] = j;
    }
  }
}

// same accumulation order as deposit_range
void deposit_cached(const Geom& g, const CachedStencil* cache, const double* ws, std::size_t b,
                    std::size_t e, double* rho) {
  const double inv_area = g.inv_dx * g.inv_dy;
  const int nx = g.nx;
  for (std::size_t k = b; k < e; ++k) {
    const CachedStencil& st = cache[k];
    const double c = ws[k] * inv_area;
    if (st.ix0 >= 2 && st.ix0 <= nx - 4) {
      const int col = st.ix0 - 2;
      for (int jb = 0; jb < 6; ++jb) {
        const double cy = c * st.wy[jb];
        double* seg = rho + static_cast<std::size_t>(st.jrow[jb]) * nx + col;
        for (int a = 0; a < 6; ++a) seg[a] += cy * st.wx[a];
      }
    } else {
      int idx[6];
      for (int m = 0; m < 6; ++m) {
        int i = st.ix0 + m - 2;
        if (i < 0) i += nx;
        if (i >= nx) i -= nx;
        idx[m] = i;
      }
      for (int jb = 0; jb < 6; ++jb) {
        const double cy = c * st.wy[jb];
        double* row = rho + static_cast<std::size_t>(st.jrow[jb]) * nx;
        for (int a = 0; a < 6; ++a) row[idx[a]] += cy * st.wx[a];
      }
    }
  }
}

// same summation trees as interpolate_batch
void gather_cached(const VectorField2D& field, const CachedStencil* cache, std::size_t b,
                   std::size_t e, double* out_ex, double* out_ey) {
  const int nx = field.grid.nx;
  const double* e1 = field.e1.data();
  const double* e2 = field.e2.data();
  for (std::size_t k = b; k < e; ++k) {
    const CachedStencil& st = cache[k];
    const double* wx = st.wx;
    double r1[6], r2[6];
    if (st.ix0 >= 2 && st.ix0 <= nx - 4) {
      const int col = st.ix0 - 2;
      for (int jb = 0; jb < 6; ++jb) {
        const double* s1 = e1 + static_cast<std::size_t>(st.jrow[jb]) * nx + col;
        const double* s2 = e2 + static_cast<std::size_t>(st.jrow[jb]) * nx + col;
        r1[jb] = ((wx[0] * s1[0] + wx[1] * s1[1]) + (wx[2] * s1[2] + wx[3] * s1[3])) +
                 (wx[4] * s1[4] + wx[5] * s1[5]);
        r2[jb] = ((wx[0] * s2[0] + wx[1] * s2[1]) + (wx[2] * s2[2] + wx[3] * s2[3])) +
                 (wx[4] * s2[4] + wx[5] * s2[5]);
      }
    } else {
      std::size_t idx[6];
      for (int m = 0; m < 6; ++m) {
        int i = st.ix0 + m - 2;
        if (i < 0) i += nx;
        if (i >= nx) i -= nx;
        idx[m] = static_cast<std::size_t>(i);
      }
      for (int jb = 0; jb < 6; ++jb) {
        const double* s1 = e1 + static_cast<std::size_t>(st.jrow[jb]) * nx;
        const double* s2 = e2 + static_cast<std::size_t>(st.jrow[jb]) * nx;
        r1[jb] = ((wx[0] * s1[idx[0]] + wx[1] * s1[idx[1]]) +
                  (wx[2] * s1[idx[2]] + wx[3] * s1[idx[3]])) +
                 (wx[4] * s1[idx[4]] + wx[5] * s1[idx[5]]);
        r2[jb] = ((wx[0] * s2[idx[0]] + wx[1] * s2[idx[1]]) +
                  (wx[2] * s2[idx[2]] + wx[3] * s2[idx[3]])) +
                 (wx[4] * s2[idx[4]] + wx[5] * s2[idx[5]]);
      }
    }
    const double* wy = st.wy;
    out_ex[k] = ((wy[0] * r1[0] + wy[1] * r1[1]) + (wy[2] * r1[2] + wy[3] * r1[3])) +
                (wy[4] * r1[4] + wy[5] * r1[5]);
    out_ey[k] = ((wy[0] * r2[0] + wy[1] * r2[1]) + (wy[2] * r2[2] + wy[3] * r2[3])) +
                (wy[4] * r2[4] + wy[5] * r2[5]);
  }
}

}  // namespace

void field_at_particles(const PoissonSolver2D& solver, std::span<const double> xs,
                        std::span<const double> ys, std::span<const double> ws,
                        std::span<double> out_ex, std::span<double> out_ey) {
  const std::size_t n = xs.size();
  if (ys.size() != n || ws.size() != n || out_ex.size() != n || out_ey.size() != n) {
    throw NumericalError("field_at_particles: mismatched array sizes");
  }
  const Grid2D& grid = solver.grid();
  const Geom geom(grid);
  thread_local std::vector<CachedStencil> cache;
  cache.resize(n);
  CachedStencil* const stencils = cache.data();  // resolved on the calling thread

  const int workers = thread_count();
  parallel_chunks(n, workers, [&](int, std::size_t b, std::size_t e) {
    build_stencil_cache(geom, xs.data(), ys.data(), b, e, stencils);
  });

  ScalarField rho(grid);
  if (workers <= 1) {
    deposit_cached(geom, stencils, ws.data(), 0, n, rho.values.data());
  } else {
    std::vector<std::vector<double>> partial(static_cast<std::size_t>(workers));
    parallel_chunks(n, workers, [&](int t, std::size_t b, std::size_t e) {
      auto& buf = partial[static_cast<std::size_t>(t)];
      buf.assign(static_cast<std::size_t>(grid.size()), 0.0);
      deposit_cached(geom, stencils, ws.data(), b, e, buf.data());
    });
    for (const auto& buf : partial) {
      if (buf.empty()) continue;
      for (std::size_t i = 0; i < rho.values.size(); ++i) rho.values[i] += buf[i];
    }
  }

  const VectorField2D field = solver.solve(rho);
  parallel_chunks(n, workers, [&](int, std::size_t b, std::size_t e) {
    gather_cached(field, stencils, b, e, out_ex.data(), out_ey.data());
  });
}

Vec2 interpolate_field(const VectorField2D& field, Vec2 position) {
  if (!std::isfinite(position.x) || !std::isfinite(position.y)) {
    throw NumericalError("interpolate_field: non-finite position");
  }
  double x = position.x, y = position.y, ex = 0.0, ey = 0.0;
  interpolate_batch(field, std::span<const double>(&x, 1), std::span<const double>(&y, 1),
                    std::span<double>(&ex, 1), std::span<double>(&ey, 1));
  return {ex, ey};
}

void interpolate_batch(const VectorField2D& field, std::span<const double> xs,
                       std::span<const double> ys, std::span<double> out_ex,
                       std::span<double> out_ey) {
  if (ys.size() != xs.size() || out_ex.size() != xs.size() || out_ey.size() != xs.size()) {
    throw NumericalError("interpolate_batch: mismatched array sizes");
  }
  const int nx = field.grid.nx;
  const int ny = field.grid.ny;
  const Geom geom(field.grid);
  const double* e1 = field.e1.data();
  const double* e2 = field.e2.data();
  parallel_chunks(xs.size(), thread_count(), [&](int, std::size_t b, std::size_t e) {
    double wx[6], wy[6];
    int jdx[6];
    for (std::size_t k = b; k < e; ++k) {
      const double gx = wrap_index((xs[k] - geom.x_lo) * geom.inv_dx, geom.fnx);
      const double gy = wrap_index((ys[k] - geom.y_lo) * geom.inv_dy, geom.fny);
      const int ix0 = static_cast<int>(gx);
      const int iy0 = static_cast<int>(gy);
      detail::quintic_weights(gx - ix0, wx);
      detail::quintic_weights(gy - iy0, wy);
      for (int m = 0; m < 6; ++m) {
        int j = iy0 + m - 2;
        if (j < 0) j += ny;
        if (j >= ny) j -= ny;
        jdx[m] = j;
      }
      // row sums gathered into arrays and tree-reduced: short dependency
      // chains, one fixed summation order for every particle
      double r1[6], r2[6];
      if (ix0 >= 2 && ix0 <= nx - 4) {
        const int col = ix0 - 2;
        for (int jb = 0; jb < 6; ++jb) {
          const double* s1 = e1 + static_cast<std::size_t>(jdx[jb]) * nx + col;
          const double* s2 = e2 + static_cast<std::size_t>(jdx[jb]) * nx + col;
          r1[jb] = ((wx[0] * s1[0] + wx[1] * s1[1]) + (wx[2] * s1[2] + wx[3] * s1[3])) +
                   (wx[4] * s1[4] + wx[5] * s1[5]);
          r2[jb] = ((wx[0] * s2[0] + wx[1] * s2[1]) + (wx[2] * s2[2] + wx[3] * s2[3])) +
                   (wx[4] * s2[4] + wx[5] * s2[5]);
        }
      } else {
        std::size_t idx[6];
        for (int m = 0; m < 6; ++m) {
          int i = ix0 + m - 2;
          if (i < 0) i += nx;
          if (i >= nx) i -= nx;
          idx[m] = static_cast<std::size_t>(i);
        }
        for (int jb = 0; jb < 6; ++jb) {
          const double* s1 = e1 + static_cast<std::size_t>(jdx[jb]) * nx;
          const double* s2 = e2 + static_cast<std::size_t>(jdx[jb]) * nx;
          r1[jb] = ((wx[0] * s1[idx[0]] + wx[1] * s1[idx[1]]) +
                    (wx[2] * s1[idx[2]] + wx[3] * s1[idx[3]])) +
                   (wx[4] * s1[idx[4]] + wx[5] * s1[idx[5]]);
          r2[jb] = ((wx[0] * s2[idx[0]] + wx[1] * s2[idx[1]]) +
                    (wx[2] * s2[idx[2]] + wx[3] * s2[idx[3]])) +
                   (wx[4] * s2[idx[4]] + wx[5] * s2[idx[5]]);
        }
      }
      out_ex[k] = ((wy[0] * r1[0] + wy[1] * r1[1]) + (wy[2] * r1[2] + wy[3] * r1[3])) +
                  (wy[4] * r1[4] + wy[5] * r1[5]);
      out_ey[k] = ((wy[0] * r2[0] + wy[1] * r2[1]) + (wy[2] * r2[2] + wy[3] * r2[3])) +
                  (wy[4] * r2[4] + wy[5] * r2[5]);
    }
  });
}

}  // namespace erpic
