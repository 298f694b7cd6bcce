#include "erpic/poisson.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <utility>
#include <vector>

#include "erpic/errors.hpp"

namespace erpic {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

double sumsq_range(const double* a, const double* b, std::size_t lo, std::size_t hi) {
  if (hi - lo <= 32) {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += a[i] * a[i] + b[i] * b[i];
    return s;
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  return sumsq_range(a, b, lo, mid) + sumsq_range(a, b, mid, hi);
}

}  // namespace

struct PoissonSolver2D::Impl {
  Grid2D grid;
  int nkx = 0;  // reduced (fastest) axis length nx/2 + 1
  std::vector<double> kx, ky;
  double* real_buf = nullptr;
  fftw_complex* spec_in = nullptr;   // r2c output
  fftw_complex* spec_out = nullptr;  // c2r input / scratch
  fftw_plan fwd = nullptr;
  fftw_plan inv = nullptr;
  mutable std::mutex exec_mutex;

  explicit Impl(const Grid2D& g) : grid(g), nkx(g.nx / 2 + 1) {
    const std::size_t nreal = static_cast<std::size_t>(g.nx) * g.ny;
    const std::size_t nspec = static_cast<std::size_t>(nkx) * g.ny;
    real_buf = fftw_alloc_real(nreal);
    spec_in = fftw_alloc_complex(nspec);
    spec_out = fftw_alloc_complex(nspec);
    {
      std::lock_guard lock(planner_mutex());
      fwd = fftw_plan_dft_r2c_2d(g.ny, g.nx, real_buf, spec_in, FFTW_ESTIMATE);
      inv = fftw_plan_dft_c2r_2d(g.ny, g.nx, spec_out, real_buf, FFTW_ESTIMATE);
    }
    kx.resize(static_cast<std::size_t>(nkx));
    for (int i = 0; i < nkx; ++i) kx[static_cast<std::size_t>(i)] = 2.0 * M_PI * i / g.lx();
    ky.resize(static_cast<std::size_t>(g.ny));
    for (int j = 0; j < g.ny; ++j) {
      const int jj = (j <= g.ny / 2) ? j : j - g.ny;
      ky[static_cast<std::size_t>(j)] = 2.0 * M_PI * jj / g.ly();
    }
  }

  ~Impl() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(inv);
    fftw_free(real_buf);
    fftw_free(spec_in);
    fftw_free(spec_out);
  }

  bool nyquist_x(int i) const { return grid.nx % 2 == 0 && i == grid.nx / 2; }
  bool nyquist_y(int j) const { return grid.ny % 2 == 0 && j == grid.ny / 2; }
};

PoissonSolver2D::PoissonSolver2D(const Grid2D& grid) : impl_(std::make_unique<Impl>(grid)) {}
PoissonSolver2D::~PoissonSolver2D() = default;

const Grid2D& PoissonSolver2D::grid() const { return impl_->grid; }

VectorField2D PoissonSolver2D::solve(const ScalarField& rho) const {
  Impl& im = *impl_;
  if (!(rho.grid == im.grid)) throw NumericalError("PoissonSolver2D: grid mismatch");
  if (!rho.all_finite()) throw NumericalError("PoissonSolver2D: non-finite density input");

  std::lock_guard lock(im.exec_mutex);
  const std::size_t nreal = rho.values.size();
  const double inv_n = 1.0 / static_cast<double>(nreal);
  for (std::size_t i = 0; i < nreal; ++i) im.real_buf[i] = rho.values[i];
  fftw_execute(im.fwd);

  VectorField2D out(im.grid);
  // E_hat = -i k rho_hat' / |k|^2, rho_hat' with the mean (k=0) removed.
  for (int comp = 0; comp < 2; ++comp) {
    for (int j = 0; j < im.grid.ny; ++j) {
      for (int i = 0; i < im.nkx; ++i) {
        const std::size_t idx = static_cast<std::size_t>(j) * im.nkx + i;
        const double kxv = im.kx[static_cast<std::size_t>(i)];
        const double kyv = im.ky[static_cast<std::size_t>(j)];
        const double k2 = kxv * kxv + kyv * kyv;
        const double kd = comp == 0 ? kxv : kyv;
        const bool drop = k2 == 0.0 || (comp == 0 ? im.nyquist_x(i) : im.nyquist_y(j));
        if (drop) {
          im.spec_out[idx][0] = 0.0;
          im.spec_out[idx][1] = 0.0;
          continue;
        }
        const double a = im.spec_in[idx][0];
        const double b = im.spec_in[idx][1];
        const double f = kd / k2 * inv_n;
        im.spec_out[idx][0] = b * f;
        im.spec_out[idx][1] = -a * f;
      }
    }
    fftw_execute(im.inv);
    auto& dst = comp == 0 ? out.e1 : out.e2;
    for (std::size_t i = 0; i < nreal; ++i) dst[i] = im.real_buf[i];
  }
  return out;
}

ScalarField PoissonSolver2D::divergence(const VectorField2D& field) const {
  Impl& im = *impl_;
  if (!(field.grid == im.grid)) throw NumericalError("PoissonSolver2D: grid mismatch");

  std::lock_guard lock(im.exec_mutex);
  const std::size_t nreal = static_cast<std::size_t>(im.grid.size());
  const std::size_t nspec = static_cast<std::size_t>(im.nkx) * im.grid.ny;
  const double inv_n = 1.0 / static_cast<double>(nreal);
  for (std::size_t i = 0; i < nspec; ++i) {
    im.spec_out[i][0] = 0.0;
    im.spec_out[i][1] = 0.0;
  }
  for (int comp = 0; comp < 2; ++comp) {
    const auto& src = comp == 0 ? field.e1 : field.e2;
    for (std::size_t i = 0; i < nreal; ++i) im.real_buf[i] = src[i];
    fftw_execute(im.fwd);
    for (int j = 0; j < im.grid.ny; ++j) {
      for (int i = 0; i < im.nkx; ++i) {
        if (comp == 0 ? im.nyquist_x(i) : im.nyquist_y(j)) continue;
        const std::size_t idx = static_cast<std::size_t>(j) * im.nkx + i;
        const double kd =
            comp == 0 ? im.kx[static_cast<std::size_t>(i)] : im.ky[static_cast<std::size_t>(j)];
        const double a = im.spec_in[idx][0];
        const double b = im.spec_in[idx][1];
        // i*kd*(a+ib) accumulated, normalized for the inverse transform
        im.spec_out[idx][0] += -kd * b * inv_n;
        im.spec_out[idx][1] += kd * a * inv_n;
      }
    }
  }
  fftw_execute(im.inv);
  ScalarField out(im.grid);
  for (std::size_t i = 0; i < nreal; ++i) out.values[i] = im.real_buf[i];
  return out;
}

VectorField2D solve_poisson(const ScalarField& rho) {
  static std::mutex cache_mutex;
  static std::vector<std::pair<Grid2D, std::unique_ptr<PoissonSolver2D>>> cache;
  PoissonSolver2D* solver = nullptr;
  {
    std::lock_guard lock(cache_mutex);
    for (auto& entry : cache) {
      if (entry.first == rho.grid) {
        solver = entry.second.get();
        break;
      }
    }
    if (solver == nullptr) {
      cache.emplace_back(rho.grid, std::make_unique<PoissonSolver2D>(rho.grid));
      solver = cache.back().second.get();
    }
  }
  return solver->solve(rho);
}

double field_energy(const VectorField2D& field, double lambda) {
  if (!(lambda > 0.0)) throw NumericalError("field_energy: lambda must be positive");
  const double s = sumsq_range(field.e1.data(), field.e2.data(), 0, field.e1.size());
  return 0.5 * lambda * field.grid.cell_area() * s;
}

}  // namespace erpic
