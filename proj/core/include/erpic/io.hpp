#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>

#include "erpic/diagnostics.hpp"
#include "erpic/format.hpp"
#include "erpic/grid.hpp"
#include "erpic/integrator.hpp"
#include "erpic/particles.hpp"

namespace erpic {

/// Snapshot format: one header line `# nx ny x_lo x_hi y_lo y_hi t`, then
/// the nx*ny values comma-separated in row-major (i fastest) order, one
/// j-row per line.
void write_snapshot(const std::filesystem::path& path, const ScalarField& field, double time);
ScalarField read_snapshot(const std::filesystem::path& path, double* time_out = nullptr);

/// Velocity marginals reuse the snapshot format over the velocity grid.
void write_marginal(const std::filesystem::path& path, const VelocityMarginal& marginal,
                    double time);

/// Binary ensemble file: 8-byte magic "ERPICEN1", little-endian u64 count,
/// then positions (x,y per particle), velocities (vx,vy), weights, all as
/// little-endian 64-bit floats. d=2 only.
void dump_ensemble(const std::filesystem::path& path, const ParticleEnsemble& ensemble);
ParticleEnsemble load_ensemble(const std::filesystem::path& path);

/// energy.csv: header `step,time,H,relH_err,gamma,branch,discriminant`,
/// one row per completed step; relH_err is measured against h_initial.
void write_energy_csv(const std::filesystem::path& path, std::span<const StepRecord> records,
                      double h_initial);

struct ConvergenceRow {
  double eps = 0.0;
  double dt = 0.0;
  double err = 0.0;
  std::optional<double> order;  // empty for the first dt of each eps
};

/// errors.csv: header `eps,dt,err_rho_rhov,order`; the order field is left
/// empty where undefined.
void write_errors_csv(const std::filesystem::path& path, std::span<const ConvergenceRow> rows);

}  // namespace erpic
