#include "erpic/io.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

#include "erpic/errors.hpp"

namespace erpic {

namespace {

constexpr char kEnsembleMagic[8] = {'E', 'R', 'P', 'I', 'C', 'E', 'N', '1'};

void put_u64_le(std::ostream& os, std::uint64_t v) {
  char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  os.write(b, 8);
}

std::uint64_t get_u64_le(std::istream& is) {
  unsigned char b[8];
  is.read(reinterpret_cast<char*>(b), 8);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return v;
}

void put_f64_le(std::ostream& os, double d) {
  std::uint64_t v;
  std::memcpy(&v, &d, 8);
  put_u64_le(os, v);
}

double get_f64_le(std::istream& is) {
  const std::uint64_t v = get_u64_le(is);
  double d;
  std::memcpy(&d, &v, 8);
  return d;
}

std::ofstream open_out(const std::filesystem::path& path, std::ios::openmode mode) {
  std::ofstream os(path, mode);
  if (!os) throw NumericalError("cannot open for writing: " + path.string());
  return os;
}

}  // namespace

void write_snapshot(const std::filesystem::path& path, const ScalarField& field, double time) {
  std::ofstream os = open_out(path, std::ios::out | std::ios::trunc);
  const Grid2D& g = field.grid;
  os << "# " << g.nx << ' ' << g.ny << ' ' << format_double(g.x_lo) << ' '
     << format_double(g.x_hi) << ' ' << format_double(g.y_lo) << ' ' << format_double(g.y_hi)
     << ' ' << format_double(time) << '\n';
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      if (i > 0) os << ',';
      os << format_double(field.at(i, j));
    }
    os << '\n';
  }
  if (!os) throw NumericalError("failed while writing " + path.string());
}

ScalarField read_snapshot(const std::filesystem::path& path, double* time_out) {
  std::ifstream is(path);
  if (!is) throw NumericalError("cannot open for reading: " + path.string());
  std::string header;
  std::getline(is, header);
  if (header.empty() || header[0] != '#') {
    throw NumericalError("snapshot " + path.string() + ": missing '#' header line");
  }
  std::istringstream hs(header.substr(1));
  int nx = 0, ny = 0;
  double x_lo, x_hi, y_lo, y_hi, t;
  if (!(hs >> nx >> ny >> x_lo >> x_hi >> y_lo >> y_hi >> t)) {
    throw NumericalError("snapshot " + path.string() + ": malformed header");
  }
  ScalarField field(Grid2D::make(nx, ny, x_lo, x_hi, y_lo, y_hi));
  std::size_t count = 0;
  std::string token;
  while (count < field.values.size() && is) {
    int c = is.peek();
    if (c == ',' || c == '\n' || c == '\r' || c == ' ' || c == '\t') {
      is.get();
      continue;
    }
    if (!(is >> token)) break;
    // token may still carry commas when values are packed without spaces
    std::stringstream ts(token);
    std::string piece;
    while (std::getline(ts, piece, ',') && count < field.values.size()) {
      if (piece.empty()) continue;
      field.values[count++] = std::strtod(piece.c_str(), nullptr);
    }
  }
  if (count != field.values.size()) {
    throw NumericalError("snapshot " + path.string() + ": expected " +
                         std::to_string(field.values.size()) + " values, got " +
                         std::to_string(count));
  }
  if (time_out != nullptr) *time_out = t;
  return field;
}

void write_marginal(const std::filesystem::path& path, const VelocityMarginal& marginal,
                    double time) {
  ScalarField f(marginal.v_grid);
  f.values = marginal.values;
  write_snapshot(path, f, time);
}

void dump_ensemble(const std::filesystem::path& path, const ParticleEnsemble& ensemble) {
  if (ensemble.velocity_dim() != 2) {
    throw NumericalError("dump_ensemble: d=2 ensembles only");
  }
  std::ofstream os = open_out(path, std::ios::out | std::ios::trunc | std::ios::binary);
  os.write(kEnsembleMagic, 8);
  put_u64_le(os, ensemble.size());
  for (std::size_t k = 0; k < ensemble.size(); ++k) {
    put_f64_le(os, ensemble.x[k]);
    put_f64_le(os, ensemble.y[k]);
  }
  for (std::size_t k = 0; k < ensemble.size(); ++k) {
    put_f64_le(os, ensemble.vx[k]);
    put_f64_le(os, ensemble.vy[k]);
  }
  for (std::size_t k = 0; k < ensemble.size(); ++k) put_f64_le(os, ensemble.w[k]);
  if (!os) throw NumericalError("failed while writing " + path.string());
}

ParticleEnsemble load_ensemble(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::in | std::ios::binary);
  if (!is) throw NumericalError("cannot open for reading: " + path.string());
  char magic[8];
  is.read(magic, 8);
  if (!is || std::memcmp(magic, kEnsembleMagic, 8) != 0) {
    throw NumericalError("ensemble file " + path.string() + ": bad magic");
  }
  const std::uint64_t n = get_u64_le(is);
  ParticleEnsemble ens;
  ens.x.resize(n);
  ens.y.resize(n);
  ens.vx.resize(n);
  ens.vy.resize(n);
  ens.w.resize(n);
  for (std::uint64_t k = 0; k < n; ++k) {
    ens.x[k] = get_f64_le(is);
    ens.y[k] = get_f64_le(is);
  }
  for (std::uint64_t k = 0; k < n; ++k) {
    ens.vx[k] = get_f64_le(is);
    ens.vy[k] = get_f64_le(is);
  }
  for (std::uint64_t k = 0; k < n; ++k) ens.w[k] = get_f64_le(is);
  if (!is) throw NumericalError("ensemble file " + path.string() + ": truncated");
  return ens;
}

void write_energy_csv(const std::filesystem::path& path, std::span<const StepRecord> records,
                      double h_initial) {
  std::ofstream os = open_out(path, std::ios::out | std::ios::trunc);
  os << "step,time,H,relH_err,gamma,branch,discriminant\n";
  const double scale = std::abs(h_initial);
  for (const auto& r : records) {
    const double rel = scale > 0.0 ? std::abs(r.energy - h_initial) / scale : 0.0;
    os << r.step_index << ',' << format_double(r.time) << ',' << format_double(r.energy) << ','
       << format_double(rel) << ',' << format_double(r.gamma) << ',' << static_cast<int>(r.branch)
       << ',' << format_double(r.discriminant) << '\n';
  }
  if (!os) throw NumericalError("failed while writing " + path.string());
}

void write_errors_csv(const std::filesystem::path& path, std::span<const ConvergenceRow> rows) {
  std::ofstream os = open_out(path, std::ios::out | std::ios::trunc);
  os << "eps,dt,err_rho_rhov,order\n";
  for (const auto& r : rows) {
    os << format_double(r.eps) << ',' << format_double(r.dt) << ',' << format_double(r.err) << ',';
    if (r.order.has_value()) os << format_double(*r.order);
    os << '\n';
  }
  if (!os) throw NumericalError("failed while writing " + path.string());
}

}  // namespace erpic
