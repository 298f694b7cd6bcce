#include "erpic/sampling.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "erpic/errors.hpp"
#include "erpic/rng.hpp"

namespace erpic {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

// Gauss-Legendre nodes/weights on [-1,1] by Newton iteration on P_n.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(static_cast<std::size_t>(n), 0.0);
  weights.assign(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    nodes[static_cast<std::size_t>(i)] = -x;
    nodes[static_cast<std::size_t>(n - 1 - i)] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    weights[static_cast<std::size_t>(i)] = w;
    weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
}

}  // namespace

InitialDistribution InitialDistribution::two_bump(double eta, double k, double x_lo, double x_hi,
                                                  double y_lo, double y_hi, double v_max) {
  InitialDistribution d;
  d.kind = Kind::TwoBump;
  d.eta = eta;
  d.k = k;
  d.x_lo = x_lo;
  d.x_hi = x_hi;
  d.y_lo = y_lo;
  d.y_hi = y_hi;
  d.v_max = v_max;
  if (!(k > 0.0)) throw ConfigError("two_bump: k must be positive");
  if (std::abs(eta) > 1.0) throw ConfigError("two_bump: |eta| <= 1 required for f0 >= 0");
  return d;
}

InitialDistribution InitialDistribution::diocotron(double alpha, int l, double r_minus,
                                                   double r_plus, double x_lo, double x_hi,
                                                   double y_lo, double y_hi, double v_max) {
  InitialDistribution d;
  d.kind = Kind::Diocotron;
  d.alpha = alpha;
  d.l = l;
  d.r_minus = r_minus;
  d.r_plus = r_plus;
  d.x_lo = x_lo;
  d.x_hi = x_hi;
  d.y_lo = y_lo;
  d.y_hi = y_hi;
  d.v_max = v_max;
  if (!(r_minus >= 0.0) || !(r_plus > r_minus)) {
    throw ConfigError("diocotron: require 0 <= r_minus < r_plus");
  }
  if (std::abs(alpha) > 1.0) throw ConfigError("diocotron: |alpha| <= 1 required for f0 >= 0");
  if (l < 0) throw ConfigError("diocotron: l must be non-negative");
  return d;
}

double InitialDistribution::density(double x, double y, double v1, double v2) const {
  if (kind == Kind::TwoBump) {
    const double spatial = 1.0 + std::sin(y) + eta * std::cos(k * x);
    const double dm = (v1 + 2.0) * (v1 + 2.0) + v2 * v2;
    const double dp = (v1 - 2.0) * (v1 - 2.0) + v2 * v2;
    return spatial * (std::exp(-0.5 * dm) + std::exp(-0.5 * dp)) / (4.0 * M_PI);
  }
  const double r = std::hypot(x, y);
  if (r < r_minus || r > r_plus) return 0.0;
  const double theta = std::atan2(y, x);  // full polar angle
  const double dr = r - ring_radius;
  const double d0 = (1.0 + alpha * std::cos(l * theta)) * std::exp(-4.0 * dr * dr);
  return d0 * std::exp(-0.5 * (v1 * v1 + v2 * v2)) / kTwoPi;
}

double InitialDistribution::envelope() const {
  if (kind == Kind::TwoBump) {
    // velocity factor peaks just inside the bump centers; 1e-3 headroom
    // comfortably covers the e^-8 cross term.
    return (2.0 + std::abs(eta)) * (1.0 + 1e-3) / (4.0 * M_PI);
  }
  return (1.0 + std::abs(alpha)) * (1.0 + 1e-9) / kTwoPi;
}

double distribution_integral(const InitialDistribution& dist) {
  if (dist.kind == InitialDistribution::Kind::TwoBump) {
    // closed form; the two full-mass Gaussians normalize the velocity
    // integral to exactly 1
    const double lx = dist.x_hi - dist.x_lo;
    const double ly = dist.y_hi - dist.y_lo;
    const double spatial = lx * ly + lx * (std::cos(dist.y_lo) - std::cos(dist.y_hi)) +
                           dist.eta * ly * (std::sin(dist.k * dist.x_hi) - std::sin(dist.k * dist.x_lo)) / dist.k;
    return spatial;
  }
  // polar product rule: Gauss-Legendre radially, uniform trapezoid in the
  // angle (exact for cos(l*theta) once the point count clears 2l)
  const int nr = 64;
  const int ntheta = std::max(64, 4 * dist.l + 8);
  std::vector<double> gl_x, gl_w;
  gauss_legendre(nr, gl_x, gl_w);
  const double rmid = 0.5 * (dist.r_plus + dist.r_minus);
  const double rhal = 0.5 * (dist.r_plus - dist.r_minus);
  double ang = 0.0;
  for (int m = 0; m < ntheta; ++m) {
    const double theta = kTwoPi * m / ntheta;
    ang += 1.0 + dist.alpha * std::cos(dist.l * theta);
  }
  ang *= kTwoPi / ntheta;
  double rad = 0.0;
  for (int i = 0; i < nr; ++i) {
    const double r = rmid + rhal * gl_x[static_cast<std::size_t>(i)];
    const double dr = r - dist.ring_radius;
    rad += gl_w[static_cast<std::size_t>(i)] * std::exp(-4.0 * dr * dr) * r;
  }
  rad *= rhal;
  return ang * rad;  // velocity Maxwellian integrates to exactly 1
}

ParticleEnsemble sample_ensemble(const InitialDistribution& dist, std::size_t n_p,
                                 std::uint64_t seed) {
  if (n_p < 1) throw ConfigError("sample_ensemble: n_p must be >= 1");
  const double envelope = dist.envelope();
  const double q_total = distribution_integral(dist);

  ParticleEnsemble ens;
  ens.x.reserve(n_p);
  ens.y.reserve(n_p);
  ens.vx.reserve(n_p);
  ens.vy.reserve(n_p);

  UniformRng rng(seed);
  std::uint64_t attempts = 0;
  std::uint64_t accepted = 0;
  while (accepted < n_p) {
    const double x = rng.next_in(dist.x_lo, dist.x_hi);
    const double y = rng.next_in(dist.y_lo, dist.y_hi);
    const double v1 = rng.next_in(-dist.v_max, dist.v_max);
    const double v2 = rng.next_in(-dist.v_max, dist.v_max);
    const double u = rng.next();
    ++attempts;
    const double f = dist.density(x, y, v1, v2);
    if (f > envelope) {
      throw NumericalError("sample_ensemble: envelope violated, f0=" + std::to_string(f) +
                           " > M=" + std::to_string(envelope));
    }
    if (u * envelope < f) {
      ens.x.push_back(x);
      ens.y.push_back(y);
      ens.vx.push_back(v1);
      ens.vy.push_back(v2);
      ++accepted;
    }
    if (attempts >= 20000 && attempts % 4096 == 0 &&
        static_cast<double>(accepted) < 1e-3 * static_cast<double>(attempts)) {
      throw NumericalError("sample_ensemble: acceptance rate below 1e-3 after " +
                           std::to_string(attempts) + " proposals (misconfigured envelope?)");
    }
  }
  ens.w.assign(n_p, q_total / static_cast<double>(n_p));
  return ens;
}

}  // namespace erpic
