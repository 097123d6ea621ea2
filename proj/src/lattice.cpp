#include "carleson/lattice.hpp"

#include <algorithm>
#include <ostream>
#include <random>

namespace carleson {

namespace {

double shell_spacing(double r, int n) {
  // Bergman distance between adjacent equispaced points on the circle |z| = r.
  DiskPoint p = DiskPoint::polar(r, 0.0);
  DiskPoint q = DiskPoint::polar(r, kTwoPi / n);
  return bergman_distance(p, q);
}

}  // namespace

Lattice build_lattice(double delta, double rho_max) {
  if (!(delta > 0.0) || delta > 2.0) {
    throw std::invalid_argument("build_lattice: delta must lie in (0, 2]");
  }
  if (!(rho_max > 0.0) || rho_max >= 1.0) {
    throw std::invalid_argument("build_lattice: rho_max must lie in (0, 1)");
  }

  Lattice l;
  l.delta = delta;
  l.rho_max = rho_max;
  l.points.push_back(DiskPoint());

  double step = delta / 2.0;
  for (int k = 1;; ++k) {
    double r = std::tanh(k * step / 2.0);  // d(0, r) = atanh(r) = k * step
    if (r > rho_max) break;

    // Smallest point count with adjacent hyperbolic spacing <= delta/2.
    // Spacing at that count stays above delta/4 > delta/5.
    double circ = kTwoPi * r / (1.0 - r * r);  // hyperbolic circumference
    int n = std::max(1, static_cast<int>(std::floor(circ / step)));
    while (n > 1 && shell_spacing(r, n - 1) <= step) --n;
    while (n > 1 && shell_spacing(r, n) > step) ++n;

    double offset = (k % 2 == 1) ? kPi / n : 0.0;
    for (int j = 0; j < n; ++j) {
      l.points.push_back(DiskPoint::polar(r, offset + kTwoPi * j / n));
    }
  }
  return l;
}

LatticeReport verify_lattice(const Lattice& l, int samples, double sample_rho_max,
                             std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("verify_lattice: samples must be >= 1");
  if (l.points.empty()) throw std::invalid_argument("verify_lattice: empty lattice");

  if (sample_rho_max <= 0.0) {
    double r_hyp = std::max(0.0, std::atanh(l.rho_max) - l.delta / 2.0);
    sample_rho_max = std::tanh(r_hyp);
  }

  LatticeReport rep;
  rep.point_count = static_cast<int>(l.points.size());

  // Quasi-uniform hyperbolic sample: cumulative hyperbolic area within
  // radius rho is proportional to rho^2 / (1 - rho^2).
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double area_max = sample_rho_max * sample_rho_max / (1.0 - sample_rho_max * sample_rho_max);

  for (int i = 0; i < samples; ++i) {
    double a = unif(rng) * area_max;
    double rho = std::sqrt(a / (1.0 + a));
    DiskPoint z = DiskPoint::polar(rho, unif(rng) * kTwoPi - kPi);

    bool covered = false;
    int overlap = 0;
    for (const DiskPoint& p : l.points) {
      double d = bergman_distance(z, p);
      if (d < l.delta) covered = true;
      if (d < 5.0 * l.delta) ++overlap;
    }
    if (!covered) ++rep.covering_failures;
    rep.max_overlap = std::max(rep.max_overlap, overlap);
  }

  // Exact pairwise minimum; points are emitted shell by shell so radii are
  // nondecreasing and the radial gap prunes far pairs.
  std::vector<double> radii(l.points.size());
  for (std::size_t i = 0; i < l.points.size(); ++i) {
    radii[i] = std::atanh(l.points[i].modulus());
  }
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < l.points.size(); ++i) {
    for (std::size_t j = i + 1; j < l.points.size(); ++j) {
      if (radii[j] - radii[i] >= best) break;
      best = std::min(best, bergman_distance(l.points[i], l.points[j]));
    }
  }
  rep.min_pairwise_distance = l.points.size() > 1 ? best : std::numeric_limits<double>::infinity();
  return rep;
}

void write_points(const Lattice& l, std::ostream& out) {
  for (const DiskPoint& p : l.points) {
    out << p.re() << " " << p.im() << "\n";
  }
}

}  // namespace carleson
