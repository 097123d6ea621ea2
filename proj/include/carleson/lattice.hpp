// delta-lattices: separated point sets whose Bergman disks cover the disk
// with bounded overlap.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "carleson/geometry.hpp"

namespace carleson {

struct Lattice {
  std::vector<DiskPoint> points;
  double delta = 1.0;
  double rho_max = 0.99;  // truncation radius
};

struct LatticeReport {
  int covering_failures = 0;   // sampled points not in any D(z_j, delta)
  int max_overlap = 0;         // max over samples of sum_j chi_{D(z_j, 5 delta)}
  double min_pairwise_distance = 0.0;
  int point_count = 0;
};

// Hyperbolic polar construction: radial shells at Bergman distance k*delta/2
// from the origin, each populated with angularly equispaced points at
// hyperbolic spacing <= delta/2. Truncated at |z| <= rho_max.
Lattice build_lattice(double delta, double rho_max);

// Covering and overlap statistics on a quasi-uniform hyperbolic sample of
// {|z| <= sample_rho_max}. sample_rho_max <= 0 means use l.rho_max shrunk by
// half a shell step.
LatticeReport verify_lattice(const Lattice& l, int samples,
                             double sample_rho_max = -1.0,
                             std::uint64_t seed = 20260824);

// One point per line: "re im".
void write_points(const Lattice& l, std::ostream& out);

}  // namespace carleson
