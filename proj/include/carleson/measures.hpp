// Positive Borel measure models on the disk and weighted integration of
// (1-|z|)^gamma over the regions of geometry.hpp.
#pragma once

#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "carleson/geometry.hpp"

namespace carleson {

struct Atom {
  DiskPoint point;
  double weight = 1.0;
};

struct AtomicMeasure {
  std::vector<Atom> atoms;
};

// dm_alpha(z) = (1-|z|)^alpha dm_2(z), with m_2 the normalized area measure
// (m_2(D) = 1), alpha > -1.
struct AlphaAreaMeasure {
  double alpha = 0.0;
};

// Density (1-|z|)^exponent dm_2(z) on {|z| <= cutoff}. A cutoff < 1 is
// mandatory when exponent <= -1 (infinite mass otherwise).
struct RadialPowerMeasure {
  double exponent = 0.0;
  double cutoff = 1.0;
};

// Dyadic polar quadrature grid: radial layers [1-2^-k, 1-2^-(k-1)) for
// k = 0..depth-1, layer k carrying min(base_angular * 2^k, angular_cap)
// equispaced angular cells. Density integrals are truncated at 1 - 2^-depth.
struct QuadratureConfig {
  int depth = 12;
  int base_angular = 32;
  int angular_cap = 4096;

  int angular_nodes(int layer) const;
  QuadratureConfig refined() const;  // depth+1 and base_angular, cap doubled
  void validate() const;             // depth >= 4, base_angular >= 16, cap >= base
};

// Nonnegative density samples on the cells of `grid`, row-major by
// (layer, angle); the density multiplies dm_2.
struct GridDensityMeasure {
  QuadratureConfig grid;
  std::vector<double> samples;
};

using MeasureModel =
    std::variant<AtomicMeasure, AlphaAreaMeasure, RadialPowerMeasure, GridDensityMeasure>;

struct DivergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Parse a measure description. Inline forms:
//   atomic:[(re,im,w),(re,im,w),...]
//   alpha_area:ALPHA
//   radial_power:EXP[,cutoff=C]
//   @path                  (key-value file, schema in docs/measure_spec.md)
// The CLI additionally resolves builtin:NAME to a member of the verifier's
// built-in family.
MeasureModel make_measure(const std::string& spec);

double total_mass(const MeasureModel& mu, const QuadratureConfig& q);

enum class Tail {
  Strict,    // reject configurations whose exact integral is infinite
  Truncate,  // integrate densities only up to radius 1 - 2^-depth
};

// integral over r of (1-|z|)^gamma dmu(z). Atomic measures are summed
// exactly; radial densities integrate exactly in the radial variable against
// the exact angular cross-section of the region; grid densities use midpoint
// cells. Throws DivergenceError when the exact integral is infinite and
// tail == Tail::Strict.
double integrate(const MeasureModel& mu, const Region& r, double gamma,
                 const QuadratureConfig& q, Tail tail = Tail::Strict);

// integral over r of w(z) (1-|z|)^gamma dmu(z) for a general nonnegative
// weight; densities are evaluated on the 2-D grid (cell membership by
// midpoint), atoms exactly.
double integrate_weighted(const MeasureModel& mu, const Region& r, double gamma,
                          const std::function<double(const DiskPoint&)>& weight,
                          const QuadratureConfig& q);

// Visit the grid cells whose midpoint lies in r: fn(midpoint, m2_cell_mass).
void for_each_cell(const Region& r, const QuadratureConfig& q,
                   const std::function<void(const DiskPoint&, double)>& fn);

}  // namespace carleson
