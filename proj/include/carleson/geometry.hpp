// Geometry of the unit disk: Mobius maps, Bergman metric, Carleson boxes,
// Lusin cones, Whitney-type boxes and their membership predicates.
#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <variant>

namespace carleson {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;
// Points closer than this to the circle are rejected so 1/(1-|z|) stays finite.
inline constexpr double kBoundaryMargin = 1e-12;

// Wrap an angle to [-pi, pi).
double wrap_angle(double theta);

// Circular distance between two angles, in [0, pi].
double angle_distance(double a, double b);

// A point of the open unit disk. Construction rejects |z| >= 1 - 1e-12.
class DiskPoint {
 public:
  DiskPoint() : z_(0.0, 0.0) {}
  DiskPoint(double re, double im);
  explicit DiskPoint(Complex z) : DiskPoint(z.real(), z.imag()) {}
  static DiskPoint polar(double rho, double theta);

  double re() const { return z_.real(); }
  double im() const { return z_.imag(); }
  double modulus() const { return std::abs(z_); }
  double argument() const { return std::arg(z_); }
  Complex value() const { return z_; }

 private:
  Complex z_;
};

// A point of the unit circle, stored as its angle in [-pi, pi).
class BoundaryPoint {
 public:
  BoundaryPoint() : angle_(0.0) {}
  explicit BoundaryPoint(double angle) : angle_(wrap_angle(angle)) {}

  double angle() const { return angle_; }
  Complex value() const { return Complex(std::cos(angle_), std::sin(angle_)); }

 private:
  double angle_;
};

// A boundary arc. |I| is normalized arc length in (0, 1] (fraction of the
// full circle, so m(T) = 1). Angular half-width is pi * length radians.
struct Arc {
  double center_angle = 0.0;
  double length = 1.0;

  Arc() = default;
  Arc(double center, double len);

  bool contains(double angle) const {
    if (length >= 1.0) return true;
    // Closed arc with one-ulp slack so points on a shared dyadic endpoint
    // land in both adjacent arcs regardless of rounding.
    return angle_distance(angle, center_angle) <= kPi * length + 1e-12;
  }
};

struct CarlesonBox {
  Arc arc;
};

struct BergmanDisk {
  DiskPoint center;
  double t = 1.0;  // metric radius, t > 0
};

struct LusinCone {
  BoundaryPoint vertex;
  double sigma = 2.0;  // aperture, sigma > 1
};

// Whitney-type box around its anchor z = r e^{i theta}:
// |theta' - theta| < 1 - r and (1-r)/2 < 1 - r' < 2(1-r).
struct DeltaBox {
  DiskPoint anchor;
};

struct WholeDisk {};

using Region = std::variant<CarlesonBox, BergmanDisk, LusinCone, DeltaBox, WholeDisk>;

// A Euclidean disk whose closure lies in the closed unit disk.
struct EuclideanDisk {
  DiskPoint center;
  double radius = 0.0;

  bool contains(const DiskPoint& z) const {
    return std::abs(z.value() - center.value()) < radius;
  }
};

// phi_a(z) = (a - z) / (1 - conj(a) z); involution exchanging 0 and a.
DiskPoint mobius(const DiskPoint& a, const DiskPoint& z);

// d(z,w) = (1/2) log((1+|phi_w(z)|)/(1-|phi_w(z)|)); Mobius-invariant.
double bergman_distance(const DiskPoint& z, const DiskPoint& w);

// The metric ball {w : d(w,a) < t} as a Euclidean disk.
EuclideanDisk bergman_disk_euclidean(const DiskPoint& a, double t);

bool region_contains(const Region& r, const DiskPoint& z);

// Angular cross-section of a region at radius rho: the set of angles theta
// with rho e^{i theta} in the region, described as full circle, empty, or a
// single arc (center, half-width in radians). All region kinds here have
// circular-arc cross-sections.
struct AngularSection {
  bool empty = true;
  bool full = false;
  double center = 0.0;
  double half_width = 0.0;  // radians

  double fraction() const {  // of the full circle
    if (full) return 1.0;
    if (empty) return 0.0;
    return std::min(1.0, half_width / kPi);
  }
};

AngularSection angular_section(const Region& r, double rho);

// Radial extent of a region: the closed interval of radii at which the
// angular section can be nonempty, intersected with [0, 1).
struct RadialBand {
  double lo = 0.0;
  double hi = 1.0;
  bool touches_boundary = true;  // hi == 1 and mass can accumulate there
};

RadialBand radial_band(const Region& r);

struct ApertureArc {
  Arc arc;
  double measure = 0.0;  // normalized arc length
};

// Dual view of the Lusin cone: the boundary arc {xi : z in Gamma_sigma(xi)}.
// For z = 0 the condition holds for every xi and the full circle is returned.
ApertureArc aperture_arc(const DiskPoint& z, double sigma);

}  // namespace carleson
