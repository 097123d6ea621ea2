#include "carleson/geometry.hpp"

#include <algorithm>

namespace carleson {

double wrap_angle(double theta) {
  double t = std::fmod(theta + kPi, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  return t - kPi;
}

double angle_distance(double a, double b) {
  double d = std::fabs(wrap_angle(a - b));
  return d;  // wrap_angle lands in [-pi, pi), so |.| is in [0, pi]
}

DiskPoint::DiskPoint(double re, double im) : z_(re, im) {
  if (std::hypot(re, im) >= 1.0 - kBoundaryMargin) {
    throw std::invalid_argument("DiskPoint: modulus must be < 1 - 1e-12");
  }
}

DiskPoint DiskPoint::polar(double rho, double theta) {
  return DiskPoint(rho * std::cos(theta), rho * std::sin(theta));
}

Arc::Arc(double center, double len) : center_angle(wrap_angle(center)), length(len) {
  if (!(len > 0.0) || len > 1.0) {
    throw std::invalid_argument("Arc: length must lie in (0, 1]");
  }
}

DiskPoint mobius(const DiskPoint& a, const DiskPoint& z) {
  Complex num = a.value() - z.value();
  Complex den = 1.0 - std::conj(a.value()) * z.value();
  return DiskPoint(num / den);
}

double bergman_distance(const DiskPoint& z, const DiskPoint& w) {
  Complex num = w.value() - z.value();
  Complex den = 1.0 - std::conj(w.value()) * z.value();
  double m = std::abs(num / den);
  return 0.5 * std::log((1.0 + m) / (1.0 - m));  // = atanh(m)
}

EuclideanDisk bergman_disk_euclidean(const DiskPoint& a, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("bergman_disk_euclidean: t must be > 0");
  double r = std::tanh(t);  // (e^{2t}-1)/(e^{2t}+1)
  double a2 = std::norm(a.value());
  double den = 1.0 - a2 * r * r;
  Complex center = (1.0 - r * r) / den * a.value();
  double radius = (1.0 - a2) * r / den;
  return EuclideanDisk{DiskPoint(center), radius};
}

bool region_contains(const Region& r, const DiskPoint& z) {
  return std::visit(
      [&](const auto& reg) -> bool {
        using T = std::decay_t<decltype(reg)>;
        if constexpr (std::is_same_v<T, CarlesonBox>) {
          if (!(z.modulus() > 1.0 - reg.arc.length)) return false;
          return reg.arc.contains(z.argument());
        } else if constexpr (std::is_same_v<T, BergmanDisk>) {
          return bergman_distance(z, reg.center) < reg.t;
        } else if constexpr (std::is_same_v<T, LusinCone>) {
          double lhs = std::abs(1.0 - std::conj(reg.vertex.value()) * z.value());
          return lhs < reg.sigma * (1.0 - z.modulus());
        } else if constexpr (std::is_same_v<T, DeltaBox>) {
          double r0 = reg.anchor.modulus();
          double h = 1.0 - r0;
          double d = 1.0 - z.modulus();
          if (!(h / 2.0 < d && d < 2.0 * h)) return false;
          return angle_distance(z.argument(), reg.anchor.argument()) < h;
        } else {
          return true;  // WholeDisk
        }
      },
      r);
}

namespace {

AngularSection full_section() {
  AngularSection s;
  s.empty = false;
  s.full = true;
  return s;
}

AngularSection arc_section(double center, double half_width) {
  if (half_width >= kPi) return full_section();
  AngularSection s;
  s.empty = false;
  s.center = center;
  s.half_width = half_width;
  return s;
}

// Half-width of the cone cross-section at radius rho (vertex at angle 0).
double cone_half_width(double sigma, double rho) {
  if (rho <= 0.0) return kPi;  // the origin lies in every cone with sigma > 1
  double c = (1.0 + rho * rho - sigma * sigma * (1.0 - rho) * (1.0 - rho)) / (2.0 * rho);
  if (c <= -1.0) return kPi;
  return std::acos(std::min(1.0, c));
}

}  // namespace

AngularSection angular_section(const Region& r, double rho) {
  return std::visit(
      [&](const auto& reg) -> AngularSection {
        using T = std::decay_t<decltype(reg)>;
        if constexpr (std::is_same_v<T, CarlesonBox>) {
          if (!(rho > 1.0 - reg.arc.length)) return AngularSection{};
          return arc_section(reg.arc.center_angle, kPi * reg.arc.length);
        } else if constexpr (std::is_same_v<T, BergmanDisk>) {
          EuclideanDisk d = bergman_disk_euclidean(reg.center, reg.t);
          double dc = d.center.modulus();
          if (rho < dc - d.radius || rho > dc + d.radius) return AngularSection{};
          if (rho == 0.0) return dc < d.radius ? full_section() : AngularSection{};
          if (dc == 0.0) return rho < d.radius ? full_section() : AngularSection{};
          double c = (rho * rho + dc * dc - d.radius * d.radius) / (2.0 * rho * dc);
          if (c >= 1.0) return AngularSection{};
          if (c <= -1.0) return full_section();
          return arc_section(d.center.argument(), std::acos(c));
        } else if constexpr (std::is_same_v<T, LusinCone>) {
          return arc_section(reg.vertex.angle(), cone_half_width(reg.sigma, rho));
        } else if constexpr (std::is_same_v<T, DeltaBox>) {
          double h = 1.0 - reg.anchor.modulus();
          double d = 1.0 - rho;
          if (!(h / 2.0 < d && d < 2.0 * h)) return AngularSection{};
          return arc_section(reg.anchor.argument(), h);
        } else {
          return full_section();
        }
      },
      r);
}

RadialBand radial_band(const Region& r) {
  return std::visit(
      [&](const auto& reg) -> RadialBand {
        using T = std::decay_t<decltype(reg)>;
        if constexpr (std::is_same_v<T, CarlesonBox>) {
          return RadialBand{1.0 - reg.arc.length, 1.0, true};
        } else if constexpr (std::is_same_v<T, BergmanDisk>) {
          EuclideanDisk d = bergman_disk_euclidean(reg.center, reg.t);
          double dc = d.center.modulus();
          return RadialBand{std::max(0.0, dc - d.radius), dc + d.radius, false};
        } else if constexpr (std::is_same_v<T, LusinCone>) {
          return RadialBand{0.0, 1.0, true};
        } else if constexpr (std::is_same_v<T, DeltaBox>) {
          double h = 1.0 - reg.anchor.modulus();
          return RadialBand{std::max(0.0, 1.0 - 2.0 * h), 1.0 - h / 2.0, false};
        } else {
          return RadialBand{0.0, 1.0, true};
        }
      },
      r);
}

ApertureArc aperture_arc(const DiskPoint& z, double sigma) {
  if (!(sigma > 1.0)) throw std::invalid_argument("aperture_arc: sigma must be > 1");
  double rho = z.modulus();
  if (rho == 0.0) {
    return ApertureArc{Arc(0.0, 1.0), 1.0};
  }
  double hw = cone_half_width(sigma, rho);
  double measure = std::min(1.0, hw / kPi);
  return ApertureArc{Arc(z.argument(), measure), measure};
}

}  // namespace carleson
