#include "carleson/measures.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace carleson {

int QuadratureConfig::angular_nodes(int layer) const {
  double scaled = static_cast<double>(base_angular) * std::pow(2.0, layer);
  return static_cast<int>(std::min(scaled, static_cast<double>(angular_cap)));
}

QuadratureConfig QuadratureConfig::refined() const {
  return QuadratureConfig{depth + 1, base_angular, angular_cap * 2};
}

void QuadratureConfig::validate() const {
  if (depth < 4) throw std::invalid_argument("QuadratureConfig: depth must be >= 4");
  if (base_angular < 16) throw std::invalid_argument("QuadratureConfig: base_angular must be >= 16");
  if (angular_cap < base_angular) {
    throw std::invalid_argument("QuadratureConfig: angular_cap must be >= base_angular");
  }
}

namespace {

// Antiderivative of 2(1-u)u^s in u = 1-rho, so that
// radial_mass(s,a,b) = int_a^b (1-rho)^s 2 rho drho = H(1-a) - H(1-b).
double radial_antiderivative(double s, double u) {
  if (u <= 0.0) {
    // Only reachable for s > -1, where the limit at u = 0 is 0.
    return 0.0;
  }
  if (s == -1.0) return 2.0 * std::log(u) - 2.0 * u;
  if (s == -2.0) return -2.0 / u - 2.0 * std::log(u);
  return 2.0 * std::pow(u, s + 1.0) / (s + 1.0) - 2.0 * std::pow(u, s + 2.0) / (s + 2.0);
}

double radial_mass(double s, double rho_a, double rho_b) {
  if (rho_b <= rho_a) return 0.0;
  return radial_antiderivative(s, 1.0 - rho_a) - radial_antiderivative(s, 1.0 - rho_b);
}

struct RadialDensity {
  double s_base;
  double cutoff;
};

const RadialDensity* as_radial(const MeasureModel& mu, RadialDensity& storage) {
  if (const auto* a = std::get_if<AlphaAreaMeasure>(&mu)) {
    storage = RadialDensity{a->alpha, 1.0};
    return &storage;
  }
  if (const auto* r = std::get_if<RadialPowerMeasure>(&mu)) {
    storage = RadialDensity{r->exponent, r->cutoff};
    return &storage;
  }
  return nullptr;
}

// Angular cross-section fraction is constant in rho for boxes, Whitney boxes
// and the whole disk; only cones and Bergman disks need radial sampling.
bool constant_section(const Region& r) {
  return std::holds_alternative<CarlesonBox>(r) || std::holds_alternative<DeltaBox>(r) ||
         std::holds_alternative<WholeDisk>(r);
}

double constant_fraction(const Region& r) {
  if (const auto* b = std::get_if<CarlesonBox>(&r)) return std::min(1.0, b->arc.length);
  if (const auto* d = std::get_if<DeltaBox>(&r)) {
    return std::min(1.0, (1.0 - d->anchor.modulus()) / kPi);
  }
  return 1.0;  // WholeDisk
}

void check_convergence(const Region& r, double s, double upper) {
  if (upper < 1.0) return;
  // A cone pinches at its vertex: the cross-section shrinks like (1-rho),
  // gaining one power relative to boxes and the whole disk.
  double critical = std::holds_alternative<LusinCone>(r) ? -2.0 : -1.0;
  if (s <= critical) {
    std::ostringstream msg;
    msg << "integrate: divergent configuration, (1-|z|) exponent sum " << s
        << " <= " << critical << " on a region reaching the boundary";
    throw DivergenceError(msg.str());
  }
}

double integrate_radial_density(const RadialDensity& d, const Region& r, double gamma,
                                const QuadratureConfig& q, Tail tail) {
  double s = d.s_base + gamma;
  RadialBand band = radial_band(r);
  double upper = std::min(band.hi, d.cutoff);
  if (tail == Tail::Truncate) upper = std::min(upper, 1.0 - std::pow(2.0, -q.depth));
  if (upper <= band.lo) return 0.0;

  check_convergence(r, s, upper);

  if (constant_section(r)) {
    return constant_fraction(r) * radial_mass(s, band.lo, upper);
  }

  // Cone or Bergman disk: exact radial mass per sub-interval times the exact
  // angular fraction at the sub-interval midpoint, on dyadic layers.
  int nsub = std::max(8, q.base_angular / 8);
  double total = 0.0;
  const int hard_layer_limit = 64;
  for (int k = 0; k < hard_layer_limit; ++k) {
    double layer_lo = 1.0 - std::pow(2.0, -k);
    double layer_hi = 1.0 - std::pow(2.0, -(k + 1));
    if (upper >= 1.0 && k >= q.depth) {
      // Strict tail of a convergent cone integral: keep adding dyadic
      // layers until their contribution is negligible.
      layer_hi = 1.0 - std::pow(2.0, -(k + 1));
    }
    double a = std::max(layer_lo, band.lo);
    double b = std::min(layer_hi, upper);
    if (b <= a) {
      if (layer_lo >= upper) break;
      continue;
    }
    double layer_sum = 0.0;
    for (int i = 0; i < nsub; ++i) {
      double ra = a + (b - a) * i / nsub;
      double rb = a + (b - a) * (i + 1) / nsub;
      double frac = angular_section(r, 0.5 * (ra + rb)).fraction();
      if (frac > 0.0) layer_sum += frac * radial_mass(s, ra, rb);
    }
    total += layer_sum;
    if (upper >= 1.0 && k >= q.depth && layer_sum < 1e-13 * std::max(total, 1e-300)) break;
  }
  return total;
}

struct Cell {
  int layer;
  double rho_mid;
  DiskPoint mid;
  double m2_mass;
  std::size_t flat_index;  // row-major (layer, angle)
};

// Visit cells of the grid whose midpoint lies in the region.
template <typename Fn>
void visit_cells(const Region& r, const QuadratureConfig& q, Fn&& fn) {
  std::size_t flat_base = 0;
  for (int k = 0; k < q.depth; ++k) {
    int mk = q.angular_nodes(k);
    double rho_lo = 1.0 - std::pow(2.0, -k);
    double rho_hi = 1.0 - std::pow(2.0, -(k + 1));
    double rho_mid = 0.5 * (rho_lo + rho_hi);
    double m2 = (rho_hi * rho_hi - rho_lo * rho_lo) / mk;
    AngularSection sec = angular_section(r, rho_mid);
    if (!sec.empty) {
      double step = kTwoPi / mk;
      int j_lo = 0, j_hi = mk - 1;
      if (!sec.full) {
        // Window of angular indices around the section center.
        int jc = static_cast<int>(std::floor((sec.center + kPi) / step));
        int span = static_cast<int>(std::ceil(sec.half_width / step)) + 1;
        j_lo = jc - span;
        j_hi = jc + span;
        if (j_hi - j_lo + 1 >= mk) {
          j_lo = 0;
          j_hi = mk - 1;
        }
      }
      for (int jj = j_lo; jj <= j_hi; ++jj) {
        int j = ((jj % mk) + mk) % mk;
        double theta = -kPi + (j + 0.5) * step;
        if (!sec.full && angle_distance(theta, sec.center) > sec.half_width) continue;
        Cell c{k, rho_mid, DiskPoint::polar(rho_mid, theta), m2,
               flat_base + static_cast<std::size_t>(j)};
        fn(c);
      }
    }
    flat_base += static_cast<std::size_t>(mk);
  }
}

}  // namespace

void for_each_cell(const Region& r, const QuadratureConfig& q,
                   const std::function<void(const DiskPoint&, double)>& fn) {
  visit_cells(r, q, [&](const Cell& c) { fn(c.mid, c.m2_mass); });
}

double integrate(const MeasureModel& mu, const Region& r, double gamma,
                 const QuadratureConfig& q, Tail tail) {
  q.validate();
  if (const auto* atomic = std::get_if<AtomicMeasure>(&mu)) {
    double total = 0.0;
    for (const Atom& a : atomic->atoms) {
      if (region_contains(r, a.point)) {
        total += a.weight * std::pow(1.0 - a.point.modulus(), gamma);
      }
    }
    return total;
  }
  RadialDensity storage{};
  if (const RadialDensity* d = as_radial(mu, storage)) {
    return integrate_radial_density(*d, r, gamma, q, tail);
  }
  const auto& grid = std::get<GridDensityMeasure>(mu);
  double total = 0.0;
  visit_cells(r, grid.grid, [&](const Cell& c) {
    total += grid.samples[c.flat_index] * c.m2_mass * std::pow(1.0 - c.rho_mid, gamma);
  });
  return total;
}

double integrate_weighted(const MeasureModel& mu, const Region& r, double gamma,
                          const std::function<double(const DiskPoint&)>& weight,
                          const QuadratureConfig& q) {
  q.validate();
  if (const auto* atomic = std::get_if<AtomicMeasure>(&mu)) {
    double total = 0.0;
    for (const Atom& a : atomic->atoms) {
      if (region_contains(r, a.point)) {
        total += a.weight * weight(a.point) * std::pow(1.0 - a.point.modulus(), gamma);
      }
    }
    return total;
  }
  RadialDensity storage{};
  if (const RadialDensity* d = as_radial(mu, storage)) {
    double s = d->s_base + gamma;
    // Exact radial factor per layer; the weight and region membership are
    // evaluated at cell midpoints.
    std::vector<double> layer_factor(q.depth);
    for (int k = 0; k < q.depth; ++k) {
      double rho_lo = 1.0 - std::pow(2.0, -k);
      double rho_hi = std::min(1.0 - std::pow(2.0, -(k + 1)), d->cutoff);
      double area = rho_hi * rho_hi - rho_lo * rho_lo;
      layer_factor[k] = area > 0.0 ? radial_mass(s, rho_lo, rho_hi) / area : 0.0;
    }
    double total = 0.0;
    visit_cells(r, q, [&](const Cell& c) {
      if (c.rho_mid > d->cutoff) return;
      total += weight(c.mid) * c.m2_mass * layer_factor[c.layer];
    });
    return total;
  }
  const auto& grid = std::get<GridDensityMeasure>(mu);
  double total = 0.0;
  visit_cells(r, grid.grid, [&](const Cell& c) {
    total += grid.samples[c.flat_index] * weight(c.mid) * c.m2_mass *
             std::pow(1.0 - c.rho_mid, gamma);
  });
  return total;
}

double total_mass(const MeasureModel& mu, const QuadratureConfig& q) {
  return integrate(mu, WholeDisk{}, 0.0, q);
}

namespace {

[[noreturn]] void spec_error(const std::string& what) {
  throw std::invalid_argument("measure spec: " + what);
}

std::vector<double> parse_numbers(const std::string& text) {
  std::vector<double> out;
  std::string cleaned = text;
  for (char& c : cleaned) {
    if (c == '(' || c == ')' || c == '[' || c == ']' || c == ',' || c == ';') c = ' ';
  }
  std::istringstream in(cleaned);
  double v;
  while (in >> v) out.push_back(v);
  return out;
}

MeasureModel make_atomic(const std::vector<double>& nums) {
  if (nums.empty() || nums.size() % 3 != 0) {
    spec_error("atomic expects (re, im, weight) triples");
  }
  AtomicMeasure m;
  for (std::size_t i = 0; i < nums.size(); i += 3) {
    if (!(nums[i + 2] > 0.0)) spec_error("atom weight must be > 0");
    m.atoms.push_back(Atom{DiskPoint(nums[i], nums[i + 1]), nums[i + 2]});
  }
  return m;
}

MeasureModel make_radial_power(double exponent, double cutoff) {
  if (!(cutoff > 0.0) || cutoff > 1.0) spec_error("radial_power cutoff must lie in (0, 1]");
  if (exponent <= -1.0 && cutoff >= 1.0) {
    spec_error("radial_power with exponent <= -1 has infinite mass without a cutoff < 1");
  }
  return RadialPowerMeasure{exponent, cutoff};
}

MeasureModel parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) spec_error("cannot open file " + path);
  std::string kind;
  AtomicMeasure atoms;
  double alpha = std::numeric_limits<double>::quiet_NaN();
  double exponent = std::numeric_limits<double>::quiet_NaN();
  double cutoff = 1.0;
  GridDensityMeasure grid;
  bool has_samples = false;

  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    if (key == "kind") {
      ls >> kind;
    } else if (key == "atom") {
      double re, im, w;
      if (!(ls >> re >> im >> w)) spec_error("atom expects: atom RE IM WEIGHT");
      if (!(w > 0.0)) spec_error("atom weight must be > 0");
      atoms.atoms.push_back(Atom{DiskPoint(re, im), w});
    } else if (key == "alpha") {
      ls >> alpha;
    } else if (key == "exponent") {
      ls >> exponent;
    } else if (key == "cutoff") {
      ls >> cutoff;
    } else if (key == "depth") {
      ls >> grid.grid.depth;
    } else if (key == "base_angular") {
      ls >> grid.grid.base_angular;
    } else if (key == "angular_cap") {
      ls >> grid.grid.angular_cap;
    } else if (key == "samples") {
      double v;
      while (ls >> v) {
        if (v < 0.0) spec_error("grid samples must be >= 0");
        grid.samples.push_back(v);
      }
      has_samples = true;
    } else {
      spec_error("unknown key '" + key + "'");
    }
  }

  if (kind == "atomic") {
    if (atoms.atoms.empty()) spec_error("atomic measure needs at least one atom");
    return atoms;
  }
  if (kind == "alpha_area") {
    if (!(alpha > -1.0)) spec_error("alpha_area requires alpha > -1");
    return AlphaAreaMeasure{alpha};
  }
  if (kind == "radial_power") {
    if (std::isnan(exponent)) spec_error("radial_power requires an exponent");
    return make_radial_power(exponent, cutoff);
  }
  if (kind == "grid") {
    grid.grid.validate();
    std::size_t expected = 0;
    for (int k = 0; k < grid.grid.depth; ++k) {
      expected += static_cast<std::size_t>(grid.grid.angular_nodes(k));
    }
    if (!has_samples || grid.samples.size() != expected) {
      spec_error("grid expects exactly " + std::to_string(expected) + " samples");
    }
    return grid;
  }
  spec_error("unknown or missing kind '" + kind + "'");
}

}  // namespace

MeasureModel make_measure(const std::string& spec) {
  if (!spec.empty() && spec[0] == '@') return parse_file(spec.substr(1));
  auto colon = spec.find(':');
  if (colon == std::string::npos) spec_error("expected KIND:PARAMS or @FILE, got '" + spec + "'");
  std::string kind = spec.substr(0, colon);
  std::string rest = spec.substr(colon + 1);

  if (kind == "atomic") return make_atomic(parse_numbers(rest));
  if (kind == "alpha_area") {
    auto nums = parse_numbers(rest);
    if (nums.size() != 1) spec_error("alpha_area expects one parameter");
    if (!(nums[0] > -1.0)) spec_error("alpha_area requires alpha > -1");
    return AlphaAreaMeasure{nums[0]};
  }
  if (kind == "radial_power") {
    double cutoff = 1.0;
    std::string body = rest;
    auto cut = body.find("cutoff=");
    if (cut != std::string::npos) {
      cutoff = std::stod(body.substr(cut + 7));
      body.erase(cut);
    }
    auto nums = parse_numbers(body);
    if (nums.size() != 1) spec_error("radial_power expects one exponent");
    return make_radial_power(nums[0], cutoff);
  }
  spec_error("unknown measure kind '" + kind + "'");
}

}  // namespace carleson
