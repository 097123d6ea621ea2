#include "carleson/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace carleson {

Arc DyadicArc::to_arc() const {
  double len = length();
  double center_pos = (index + 0.5) * len;
  return Arc(-kPi + kTwoPi * center_pos, len);
}

std::string DyadicArc::describe() const {
  std::ostringstream out;
  out << "dyadic arc depth " << depth << " index " << index;
  return out.str();
}

ConstantEstimate sup_over_dyadic_arcs(
    const std::function<double(const Arc&, const DyadicArc&)>& F, int N) {
  if (N < 0 || N > 20) throw std::invalid_argument("sup_over_dyadic_arcs: N must lie in [0, 20]");
  ConstantEstimate est;
  est.depth = N;
  double best = -std::numeric_limits<double>::infinity();
  double best_coarse = -std::numeric_limits<double>::infinity();  // depth <= N-1
  DyadicArc best_arc{0, 0};
  for (int n = 0; n <= N; ++n) {
    int count = 1 << n;
    for (int k = 0; k < count; ++k) {
      DyadicArc da{n, k};
      double v = F(da.to_arc(), da);
      if (!std::isfinite(v)) {
        throw std::runtime_error("sup_over_dyadic_arcs: non-finite value on " + da.describe());
      }
      if (v > best) {
        best = v;
        best_arc = da;
      }
      if (n < N && v > best_coarse) best_coarse = v;
    }
  }
  est.value = best;
  est.argmax = best_arc.describe();
  if (N > 0 && best > 0.0) est.refinement_delta = (best - best_coarse) / best;
  return est;
}

ConstantEstimate carleson_constant(const MeasureModel& mu, double lambda, int N,
                                   const QuadratureConfig& q) {
  return sup_over_dyadic_arcs(
      [&](const Arc& arc, const DyadicArc&) {
        return integrate(mu, CarlesonBox{arc}, 0.0, q) / std::pow(arc.length, lambda);
      },
      N);
}

ConstantEstimate bergman_disk_constant(const MeasureModel& mu, double t, double lambda,
                                       const Lattice& lattice, const QuadratureConfig& q) {
  if (!(t > 0.0)) throw std::invalid_argument("bergman_disk_constant: t must be > 0");
  ConstantEstimate est;
  est.depth = static_cast<int>(lattice.points.size());
  for (const DiskPoint& z : lattice.points) {
    double v = integrate(mu, BergmanDisk{z, t}, 0.0, q) /
               std::pow(1.0 - z.modulus(), lambda);
    if (v > est.value) {
      est.value = v;
      std::ostringstream out;
      out << "lattice point (" << z.re() << ", " << z.im() << ")";
      est.argmax = out.str();
    }
  }
  return est;
}

ConstantEstimate a_functional(const MeasureModel& mu, double s, int N,
                              const QuadratureConfig& q) {
  if (!(s > 0.0)) throw std::invalid_argument("a_functional: s must be > 0");
  return sup_over_dyadic_arcs(
      [&](const Arc& arc, const DyadicArc&) {
        return integrate(mu, CarlesonBox{arc}, -1.0, q, Tail::Truncate) /
               std::pow(arc.length, s);
      },
      N);
}

ConstantEstimate sup_arc_average(const std::vector<double>& g, double expo, int N,
                                 double offset) {
  std::size_t M = g.size();
  std::vector<double> prefix(M + 1, 0.0);
  for (std::size_t j = 0; j < M; ++j) prefix[j + 1] = prefix[j] + g[j];
  return sup_over_dyadic_arcs(
      [&](const Arc& arc, const DyadicArc& da) {
        double lo = da.index * da.length();
        double hi = (da.index + 1) * da.length();
        auto first = static_cast<std::size_t>(std::max(0.0, std::ceil(lo * M - offset)));
        auto last = static_cast<std::size_t>(std::max(0.0, std::ceil(hi * M - offset)));
        last = std::min(last, M);
        double sum = first < last ? prefix[last] - prefix[first] : 0.0;
        return std::pow(arc.length, -expo) * sum / static_cast<double>(M);
      },
      N);
}

namespace {

// Overlap length of the circular position intervals [a_lo, a_lo + a_len) and
// [b_lo, b_lo + b_len), all in normalized (length-1 circle) units.
double circular_overlap(double a_lo, double a_len, double b_lo, double b_len) {
  a_lo -= std::floor(a_lo);
  b_lo -= std::floor(b_lo);
  double total = 0.0;
  for (int shift = -1; shift <= 1; ++shift) {
    double lo = std::max(a_lo, b_lo + shift);
    double hi = std::min(a_lo + a_len, b_lo + b_len + shift);
    if (hi > lo) total += hi - lo;
  }
  return total;
}

}  // namespace

ConstantEstimate b_functional(const MeasureModel& mu, double s, double sigma, int N,
                              int M, const QuadratureConfig& q) {
  if (!(s > 0.0)) throw std::invalid_argument("b_functional: s must be > 0");
  if (!(sigma > 1.0)) throw std::invalid_argument("b_functional: sigma must be > 1");
  if (M < 1) throw std::invalid_argument("b_functional: M must be >= 1");

  if (const auto* atomic = std::get_if<AtomicMeasure>(&mu)) {
    // The outer boundary integral is exact for atoms: each atom contributes
    // weight/(1-|z|)^2 on its aperture arc {xi : z in Gamma_sigma(xi)}.
    struct Contribution {
      double pos_lo;   // normalized position of the aperture arc start
      double pos_len;  // normalized length
      double value;
    };
    std::vector<Contribution> parts;
    parts.reserve(atomic->atoms.size());
    for (const Atom& a : atomic->atoms) {
      ApertureArc arc = aperture_arc(a.point, sigma);
      double len = std::min(1.0, arc.measure);
      double pos_center = (arc.arc.center_angle + kPi) / kTwoPi;
      double one_minus = 1.0 - a.point.modulus();
      parts.push_back({pos_center - 0.5 * len, len, a.weight / (one_minus * one_minus)});
    }
    return sup_over_dyadic_arcs(
        [&](const Arc& arc, const DyadicArc& da) {
          double lo = da.index * da.length();
          double sum = 0.0;
          for (const Contribution& c : parts) {
            sum += c.value * circular_overlap(c.pos_lo, c.pos_len, lo, da.length());
          }
          return sum / std::pow(arc.length, s);
        },
        N);
  }

  std::vector<double> cone_mass(M);
  for (int j = 0; j < M; ++j) {
    BoundaryPoint xi(-kPi + kTwoPi * (j + 0.5) / M);
    cone_mass[j] = integrate(mu, LusinCone{xi, sigma}, -2.0, q, Tail::Truncate);
  }
  return sup_arc_average(cone_mass, s, N, 0.5);
}

double weak_lorentz_direct(const BoundarySamples& f, double q) {
  if (!(q > 0.0)) throw std::invalid_argument("weak_lorentz_direct: q must be > 0");
  if (f.values.empty()) throw std::invalid_argument("weak_lorentz_direct: empty samples");
  std::vector<double> v = f.values;
  std::sort(v.begin(), v.end(), std::greater<double>());
  double M = static_cast<double>(v.size());
  double best = 0.0;
  for (std::size_t k = 0; k < v.size(); ++k) {
    best = std::max(best, v[k] * std::pow((k + 1) / M, 1.0 / q));
  }
  return best;
}

double weak_lorentz_arcrep(const BoundarySamples& f, double q, double r, int N) {
  if (!(r > 0.0) || r >= q) {
    throw std::invalid_argument("weak_lorentz_arcrep: requires 0 < r < q");
  }
  std::vector<double> powered(f.values.size());
  for (std::size_t j = 0; j < f.values.size(); ++j) powered[j] = std::pow(f.values[j], r);
  ConstantEstimate est = sup_arc_average(powered, 1.0 - r / q, N, 0.0);
  return std::pow(est.value, 1.0 / r);
}

double KernelFunction::abs(const DiskPoint& z) const {
  if (exponent == 0.0 && normalization == 0.0) return 1.0;
  double dist = std::abs(1.0 - z.value() * std::conj(pole.value()));
  double log_mod = normalization * std::log1p(-pole.modulus()) - exponent * std::log(dist);
  return std::exp(log_mod);
}

BoundarySamples kernel_boundary_trace(const DiskPoint& w, double gamma, int M) {
  if (M < 64 || (M & (M - 1)) != 0) {
    throw std::invalid_argument("kernel_boundary_trace: M must be a power of two >= 64");
  }
  BoundarySamples out;
  out.values.resize(M);
  Complex wbar = std::conj(w.value());
  for (int j = 0; j < M; ++j) {
    double theta = kTwoPi * j / M;
    Complex xi(std::cos(theta), std::sin(theta));
    out.values[j] = std::pow(std::abs(1.0 - xi * wbar), -gamma);
  }
  return out;
}

double cone_integral(const std::optional<KernelFunction>& f, const MeasureModel& mu,
                     const BoundaryPoint& xi, double sigma, double gamma,
                     const QuadratureConfig& q, Tail tail) {
  if (!(sigma > 1.0)) throw std::invalid_argument("cone_integral: sigma must be > 1");
  LusinCone cone{xi, sigma};
  if (!f) return integrate(mu, cone, gamma, q, tail);
  return integrate_weighted(mu, cone, gamma,
                            [&](const DiskPoint& z) { return f->abs(z); }, q);
}

double nontangential_sup(const KernelFunction& f, const BoundaryPoint& xi, double sigma,
                         double beta, const QuadratureConfig& q) {
  if (beta < 0.0) throw std::invalid_argument("nontangential_sup: beta must be >= 0");
  double best = f.abs(DiskPoint());  // the origin lies in every cone
  for_each_cell(LusinCone{xi, sigma}, q, [&](const DiskPoint& z, double) {
    best = std::max(best, f.abs(z) * std::pow(1.0 - z.modulus(), beta));
  });
  return best;
}

double weighted_sup_norm(const KernelFunction& f, double beta, const QuadratureConfig& q) {
  if (!(beta >= 0.0)) throw std::invalid_argument("weighted_sup_norm: beta must be >= 0");
  double best = f.abs(DiskPoint());
  for_each_cell(WholeDisk{}, q, [&](const DiskPoint& z, double) {
    best = std::max(best, f.abs(z) * std::pow(1.0 - z.modulus(), beta));
  });
  return best;
}

TheoremId theorem_id_from_string(const std::string& s) {
  if (s == "T1b") return TheoremId::T1b;
  if (s == "T1c") return TheoremId::T1c;
  if (s == "T2") return TheoremId::T2;
  if (s == "T3") return TheoremId::T3;
  if (s == "T4") return TheoremId::T4;
  throw std::invalid_argument("unknown theorem condition id '" + s + "'");
}

std::string to_string(TheoremId id) {
  switch (id) {
    case TheoremId::T1b: return "T1b";
    case TheoremId::T1c: return "T1c";
    case TheoremId::T2: return "T2";
    case TheoremId::T3: return "T3";
    case TheoremId::T4: return "T4";
  }
  return "?";
}

namespace {

[[noreturn]] void constraint_error(const std::string& what) {
  throw std::invalid_argument("theorem_condition: " + what);
}

// mu(D(z, tau)) with per-radius caching for radial measures and a direct
// atom scan for atomic ones.
class BergmanBallMass {
 public:
  BergmanBallMass(const MeasureModel& mu, double tau, const QuadratureConfig& q)
      : mu_(mu), tau_(tau), q_(q),
        radial_(std::holds_alternative<AlphaAreaMeasure>(mu) ||
                std::holds_alternative<RadialPowerMeasure>(mu)) {}

  double operator()(const DiskPoint& z) const {
    if (const auto* atomic = std::get_if<AtomicMeasure>(&mu_)) {
      double total = 0.0;
      for (const Atom& a : atomic->atoms) {
        if (bergman_distance(a.point, z) < tau_) total += a.weight;
      }
      return total;
    }
    if (radial_) {
      double rho = z.modulus();
      auto it = cache_.find(rho);
      if (it != cache_.end()) return it->second;
      double v = integrate(mu_, BergmanDisk{DiskPoint(rho, 0.0), tau_}, 0.0, q_);
      cache_.emplace(rho, v);
      return v;
    }
    return integrate(mu_, BergmanDisk{z, tau_}, 0.0, q_);
  }

 private:
  const MeasureModel& mu_;
  double tau_;
  QuadratureConfig q_;
  bool radial_;
  mutable std::map<double, double> cache_;
};

// Same idea for mu(Delta_z).
class WhitneyBoxMass {
 public:
  WhitneyBoxMass(const MeasureModel& mu, const QuadratureConfig& q)
      : mu_(mu), q_(q),
        radial_(std::holds_alternative<AlphaAreaMeasure>(mu) ||
                std::holds_alternative<RadialPowerMeasure>(mu)) {}

  double operator()(const DiskPoint& z) const {
    if (const auto* atomic = std::get_if<AtomicMeasure>(&mu_)) {
      double total = 0.0;
      DeltaBox box{z};
      for (const Atom& a : atomic->atoms) {
        if (region_contains(Region{box}, a.point)) total += a.weight;
      }
      return total;
    }
    if (radial_) {
      double rho = z.modulus();
      auto it = cache_.find(rho);
      if (it != cache_.end()) return it->second;
      double v = integrate(mu_, DeltaBox{DiskPoint(rho, 0.0)}, 0.0, q_);
      cache_.emplace(rho, v);
      return v;
    }
    return integrate(mu_, DeltaBox{z}, 0.0, q_);
  }

 private:
  const MeasureModel& mu_;
  QuadratureConfig q_;
  bool radial_;
  mutable std::map<double, double> cache_;
};

}  // namespace

ConstantEstimate theorem_condition(const MeasureModel& mu, TheoremId id,
                                   const TheoremParams& p, const QuadratureConfig& q,
                                   const Lattice* lattice) {
  switch (id) {
    case TheoremId::T1b: {
      if (!(p.alpha > -1.0)) constraint_error("T1 requires alpha > -1");
      if (!(p.t > 0.0)) constraint_error("T1b requires t > 0");
      if (lattice == nullptr) constraint_error("T1b requires a lattice");
      return bergman_disk_constant(mu, p.t, p.alpha + 2.0, *lattice, q);
    }
    case TheoremId::T1c: {
      if (!(p.alpha > -1.0)) constraint_error("T1 requires alpha > -1");
      return carleson_constant(mu, p.alpha + 2.0, p.N, q);
    }
    case TheoremId::T2: {
      if (!(p.beta > 0.0)) constraint_error("T2 requires beta > 0");
      if (!(p.q > 1.0)) constraint_error("T2 requires q > 1");
      if (!(p.t > p.beta + 1.0)) constraint_error("T2 requires t > beta + 1");
      if (!(p.tau > 0.0)) constraint_error("T2 requires tau > 0");
      BergmanBallMass ball(mu, p.tau, q);
      AlphaAreaMeasure area{0.0};  // integration against dm_2
      std::vector<double> values(p.M);
      for (int j = 0; j < p.M; ++j) {
        BoundaryPoint xi(-kPi + kTwoPi * (j + 0.5) / p.M);
        values[j] = integrate_weighted(
            MeasureModel{area}, LusinCone{xi, p.sigma}, p.t - 3.0 - p.beta,
            [&](const DiskPoint& z) { return ball(z); }, q);
      }
      ConstantEstimate est;
      est.value = weak_lorentz_direct(BoundarySamples{values}, p.q);
      est.depth = p.M;
      est.argmax = "weak-Lorentz norm over boundary samples";
      return est;
    }
    case TheoremId::T3: {
      if (!(p.q > 1.0 && p.r > 1.0 && p.p > 1.0)) constraint_error("T3 requires p, q, r > 1");
      if (std::fabs(1.0 / p.p - 1.0 / p.q - 1.0 / p.r) > 1e-9) {
        constraint_error("T3 requires 1/p = 1/q + 1/r");
      }
      if (!(p.beta > 0.0)) constraint_error("T3 requires beta > 0");
      if (!(p.t > -1.0)) constraint_error("T3 requires t > -1");
      double expo = p.beta + 1.0 - 1.0 / p.r;
      return sup_over_dyadic_arcs(
          [&](const Arc& arc, const DyadicArc&) {
            return integrate(mu, CarlesonBox{arc}, p.t, q) / std::pow(arc.length, expo);
          },
          p.N);
    }
    case TheoremId::T4: {
      if (!(p.p > 1.0)) constraint_error("T4 requires p > 1");
      if (!(p.p < p.q)) constraint_error("T4 requires p < q");
      if (!(p.alpha > 0.0)) constraint_error("T4 requires alpha > 0");
      WhitneyBoxMass whitney(mu, q);
      double e = p.q / (p.q - p.p);
      double inner_expo = p.alpha * p.p + 1.0;
      AlphaAreaMeasure area{0.0};
      return sup_over_dyadic_arcs(
          [&](const Arc& arc, const DyadicArc&) {
            double inner = integrate_weighted(
                MeasureModel{area}, CarlesonBox{arc}, -1.0,
                [&](const DiskPoint& z) {
                  double ratio = whitney(z) / std::pow(1.0 - z.modulus(), inner_expo);
                  return std::pow(ratio, e);
                },
                q);
            return inner / arc.length;
          },
          p.N);
    }
  }
  constraint_error("unhandled theorem id");
}

}  // namespace carleson
