// Scalar functionals: dyadic arc suprema, Carleson constants, the A/B
// functionals, weak-Lorentz norms, cone integrals, weighted sup norms and
// kernel test functions.
#pragma once

#include <functional>
#include <optional>
#include <string>

#include "carleson/lattice.hpp"
#include "carleson/measures.hpp"

namespace carleson {

// Dyadic arc [index 2^-depth, (index+1) 2^-depth) in normalized position on
// the circle (position p maps to angle -pi + 2 pi p).
struct DyadicArc {
  int depth = 0;
  int index = 0;

  double length() const { return std::pow(2.0, -depth); }
  Arc to_arc() const;
  std::string describe() const;
};

struct ConstantEstimate {
  double value = 0.0;
  std::string argmax;       // description of the maximizing arc or point
  int depth = 0;            // dyadic depth N (or lattice size for point suprema)
  double refinement_delta = 0.0;  // relative change from depth N-1 to N
};

// Maximum of F over all dyadic arcs of depth <= N. F receives the arc both
// as an Arc and as its dyadic coordinates.
ConstantEstimate sup_over_dyadic_arcs(
    const std::function<double(const Arc&, const DyadicArc&)>& F, int N);

// sup_I mu(box I) / |I|^lambda over dyadic arcs.
ConstantEstimate carleson_constant(const MeasureModel& mu, double lambda, int N,
                                   const QuadratureConfig& q);

// sup_j mu(D(z_j, t)) / (1-|z_j|)^lambda over the lattice points.
ConstantEstimate bergman_disk_constant(const MeasureModel& mu, double t, double lambda,
                                       const Lattice& lattice, const QuadratureConfig& q);

// A(mu) = sup_I |I|^-s int_box dmu / (1-|z|). Divergent-mass measures are
// regularized by truncating the radial integral at the quadrature depth.
ConstantEstimate a_functional(const MeasureModel& mu, double s, int N,
                              const QuadratureConfig& q);

// B(mu) = sup_I |I|^-s int_I int_cone dmu / (1-|z|)^2 dm(xi). The outer
// integral is exact for atomic measures (aperture-arc overlaps) and sampled
// at M equispaced boundary points for densities. Same truncation as A.
ConstantEstimate b_functional(const MeasureModel& mu, double s, double sigma, int N,
                              int M, const QuadratureConfig& q);

// sup over dyadic arcs (depth <= N) of |I|^-expo * (1/M) * sum of g_j over
// the sample positions falling in I; sample j sits at position (j+offset)/M
// of the normalized circle.
ConstantEstimate sup_arc_average(const std::vector<double>& g, double expo, int N,
                                 double offset);

struct BoundarySamples {
  std::vector<double> values;  // at xi_j = e^{2 pi i j / M}, M = values.size()
};

// Distribution-function form: max over sampled levels of
// lambda * m({|f| > lambda})^{1/q}.
double weak_lorentz_direct(const BoundarySamples& f, double q);

// Arc representation: (sup_I |I|^-(1-r/q) mean-sum of |f|^r over I)^{1/r},
// 0 < r < q, over dyadic arcs to depth N.
double weak_lorentz_arcrep(const BoundarySamples& f, double q, double r, int N);

// |f(z)| for f(z) = (1-|w|)^normalization / (1 - z conj(w))^exponent,
// evaluated through log-modulus.
struct KernelFunction {
  DiskPoint pole;
  double exponent = 1.0;       // gamma > 0 (0 means f == 1)
  double normalization = 0.0;  // beta >= 0

  double abs(const DiskPoint& z) const;
};

BoundarySamples kernel_boundary_trace(const DiskPoint& w, double gamma, int M);

// int_cone |f(z)| (1-|z|)^gamma dmu(z); pass nullopt for f == 1.
double cone_integral(const std::optional<KernelFunction>& f, const MeasureModel& mu,
                     const BoundaryPoint& xi, double sigma, double gamma,
                     const QuadratureConfig& q, Tail tail = Tail::Strict);

// sup over quadrature nodes in the cone (plus the origin) of |f|(1-|z|)^beta.
double nontangential_sup(const KernelFunction& f, const BoundaryPoint& xi, double sigma,
                         double beta, const QuadratureConfig& q);

// sup over quadrature nodes of the disk (plus the origin) of |f|(1-|z|)^beta.
double weighted_sup_norm(const KernelFunction& f, double beta, const QuadratureConfig& q);

enum class TheoremId { T1b, T1c, T2, T3, T4 };

TheoremId theorem_id_from_string(const std::string& s);
std::string to_string(TheoremId id);

struct TheoremParams {
  double alpha = 0.0;  // weight exponent (T1, T4)
  double beta = 1.0;   // T2, T3
  double t = 1.0;      // Bergman-disk radius (T1b) / weight power (T2, T3)
  double tau = 1.0;    // inner Bergman-disk radius (T2)
  double q = 2.0;
  double r = 3.0;      // T3
  double p = 1.5;      // T3, T4
  double sigma = 2.0;
  int N = 12;          // dyadic depth
  int M = 256;         // boundary samples
};

// The measure-side condition of the named theorem as a supremum / weak norm.
// Rejects parameters violating the theorem's header constraints.
ConstantEstimate theorem_condition(const MeasureModel& mu, TheoremId id,
                                   const TheoremParams& params, const QuadratureConfig& q,
                                   const Lattice* lattice = nullptr);

}  // namespace carleson
