#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "carleson/measures.hpp"

using namespace carleson;

namespace {

const QuadratureConfig kQ{12, 32, 4096};

Region box(double center, double len) { return CarlesonBox{Arc(center, len)}; }

}  // namespace

TEST_CASE("QuadratureConfig validation and refinement") {
  QuadratureConfig shallow{3, 32, 4096};
  QuadratureConfig coarse{12, 8, 4096};
  QuadratureConfig capped{12, 32, 16};
  CHECK_THROWS_AS(shallow.validate(), std::invalid_argument);
  CHECK_THROWS_AS(coarse.validate(), std::invalid_argument);
  CHECK_THROWS_AS(capped.validate(), std::invalid_argument);
  CHECK_NOTHROW(kQ.validate());
  QuadratureConfig r = kQ.refined();
  CHECK(r.depth == 13);
  CHECK(r.angular_cap == 8192);
  CHECK(kQ.angular_nodes(0) == 32);
  CHECK(kQ.angular_nodes(3) == 256);
  CHECK(kQ.angular_nodes(11) == 4096);  // capped
}

TEST_CASE("atomic integration is exact membership-weighted summation") {
  MeasureModel mu = AtomicMeasure{{{DiskPoint(0.9, 0.0), 2.0}}};
  CHECK(integrate(mu, box(0.0, 0.25), 0.0, kQ) == doctest::Approx(2.0));
  CHECK(integrate(mu, box(3.0, 0.25), 0.0, kQ) == doctest::Approx(0.0));
  // gamma weights the atom by (1-|z|)^gamma = 0.1^-1 = 10
  CHECK(integrate(mu, box(0.0, 0.25), -1.0, kQ) == doctest::Approx(20.0));

  MeasureModel origin = AtomicMeasure{{{DiskPoint(), 1.0}}};
  CHECK(integrate(origin, LusinCone{BoundaryPoint(0.0), 2.0}, 0.0, kQ) == doctest::Approx(1.0));
  CHECK(integrate(origin, LusinCone{BoundaryPoint(2.5), 1.5}, 0.0, kQ) == doctest::Approx(1.0));
}

TEST_CASE("area measure of a box has closed form l^2 (2 - l)") {
  MeasureModel m2 = AlphaAreaMeasure{0.0};
  for (double theta0 : {0.0, 1.3, -2.0}) {
    double got = integrate(m2, box(theta0, 0.25), 0.0, kQ);
    CHECK(got == doctest::Approx(7.0 / 64.0).epsilon(1e-4));
  }
  double tiny = std::pow(2.0, -8);
  CHECK(integrate(m2, box(0.5, tiny), 0.0, kQ) ==
        doctest::Approx(tiny * tiny * (2.0 - tiny)).epsilon(1e-6));
}

TEST_CASE("whole-disk masses match closed forms") {
  CHECK(total_mass(AlphaAreaMeasure{0.0}, kQ) == doctest::Approx(1.0).epsilon(1e-4));
  // int_0^1 2 rho (1-rho)^alpha drho = 2/((alpha+1)(alpha+2))
  CHECK(total_mass(AlphaAreaMeasure{1.0}, kQ) == doctest::Approx(1.0 / 3.0).epsilon(1e-6));
  CHECK(total_mass(AlphaAreaMeasure{2.0}, kQ) == doctest::Approx(1.0 / 6.0).epsilon(1e-6));
  // exponent -1/2, cutoff c: [4 sqrt(u) - (4/3) u^(3/2)] from u=1-c to 1
  double c = 0.9999;
  double u = 1.0 - c;
  double expected = (4.0 - 4.0 / 3.0) - (4.0 * std::sqrt(u) - (4.0 / 3.0) * std::pow(u, 1.5));
  CHECK(total_mass(RadialPowerMeasure{-0.5, c}, kQ) == doctest::Approx(expected).epsilon(1e-6));
}

TEST_CASE("Bergman-disk area matches the Euclidean radius") {
  // D(a,t) is a Euclidean disk inside D, so its m_2 mass is radius^2.
  for (double rho : {0.0, 0.5, 0.9}) {
    DiskPoint a = DiskPoint::polar(rho, 0.4);
    EuclideanDisk d = bergman_disk_euclidean(a, 1.0);
    double got = integrate(AlphaAreaMeasure{0.0}, BergmanDisk{a, 1.0}, 0.0, kQ);
    CHECK(got == doctest::Approx(d.radius * d.radius).epsilon(2e-2));
  }
}

TEST_CASE("rotation invariance for radial densities") {
  for (const MeasureModel mu :
       {MeasureModel(AlphaAreaMeasure{1.0}), MeasureModel(RadialPowerMeasure{-0.5, 0.9999})}) {
    double base = integrate(mu, box(0.0, 1.0 / 32.0), 0.0, kQ);
    for (double theta0 : {0.7, 2.9, -1.1}) {
      double rotated = integrate(mu, box(theta0, 1.0 / 32.0), 0.0, kQ);
      CHECK(rotated == doctest::Approx(base).epsilon(1e-6));
    }
  }
}

TEST_CASE("additivity over disjoint boxes") {
  MeasureModel atoms = AtomicMeasure{{{DiskPoint(0.9, 0.0), 1.0}, {DiskPoint(-0.9, 0.0), 3.0}}};
  Region b1 = box(0.0, 0.25);
  Region b2 = box(kPi, 0.25);
  CHECK(integrate(atoms, b1, 0.0, kQ) + integrate(atoms, b2, 0.0, kQ) == doctest::Approx(4.0));

  // the 8 disjoint boxes of length 1/8 tile the annulus {rho > 7/8}
  MeasureModel m1 = AlphaAreaMeasure{1.0};
  double len = 1.0 / 8.0;
  double parts = 0.0;
  for (int j = 0; j < 8; ++j) {
    parts += integrate(m1, box(-kPi + kTwoPi * (j + 0.5) * len, len), 0.0, kQ);
  }
  // annulus mass: int_{1-len}^1 2 rho (1-rho) drho
  double u = len;
  double annulus = u * u - (2.0 / 3.0) * u * u * u;
  CHECK(parts == doctest::Approx(annulus).epsilon(1e-6));
}

TEST_CASE("refinement convergence for density integrals") {
  QuadratureConfig fine = kQ.refined();
  for (double len : {0.25, 1.0 / 1024.0}) {
    for (double gamma : {0.0, 1.0}) {
      double a = integrate(AlphaAreaMeasure{0.5}, box(0.3, len), gamma, kQ);
      double b = integrate(AlphaAreaMeasure{0.5}, box(0.3, len), gamma, fine);
      CHECK(std::fabs(a - b) / std::max(b, 1e-300) < 0.01);
    }
  }
  // cone integrals too (these exercise the sampled angular sections)
  Region cone = LusinCone{BoundaryPoint(0.2), 2.0};
  double c1 = integrate(AlphaAreaMeasure{0.0}, cone, 0.0, kQ);
  double c2 = integrate(AlphaAreaMeasure{0.0}, cone, 0.0, fine);
  CHECK(std::fabs(c1 - c2) / c2 < 0.01);
}

TEST_CASE("m_alpha mass of Bergman disks is comparable to (1-|a|^2)^(2+alpha)") {
  // 1-|a|^2 and 1-|a| agree up to a factor 2; the squared form keeps the
  // empirical constant spread within the documented bound at t = 1.
  for (double alpha : {0.0, 1.0}) {
    auto scan = [&](const QuadratureConfig& q) {
      double lo = std::numeric_limits<double>::infinity();
      double hi = 0.0;
      for (double rho : {0.0, 0.3, 0.6, 0.9, 0.97, 0.99}) {
        DiskPoint a = DiskPoint::polar(rho, 0.9);
        double mass = integrate(AlphaAreaMeasure{alpha}, BergmanDisk{a, 1.0}, 0.0, q);
        double ratio = mass / std::pow(1.0 - rho * rho, 2.0 + alpha);
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
      }
      return std::pair{lo, hi};
    };
    auto [lo, hi] = scan(kQ);
    CHECK(hi / lo <= 20.0);
    auto [lo2, hi2] = scan(kQ.refined());
    CHECK(std::fabs(hi2 / lo2 - hi / lo) / (hi / lo) < 0.05);
  }
}

TEST_CASE("divergent configurations raise DivergenceError") {
  CHECK_THROWS_AS(integrate(AlphaAreaMeasure{0.0}, WholeDisk{}, -1.0, kQ), DivergenceError);
  CHECK_THROWS_AS(integrate(AlphaAreaMeasure{0.0}, box(0.0, 0.25), -1.5, kQ), DivergenceError);
  CHECK_THROWS_AS(
      integrate(AlphaAreaMeasure{0.0}, LusinCone{BoundaryPoint(0.0), 2.0}, -2.0, kQ),
      DivergenceError);
  // cone gains one power: gamma = -1 converges there
  CHECK_NOTHROW(integrate(AlphaAreaMeasure{0.0}, LusinCone{BoundaryPoint(0.0), 2.0}, -1.0, kQ));
  // truncated tail regularizes
  CHECK_NOTHROW(integrate(AlphaAreaMeasure{0.0}, WholeDisk{}, -1.0, kQ, Tail::Truncate));
  // a cutoff keeps everything finite
  CHECK_NOTHROW(integrate(RadialPowerMeasure{-3.0, 0.9}, WholeDisk{}, 0.0, kQ));
}

TEST_CASE("integrate_weighted agrees with integrate") {
  MeasureModel m2 = AlphaAreaMeasure{0.0};
  Region b = box(0.1, 0.25);
  double plain = integrate(m2, b, 0.0, kQ);
  double weighted = integrate_weighted(m2, b, 0.0, [](const DiskPoint&) { return 1.0; }, kQ);
  // the weighted path assigns cells by midpoint, so agreement is at
  // quadrature accuracy rather than exact
  CHECK(weighted == doctest::Approx(plain).epsilon(1e-2));
  // weight (1-|z|) ~ shifting gamma by one
  double w1 = integrate_weighted(m2, b, 0.0,
                                 [](const DiskPoint& z) { return 1.0 - z.modulus(); }, kQ);
  CHECK(w1 == doctest::Approx(integrate(m2, b, 1.0, kQ)).epsilon(1e-2));
}

TEST_CASE("constant grid density reproduces the area measure") {
  GridDensityMeasure g;
  g.grid = QuadratureConfig{8, 32, 1024};
  std::size_t n = 0;
  for (int k = 0; k < g.grid.depth; ++k) n += g.grid.angular_nodes(k);
  g.samples.assign(n, 1.0);
  double box_mass = integrate(MeasureModel(g), box(0.0, 0.25), 0.0, g.grid);
  CHECK(box_mass == doctest::Approx(7.0 / 64.0).epsilon(2e-2));
  // total cell mass equals m_2 of the covered disk {rho < 1 - 2^-depth}
  double covered = std::pow(1.0 - std::pow(2.0, -g.grid.depth), 2.0);
  CHECK(total_mass(MeasureModel(g), g.grid) == doctest::Approx(covered).epsilon(1e-9));
}

TEST_CASE("make_measure inline forms") {
  MeasureModel a = make_measure("atomic:[(0.9,0,1.0)]");
  REQUIRE(std::holds_alternative<AtomicMeasure>(a));
  CHECK(std::get<AtomicMeasure>(a).atoms.size() == 1);
  CHECK(std::get<AtomicMeasure>(a).atoms[0].weight == doctest::Approx(1.0));

  MeasureModel a2 = make_measure("atomic: [(0.5, 0.1, 2.0), (-0.3, 0, 0.5)]");
  CHECK(std::get<AtomicMeasure>(a2).atoms.size() == 2);

  MeasureModel m = make_measure("alpha_area:0");
  REQUIRE(std::holds_alternative<AlphaAreaMeasure>(m));
  CHECK(total_mass(m, kQ) == doctest::Approx(1.0).epsilon(1e-4));

  MeasureModel r = make_measure("radial_power:-0.5,cutoff=0.9999");
  REQUIRE(std::holds_alternative<RadialPowerMeasure>(r));
  CHECK(std::get<RadialPowerMeasure>(r).cutoff == doctest::Approx(0.9999));
}

TEST_CASE("make_measure rejections") {
  CHECK_THROWS_AS(make_measure("atomic:[(0.9,0,-1.0)]"), std::invalid_argument);
  CHECK_THROWS_AS(make_measure("atomic:[(0.9,0)]"), std::invalid_argument);
  CHECK_THROWS_AS(make_measure("radial_power:-1.5"), std::invalid_argument);
  CHECK_THROWS_AS(make_measure("alpha_area:-1.5"), std::invalid_argument);
  CHECK_THROWS_AS(make_measure("banana:1"), std::invalid_argument);
  CHECK_THROWS_AS(make_measure("nocolon"), std::invalid_argument);
}

TEST_CASE("make_measure file form") {
  const char* path = "measure_spec_test.tmp";
  {
    std::ofstream out(path);
    out << "# two atoms\n"
        << "kind atomic\n"
        << "atom 0.9 0 1.0\n"
        << "atom -0.5 0.2 2.5\n";
  }
  MeasureModel m = make_measure(std::string("@") + path);
  REQUIRE(std::holds_alternative<AtomicMeasure>(m));
  CHECK(std::get<AtomicMeasure>(m).atoms.size() == 2);
  std::remove(path);

  CHECK_THROWS_AS(make_measure("@does_not_exist.tmp"), std::invalid_argument);
}
