#include <doctest.h>

#include "carleson/verifier.hpp"

using namespace carleson;

namespace {

VerifierConfig light_config() {
  VerifierConfig cfg;
  cfg.quad = QuadratureConfig{10, 32, 1024};
  cfg.N = 10;
  cfg.M = 128;
  cfg.sweep_max_k = 6;
  return cfg;
}

std::vector<FamilyMember> zero_only() {
  return {{"zero", AtomicMeasure{}, true, "empty measure"}};
}

}  // namespace

TEST_CASE("log2_slope sanity") {
  CHECK(log2_slope({1.0, 2.0, 4.0, 8.0}) == doctest::Approx(1.0));
  CHECK(log2_slope({3.0, 3.0, 3.0}) == doctest::Approx(0.0));
  CHECK(log2_slope({8.0, 4.0, 2.0}) == doctest::Approx(-1.0));
  CHECK(log2_slope({}) == doctest::Approx(0.0));
  CHECK(log2_slope({0.0, 0.0}) == doctest::Approx(0.0));
}

TEST_CASE("builtin family composition") {
  const auto& fam = builtin_family();
  REQUIRE(fam.size() == 6);
  int carleson_count = 0;
  for (const FamilyMember& m : fam) {
    if (m.carleson2) ++carleson_count;
    CHECK(!m.id.empty());
  }
  CHECK(carleson_count == 5);
  CHECK(fam.back().id == "radial_control");
  CHECK_FALSE(fam.back().carleson2);
}

TEST_CASE("named_measure lookup") {
  CHECK_NOTHROW(named_measure("atom_single"));
  CHECK_NOTHROW(named_measure("radial_control"));
  CHECK(std::holds_alternative<RadialPowerMeasure>(named_measure("radial_plus")));
  CHECK(std::get<AtomicMeasure>(named_measure("zero")).atoms.empty());
  CHECK_THROWS_AS(named_measure("nope"), std::invalid_argument);
}

TEST_CASE("EQ22 on the zero measure is vacuously consistent") {
  TheoremReport rep = verify_equivalence_2_2(zero_only(), 0.5, light_config());
  REQUIRE(rep.rows.size() == 1);
  CHECK(rep.rows[0].lhs == doctest::Approx(0.0));
  CHECK(rep.rows[0].rhs == doctest::Approx(0.0));
  CHECK(rep.rows[0].ratio == doctest::Approx(1.0));
  CHECK(rep.verdict == Verdict::Consistent);
}

TEST_CASE("EQ22 on the built-in family at s = 1/2") {
  TheoremReport rep = verify_equivalence_2_2(builtin_family(), 0.5, light_config());
  CHECK(rep.rows.size() == builtin_family().size());
  for (const InstanceRow& row : rep.rows) {
    INFO(row.measure_id << " B/A = " << row.ratio);
    CHECK(row.ratio >= 1e-2);
    CHECK(row.ratio <= 1e2);
  }
  CHECK(rep.verdict == Verdict::Consistent);
  CHECK(rep.refinement_change <= 0.2);
}

TEST_CASE("EQ22 outside (0,1) asserts only the one-sided bound") {
  TheoremReport rep = verify_equivalence_2_2(builtin_family(), 1.5, light_config());
  CHECK(rep.min_ratio >= 1e-2);  // A <= 100 B
  bool noted = false;
  for (const std::string& n : rep.notes) {
    if (n.find("one-sided") != std::string::npos) noted = true;
  }
  CHECK(noted);
  CHECK_THROWS_AS(verify_equivalence_2_2(builtin_family(), 0.0, light_config()),
                  std::invalid_argument);
}

TEST_CASE("T3 zero measure is trivially consistent") {
  TheoremParams p;
  p.p = 1.2;  // 1/1.2 = 1/2 + 1/3
  TheoremReport rep = verify_theorem(3, zero_only(), p, light_config());
  CHECK(rep.verdict == Verdict::Consistent);
  CHECK(rep.max_ratio == doctest::Approx(0.0));
}

TEST_CASE("T2 consistent on an interior atom with admissible parameters") {
  TheoremParams p;
  p.beta = 1.0;
  p.t = 2.5;
  std::vector<FamilyMember> fam = {{"atom_single", named_measure("atom_single"), true, ""}};
  TheoremReport rep = verify_theorem(2, fam, p, light_config());
  CHECK(rep.verdict != Verdict::Inconsistent);
  CHECK(std::isfinite(rep.max_ratio));
}

TEST_CASE("T4 consistent on the area measure") {
  TheoremParams p;
  p.p = 1.2;
  p.q = 2.0;
  p.alpha = 0.5;
  std::vector<FamilyMember> fam = {{"area", AlphaAreaMeasure{0.0}, true, ""}};
  TheoremReport rep = verify_theorem(4, fam, p, light_config());
  CHECK(rep.verdict == Verdict::Consistent);
}

TEST_CASE("theorem parameter violations propagate") {
  TheoremParams p;  // default t = 1 <= beta + 1 = 2 violates T2
  CHECK_THROWS_AS(verify_theorem(2, zero_only(), p, light_config()), std::invalid_argument);
  CHECK_THROWS_AS(verify_theorem(0, zero_only(), p, light_config()), std::invalid_argument);
  CHECK_THROWS_AS(verify_theorem(5, zero_only(), p, light_config()), std::invalid_argument);
}

TEST_CASE("theorem_instance rejects poles outside [0,1)") {
  TheoremParams p;
  CHECK_THROWS_AS(theorem_instance(1, AlphaAreaMeasure{0.0}, 1.0, p, light_config()),
                  std::invalid_argument);
  CHECK_THROWS_AS(theorem_instance(1, AlphaAreaMeasure{0.0}, -0.5, p, light_config()),
                  std::invalid_argument);
}

TEST_CASE("Lorentz representation on a flat trace") {
  TheoremReport rep = verify_lorentz_representation({0.5}, 0.0, 2.0, 1.0, 256, 8);
  REQUIRE(rep.rows.size() == 1);
  CHECK(rep.rows[0].ratio == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(rep.verdict == Verdict::Consistent);
}

TEST_CASE("Lorentz boundary sweep: gamma = 1/q bounded, gamma = 1 diverges") {
  std::vector<double> w_list;
  for (int k = 1; k <= 8; ++k) w_list.push_back(1.0 - std::pow(2.0, -k));

  TheoremReport bounded = verify_lorentz_representation(w_list, 0.5, 2.0, 1.0, 1 << 12, 12);
  CHECK(bounded.trend_slope <= 0.05);
  CHECK(bounded.verdict == Verdict::Consistent);

  TheoremReport diverging = verify_lorentz_representation(w_list, 1.0, 2.0, 1.0, 1 << 12, 12);
  CHECK(diverging.trend_slope > 0.2);
  CHECK(diverging.verdict == Verdict::Inconsistent);
  bool flagged = false;
  for (const std::string& n : diverging.notes) {
    if (n.find("flagged") != std::string::npos) flagged = true;
  }
  CHECK(flagged);

  CHECK_THROWS_AS(verify_lorentz_representation(w_list, 0.5, 2.0, 3.0, 256, 8),
                  std::invalid_argument);
}

TEST_CASE("reports are deterministic") {
  VerifierConfig cfg = light_config();
  std::string a = verify_equivalence_2_2(builtin_family(), 0.5, cfg).to_json().dump();
  std::string b = verify_equivalence_2_2(builtin_family(), 0.5, cfg).to_json().dump();
  CHECK(a == b);

  TheoremParams p;
  p.p = 1.2;
  std::string c = verify_theorem(3, zero_only(), p, cfg).to_json().dump();
  std::string d = verify_theorem(3, zero_only(), p, cfg).to_json().dump();
  CHECK(c == d);
}

TEST_CASE("report JSON carries the schema fields") {
  TheoremReport rep = verify_equivalence_2_2(zero_only(), 0.5, light_config());
  nlohmann::json j = rep.to_json();
  CHECK(j["schema_version"] == 1);
  CHECK(j["check"] == "EQ22");
  CHECK(j.contains("verdict"));
  CHECK(j.contains("rows"));
  CHECK(j["rows"].is_array());
  CHECK(rep.summary().find("EQ22") == 0);
}
