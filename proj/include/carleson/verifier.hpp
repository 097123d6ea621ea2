// Orchestrates the functionals into numerical consistency checks of the
// embedding theorems and the A/B and weak-Lorentz relations, producing
// structured reports.
#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "carleson/functionals.hpp"

namespace carleson {

enum class Verdict { Consistent, Inconsistent, Inconclusive };

std::string to_string(Verdict v);

struct InstanceRow {
  std::string measure_id;
  std::string function_id;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
};

struct TheoremReport {
  std::string check;  // "T1".."T4", "EQ22", "LORENTZ"
  nlohmann::json params;
  std::vector<InstanceRow> rows;
  double max_ratio = 0.0;
  double min_ratio = 0.0;
  double trend_slope = 0.0;       // log2 ratio per sweep step
  double refinement_change = 0.0; // relative change of max_ratio under doubling
  Verdict verdict = Verdict::Inconclusive;
  std::vector<std::string> notes;

  nlohmann::json to_json() const;
  std::string summary() const;
};

struct FamilyMember {
  std::string id;
  MeasureModel measure;
  bool carleson2 = true;  // Carleson of order lambda = 2 (analytic classification)
  std::string note;
};

// The six built-in measures: three atomic configurations, dm_2, dm_1 and the
// non-Carleson radial control (1-|z|)^{-1/2}.
const std::vector<FamilyMember>& builtin_family();

// Extra named measures (beyond the family) addressable from the CLI.
MeasureModel named_measure(const std::string& id);

struct VerifierConfig {
  QuadratureConfig quad{14, 32, 4096};
  int N = 12;            // dyadic depth
  int M = 256;           // boundary samples
  double sigma = 2.0;
  int sweep_max_k = 10;  // kernel poles at w = 1 - 2^-k, k = 1..sweep_max_k
  double beta_big = 5.0; // "big" kernel exponent for the T1 sweep
};

// Eq. (2.2): B/A bounded for s in (0,1); one-sided A <= C B for all s > 0.
TheoremReport verify_equivalence_2_2(const std::vector<FamilyMember>& measures, double s,
                                     const VerifierConfig& cfg);

// Theorems 1-4: condition constants plus a kernel-pole sweep of the stated
// norm inequality, with verdicts from boundedness, trend slope, and
// refinement stability.
TheoremReport verify_theorem(int theorem, const std::vector<FamilyMember>& measures,
                             const TheoremParams& params, const VerifierConfig& cfg);

// One point of the kernel-pole sweep: (lhs, rhs) of theorem `theorem`'s norm
// inequality for the kernel test function with pole at w on (0, 1).
std::pair<double, double> theorem_instance(int theorem, const MeasureModel& mu, double w,
                                           const TheoremParams& params,
                                           const VerifierConfig& cfg);

// Eq. (2.3)/(2.4): Direct vs ArcRep weak norms on kernel boundary traces,
// and boundedness of the gamma = 1/q boundary sweep.
TheoremReport verify_lorentz_representation(const std::vector<double>& w_list, double gamma,
                                            double q, double r, int M, int N);

// Least-squares slope of log2(y) against the sweep index.
double log2_slope(const std::vector<double>& y);

}  // namespace carleson
