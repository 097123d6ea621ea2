// Command-line entry point: geometry queries, lattice construction,
// functional evaluation, theorem verification, and parameter sweeps.
#include <fstream>
#include <iomanip>
#include <iostream>

#include <CLI11.hpp>

#include "carleson/verifier.hpp"

namespace {

using namespace carleson;

MeasureModel resolve_measure(const std::string& spec) {
  if (spec.rfind("builtin:", 0) == 0) return named_measure(spec.substr(8));
  return make_measure(spec);
}

DiskPoint parse_point(const std::string& s) {
  double re = 0.0, im = 0.0;
  char comma = 0;
  std::istringstream in(s);
  if (!(in >> re)) throw std::invalid_argument("point: expected RE[,IM], got '" + s + "'");
  if (in >> comma >> im && comma != ',') {
    throw std::invalid_argument("point: expected RE,IM, got '" + s + "'");
  }
  return DiskPoint(re, im);
}

struct CommonOptions {
  int depth = 14;
  int base_angular = 32;
  int angular_cap = 4096;
  int N = 12;
  int M = 256;
  double sigma = 2.0;

  QuadratureConfig quad() const { return QuadratureConfig{depth, base_angular, angular_cap}; }
  VerifierConfig verifier() const {
    VerifierConfig cfg;
    cfg.quad = quad();
    cfg.N = N;
    cfg.M = M;
    cfg.sigma = sigma;
    return cfg;
  }
};

void add_common(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("--quad-depth", opt.depth, "radial quadrature depth K");
  cmd->add_option("--base-angular", opt.base_angular, "base angular resolution M0");
  cmd->add_option("--angular-cap", opt.angular_cap, "angular resolution cap");
  cmd->add_option("--depth,-N", opt.N, "dyadic arc depth N");
  cmd->add_option("--boundary-samples,-M", opt.M, "boundary sample count M");
  cmd->add_option("--sigma", opt.sigma, "cone aperture sigma > 1");
}

int run_geometry(const std::string& op, const std::string& a_str, const std::string& z_str,
                 double t, double sigma) {
  std::cout << std::setprecision(12);
  if (op == "mobius") {
    DiskPoint r = mobius(parse_point(a_str), parse_point(z_str));
    std::cout << "mobius: " << r.re() << " " << r.im() << "\n";
  } else if (op == "distance") {
    std::cout << "bergman_distance: "
              << bergman_distance(parse_point(a_str), parse_point(z_str)) << "\n";
  } else if (op == "disk") {
    EuclideanDisk d = bergman_disk_euclidean(parse_point(a_str), t);
    std::cout << "bergman_disk: center " << d.center.re() << " " << d.center.im()
              << " radius " << d.radius << "\n";
  } else if (op == "aperture") {
    ApertureArc arc = aperture_arc(parse_point(z_str), sigma);
    std::cout << "aperture_arc: center " << arc.arc.center_angle << " measure "
              << arc.measure << "\n";
  } else {
    throw std::invalid_argument("geometry: unknown op '" + op + "'");
  }
  return 0;
}

int run_functional(const std::string& name, const MeasureModel& mu, double lambda, double s,
                   double t, double q_exp, double r_exp, const CommonOptions& opt) {
  std::cout << std::setprecision(12);
  ConstantEstimate est;
  if (name == "carleson_constant") {
    est = carleson_constant(mu, lambda, opt.N, opt.quad());
  } else if (name == "a_functional") {
    est = a_functional(mu, s, opt.N, opt.quad());
  } else if (name == "b_functional") {
    est = b_functional(mu, s, opt.sigma, opt.N, opt.M, opt.quad());
  } else if (name == "bergman_disk_constant") {
    Lattice lat = build_lattice(1.0, 1.0 - std::pow(2.0, -10));
    est = bergman_disk_constant(mu, t, lambda, lat, opt.quad());
  } else if (name == "total_mass") {
    est.value = total_mass(mu, opt.quad());
    est.argmax = "whole disk";
  } else {
    throw std::invalid_argument("functional: unknown name '" + name + "'");
  }
  std::cout << name << " = " << est.value << "  (argmax: " << est.argmax
            << ", refinement delta " << est.refinement_delta << ")\n";
  return 0;
}

TheoremReport dispatch_verify(const std::string& theorem,
                              const std::vector<FamilyMember>& measures,
                              const TheoremParams& tp, const VerifierConfig& cfg,
                              double s, double gamma, int trace_M) {
  if (theorem == "EQ22") return verify_equivalence_2_2(measures, s, cfg);
  if (theorem == "LORENTZ") {
    std::vector<double> w_list;
    for (int k = 1; k <= cfg.sweep_max_k; ++k) w_list.push_back(1.0 - std::pow(2.0, -k));
    return verify_lorentz_representation(w_list, gamma, tp.q, 1.0, trace_M, cfg.N);
  }
  if (theorem.size() == 2 && theorem[0] == 'T' && theorem[1] >= '1' && theorem[1] <= '4') {
    return verify_theorem(theorem[1] - '0', measures, tp, cfg);
  }
  throw std::invalid_argument("verify: unknown theorem '" + theorem +
                              "' (expected T1..T4, EQ22, LORENTZ)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical verification of Carleson-measure embeddings on the unit disk"};
  app.require_subcommand(1);

  std::string default_outdir = ".";
  if (const char* env = std::getenv("CARLESON_OUTPUT_DIR")) default_outdir = env;

  // geometry
  auto* geo = app.add_subcommand("geometry", "evaluate geometric primitives");
  std::string geo_op, geo_a = "0", geo_z = "0";
  double geo_t = 1.0, geo_sigma = 2.0;
  geo->add_option("--op", geo_op, "mobius|distance|disk|aperture")->required();
  geo->add_option("--a", geo_a, "point a as RE[,IM]");
  geo->add_option("--z", geo_z, "point z as RE[,IM]");
  geo->add_option("--t", geo_t, "Bergman radius t");
  geo->add_option("--sigma", geo_sigma, "cone aperture");

  // lattice
  auto* lat = app.add_subcommand("lattice", "build and verify a delta-lattice");
  double lat_delta = 1.0, lat_rho = 0.99, lat_sample_rho = -1.0;
  int lat_samples = 10000;
  std::string lat_out;
  lat->add_option("--delta", lat_delta, "separation parameter delta");
  lat->add_option("--rho-max", lat_rho, "truncation radius");
  lat->add_option("--samples", lat_samples, "verification sample count");
  lat->add_option("--sample-rho-max", lat_sample_rho, "sampling radius for verification");
  lat->add_option("--out", lat_out, "write points (one 're im' per line)");

  // functional
  auto* fn = app.add_subcommand("functional", "evaluate one scalar functional");
  std::string fn_name, fn_measure;
  double fn_lambda = 2.0, fn_s = 0.5, fn_t = 1.0, fn_q = 2.0, fn_r = 1.0;
  CommonOptions fn_opt;
  fn->add_option("--name", fn_name, "functional name")->required();
  fn->add_option("--measure", fn_measure, "measure spec")->required();
  fn->add_option("--lambda", fn_lambda, "Carleson exponent lambda");
  fn->add_option("--s", fn_s, "A/B functional exponent s");
  fn->add_option("--t", fn_t, "Bergman disk radius t");
  fn->add_option("--q", fn_q, "Lorentz exponent q");
  fn->add_option("--r", fn_r, "arc-representation exponent r");
  add_common(fn, fn_opt);

  // verify
  auto* ver = app.add_subcommand("verify", "run a theorem / relation verifier");
  std::string ver_theorem, ver_measure, ver_report;
  double ver_s = 0.5, ver_gamma = 0.5;
  int ver_trace_M = 1 << 14;
  TheoremParams tp;
  CommonOptions ver_opt;
  ver->add_option("--theorem", ver_theorem, "T1|T2|T3|T4|EQ22|LORENTZ")->required();
  ver->add_option("--measure", ver_measure, "measure spec (default: built-in family)");
  ver->add_option("--report", ver_report, "report output path (JSON document)");
  ver->add_option("--alpha", tp.alpha, "weight exponent alpha");
  ver->add_option("--beta", tp.beta, "kernel/weight exponent beta");
  ver->add_option("--t", tp.t, "power weight t / Bergman radius");
  ver->add_option("--tau", tp.tau, "inner Bergman radius tau");
  ver->add_option("--q", tp.q, "exponent q");
  ver->add_option("--r", tp.r, "exponent r");
  ver->add_option("--p", tp.p, "exponent p");
  ver->add_option("--s", ver_s, "exponent s for EQ22");
  ver->add_option("--gamma", ver_gamma, "trace kernel exponent for LORENTZ");
  ver->add_option("--trace-samples", ver_trace_M, "boundary trace sample count for LORENTZ");
  add_common(ver, ver_opt);

  // sweep
  auto* sw = app.add_subcommand("sweep", "tabulate a functional or theorem over an axis");
  std::string sw_axis, sw_values, sw_out, sw_functional, sw_theorem, sw_measure;
  double sw_lambda = 2.0, sw_s = 0.5;
  TheoremParams sw_tp;
  CommonOptions sw_opt;
  sw->add_option("--axis", sw_axis, "axis parameter: N | w | s | lambda")->required();
  sw->add_option("--values", sw_values, "comma-separated axis values")->required();
  sw->add_option("--functional", sw_functional, "functional name (axis N, s, lambda)");
  sw->add_option("--theorem", sw_theorem, "theorem T1..T4 (axis w)");
  sw->add_option("--measure", sw_measure, "measure spec")->required();
  sw->add_option("--out", sw_out, "CSV output path");
  sw->add_option("--lambda", sw_lambda, "Carleson exponent lambda");
  sw->add_option("--s", sw_s, "A functional exponent s");
  sw->add_option("--alpha", sw_tp.alpha, "alpha");
  sw->add_option("--beta", sw_tp.beta, "beta");
  sw->add_option("--q", sw_tp.q, "q");
  sw->add_option("--r", sw_tp.r, "r");
  sw->add_option("--p", sw_tp.p, "p");
  sw->add_option("--t", sw_tp.t, "t");
  add_common(sw, sw_opt);

  CLI11_PARSE(app, argc, argv);

  try {
    if (geo->parsed()) {
      return run_geometry(geo_op, geo_a, geo_z, geo_t, geo_sigma);
    }

    if (lat->parsed()) {
      Lattice l = build_lattice(lat_delta, lat_rho);
      LatticeReport rep = verify_lattice(l, lat_samples, lat_sample_rho);
      std::cout << "lattice: " << rep.point_count << " points, covering failures "
                << rep.covering_failures << ", max overlap " << rep.max_overlap
                << ", min pairwise distance " << rep.min_pairwise_distance << "\n";
      if (!lat_out.empty()) {
        std::ofstream out(lat_out);
        if (!out) throw std::runtime_error("cannot open output file " + lat_out);
        write_points(l, out);
      }
      return 0;
    }

    if (fn->parsed()) {
      return run_functional(fn_name, resolve_measure(fn_measure), fn_lambda, fn_s, fn_t,
                            fn_q, fn_r, fn_opt);
    }

    if (ver->parsed()) {
      std::vector<FamilyMember> measures;
      if (ver_measure.empty()) {
        measures = builtin_family();
      } else {
        measures.push_back({"cli_measure", resolve_measure(ver_measure), true, ""});
      }
      TheoremReport rep = dispatch_verify(ver_theorem, measures, tp, ver_opt.verifier(),
                                          ver_s, ver_gamma, ver_trace_M);
      std::cout << rep.summary() << "\n";
      for (const std::string& note : rep.notes) std::cout << "  note: " << note << "\n";
      if (!ver_report.empty()) {
        std::string path = ver_report;
        if (path.find('/') == std::string::npos) path = default_outdir + "/" + path;
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot open report file " + path);
        out << rep.to_json().dump(2) << "\n";
      }
      return rep.verdict == Verdict::Inconsistent ? 2 : 0;
    }

    if (sw->parsed()) {
      std::vector<double> values;
      {
        std::string cleaned = sw_values;
        for (char& c : cleaned) {
          if (c == ',') c = ' ';
        }
        std::istringstream in(cleaned);
        double v;
        while (in >> v) values.push_back(v);
      }
      if (values.empty()) throw std::invalid_argument("sweep: empty values list");

      MeasureModel mu = resolve_measure(sw_measure);
      std::ostringstream csv;
      csv << std::setprecision(12);
      if (!sw_theorem.empty()) {
        if (sw_axis != "w") throw std::invalid_argument("sweep: theorem sweeps use axis w");
        if (sw_theorem.size() != 2 || sw_theorem[0] != 'T') {
          throw std::invalid_argument("sweep: bad theorem id '" + sw_theorem + "'");
        }
        int theorem = sw_theorem[1] - '0';
        csv << "w,lhs,rhs,ratio\n";
        for (double w : values) {
          auto [lhs, rhs] = theorem_instance(theorem, mu, w, sw_tp, sw_opt.verifier());
          csv << w << "," << lhs << "," << rhs << "," << (rhs > 0 ? lhs / rhs : 0.0) << "\n";
        }
      } else if (!sw_functional.empty()) {
        csv << sw_axis << ",value,refinement_delta\n";
        for (double v : values) {
          CommonOptions o = sw_opt;
          double lambda = sw_lambda, s = sw_s;
          if (sw_axis == "N") {
            o.N = static_cast<int>(v);
          } else if (sw_axis == "lambda") {
            lambda = v;
          } else if (sw_axis == "s") {
            s = v;
          } else {
            throw std::invalid_argument("sweep: unknown axis '" + sw_axis + "'");
          }
          ConstantEstimate est;
          if (sw_functional == "carleson_constant") {
            est = carleson_constant(mu, lambda, o.N, o.quad());
          } else if (sw_functional == "a_functional") {
            est = a_functional(mu, s, o.N, o.quad());
          } else if (sw_functional == "b_functional") {
            est = b_functional(mu, s, o.sigma, o.N, o.M, o.quad());
          } else {
            throw std::invalid_argument("sweep: unknown functional '" + sw_functional + "'");
          }
          csv << v << "," << est.value << "," << est.refinement_delta << "\n";
        }
      } else {
        throw std::invalid_argument("sweep: needs --functional or --theorem");
      }
      if (sw_out.empty()) {
        std::cout << csv.str();
      } else {
        std::ofstream out(sw_out);
        if (!out) throw std::runtime_error("cannot open output file " + sw_out);
        out << csv.str();
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
