#include "cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <ostream>

#include "bcv/audit.hpp"
#include "bcv/errors.hpp"
#include "bcv/fundata.hpp"
#include "bcv/helicoid.hpp"
#include "bcv/integrability.hpp"
#include "bcv/mates.hpp"
#include "bcv/reconstruct.hpp"

namespace bcv::cli {

namespace {

Tolerances tolerances_from_env() {
  Tolerances tol;
  if (const char* env = std::getenv("BCV_TOL_FD")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0.0)) throw PreconditionError("BCV_TOL_FD must be a positive number");
    tol.fd_override = v;
  }
  return tol;
}

struct ChartArgs {
  double s_min = -1.0, s_max = 1.0, t_min = -1.0, t_max = 1.0;
  int ns = 65, nt = 65;

  void add_to(CLI::App* app) {
    app->add_option("--s-min", s_min, "chart s lower bound")->capture_default_str();
    app->add_option("--s-max", s_max, "chart s upper bound")->capture_default_str();
    app->add_option("--t-min", t_min, "chart t lower bound")->capture_default_str();
    app->add_option("--t-max", t_max, "chart t upper bound")->capture_default_str();
    app->add_option("--ns", ns, "nodes along s")->capture_default_str();
    app->add_option("--nt", nt, "nodes along t")->capture_default_str();
  }
  Chart chart() const { return Chart{s_min, s_max, t_min, t_max, ns, nt}; }
};

template <class Report>
void write_report(const Report& report, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    write_csv(out, report);
    return;
  }
  std::ofstream file(path);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  write_csv(file, report);
  if (!file) throw IoError("failed writing '" + path + "'");
}

void check_distinct(const std::string& in, const std::string& out) {
  if (!in.empty() && in == out) throw PreconditionError("input and output paths must differ");
}

void print_pair_summary(const FundamentalData& a, const FundamentalData& b, const Tolerances& tol, std::ostream& out) {
  try {
    const PairData pair = make_pair(a, b, tol);
    out << "sigma: " << pair.sigma << "\nepsilon: " << pair.epsilon << '\n';
  } catch (const PreconditionError& e) {
    out << "pair: none (" << e.what() << ")\n";
  }
  if (a.params == b.params) {
    const auto c = pointwise_congruent(a, b, tol);
    out << "pointwise_congruent: " << (c ? "true" : "false") << '\n';
    if (c) out << "isometry_case: " << to_string(*c) << '\n';
  }
}

int residual_exit(const FundamentalData& data, const Tolerances& tol, std::ostream& out) {
  const ResidualReport report = residuals(data, {}, tol);
  double worst = 0.0;
  for (const auto& e : report.entries) worst = std::max(worst, e.max_abs);
  out << "residuals: " << (report.all_pass() ? "pass" : "fail") << " (max " << worst << ", tol " << report.tolerance
      << ")\n";
  return report.all_pass() ? kPass : kNumerical;
}

Projection default_projection(const SpaceParams& params) {
  return params.kappa() < 0.0 ? Projection::PoincareDiskXR : Projection::SphereXR_unrolled;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fundamental data, Bonnet mates and reconstruction of surfaces in E(kappa, tau)", "bcv"};
  app.require_subcommand(1);
  std::function<int(const Tolerances&)> action;

  // synth
  std::string synth_name;
  double synth_kappa = 1.0, synth_tau = 0.0;
  std::string synth_out;
  ChartArgs synth_chart;
  auto* synth = app.add_subcommand("synth", "write exact data of a canonical surface");
  synth->add_option("name", synth_name, "slice | cylinder")->required()->check(CLI::IsMember({"slice", "cylinder"}));
  synth->add_option("--kappa", synth_kappa, "base curvature")->capture_default_str();
  synth->add_option("--tau", synth_tau, "bundle curvature")->capture_default_str();
  synth->add_option("--out", synth_out, "output .fdjson")->required();
  synth_chart.add_to(synth);
  synth->callback([&] {
    action = [&](const Tolerances&) {
      const SpaceParams params(synth_kappa, synth_tau);
      const CanonicalSurface which =
          synth_name == "slice" ? CanonicalSurface::Slice : CanonicalSurface::GeodesicCylinder;
      save(synthesize_canonical(which, params, synth_chart.chart()), synth_out);
      out << "wrote " << synth_out << '\n';
      return int{kPass};
    };
  });

  // check
  std::string check_in, check_report;
  int check_margin = 1;
  auto* check = app.add_subcommand("check", "evaluate the structure equations and Gauss equation");
  check->add_option("--in", check_in, "input .fdjson")->required();
  check->add_option("--report", check_report, "CSV report path (default stdout)");
  check->add_option("--margin", check_margin, "edge nodes excluded from the statistics (0 includes them)")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  check->callback([&] {
    action = [&](const Tolerances& tol) {
      check_distinct(check_in, check_report);
      const FundamentalData data = load(check_in);
      const ResidualReport report = residuals(data, {check_margin, 0.0}, tol);
      write_report(report, check_report, out);
      return report.all_pass() ? int{kPass} : int{kNumerical};
    };
  });

  // mate
  std::string mate_kind, mate_in, mate_out, mate_case;
  double theta = 0.0, target_kappa = 0.0, target_tau = 0.0, H2 = 0.0;
  auto* mate = app.add_subcommand("mate", "apply a mate transformation");
  mate->add_option("kind", mate_kind, "associate | product | screw | twin | sister | conjugate | isometry")
      ->required()
      ->check(CLI::IsMember({"associate", "product", "screw", "twin", "sister", "conjugate", "isometry"}));
  mate->add_option("--in", mate_in, "input .fdjson")->required();
  mate->add_option("--out", mate_out, "output .fdjson")->required();
  mate->add_option("--theta", theta, "associate angle")->capture_default_str();
  auto* tk = mate->add_option("--target-kappa", target_kappa, "sister target kappa");
  auto* tt = mate->add_option("--target-tau", target_tau, "sister target tau");
  auto* h2 = mate->add_option("--H2", H2, "sister mean curvature");
  mate->add_option("--case", mate_case, "isometry case");
  mate->callback([&] {
    action = [&, tk, tt, h2](const Tolerances& tol) {
      check_distinct(mate_in, mate_out);
      const FundamentalData data = load(mate_in);
      FundamentalData result;
      if (mate_kind == "associate") {
        result = associate(data, theta, tol);
      } else if (mate_kind == "product") {
        result = helicoidal_mate_product(data, tol);
      } else if (mate_kind == "screw") {
        result = helicoidal_mate_screw(data, tol);
      } else if (mate_kind == "twin") {
        result = twin(data, tol);
      } else if (mate_kind == "sister") {
        if (tk->count() == 0 || tt->count() == 0 || h2->count() == 0) {
          throw PreconditionError("sister needs --target-kappa, --target-tau and --H2");
        }
        result = sister(data, SpaceParams(target_kappa, target_tau), H2, tol);
      } else if (mate_kind == "conjugate") {
        result = conjugate_parameter(data, tol);
      } else {
        if (mate_case.empty()) throw PreconditionError("isometry needs --case");
        result = isometry_action(data, parse_isometry_case(mate_case));
      }
      save(result, mate_out);
      out << "wrote " << mate_out << '\n';
      print_pair_summary(data, result, tol, out);
      return residual_exit(result, tol, out);
    };
  });

  // helicoid
  double u0 = 0.0, A0_re = -0.5, A0_im = -0.5, H0 = 0.0, H_slope = 0.0, p_coef = 1.0;
  double hel_kappa = -1.0, hel_tau = 0.0, span = 1.0, step = 1e-3, hel_t_min = 0.0, hel_t_max = 1.0;
  int hel_nt = 33;
  std::string hel_out, profile_csv;
  auto* hel = app.add_subcommand("helicoid", "integrate a helicoidal profile and lift it to a chart");
  hel->add_option("--u0", u0, "initial angle function")->capture_default_str();
  hel->add_option("--A0-re", A0_re, "Re A at s = 0")->capture_default_str();
  hel->add_option("--A0-im", A0_im, "Im A at s = 0")->capture_default_str();
  hel->add_option("--H", H0, "mean curvature at s = 0")->capture_default_str();
  hel->add_option("--H-slope", H_slope, "dH/ds")->capture_default_str();
  hel->add_option("--p-coef", p_coef, "real part of p0 / A0")->capture_default_str();
  hel->add_option("--kappa", hel_kappa, "base curvature")->capture_default_str();
  hel->add_option("--tau", hel_tau, "bundle curvature")->capture_default_str();
  hel->add_option("--span", span, "profile length")->capture_default_str();
  hel->add_option("--step", step, "RK4 step")->capture_default_str();
  hel->add_option("--nt", hel_nt, "nodes along t")->capture_default_str();
  hel->add_option("--t-min", hel_t_min, "chart t lower bound")->capture_default_str();
  hel->add_option("--t-max", hel_t_max, "chart t upper bound")->capture_default_str();
  hel->add_option("--out", hel_out, "output .fdjson")->required();
  hel->add_option("--profile-csv", profile_csv, "optional profile CSV");
  hel->callback([&] {
    action = [&](const Tolerances& tol) {
      check_distinct(hel_out, profile_csv);
      const SpaceParams params(hel_kappa, hel_tau);
      const ProfileState seed = seed_state(u0, cplx(A0_re, A0_im), H0, params, p_coef);
      const MeanCurvatureProfile H =
          H_slope == 0.0 ? MeanCurvatureProfile::constant(H0) : MeanCurvatureProfile::linear(H0, H_slope);
      const ProfileSolution sol = integrate_profile(seed, H, params, span, step, tol);
      if (!profile_csv.empty()) write_report(sol, profile_csv, out);
      const FundamentalData data = lift_profile(sol, hel_nt, hel_t_min, hel_t_max);
      save(data, hel_out);
      out << "wrote " << hel_out << '\n';
      out << "max_defect: " << sol.max_defect() << " (tol " << sol.defect_tol << ")\n";
      if (params.is_product()) out << "motion: " << to_string(classify_motion(sol)) << '\n';
      return int{kPass};
    };
  });

  // audit
  std::vector<std::string> pair_paths;
  bool normalize = false;
  std::string audit_out;
  auto* aud = app.add_subcommand("audit", "evaluate the identities behind the classification of a pair");
  aud->add_option("--pair", pair_paths, "two .fdjson files")->required()->expected(2);
  aud->add_flag("--normalize", normalize, "rescale so that Im A = -1/2 first");
  aud->add_option("--out", audit_out, "CSV report path (default stdout)");
  aud->callback([&] {
    action = [&](const Tolerances& tol) {
      FundamentalData a = load(pair_paths[0]);
      FundamentalData b = load(pair_paths[1]);
      if (normalize) {
        const PitchNormalized n = normalize_pitch(a, -0.5, tol);
        a = n.data;
        b = rescale_parameter(b, n.scale);
      }
      const PairData pair = make_pair(a, b, tol);
      out << "sigma: " << pair.sigma << "\nepsilon: " << pair.epsilon << '\n';
      const AuditReport report = pair.epsilon == 1 ? audit_positive_pair(pair, {}, tol)
                                                   : audit_negative_pair(pair, {}, tol);
      for (const auto& flag : report.flags) out << "note: " << flag << '\n';
      write_report(report, audit_out, out);
      return report.all_pass() ? int{kPass} : int{kNumerical};
    };
  });

  // reconstruct
  std::string rec_in, mesh_out, projection_name;
  double tol_embed = 1e-8;
  int substeps = 1;
  auto* rec = app.add_subcommand("reconstruct", "integrate the frame and export a mesh (tau = 0 only)");
  rec->add_option("--in", rec_in, "input .fdjson")->required();
  rec->add_option("--mesh-out", mesh_out, "output .obj or .csv")->required();
  rec->add_option("--projection", projection_name, "PoincareDiskXR | SphereXR_unrolled | Raw4D_csv");
  rec->add_option("--tol-embed", tol_embed, "quadric tolerance")->capture_default_str();
  rec->add_option("--substeps", substeps, "RK4 steps per grid interval")->capture_default_str();
  rec->callback([&] {
    action = [&](const Tolerances& tol) {
      check_distinct(rec_in, mesh_out);
      const FundamentalData data = load(rec_in);
      const Projection projection =
          projection_name.empty() ? default_projection(data.params) : parse_projection(projection_name);
      check_projection(data.params, projection);
      const Reconstruction r = reconstruct_surface(data, {tol_embed, substeps, true}, tol);
      export_obj(r.mesh, mesh_out, projection);
      out << "wrote " << mesh_out << '\n';
      out << "holonomy_defect: " << r.holonomy_defect << " (tol " << tol.fd(data.chart) << ")\n";
      out << "max_step_drift: " << r.max_step_drift << "\nmax_quadric_defect: " << r.max_quadric_defect << '\n';
      return r.holonomy_defect <= tol.fd(data.chart) ? int{kPass} : int{kNumerical};
    };
  });

  // compare-edges
  std::string edges_a, edges_b;
  auto* cmp = app.add_subcommand("compare-edges", "reconstruct two data sets and compare mesh edge lengths");
  cmp->add_option("--a", edges_a, "first .fdjson")->required();
  cmp->add_option("--b", edges_b, "second .fdjson")->required();
  cmp->callback([&] {
    action = [&](const Tolerances& tol) {
      const FundamentalData a = load(edges_a);
      const FundamentalData b = load(edges_b);
      if (!(a.chart == b.chart)) throw PreconditionError("data sets live on different charts");
      const auto la = edge_lengths(reconstruct_surface(a, {}, tol).mesh);
      const auto lb = edge_lengths(reconstruct_surface(b, {}, tol).mesh);
      double worst = 0.0;
      for (std::size_t k = 0; k < la.size(); ++k) worst = std::max(worst, std::abs(la[k] - lb[k]) / la[k]);
      const double limit = tol.fd(a.chart);
      out << "isometry_defect: " << worst << " (tol " << limit << ")\n";
      return worst <= limit ? int{kPass} : int{kNumerical};
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kPrecondition;
  }

  try {
    return action(tolerances_from_env());
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return kPrecondition;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return kIo;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  }
}

}  // namespace bcv::cli
