// Command-line front end: catalog listing, verification suites, residue
// reports, rho classification, flow simulation, duality conversion, Hessian
// checks, and the complex-equivalence identities. Output is exact by default.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "billiards/json_io.hpp"

namespace {

using namespace billiards;

Json load_json_arg(const std::string& arg) {
  if (!arg.empty() && (arg[0] == '{' || arg[0] == '[')) return Json::parse(arg);
  std::ifstream in(arg);
  if (!in) fail("ParseError", "cannot open '" + arg + "'");
  return Json::parse(in);
}

void emit(const Json& j, const std::string& output) {
  std::string text = j.dump(2) + "\n";
  if (output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(output, std::ios::binary);
  if (!out) fail("IoError", "cannot write '" + output + "'");
  out << text;
}

void emit_text(const std::string& text, const std::string& output) {
  if (output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(output, std::ios::binary);
  if (!out) fail("IoError", "cannot write '" + output + "'");
  out << text;
}

std::string render(const Scalar& s, bool approx) {
  if (!approx || s.is_approx()) return s.str();
  return s.to_approx().approx_value().re.str(25);
}

std::string trajectory_csv(const Trajectory& t, bool approx) {
  std::ostringstream os;
  os << "step,x1,x2,v1,v2,psi_num,psi_den\n";
  for (const auto& b : t.bounces) {
    auto psi = b.psi_out.normalized();
    os << b.step << "," << render(b.hit.x, approx) << "," << render(b.hit.y, approx)
       << "," << render(b.v_out.x, approx) << "," << render(b.v_out.y, approx) << ","
       << render(psi.num, approx) << "," << render(psi.den, approx) << "\n";
  }
  return os.str();
}

std::string trajectory_svg(const Trajectory& t, const FlowState& s0) {
  // Plain polyline over the table arc; exact values rendered as decimals.
  auto dec = [](const Scalar& s) {
    Scalar a = s.is_approx() ? s : s.to_approx();
    return a.approx_value().re.convert_to<double>();
  };
  double minx = dec(s0.pos.x), maxx = minx, miny = dec(s0.pos.y), maxy = miny;
  std::vector<std::pair<double, double>> pts{{minx, miny}};
  for (const auto& b : t.bounces) {
    double x = dec(b.hit.x), y = dec(b.hit.y);
    pts.emplace_back(x, y);
    minx = std::min(minx, x);
    maxx = std::max(maxx, x);
    miny = std::min(miny, y);
    maxy = std::max(maxy, y);
  }
  double pad = 0.1 * std::max(maxx - minx, maxy - miny) + 1.0;
  minx -= pad;
  maxx += pad;
  miny -= pad;
  maxy += pad;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << minx << " "
     << -maxy << " " << (maxx - minx) << " " << (maxy - miny) << "\">\n";
  os << "  <path d=\"M";
  bool first = true;
  const int steps = 128;
  for (int i = 0; i <= steps; ++i) {
    double x = minx + (maxx - minx) * i / steps;
    os << (first ? "" : " L") << x << " " << -(x * x);
    first = false;
  }
  os << "\" fill=\"none\" stroke=\"black\" stroke-width=\"0.02\"/>\n";
  os << "  <polyline points=\"";
  for (const auto& [x, y] : pts) os << x << "," << -y << " ";
  os << "\" fill=\"none\" stroke=\"red\" stroke-width=\"0.02\"/>\n";
  os << "</svg>\n";
  return os.str();
}

int run_catalog(const std::string& output) {
  Json out;
  out["schema"] = "1";
  Json specs = Json::array();
  for (const BilliardSpec& s : catalog_specs(5)) {
    Json j;
    j["spec"] = to_json(s);
    j["name"] = s.name();
    j["residues"] = to_json(residue_report(s));
    j["integral"] = to_json(catalog_integral(s));
    specs.push_back(j);
  }
  out["specs"] = specs;
  emit(out, output);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact dual projective billiard toolkit"};
  app.require_subcommand(1);

  std::string spec_arg, field_arg, output, format = "json", state_arg, rho_arg;
  std::string case_arg = "c", op_arg = "curve";
  long samples = 32, chart_samples = 8, height = 1000000, steps = 10;
  unsigned long long seed = 1;
  bool build_primitive_flag = false, approx_out = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--output", output, "write the report to a file");
    cmd->add_flag("--approx", approx_out, "decimal rendering of approx values");
  };

  CLI::App* c_catalog = app.add_subcommand("catalog", "list the catalog");
  add_common(c_catalog);

  CLI::App* c_verify = app.add_subcommand("verify", "exact invariance suite");
  c_verify->add_option("--spec", spec_arg, "spec JSON (inline or path)")->required();
  c_verify->add_option("--samples", samples, "boundary point samples");
  c_verify->add_option("--chart-samples", chart_samples, "chart samples per point");
  c_verify->add_option("--height-bound", height, "rational height bound");
  c_verify->add_option("--seed", seed, "deterministic seed");
  add_common(c_verify);

  CLI::App* c_res = app.add_subcommand("residues", "residue report");
  c_res->add_option("--spec", spec_arg)->required();
  add_common(c_res);

  CLI::App* c_classify = app.add_subcommand("classify", "rho classification");
  c_classify->add_option("--rho", rho_arg, "rational rho, e.g. 4/3")->required();
  c_classify->add_flag("--build-primitive", build_primitive_flag,
                       "emit the primitive quasi-invariant polynomial");
  add_common(c_classify);

  CLI::App* c_sim = app.add_subcommand("simulate", "flow simulation");
  c_sim->add_option("--field", field_arg, "field JSON")->required();
  c_sim->add_option("--state", state_arg, "x1,x2,v1,v2 rationals")->required();
  c_sim->add_option("--steps", steps, "number of bounces");
  c_sim->add_option("--format", format, "json | csv | svg");
  add_common(c_sim);

  CLI::App* c_dual = app.add_subcommand("dualize", "spec <-> field with Psi");
  c_dual->add_option("--spec", spec_arg, "dual billiard spec JSON");
  c_dual->add_option("--field", field_arg, "projective billiard field JSON");
  add_common(c_dual);

  CLI::App* c_hess = app.add_subcommand("hessian", "Hessian checks");
  c_hess->add_option("--spec", spec_arg)->required();
  c_hess->add_option("--op", op_arg, "curve | ode");
  add_common(c_hess);

  CLI::App* c_equiv = app.add_subcommand("equiv", "equivalence pullbacks");
  c_equiv->add_option("--case", case_arg, "b | c");
  add_common(c_equiv);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // config/parse problems exit 2; --help exits 0
  }

  try {
    if (const char* env = std::getenv("BILLIARD_PRECISION_BITS")) {
      long bits = std::strtol(env, nullptr, 10);
      if (bits >= 32) set_approx_precision_bits(static_cast<unsigned>(bits));
    }
    if (c_catalog->parsed()) return run_catalog(output);

    if (c_verify->parsed()) {
      BilliardSpec spec = spec_from_json(load_json_arg(spec_arg));
      HomRational R = catalog_integral(spec);
      VerifyPlan plan;
      plan.point_samples = static_cast<int>(samples);
      plan.chart_samples = static_cast<int>(chart_samples);
      plan.height_bound = height;
      plan.seed = seed;
      VerifyReport rep = verify_invariance(R, spec, plan);
      emit(to_json(rep, spec), output);
      return rep.pass() ? 0 : 1;
    }

    if (c_res->parsed()) {
      BilliardSpec spec = spec_from_json(load_json_arg(spec_arg));
      emit(to_json(residue_report(spec)), output);
      return 0;
    }

    if (c_classify->parsed()) {
      BigRat rho(rho_arg);
      RhoClass cls = classify_rho(rho);
      RhoClass orbit = classify_rho_orbit(rho);
      Json j = to_json(cls, rho);
      j["orbit_in_M"] = orbit.in_M;
      bool ok = cls.in_M == orbit.in_M;
      if (build_primitive_flag) {
        Primitive prim = build_primitive(rho);
        j["primitive"] = to_json(prim);
        ok = ok && is_eta_quasi_invariant(prim.poly, Scalar(rho));
        j["quasi_invariant"] = ok;
      }
      emit(j, output);
      return ok ? 0 : 1;
    }

    if (c_sim->parsed()) {
      TransversalField field = field_from_json(load_json_arg(field_arg));
      std::array<BigRat, 4> vals;
      {
        std::stringstream ss(state_arg);
        std::string tok;
        for (int i = 0; i < 4; ++i) {
          require(static_cast<bool>(std::getline(ss, tok, ',')), "ParseError",
                  "--state needs x1,x2,v1,v2");
          vals[i] = BigRat(tok);
        }
      }
      FlowState s0{{Scalar(vals[0]), Scalar(vals[1])},
                   {Scalar(vals[2]), Scalar(vals[3])}};
      Trajectory t = simulate(field_table(field), field, s0, static_cast<int>(steps));
      bool conserved = true;
      for (const auto& b : t.bounces)
        conserved = conserved && b.psi_in.equals(b.psi_out);
      if (format == "csv") {
        emit_text(trajectory_csv(t, approx_out), output);
      } else if (format == "svg") {
        emit_text(trajectory_svg(t, s0), output);
      } else {
        Json j = to_json(t);
        j["psi_conserved"] = conserved;
        emit(j, output);
      }
      return conserved ? 0 : 1;
    }

    if (c_dual->parsed()) {
      Json j;
      j["schema"] = "1";
      if (!spec_arg.empty()) {
        BilliardSpec spec = spec_from_json(load_json_arg(spec_arg));
        TransversalField f = spec_to_field(spec);
        j["field"] = to_json(f);
        j["psi"] = to_json(psi_catalog(f));
        HomRational bridged = integral_from_dual(catalog_integral(spec));
        j["bridge"] = to_json(bridged);
      } else {
        require(!field_arg.empty(), "ParseError", "dualize needs --spec or --field");
        TransversalField f = field_from_json(load_json_arg(field_arg));
        BilliardSpec spec = field_to_spec(f);
        j["spec"] = to_json(spec);
        j["integral"] = to_json(catalog_integral(spec));
      }
      emit(j, output);
      return 0;
    }

    if (c_hess->parsed()) {
      BilliardSpec spec = spec_from_json(load_json_arg(spec_arg));
      Json j;
      j["schema"] = "1";
      bool ok = true;
      if (op_arg == "curve" || op_arg == "all") {
        HessianOnCurve h = hessian_on_curve(origin_germ(spec));
        j["curve"] = to_json(h);
        ResidueReport rep = residue_report(spec);
        for (const auto& [loc, res] : rep.finite_poles)
          if (loc == Scalar(0))
            ok = ok && (Scalar(residue_from_hessian(h)) == res);
      }
      if (op_arg == "ode" || op_arg == "all") {
        OdeReport rep = ode_check(spec);
        j["ode"] = to_json(rep);
        ok = ok && rep.pass;
      }
      j["pass"] = ok;
      emit(j, output);
      return ok ? 0 : 1;
    }

    if (c_equiv->parsed()) {
      EquivalenceReport rep = equivalence_pullback_check(
          case_arg == "b" ? EquivalenceCase::B : EquivalenceCase::C);
      emit(to_json(rep, case_arg), output);
      return rep.pass() ? 0 : 1;
    }
  } catch (const Error& e) {
    Json err;
    err["schema"] = "1";
    err["error"] = e.code();
    err["message"] = e.what();
    std::cerr << err.dump(2) << "\n";
    return e.code() == "ParseError" || e.code() == "IoError" ? 2 : 1;
  } catch (const std::exception& e) {
    Json err;
    err["schema"] = "1";
    err["error"] = "Exception";
    err["message"] = e.what();
    std::cerr << err.dump(2) << "\n";
    return 2;
  }
  return 2;
}
