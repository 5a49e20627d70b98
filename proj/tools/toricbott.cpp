// Command line front end.
//
// Exit codes:
//   0  success
//   1  failed validation, a nonvanishing group under a feasible hypothesis,
//      a rejected certificate or a failed suite criterion
//   2  malformed input
//   3  hypothesis infeasible or not verified
//   4  internal error

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "toricbott/toricbott.hpp"

namespace {

using namespace toricbott;
using io::Json;

enum Exit { kOk = 0, kFailed = 1, kMalformed = 2, kInfeasible = 3, kInternal = 4 };

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::HypothesisInfeasible:
    case ErrorKind::HypothesisNotVerified:
      return kInfeasible;
    case ErrorKind::LeafNonzero:
      return kFailed;
    case ErrorKind::Internal:
    case ErrorKind::UnboundedCohomologyChamber:
    case ErrorKind::ComplexNotExactlyComposable:
    case ErrorKind::StratumHypothesisFails:
      return kInternal;
    default:
      return kMalformed;
  }
}

struct Config {
  std::string format = "table";
  std::string out;
};

// Table output walks the same JSON document the machine format prints.
void render_table(std::ostream& os, const Json& j, const std::string& key, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  auto scalar_array = [](const Json& a) {
    for (const auto& x : a)
      if (x.is_structured()) return false;
    return true;
  };
  if (j.is_object()) {
    if (!key.empty()) os << pad << key << ":\n";
    for (const auto& [k, v] : j.items()) render_table(os, v, k, key.empty() ? indent : indent + 1);
  } else if (j.is_array() && scalar_array(j)) {
    os << pad << key << ":";
    if (j.empty()) os << " []";
    for (const auto& x : j) os << " " << (x.is_string() ? x.get<std::string>() : x.dump());
    os << "\n";
  } else if (j.is_array()) {
    os << pad << key << ":\n";
    for (std::size_t i = 0; i < j.size(); ++i) render_table(os, j[i], "[" + std::to_string(i) + "]", indent + 1);
  } else {
    os << pad << key << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

void emit(const Config& cfg, const Json& report) {
  if (cfg.format == "machine")
    std::cout << report.dump() << "\n";
  else
    render_table(std::cout, report, "", 0);
}

Fan load_fan(const std::string& arg) {
  if (arg.empty()) throw Error(ErrorKind::MalformedInput, "--fan is required");
  if (std::filesystem::exists(arg)) return io::fan_from_json(io::read_json_file(arg));
  return builtin(arg);
}

/// A JSON file, inline JSON, or a comma-separated list of rationals.
InvariantDivisor load_divisor(const std::string& arg) {
  if (arg.empty()) throw Error(ErrorKind::MalformedInput, "--divisor is required");
  if (std::filesystem::exists(arg)) return io::divisor_from_json(io::read_json_file(arg));
  if (arg.front() == '[' || arg.front() == '{')
    return io::divisor_from_json(io::detail::guarded("divisor", [&] { return Json::parse(arg); }));
  InvariantDivisor d;
  std::size_t start = 0;
  while (start <= arg.size()) {
    const auto end = std::min(arg.find(',', start), arg.size());
    d.coeffs.push_back(parse_rational(arg.substr(start, end - start)));
    start = end + 1;
  }
  return d;
}

Json load_json_arg(const std::string& arg, const char* what) {
  if (arg.empty()) throw Error(ErrorKind::MalformedInput, std::string("--") + what + " is required");
  if (std::filesystem::exists(arg)) return io::read_json_file(arg);
  return io::detail::guarded(what, [&] { return Json::parse(arg); });
}

void write_out(const Config& cfg, const Json& j) {
  if (!cfg.out.empty()) io::write_json_file(cfg.out, j);
}

// ---------------------------------------------------------------------------

int fan_validate(const Config& cfg, const std::string& fan_arg) {
  const Fan f = load_fan(fan_arg);
  const auto d = validate(f);
  Json r;
  r["dim"] = f.dim();
  r["rays"] = f.ray_count();
  r["maximal_cones"] = f.cone_count();
  r["smooth"] = d.smooth;
  r["complete"] = d.complete;
  r["fan_axioms"] = d.fan_axioms;
  r["point_location_consistent"] = d.point_location_consistent;
  if (d.ok()) {
    r["walls"] = walls(f).size();
    const auto amp = is_projective(f);
    r["projective"] = amp.has_value();
    if (amp) r["ample_divisor"] = io::to_json(*amp);
  }
  r["valid"] = d.ok();
  emit(cfg, r);
  return d.ok() && d.point_location_consistent ? kOk : kFailed;
}

int fan_builtin(const Config& cfg, std::string expr, const std::string& name, std::int64_t dim) {
  if (expr.empty()) {
    if (name.empty()) throw Error(ErrorKind::MalformedInput, "give an expression or --name");
    expr = name + "(" + std::to_string(dim) + ")";
  }
  const Fan f = builtin(expr);
  const Json j = io::to_json(f);
  write_out(cfg, j);
  emit(cfg, j);
  return kOk;
}

int fan_blowup(const Config& cfg, const std::string& fan_arg, const std::string& cone) {
  const Fan f = star_subdivision(load_fan(fan_arg), io::parse_ray_list(cone));
  const Json j = io::to_json(f);
  write_out(cfg, j);
  emit(cfg, j);
  return kOk;
}

// ---------------------------------------------------------------------------

struct VanishingArgs {
  std::string fan;
  std::string divisor;
  std::string logset;
  std::string certificate;
  bool unchecked = false;
};

Json hypothesis_json(const std::optional<std::vector<Rational>>& w) {
  if (!w) return Json(nullptr);
  Json j = Json::array();
  for (const auto& q : *w) j.push_back(io::rational_json(q));
  return j;
}

Json per_p_json(const VanishingReport& rep) {
  Json j = Json::array();
  for (std::size_t p = 0; p < rep.per_p.size(); ++p)
    j.push_back(Json{{"p", p}, {"dims", rep.per_p[p].dims}, {"euler", rep.per_p[p].euler}});
  return j;
}

int vanishing_check(const Config& cfg, const VanishingArgs& a) {
  const Fan f = load_fan(a.fan);
  const auto l = load_divisor(a.divisor);
  const RaySet dprime = io::parse_ray_list(a.logset);
  require_divisor_on(f, l);
  const auto witness = hypothesis_feasible(f, l, dprime);
  if (!witness && !a.unchecked)
    throw Error(ErrorKind::HypothesisInfeasible, "no d in [0,1] makes L - sum d_j D_j ample");
  const auto rep = verify_vanishing(f, dprime, l, witness, a.unchecked);
  Json r;
  r["hypothesis_feasible"] = witness.has_value();
  r["witness"] = hypothesis_json(witness);
  r["unchecked"] = a.unchecked;
  r["per_p"] = per_p_json(rep);
  r["vanishing"] = rep.pass;
  emit(cfg, r);
  return witness && !rep.pass ? kFailed : kOk;
}

int vanishing_certify(const Config& cfg, const VanishingArgs& a) {
  const Fan f = load_fan(a.fan);
  StrataContext ctx(f);
  Certificate cert;
  if (!a.certificate.empty()) {
    cert = io::certificate_from_json(io::read_json_file(a.certificate));
  } else {
    const auto l = load_divisor(a.divisor);
    require_divisor_on(f, l);
    cert = build_certificate(ctx, io::parse_ray_list(a.logset), l);
    write_out(cfg, io::to_json(cert));
  }
  const auto chk = check_certificate(ctx, cert);
  Json r;
  r["fan_hash"] = io::hash_hex(cert.fan_hash);
  r["roots"] = cert.roots.size();
  r["check"] = io::to_json(chk);
  emit(cfg, r);
  return chk.ok ? kOk : kFailed;
}

int vanishing_cross_validate(const Config& cfg, const VanishingArgs& a) {
  const Fan f = load_fan(a.fan);
  const auto l = load_divisor(a.divisor);
  require_divisor_on(f, l);
  StrataContext ctx(f);
  const auto cv = cross_validate(ctx, io::parse_ray_list(a.logset), l);
  Json r;
  r["certificate_ok"] = cv.certificate_ok;
  r["direct_pass"] = cv.direct_pass;
  r["agree"] = cv.agree;
  r["leaves"] = cv.check.leaves;
  r["depth"] = cv.check.depth;
  r["per_p"] = per_p_json(cv.direct);
  emit(cfg, r);
  return cv.agree && cv.direct_pass ? kOk : kFailed;
}

// ---------------------------------------------------------------------------

int cohomology(const Config& cfg, const std::string& fan_arg, const std::string& spec_arg, const std::string& mode,
               std::optional<std::int64_t> box_bound, bool weights) {
  const Fan f = load_fan(fan_arg);
  const auto spec = io::spec_from_json(load_json_arg(spec_arg, "spec"));
  EngineOptions opt;
  if (mode == "box") {
    if (!box_bound) throw Error(ErrorKind::MalformedInput, "box mode needs --box-bound");
    opt.mode = WeightMode::Box;
    opt.box_bound = *box_bound;
  }
  opt.collect_weights = weights;
  const auto res = cech_cohomology(f, spec, opt);
  Json r;
  r["spec"] = io::to_json(spec);
  r["mode"] = mode;
  const Json c = io::to_json(res, weights);
  for (const auto& [k, v] : c.items()) r[k] = v;
  emit(cfg, r);
  return kOk;
}

int counterexample(const Config& cfg, std::optional<std::int64_t> degree, const std::string& range) {
  if (degree.has_value() == !range.empty())
    throw Error(ErrorKind::MalformedInput, "give exactly one of --degree and --scan");
  if (degree) {
    emit(cfg, io::to_json(scenario(*degree)));
    return kOk;
  }
  const auto dots = range.find("..");
  if (dots == std::string::npos) throw Error(ErrorKind::MalformedInput, "--scan expects lo..hi");
  const auto bounds = io::detail::guarded("scan range", [&] {
    return std::pair{std::stoll(range.substr(0, dots)), std::stoll(range.substr(dots + 2))};
  });
  Json rows = Json::array();
  Json minimal = nullptr;
  for (const auto& s : scan(bounds.first, bounds.second)) {
    if (s.bott_fails && minimal.is_null()) minimal = s.d;
    rows.push_back(Json{{"d", s.d}, {"genus", s.genus}, {"deg_L", s.deg_L}, {"rr_lower_bound", s.rr_lower_bound},
                        {"bott_fails", s.bott_fails}});
  }
  emit(cfg, Json{{"minimal_failing_degree", minimal}, {"scenarios", rows}});
  return kOk;
}

int run_suite(const Config& cfg, const suite::Options& opt, const std::vector<int>& only) {
  const std::set<int> wanted(only.begin(), only.end());
  auto want = [&](int id) { return wanted.empty() || wanted.count(id) > 0; };
  std::vector<suite::CriterionResult> results;
  if (want(1) || want(2)) {
    const auto s = suite::theorem_sweep(opt);
    if (want(1)) results.push_back(suite::sweep_criterion(s));
    if (want(2)) results.push_back(suite::certificate_criterion(s));
  }
  if (want(3)) results.push_back(suite::negative_control());
  if (want(4)) results.push_back(suite::serre_duality(opt));
  if (want(5)) results.push_back(suite::euler_additivity(opt));
  if (want(6)) results.push_back(suite::hodge_count(opt));
  if (want(7)) results.push_back(suite::counterexample_arithmetic());
  if (want(8)) results.push_back(suite::method_agreement(opt));
  Json rows = Json::array();
  bool all = true;
  for (const auto& r : results) {
    all = all && r.pass;
    rows.push_back(Json{{"id", r.id},
                        {"result", r.pass ? "PASS" : "FAIL"},
                        {"instances", r.instances},
                        {"detail", r.detail}});
  }
  emit(cfg, Json{{"seed", opt.seed}, {"criteria", rows}});
  return all ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bott-type vanishing on smooth projective toric varieties"};
  app.require_subcommand(1);
  app.fallthrough();
  Config cfg;
  app.add_option("--format", cfg.format, "table or machine")
      ->check(CLI::IsMember({"table", "machine"}))
      ->capture_default_str();

  int code = kOk;
  auto run = [&](auto fn) { return [&code, fn] { code = fn(); }; };

  auto* fan = app.add_subcommand("fan", "fan utilities");
  fan->require_subcommand(1);
  std::string fan_arg;
  auto* fv = fan->add_subcommand("validate", "check smoothness, completeness and the fan axioms");
  fv->add_option("--fan", fan_arg, "fan file or builtin expression")->required();
  fv->callback(run([&] { return fan_validate(cfg, fan_arg); }));

  std::string expr, name;
  std::int64_t dim = 1;
  auto* fb = fan->add_subcommand("builtin", "emit a standard fan");
  fb->add_option("expr", expr, "e.g. product(projective_space(1),hirzebruch(2))");
  fb->add_option("--name", name, "projective_space or hirzebruch");
  fb->add_option("--dim", dim, "dimension (projective_space) or parameter (hirzebruch)");
  fb->add_option("--out", cfg.out, "write the fan here");
  fb->callback(run([&] { return fan_builtin(cfg, expr, name, dim); }));

  std::string cone;
  auto* fu = fan->add_subcommand("blowup", "star subdivision at a cone");
  fu->add_option("--fan", fan_arg, "fan file or builtin expression")->required();
  fu->add_option("--cone", cone, "comma-separated ray indices")->required();
  fu->add_option("--out", cfg.out, "write the fan here");
  fu->callback(run([&] { return fan_blowup(cfg, fan_arg, cone); }));

  VanishingArgs va;
  auto* van = app.add_subcommand("vanishing", "vanishing for spec(p, D', L - D'), all p");
  van->require_subcommand(1);
  auto common = [&](CLI::App* s, bool need_divisor) {
    s->add_option("--fan", va.fan, "fan file or builtin expression")->required();
    auto* d = s->add_option("--divisor", va.divisor, "L as a file, JSON array or comma list");
    if (need_divisor) d->required();
    s->add_option("--logset", va.logset, "D' as comma-separated ray indices");
  };
  auto* vc = van->add_subcommand("check", "direct engine computation");
  common(vc, true);
  vc->add_flag("--unchecked", va.unchecked, "report even if the hypothesis fails");
  vc->callback(run([&] { return vanishing_check(cfg, va); }));
  auto* vz = van->add_subcommand("certify", "build and check a certificate");
  common(vz, false);
  vz->add_option("--certificate", va.certificate, "check this certificate instead of building one");
  vz->add_option("--out", cfg.out, "write the certificate here");
  vz->callback(run([&] {
    if (va.certificate.empty() && va.divisor.empty())
      throw Error(ErrorKind::MalformedInput, "give --divisor or --certificate");
    return vanishing_certify(cfg, va);
  }));
  auto* vx = van->add_subcommand("cross-validate", "certificate and direct engine");
  common(vx, true);
  vx->callback(run([&] { return vanishing_cross_validate(cfg, va); }));

  std::string spec_arg, mode = "chamber";
  std::optional<std::int64_t> box_bound;
  bool weights = false;
  auto* co = app.add_subcommand("cohomology", "h^0..h^r of one log-form sheaf");
  co->add_option("--fan", fan_arg, "fan file or builtin expression")->required();
  co->add_option("--spec", spec_arg, R"(file or inline {"p":..,"logset":[..],"twist":[..]})")->required();
  co->add_option("--mode", mode, "chamber or box")->check(CLI::IsMember({"chamber", "box"}));
  co->add_option("--box-bound", box_bound, "weights in [-N,N]^r for box mode");
  co->add_flag("--weights", weights, "include the weight support");
  co->callback(run([&] { return cohomology(cfg, fan_arg, spec_arg, mode, box_bound, weights); }));

  std::optional<std::int64_t> degree;
  std::string range;
  auto* ce = app.add_subcommand("counterexample", "degree arithmetic for the relative counterexample");
  ce->add_option("--degree", degree, "curve degree d");
  ce->add_option("--scan", range, "lo..hi");
  ce->callback(run([&] { return counterexample(cfg, degree, range); }));

  suite::Options sopt;
  std::vector<int> only;
  auto* su = app.add_subcommand("suite", "run the acceptance criteria");
  su->add_option("--seed", sopt.seed, "sampling seed")->capture_default_str();
  su->add_option("--jobs", sopt.jobs, "worker threads (0 = all cores)");
  su->add_option("--criterion", only, "run only these criteria (1-8)")->check(CLI::Range(1, 8));
  su->callback(run([&] { return run_suite(cfg, sopt, only); }));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kMalformed;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInternal;
  }
  return code;
}
