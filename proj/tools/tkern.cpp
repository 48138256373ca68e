// tkern: Toeplitz kernels of rational symbols from the command line.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "report.hpp"

namespace {

using namespace tkern;
using report::json;
using report::to_json;

struct Globals {
  double tol = tol::boundary;
  int samples = tol::samples;
  bool compact = false;
  unsigned seed = 12345;
  std::string out;
};

enum Exit { Ok = 0, Usage = 1, Rejected = 2, Ambiguous = 3 };

int exit_code(ErrorCode c) {
  switch (c) {
    case ErrorCode::ParseError:
    case ErrorCode::InvalidArgument:
      return Usage;
    case ErrorCode::BoundaryAmbiguous:
    case ErrorCode::RootEscapedDisk:
    case ErrorCode::InconsistentChecks:
    case ErrorCode::StabilityWarning:
    case ErrorCode::DimensionMismatch:
      return Ambiguous;
    default:
      return Rejected;
  }
}

Complex parse_complex(const std::string& text) {
  RationalFunction c = parse_rational(text);
  if (!c.is_constant()) throw Error(ErrorCode::InvalidArgument, "expected a complex number, got '" + text + "'");
  return c.gain();
}

std::vector<Complex> parse_points(const std::string& text) {
  std::vector<Complex> pts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    pts.push_back(parse_complex(item));
  }
  return pts;
}

BlaschkeProduct parse_inner(const std::string& text, const Globals& g) {
  return blaschke_from_rational(parse_rational(text), g.tol);
}

json tolerances(const Globals& g) {
  return {{"boundary", g.tol},        {"cluster", tol::cluster},       {"cancel", tol::cancel},
          {"coeff", tol::coeff},      {"unimodular", tol::unimodular}, {"samples", g.samples},
          {"sup_samples", tol::sup_samples}, {"seed", g.seed}};
}

struct Result {
  json body;
  int code = Ok;
};

Result cmd_kernel(const std::string& expr, const Globals& g) {
  RationalFunction f = parse_rational(expr);
  RationalSymbol s(f);
  RationalKernel k = kernel_of_rational_symbol(s, g.tol);
  json j = {{"command", "kernel"},
            {"input", expr},
            {"symbol", to_json(f)},
            {"dim", k.dim()},
            {"trivial", !k.rep.has_value()},
            {"counts", {{"n", k.n}, {"n_T", k.n_T}, {"n1", k.n1}, {"n2", k.n2}, {"N", k.N}}},
            {"containing", to_json(k.containing)}};
  j["representation"] = k.rep ? to_json(*k.rep) : json(nullptr);
  return {j, Ok};
}

Result cmd_minmodel(const std::string& expr, const Globals&) {
  RationalFunction f = parse_rational(expr);
  UnimodularSymbol u = minimal_kernel_of(f);
  MaximalVerdict v = verify_maximal(f, u);
  json j = {{"command", "minmodel"},
            {"input", expr},
            {"f", to_json(f)},
            {"minimal_symbol", to_json(u)},
            {"minimal_model_space", to_json(u.theta)},
            {"dim", kernel_dim(u)},
            {"certificate", to_json(v)}};
  j["representation"] = nullptr;
  if (const auto* c = std::get_if<MaximalFunctionCert>(&v)) {
    try {
      j["representation"] = to_json(multiplier_from_maximal(*c));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::CarlesonViolation) throw;
      j["representation_note"] = e.what();
    }
  }
  return {j, accepted(v) ? Ok : Rejected};
}

Result cmd_maxfunc(const std::string& expr, const std::string& vanish, const Globals& g) {
  RationalFunction f = parse_rational(expr);
  RationalSymbol s(f);
  RationalKernel k = kernel_of_rational_symbol(s, g.tol);
  if (!k.rep) throw Error(ErrorCode::NotInKernel, "the kernel is trivial, so it has no maximal function");
  RationalFunction F = maximal_of_rational_kernel(k);
  MaximalVerdict v = verify_maximal(F, s);
  json j = {{"command", "maxfunc"}, {"input", expr}, {"symbol", to_json(f)}, {"dim", k.dim()}};
  j["certificate"] = to_json(v);
  bool ok = accepted(v);
  if (!vanish.empty()) {
    std::vector<Complex> lams = parse_points(vanish);
    DivisibleMaximal d = maximal_divisible_by_B(inner_outer(F), lams);
    MaximalVerdict vb = verify_maximal(d.F_B, s);
    RationalSymbol sub(f * d.B.to_rational());
    MaximalVerdict vf = verify_maximal(d.f_B, sub);
    j["vanish"] = {{"points", to_json(lams)},
                   {"B", to_json(d.B)},
                   {"I_N", to_json(d.I_N)},
                   {"O_N", to_json(d.O_N)},
                   {"F_B", to_json(vb)},
                   {"f_B", to_json(vf)}};
    ok = ok && accepted(vb) && accepted(vf);
  }
  return {j, ok ? Ok : Rejected};
}

Result cmd_represent(const std::string& theta_expr, const std::string& points, const std::string& mode,
                     const Globals& g) {
  BlaschkeProduct theta = parse_inner(theta_expr, g);
  std::vector<Complex> lams = parse_points(points);
  BlaschkeReps reps = represent_blaschke(theta, lams, default_probes(g.seed));
  const KernelRep& chosen = mode == "isometric" ? reps.isometric : mode == "hayashi" ? reps.hayashi : reps.plain;
  json j = {{"command", "represent"},
            {"theta", to_json(theta)},
            {"points", to_json(lams)},
            {"mode", mode},
            {"dim", chosen.dim()},
            {"representation", to_json(chosen)}};
  return {j, Ok};
}

Result cmd_frostman(const std::string& theta_expr, const std::string& h_expr, const std::string& C_text,
                    const std::string& p_text, const std::string& alpha_expr, const Globals& g) {
  Perturbation pert(parse_inner(theta_expr, g), parse_rational(h_expr));
  BlaschkeProduct amin = minimal_alpha(pert.h);
  BlaschkeProduct alpha = alpha_expr.empty() ? amin : parse_inner(alpha_expr, g);
  if (!in_K_alpha_infty(pert.h, alpha)) throw Error(ErrorCode::NotDividing, "the minimal alpha does not divide alpha");
  BlaschkeProduct gamma = gamma_of(pert, alpha);
  json j = {{"command", "frostman"},
            {"theta", to_json(pert.theta)},
            {"h", to_json(pert.h)},
            {"symbol", to_json(pert.symbol())},
            {"dim", pert.theta.degree()},
            {"representation", to_json(frostman_kernel_rep(pert))},
            {"generalized_shift", to_json(generalized_shift(pert))},
            {"minimal_alpha", to_json(amin)},
            {"alpha", to_json(alpha)},
            {"gamma", to_json(gamma)}};
  int code = Ok;
  if (!p_text.empty()) {
    Complex p = parse_complex(p_text);
    bool div = alpha_divides_gamma_p(pert, alpha, p);
    j["shift"] = {{"p", to_json(p)}, {"alpha_divides_gamma_p", div}};
    if (div) {
      j["isometric_representation"] = to_json(isometric_frostman_rep(pert, alpha, p));
    } else {
      code = Rejected;
    }
  }
  if (!C_text.empty()) {
    Complex C = parse_complex(C_text);
    double exact = 0.0;
    for (Complex z : circle_points(g.samples)) exact = std::max(exact, std::abs(1.0 - std::norm(C) - std::norm(pert.h(z))));
    j["isometric_condition"] = {{"C", to_json(C)},
                                {"holds", isometric_condition_check(pert, C, g.samples)},
                                {"certified", exact < 1e-12}};
  }
  return {j, code};
}

// Re-checks a saved result: the representation against the membership test
// and the truncation oracle, and every certificate against verify_maximal.
Result cmd_verify(const std::string& path, int M, const Globals&) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot read " + path);
  json src;
  try {
    src = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("not a JSON result: ") + e.what());
  }
  json j = {{"command", "verify"}, {"source", path}, {"oracle_size", M}};
  bool agrees = true, stable = true;

  std::vector<RationalFunction> basis;
  RationalFunction symbol;
  bool have_kernel = false;
  if (src.contains("representation") && !src["representation"].is_null()) {
    KernelRep rep = report::rep_from(src["representation"]);
    basis = rep.basis();
    symbol = rep.symbol;
    have_kernel = true;
    bool members = true;
    for (const auto& e : basis) members = members && in_toeplitz_kernel(e, symbol);
    j["membership"] = members;
    agrees = agrees && members;
  } else if (src.value("trivial", false) && src.contains("symbol")) {
    symbol = report::rational_from(src["symbol"]);
    have_kernel = true;
  }
  if (have_kernel) {
    OracleReport r = oracle_compare(symbol, basis, M);
    j["oracle"] = to_json(r);
    stable = r.stable;
    agrees = agrees && r.agrees();
  }

  json certs = json::array();
  auto recheck = [&](const json& cert, const std::string& where) {
    if (!cert.contains("f")) return;
    RationalFunction f = report::rational_from(cert["f"]);
    RationalSymbol s(report::rational_from(cert["symbol"]));
    bool now = accepted(verify_maximal(f, s));
    bool before = cert.value("accepted", false);
    certs.push_back({{"where", where}, {"recorded", before}, {"reproduced", now}});
    agrees = agrees && now == before;
  };
  if (src.contains("certificate")) recheck(src["certificate"], "certificate");
  if (src.contains("vanish")) {
    recheck(src["vanish"]["F_B"], "vanish.F_B");
    recheck(src["vanish"]["f_B"], "vanish.f_B");
  }
  j["certificates"] = certs;
  if (!have_kernel && certs.empty()) throw Error(ErrorCode::InvalidArgument, "nothing to verify in " + path);
  j["verdict"] = agrees ? "agrees" : "disagrees";
  return {j, !stable ? Ambiguous : agrees ? Ok : Rejected};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Toeplitz kernels of rational symbols"};
  app.require_subcommand(1);
  // -h stays free for frostman's --h.
  app.set_help_flag("--help", "print this help and exit");
  Globals g;
  app.add_option("--tol", g.tol, "half-width of the boundary band around |z| = 1")->capture_default_str();
  app.add_option("--samples", g.samples, "quadrature points on the circle")->capture_default_str();
  app.add_flag("--json", g.compact, "compact single-line JSON");
  app.add_option("--seed", g.seed, "seed for the constant-pinning probe points")->capture_default_str();
  app.add_option("--out", g.out, "also write the result to this file");

  std::string expr, vanish, theta, points, mode = "plain", h, C, p, alpha, file;
  int M = 32;

  auto* kernel = app.add_subcommand("kernel", "kernel of T_g for a rational symbol");
  kernel->add_option("symbol", expr, "symbol expression")->required();
  auto* minmodel = app.add_subcommand("minmodel", "smallest Toeplitz kernel containing an H2 function");
  minmodel->add_option("f", expr, "function expression")->required();
  auto* maxfunc = app.add_subcommand("maxfunc", "certified maximal function of ker T_g");
  maxfunc->add_option("symbol", expr, "symbol expression")->required();
  maxfunc->add_option("--vanish", vanish, "comma-separated points where the maximal function must vanish");
  auto* represent = app.add_subcommand("represent", "model space representations of ker T_{conj(theta) B}");
  represent->add_option("--theta", theta, "inner function expression")->required();
  represent->add_option("--B", points, "comma-separated zeros of B")->required();
  represent->add_option("--mode", mode, "plain, isometric or hayashi")
      ->check(CLI::IsMember({"plain", "isometric", "hayashi"}))
      ->capture_default_str();
  auto* frostman = app.add_subcommand("frostman", "kernel of T_{conj(theta) - h}");
  frostman->add_option("--theta", theta, "inner function expression")->required();
  frostman->add_option("--h", h, "perturbation expression")->required();
  frostman->add_option("--C", C, "constant for the isometric multiplier test");
  frostman->add_option("--p", p, "Frostman shift parameter");
  frostman->add_option("--alpha", alpha, "inner function alpha (default: the minimal one)");
  auto* verify = app.add_subcommand("verify", "re-check a saved result against the oracle");
  verify->add_option("file", file, "JSON result file")->required();
  verify->add_option("--oracle-size", M, "truncation size")->check(CLI::Range(4, 4096))->capture_default_str();
  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return Usage;
  }

  Result res;
  const auto start = std::chrono::steady_clock::now();
  try {
    if (*kernel) res = cmd_kernel(expr, g);
    else if (*minmodel) res = cmd_minmodel(expr, g);
    else if (*maxfunc) res = cmd_maxfunc(expr, vanish, g);
    else if (*represent) res = cmd_represent(theta, points, mode, g);
    else if (*frostman) res = cmd_frostman(theta, h, C, p, alpha, g);
    else res = cmd_verify(file, M, g);
  } catch (const ParseFailure& e) {
    res.body = {{"error", {{"code", "ParseError"}, {"message", e.what()}, {"position", e.position()},
                           {"expected", e.expected()}}}};
    res.code = Usage;
    std::cerr << "tkern: " << e.what() << "\n";
  } catch (const Error& e) {
    res.body = {{"error", {{"code", std::string(error_code_name(e.code()))}, {"message", e.what()}}}};
    res.code = exit_code(e.code());
    std::cerr << "tkern: " << e.what() << "\n";
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  res.body["tolerances"] = tolerances(g);
  res.body["exit_code"] = res.code;
  res.body["seconds"] = secs;

  const std::string text = res.body.dump(g.compact ? -1 : 2);
  std::cout << text << "\n";
  if (!g.out.empty()) {
    std::ofstream o(g.out);
    if (!o) {
      std::cerr << "tkern: cannot write " << g.out << "\n";
      return Usage;
    }
    o << text << "\n";
  }
  return res.code;
}
