#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "support.hpp"

using namespace tkern;
using tkern::testing::Gen;
using tkern::testing::sup_diff;
using nlohmann::json;

namespace {

struct CliResult {
  int code;
  json out;
};

CliResult run(const std::string& args) {
  std::string cmd = std::string(TKERN_CLI_PATH) + " " + args + " --json 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  std::string text;
  char buf[4096];
  while (size_t n = fread(buf, 1, sizeof buf, pipe)) text.append(buf, n);
  int status = pclose(pipe);
  json j = json::parse(text, nullptr, false);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, j};
}

std::string tmp(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("tkern_test_" + name)).string();
}

int parse_error_position(const std::string& text) {
  try {
    parse(text);
  } catch (const ParseFailure& e) {
    return static_cast<int>(e.position());
  }
  return -1;
}

}  // namespace

TEST(Parser, Examples) {
  RationalFunction a = parse_rational("bar(z^3 * B(0.5))");
  auto th = [](Complex z) { return z * z * z * (z - 0.5) / (1.0 - 0.5 * z); };
  EXPECT_LT(sup_diff(a, [&](Complex z) { return std::conj(th(z)); }), 1e-13);

  RationalFunction b = parse_rational("(z-2)/(z^2*(z-3)*(z-4))");
  EXPECT_LT(sup_diff(b, [](Complex z) { return (z - 2.0) / (z * z * (z - 3.0) * (z - 4.0)); }), 1e-14);

  RationalFunction c = parse_rational("bar(z) - 0.3 + 0.4*z");
  EXPECT_LT(sup_diff(c, [](Complex z) { return 1.0 / z - 0.3 + 0.4 * z; }), 1e-14);
}

TEST(Parser, ComplexLiterals) {
  EXPECT_NEAR(std::abs(parse_rational("2i").gain() - Complex{0.0, 2.0}), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(parse_rational("0.3-0.4i").gain() - Complex{0.3, -0.4}), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(parse_rational("1e-2 + i").gain() - Complex{0.01, 1.0}), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(parse_rational(" - ( 1.5 ) ").gain() + 1.5), 0.0, 1e-15);
}

TEST(Parser, BarIsInvolution) {
  for (const char* s : {"z", "B(0.3+0.2i)*z^2", "(z-2)/(z+3)", "1/(1-0.5*z)", "2i*z^-2"}) {
    std::string t = std::string("bar(bar(") + s + "))";
    EXPECT_LT(sup_diff(parse_rational(t), parse_rational(s)), 1e-12) << s;
    // Normalization leaves no bar node behind.
    EXPECT_EQ(to_string(normalize(parse(t))).find("bar"), std::string::npos);
  }
}

TEST(Parser, BarMatchesBoundaryConjugate) {
  RationalFunction f = parse_rational("(z-0.5i)^2/(z-3)");
  EXPECT_LT(sup_diff(parse_rational("bar((z-0.5i)^2/(z-3))"), boundary_conjugate(f)), 1e-12);
}

TEST(Parser, Errors) {
  EXPECT_EQ(parse_error_position("z^^2"), 2);
  EXPECT_EQ(parse_error_position("(z-1"), 4);
  EXPECT_EQ(parse_error_position("z+"), 2);
  EXPECT_EQ(parse_error_position("y"), 0);
  EXPECT_EQ(parse_error_position("z^1000"), 2);
  try {
    parse("B(0.5");
    FAIL();
  } catch (const ParseFailure& e) {
    EXPECT_EQ(e.code(), ErrorCode::ParseError);
    ASSERT_FALSE(e.expected().empty());
    EXPECT_EQ(e.expected()[0], "')'");
  }
  EXPECT_THROW(parse_rational("B(z)"), Error);
  EXPECT_THROW(parse_rational("1/(z-z)"), Error);
}

TEST(Parser, FuzzTotalityProperty) {
  // Random strings over the grammar's alphabet either parse or raise a
  // ParseFailure; nothing else escapes.
  Gen g(601);
  const std::string alphabet = "z0123456789.i+-*/^()B bar e";
  int parsed = 0;
  for (int t = 0; t < 3000; ++t) {
    std::string s;
    for (int k = g.integer(0, 24); k > 0; --k) s += alphabet[static_cast<size_t>(g.integer(0, static_cast<int>(alphabet.size()) - 1))];
    try {
      parse_rational(s);
      ++parsed;
    } catch (const ParseFailure&) {
    } catch (const Error&) {
      // Well-formed but meaningless, e.g. division by zero.
    }
  }
  EXPECT_GT(parsed, 0);
  std::string deep(5000, '(');
  EXPECT_THROW(parse(deep), ParseFailure);
}

TEST(Cli, KernelWorkedExample) {
  CliResult r = run("kernel \"(z-2)/(z^2*(z-3)*(z-4))\"");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out["dim"], 2);
  EXPECT_EQ(r.out["containing"]["degree"], 4);
  EXPECT_EQ(r.out["counts"]["N"], -3);
  std::vector<Complex> zs;
  for (const auto& z : r.out["containing"]["zeros"]) zs.push_back({z[0].get<double>(), z[1].get<double>()});
  BlaschkeProduct c(zs);
  EXPECT_TRUE(divides(BlaschkeProduct::z_power(3) * BlaschkeProduct::factor(0.5), c));
}

TEST(Cli, RepresentAndVerifyRoundTrip) {
  std::string out = tmp("rep.json");
  CliResult r = run("represent --theta \"z^2\" --B 0 --out " + out);
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out["dim"], 1);
  EXPECT_EQ(r.out["representation"]["multiplier"]["zeros"].size(), 0u);
  EXPECT_EQ(r.out["representation"]["multiplier"]["poles"].size(), 0u);
  CliResult v = run("verify " + out + " --oracle-size 32");
  EXPECT_EQ(v.code, 0);
  EXPECT_EQ(v.out["verdict"], "agrees");
  EXPECT_LT(v.out["oracle"]["angle"].get<double>(), 1e-6);
}

TEST(Cli, EveryCommandRoundTrips) {
  const std::vector<std::string> cmds = {
      "kernel \"(z-2)/(z^2*(z-3)*(z-4))\"",
      "kernel \"z-2\"",
      "minmodel \"(z-0.5)*(1-0.25*z)\"",
      "maxfunc \"bar(z^3*B(0.5))\" --vanish \"0.3,-0.2\"",
      "represent --theta \"z^2*B(0.5)\" --B \"0.3,-0.2\" --mode hayashi",
      "represent --theta \"z^3\" --B \"0.1i\" --mode isometric",
      "frostman --theta \"z^2\" --h \"0.3-0.4*z\" --C 0.5",
  };
  for (size_t i = 0; i < cmds.size(); ++i) {
    std::string out = tmp("rt" + std::to_string(i) + ".json");
    CliResult r = run(cmds[i] + " --out " + out);
    ASSERT_EQ(r.code, 0) << cmds[i];
    CliResult v = run("verify " + out + " --oracle-size 32");
    EXPECT_EQ(v.code, 0) << cmds[i];
    EXPECT_EQ(v.out["verdict"], "agrees") << cmds[i];
  }
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("kernel \"z^^2\"").code, 1);
  EXPECT_EQ(run("kernel \"z^^2\"").out["error"]["code"], "ParseError");
  EXPECT_EQ(run("kernel").code, 1);
  EXPECT_EQ(run("represent --theta z^2 --B 0 --mode sideways").code, 1);

  CliResult pole = run("kernel \"1/(z-1)\"");
  EXPECT_EQ(pole.code, 2);
  EXPECT_EQ(pole.out["error"]["code"], "PoleOnCircle");

  EXPECT_EQ(run("represent --theta z --B 0").out["error"]["code"], "InsufficientDegree");
  EXPECT_EQ(run("represent --theta \"2*z\" --B 0").out["error"]["code"], "NotInner");
  EXPECT_EQ(run("frostman --theta z --h \"0.6+0.6*z\"").out["error"]["code"], "NormTooLarge");
  EXPECT_EQ(run("maxfunc \"z-2\"").code, 2);

  CliResult amb = run("kernel \"z-1.00000001\"");
  EXPECT_EQ(amb.code, 3);
  EXPECT_EQ(amb.out["error"]["code"], "BoundaryAmbiguous");

  // A rejected maximal function candidate is a certified rejection.
  CliResult mm = run("minmodel \"1+z\"");
  EXPECT_EQ(mm.code, 0);
  EXPECT_TRUE(mm.out["representation"].is_null());
}

TEST(Cli, TolerancesEchoed) {
  CliResult r = run("kernel \"bar(z)\" --tol 1e-7 --seed 7");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out["tolerances"]["boundary"], 1e-7);
  EXPECT_EQ(r.out["tolerances"]["seed"], 7);
}

TEST(Cli, VerifyDetectsTamperedResult) {
  std::string out = tmp("tamper.json");
  ASSERT_EQ(run("kernel \"(z-2)/(z^2*(z-3)*(z-4))\" --out " + out).code, 0);
  json j;
  {
    std::ifstream in(out);
    j = json::parse(in);
  }
  j["representation"]["model_space"]["zeros"].push_back(json::array({0.0, 0.0}));
  {
    std::ofstream o(out);
    o << j.dump();
  }
  CliResult v = run("verify " + out + " --oracle-size 32");
  EXPECT_EQ(v.code, 2);
  EXPECT_EQ(v.out["verdict"], "disagrees");
}
