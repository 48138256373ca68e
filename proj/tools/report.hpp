#pragma once

// JSON encoding of engine values for the command-line tool.

#include <string>
#include <vector>

#include <json.hpp>

#include "tkern/tkern.hpp"

namespace tkern::report {

using nlohmann::json;

inline json to_json(Complex c) { return json::array({c.real(), c.imag()}); }

inline Complex complex_from(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (!j.is_array() || j.size() != 2) throw Error(ErrorCode::InvalidArgument, "complex number must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

inline json to_json(const std::vector<Complex>& v) {
  json a = json::array();
  for (Complex c : v) a.push_back(to_json(c));
  return a;
}

inline std::vector<Complex> complex_list_from(const json& j) {
  std::vector<Complex> v;
  for (const auto& x : j) v.push_back(complex_from(x));
  return v;
}

inline json to_json(const RationalFunction& f) {
  return {{"gain", to_json(f.gain())},
          {"zeros", to_json(f.zeros())},
          {"poles", to_json(f.poles())},
          {"num", to_json(f.numerator().coeffs())},
          {"den", to_json(f.denominator().coeffs())}};
}

// Rebuilt from gain, zeros and poles; the coefficient arrays are informative.
inline RationalFunction rational_from(const json& j) {
  return RationalFunction::from_zpk(complex_from(j.at("gain")), complex_list_from(j.at("zeros")),
                                    complex_list_from(j.at("poles")));
}

inline json to_json(const BlaschkeProduct& b) {
  return {{"constant", to_json(b.constant())}, {"zeros", to_json(b.zeros())}, {"degree", b.degree()}};
}

inline BlaschkeProduct blaschke_from(const json& j) {
  return BlaschkeProduct(complex_list_from(j.at("zeros")), complex_from(j.at("constant")));
}

inline json to_json(const KernelRep& r) {
  return {{"multiplier", to_json(r.multiplier)},
          {"model_space", to_json(r.theta)},
          {"dim", r.dim()},
          {"isometric", r.isometric},
          {"normalization", to_json(r.normalization)},
          {"symbol", to_json(r.symbol)}};
}

inline KernelRep rep_from(const json& j) {
  KernelRep r;
  r.multiplier = rational_from(j.at("multiplier"));
  r.theta = blaschke_from(j.at("model_space"));
  r.isometric = j.value("isometric", false);
  if (j.contains("normalization")) r.normalization = complex_from(j.at("normalization"));
  r.symbol = rational_from(j.at("symbol"));
  return r;
}

inline json to_json(const UnimodularSymbol& s) {
  return {{"theta", to_json(s.theta)},
          {"alpha", to_json(s.alpha)},
          {"outer", to_json(s.outer)},
          {"rational", to_json(s.to_rational())}};
}

inline json to_json(const OracleReport& r) {
  return {{"M", r.M},
          {"symbolic_dim", r.symbolic_dim},
          {"numerical_dim", r.numerical_dim},
          {"stable", r.stable},
          {"angle", r.angle},
          {"tail", r.tail},
          {"agrees", r.agrees()}};
}

inline json to_json(const MaximalVerdict& v) {
  if (const auto* c = std::get_if<MaximalFunctionCert>(&v)) {
    json j = {{"accepted", true},
              {"f", to_json(c->f)},
              {"symbol", to_json(symbol_rational(c->symbol))},
              {"O_witness", to_json(c->O_witness)}};
    if (c->conjugation_agrees) j["conjugation_agrees"] = *c->conjugation_agrees;
    return j;
  }
  const auto& r = std::get<Rejection>(v);
  return {{"accepted", false}, {"reason", r.reason}, {"O_witness", to_json(r.O_witness)}};
}

}  // namespace tkern::report
