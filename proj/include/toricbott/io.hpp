#pragma once

// JSON encodings of fans, divisors, sheaf specs, cohomology results,
// certificates and counterexample reports.

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "toricbott/certifier.hpp"
#include "toricbott/counterexample.hpp"
#include "toricbott/danilov.hpp"
#include "toricbott/divisors.hpp"
#include "toricbott/error.hpp"
#include "toricbott/fan.hpp"

namespace toricbott::io {

using Json = nlohmann::ordered_json;

namespace detail {

template <class Fn>
auto guarded(std::string_view what, Fn&& fn) {
  try {
    return fn();
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw Error(ErrorKind::MalformedInput, std::string(what) + ": " + e.what());
  }
}

inline const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw Error(ErrorKind::MalformedInput, std::string("missing field '") + name + "'");
  return j.at(name);
}

}  // namespace detail

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::MalformedInput, "cannot open " + path);
  return detail::guarded("parse " + path, [&] { return Json::parse(in); });
}

inline void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::MalformedInput, "cannot write " + path);
  out << j.dump(2) << "\n";
}

// ---------------------------------------------------------------------------

inline Json rays_json(RaySet s) { return Json(s.indices()); }

inline RaySet rays_from_json(const Json& j) {
  return detail::guarded("ray set", [&] {
    RaySet s;
    for (const auto& x : j) s.insert(x.get<std::size_t>());
    return s;
  });
}

/// "0,2,5" or "" -> ray set.
inline RaySet parse_ray_list(std::string_view text) {
  RaySet s;
  std::string item;
  std::stringstream in{std::string(text)};
  while (std::getline(in, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    std::size_t pos = 0;
    long v = 0;
    try {
      v = std::stol(item, &pos);
    } catch (const std::exception&) {
      throw Error(ErrorKind::MalformedInput, "not a ray index: '" + item + "'");
    }
    if (v < 0 || item.find_first_not_of(" \t", pos) != std::string::npos)
      throw Error(ErrorKind::MalformedInput, "not a ray index: '" + item + "'");
    s.insert(static_cast<std::size_t>(v));
  }
  return s;
}

// ---------------------------------------------------------------------------

inline Json to_json(const Fan& f) {
  Json j;
  j["dim"] = f.dim();
  j["rays"] = f.rays();
  Json cones = Json::array();
  for (std::size_t c = 0; c < f.cone_count(); ++c) cones.push_back(f.cone_rays(c));
  j["cones"] = std::move(cones);
  return j;
}

inline Fan fan_from_json(const Json& j) {
  return detail::guarded("fan", [&] {
    return Fan(detail::field(j, "dim").get<std::size_t>(), detail::field(j, "rays").get<std::vector<IntVector>>(),
               detail::field(j, "cones").get<std::vector<std::vector<std::size_t>>>());
  });
}

inline Json rational_json(const Rational& q) {
  if (is_integer(q) && q.get_num().fits_slong_p()) return Json(q.get_num().get_si());
  return Json(q.get_str());
}

inline Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(static_cast<long>(j.get<std::int64_t>()));
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw Error(ErrorKind::MalformedInput, "expected an integer or a \"p/q\" string");
}

inline Json to_json(const InvariantDivisor& d) {
  Json j = Json::array();
  for (const auto& c : d.coeffs) j.push_back(rational_json(c));
  return j;
}

/// Accepts a bare coefficient array or {"coefficients": [...]}.
inline InvariantDivisor divisor_from_json(const Json& j) {
  const Json& arr = j.is_object() ? detail::field(j, "coefficients") : j;
  if (!arr.is_array()) throw Error(ErrorKind::MalformedInput, "divisor must be an array of coefficients");
  InvariantDivisor d;
  for (const auto& x : arr) d.coeffs.push_back(rational_from_json(x));
  return d;
}

inline Json to_json(const LogFormSheafSpec& s) {
  Json j;
  j["p"] = s.p;
  j["logset"] = rays_json(s.logset);
  j["twist"] = s.twist;
  return j;
}

inline LogFormSheafSpec spec_from_json(const Json& j) {
  return detail::guarded("sheaf spec", [&] {
    if (!detail::field(j, "p").is_number_unsigned())
      throw Error(ErrorKind::MalformedInput, "form degree must be a non-negative integer");
    return LogFormSheafSpec{detail::field(j, "p").get<std::size_t>(), rays_from_json(detail::field(j, "logset")),
                            detail::field(j, "twist").get<IntVector>()};
  });
}

inline Json to_json(const CohomologyResult& r, bool with_weights = true) {
  Json j;
  j["dims"] = r.dims;
  j["euler"] = r.euler;
  if (with_weights) {
    Json w = Json::array();
    for (const auto& [m, h] : r.weight_support) w.push_back(Json{{"weight", m}, {"dims", h}});
    j["weight_support"] = std::move(w);
  }
  return j;
}

inline CohomologyResult cohomology_from_json(const Json& j) {
  return detail::guarded("cohomology report", [&] {
    CohomologyResult r;
    r.dims = detail::field(j, "dims").get<std::vector<std::size_t>>();
    r.euler = detail::field(j, "euler").get<std::int64_t>();
    if (j.contains("weight_support"))
      for (const auto& e : j.at("weight_support"))
        r.weight_support.emplace(detail::field(e, "weight").get<IntVector>(),
                                 detail::field(e, "dims").get<std::vector<std::size_t>>());
    return r;
  });
}

// ---------------------------------------------------------------------------

inline Json to_json(const VanishingClaim& c) {
  Json j;
  j["stratum"] = rays_json(c.stratum);
  j["p"] = c.p;
  j["logset"] = rays_json(c.logset);
  j["twist"] = c.twist;
  return j;
}

inline Json to_json(const CertificateNode& n) {
  Json j;
  j["claim"] = to_json(n.claim);
  j["rule"] = std::string(to_string(n.rule));
  if (n.rule == Rule::ResidueStep) j["added_ray"] = n.added_ray;
  Json ch = Json::array();
  for (const auto& c : n.children) ch.push_back(to_json(c));
  j["children"] = std::move(ch);
  return j;
}

inline std::string hash_hex(std::uint64_t h) {
  std::ostringstream out;
  out << std::hex;
  out.width(16);
  out.fill('0');
  out << h;
  return out.str();
}

inline Json to_json(const Certificate& c) {
  Json j;
  j["fan_hash"] = hash_hex(c.fan_hash);
  j["dprime"] = rays_json(c.dprime);
  j["divisor"] = to_json(c.divisor);
  Json w = Json::array();
  for (const auto& q : c.witness) w.push_back(q.get_str());
  j["hypothesis_witness"] = std::move(w);
  Json roots = Json::array();
  for (const auto& r : c.roots) roots.push_back(to_json(r));
  j["roots"] = std::move(roots);
  return j;
}

inline Json to_json(const CertificateCheck& c) {
  Json j;
  j["ok"] = c.ok;
  j["fault"] = c.fault ? Json(std::string(to_string(*c.fault))) : Json(nullptr);
  j["leaves"] = c.leaves;
  j["depth"] = c.depth;
  j["messages"] = c.messages;
  return j;
}

inline CertificateNode node_from_json(const Json& j) {
  return detail::guarded("certificate node", [&] {
    CertificateNode n;
    const Json& c = detail::field(j, "claim");
    n.claim = {rays_from_json(detail::field(c, "stratum")), detail::field(c, "p").get<std::size_t>(),
               rays_from_json(detail::field(c, "logset")), detail::field(c, "twist").get<IntVector>()};
    const auto rule = detail::field(j, "rule").get<std::string>();
    if (rule == "LeafTrivialLog") {
      n.rule = Rule::LeafTrivialLog;
    } else if (rule == "ResidueStep") {
      n.rule = Rule::ResidueStep;
      n.added_ray = detail::field(j, "added_ray").get<std::size_t>();
    } else {
      throw Error(ErrorKind::MalformedNode, "unknown rule '" + rule + "'");
    }
    for (const auto& ch : detail::field(j, "children")) n.children.push_back(node_from_json(ch));
    return n;
  });
}

inline Certificate certificate_from_json(const Json& j) {
  return detail::guarded("certificate", [&] {
    Certificate c;
    c.fan_hash = std::stoull(detail::field(j, "fan_hash").get<std::string>(), nullptr, 16);
    c.dprime = rays_from_json(detail::field(j, "dprime"));
    c.divisor = divisor_from_json(detail::field(j, "divisor"));
    for (const auto& q : detail::field(j, "hypothesis_witness")) c.witness.push_back(rational_from_json(q));
    for (const auto& r : detail::field(j, "roots")) c.roots.push_back(node_from_json(r));
    return c;
  });
}

// ---------------------------------------------------------------------------

inline Json to_json(const ScenarioReport& s) {
  Json j;
  j["d"] = s.d;
  j["deg_conormal_plane"] = s.deg_conormal_plane;
  j["deg_conormal_curve"] = s.deg_conormal_curve;
  j["deg_wedge2_conormal"] = s.deg_wedge2_conormal;
  j["e_invariant"] = s.e_invariant;
  j["genus"] = s.genus;
  j["degree_A"] = s.degree_A;
  j["deg_L"] = s.deg_L;
  j["e_dot_a"] = s.e_dot_a;
  j["p_dot_a"] = s.p_dot_a;
  j["e_dot_b"] = s.e_dot_b;
  j["p_dot_b"] = s.p_dot_b;
  j["a_dot_D"] = s.a_dot_D;
  j["b_dot_D"] = s.b_dot_D;
  j["rr_lower_bound"] = s.rr_lower_bound;
  j["bott_fails"] = s.bott_fails;
  return j;
}

inline ScenarioReport scenario_from_json(const Json& j) {
  return detail::guarded("scenario report", [&] {
    ScenarioReport s;
    s.d = j.at("d").get<std::int64_t>();
    s.deg_conormal_plane = j.at("deg_conormal_plane").get<std::int64_t>();
    s.deg_conormal_curve = j.at("deg_conormal_curve").get<std::int64_t>();
    s.deg_wedge2_conormal = j.at("deg_wedge2_conormal").get<std::int64_t>();
    s.e_invariant = j.at("e_invariant").get<std::int64_t>();
    s.genus = j.at("genus").get<std::int64_t>();
    s.degree_A = j.at("degree_A").get<std::int64_t>();
    s.deg_L = j.at("deg_L").get<std::int64_t>();
    s.e_dot_a = j.at("e_dot_a").get<std::int64_t>();
    s.p_dot_a = j.at("p_dot_a").get<std::int64_t>();
    s.e_dot_b = j.at("e_dot_b").get<std::int64_t>();
    s.p_dot_b = j.at("p_dot_b").get<std::int64_t>();
    s.a_dot_D = j.at("a_dot_D").get<std::int64_t>();
    s.b_dot_D = j.at("b_dot_D").get<std::int64_t>();
    s.rr_lower_bound = j.at("rr_lower_bound").get<std::int64_t>();
    s.bott_fails = j.at("bott_fails").get<bool>();
    return s;
  });
}

}  // namespace toricbott::io
