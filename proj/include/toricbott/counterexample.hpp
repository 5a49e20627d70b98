#pragma once

// Degree bookkeeping for a smooth plane curve F of degree d on the
// exceptional plane P of the blowup of A^3 at a point, and the blowup X of
// F: normal bundle degrees, the ruled surface invariant of the exceptional
// divisor E, intersection numbers of D = -E - f^*(d+1)P, and the
// Riemann-Roch bound that makes relative Bott vanishing fail.

#include <cstdint>
#include <optional>
#include <vector>

#include "toricbott/error.hpp"

namespace toricbott {

struct ScenarioReport {
  std::int64_t d = 0;
  /// deg N*_{P/Y}|_F and deg N*_{F/P}.
  std::int64_t deg_conormal_plane = 0;
  std::int64_t deg_conormal_curve = 0;
  std::int64_t deg_wedge2_conormal = 0;
  std::int64_t e_invariant = 0;
  std::int64_t genus = 0;
  std::int64_t degree_A = 0;
  std::int64_t deg_L = 0;
  /// E.a, (f^*P).a, E.b, (f^*P).b for a, b the curves contracted by f, g.
  std::int64_t e_dot_a = 0;
  std::int64_t p_dot_a = 0;
  std::int64_t e_dot_b = 0;
  std::int64_t p_dot_b = 0;
  std::int64_t a_dot_D = 0;
  std::int64_t b_dot_D = 0;
  std::int64_t rr_lower_bound = 0;
  bool bott_fails = false;

  friend bool operator==(const ScenarioReport&, const ScenarioReport&) = default;
};

inline constexpr std::int64_t kMaxScenarioDegree = 1'000'000;

inline ScenarioReport scenario(std::int64_t d) {
  if (d < 1) throw Error(ErrorKind::DomainError, "curve degree must be at least 1");
  if (d > kMaxScenarioDegree) throw Error(ErrorKind::DomainError, "curve degree too large");
  ScenarioReport s;
  s.d = d;
  // N_{P/Y} = O_P(-1), so its dual restricts to degree d; N_{F/P} has degree F.F = d^2.
  s.deg_conormal_plane = d;
  s.deg_conormal_curve = -d * d;
  s.deg_wedge2_conormal = s.deg_conormal_plane + s.deg_conormal_curve;
  // Twisting the conormal sequence by the inverse of its sub line bundle.
  s.e_invariant = s.deg_conormal_plane - s.deg_conormal_curve;
  s.genus = (d - 1) * (d - 2) / 2;
  s.degree_A = d * (d + 1);
  s.deg_L = s.deg_wedge2_conormal + s.degree_A;
  s.e_dot_a = -1;
  s.p_dot_a = 0;
  s.e_dot_b = d;
  s.p_dot_b = -1;
  s.a_dot_D = -s.e_dot_a - (d + 1) * s.p_dot_a;
  s.b_dot_D = -s.e_dot_b - (d + 1) * s.p_dot_b;
  // h^0(ω ⊗ L^-1) = h^0(L) - (deg L - g + 1) >= -deg L + g - 1.
  s.rr_lower_bound = -s.deg_L + s.genus - 1;
  s.bott_fails = s.rr_lower_bound > 0;
  return s;
}

/// Least d with a positive lower bound, found by scanning upward.
inline std::int64_t minimal_failing_degree(std::int64_t limit = 1000) {
  for (std::int64_t d = 1; d <= limit; ++d)
    if (scenario(d).bott_fails) return d;
  throw Error(ErrorKind::Internal, "no failing degree below the scan limit");
}

inline std::vector<ScenarioReport> scan(std::int64_t lo, std::int64_t hi) {
  if (lo < 1 || hi < lo) throw Error(ErrorKind::DomainError, "scan range must satisfy 1 <= lo <= hi");
  std::vector<ScenarioReport> out;
  for (std::int64_t d = lo; d <= hi; ++d) out.push_back(scenario(d));
  return out;
}

inline bool relative_ample_check(std::int64_t d) {
  const auto s = scenario(d);
  return s.a_dot_D == 1 && s.b_dot_D == 1;
}

/// h^0(ω ⊗ L^-1) - h^0(L) = deg(ω ⊗ L^-1) + 1 - g must equal g - 1 - deg L
/// and the stored lower bound.
inline bool riemann_roch_consistency(std::int64_t d) {
  const auto s = scenario(d);
  const std::int64_t deg_omega = 2 * s.genus - 2;
  const std::int64_t chi_difference = (deg_omega - s.deg_L) + 1 - s.genus;
  return chi_difference == s.genus - 1 - s.deg_L && chi_difference == s.rr_lower_bound &&
         chi_difference == -(2 * d - s.genus + 1);
}

}  // namespace toricbott
