#pragma once

// Torus-invariant R-divisors (with rational coefficients), their Cartier data,
// intersection numbers with invariant curves, and ampleness tests.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "toricbott/error.hpp"
#include "toricbott/exactmath.hpp"
#include "toricbott/fan.hpp"

namespace toricbott {

/// Σ a_ρ D_ρ, one coefficient per ray of the ambient fan.
struct InvariantDivisor {
  std::vector<Rational> coeffs;

  InvariantDivisor() = default;
  explicit InvariantDivisor(std::vector<Rational> c) : coeffs(std::move(c)) {}

  static InvariantDivisor zero(std::size_t n) { return InvariantDivisor(std::vector<Rational>(n, Rational(0))); }
  static InvariantDivisor from_ints(std::span<const std::int64_t> a) {
    InvariantDivisor d;
    for (auto x : a) d.coeffs.emplace_back(static_cast<long>(x));
    return d;
  }
  /// The prime divisor D_i.
  static InvariantDivisor prime(std::size_t n, std::size_t i) {
    InvariantDivisor d = zero(n);
    d.coeffs.at(i) = 1;
    return d;
  }
  /// Σ_{ρ∈s} D_ρ.
  static InvariantDivisor reduced(std::size_t n, RaySet s) {
    InvariantDivisor d = zero(n);
    for (auto i : s.indices()) d.coeffs.at(i) = 1;
    return d;
  }

  std::size_t size() const noexcept { return coeffs.size(); }
  bool integral() const {
    for (const auto& c : coeffs)
      if (!is_integer(c)) return false;
    return true;
  }
  IntVector to_ints() const {
    IntVector out;
    for (const auto& c : coeffs) {
      if (!is_integer(c)) throw Error(ErrorKind::MalformedInput, "divisor is not integral");
      out.push_back(to_int64(c.get_num()));
    }
    return out;
  }

  InvariantDivisor& operator+=(const InvariantDivisor& o) {
    check(o);
    for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] += o.coeffs[i];
    return *this;
  }
  InvariantDivisor& operator-=(const InvariantDivisor& o) {
    check(o);
    for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] -= o.coeffs[i];
    return *this;
  }
  friend InvariantDivisor operator+(InvariantDivisor a, const InvariantDivisor& b) { return a += b; }
  friend InvariantDivisor operator-(InvariantDivisor a, const InvariantDivisor& b) { return a -= b; }
  friend InvariantDivisor operator-(InvariantDivisor a) {
    for (auto& c : a.coeffs) c = -c;
    return a;
  }
  friend InvariantDivisor operator*(const Rational& s, InvariantDivisor a) {
    for (auto& c : a.coeffs) c *= s;
    return a;
  }
  friend bool operator==(const InvariantDivisor&, const InvariantDivisor&) = default;

 private:
  void check(const InvariantDivisor& o) const {
    if (o.coeffs.size() != coeffs.size()) throw Error(ErrorKind::MalformedInput, "divisors on different fans");
  }
};

/// Per maximal cone σ, the covector m_σ with <m_σ, u_ρ> = -a_ρ for ρ ∈ σ.
struct CartierData {
  std::vector<std::vector<Rational>> m_sigma;
};

inline void require_divisor_on(const Fan& f, const InvariantDivisor& d) {
  if (d.size() != f.ray_count())
    throw Error(ErrorKind::MalformedInput, "divisor has " + std::to_string(d.size()) + " coefficients, fan has " +
                                               std::to_string(f.ray_count()) + " rays");
}

inline std::vector<Rational> cartier_covector(const Fan& f, const InvariantDivisor& d, std::size_t cone) {
  require_divisor_on(f, d);
  const auto basis = f.dual_basis(cone);
  const auto& rays = f.cone_rays(cone);
  std::vector<Rational> m(f.dim(), Rational(0));
  for (std::size_t i = 0; i < rays.size(); ++i)
    for (std::size_t k = 0; k < f.dim(); ++k) m[k] -= d.coeffs[rays[i]] * static_cast<long>(basis[i][k]);
  return m;
}

inline CartierData cartier_data(const Fan& f, const InvariantDivisor& d) {
  require_smooth(f);
  CartierData out;
  for (std::size_t c = 0; c < f.cone_count(); ++c) out.m_sigma.push_back(cartier_covector(f, d, c));
  return out;
}

inline InvariantDivisor canonical_divisor(const Fan& f) {
  return InvariantDivisor(std::vector<Rational>(f.ray_count(), Rational(-1)));
}

/// div(χ^m) = Σ <m, u_ρ> D_ρ.
inline InvariantDivisor principal_divisor(const Fan& f, std::span<const Rational> m) {
  InvariantDivisor d = InvariantDivisor::zero(f.ray_count());
  for (std::size_t i = 0; i < f.ray_count(); ++i)
    for (std::size_t k = 0; k < f.dim(); ++k) d.coeffs[i] += m[k] * static_cast<long>(f.ray(i)[k]);
  return d;
}

inline Rational pairing(std::span<const Rational> m, const IntVector& u) {
  Rational s = 0;
  for (std::size_t k = 0; k < u.size(); ++k) s += m[k] * static_cast<long>(u[k]);
  return s;
}

/// D·C_τ = <m_σ - m_σ', u'> with u' the ray of σ' outside τ.
inline Rational intersect_wall(const Fan& f, const InvariantDivisor& d, const Wall& w) {
  const auto m = cartier_covector(f, d, w.sigma);
  const auto mp = cartier_covector(f, d, w.sigma_prime);
  std::vector<Rational> diff(f.dim());
  for (std::size_t k = 0; k < f.dim(); ++k) diff[k] = m[k] - mp[k];
  return pairing(diff, f.ray(w.u_extra_prime));
}

/// Matrix of D_ρ·C_w, one row per wall and one column per ray.
inline Matrix<Integer> intersection_matrix(const Fan& f, const std::vector<Wall>& ws) {
  Matrix<Integer> out(ws.size(), f.ray_count());
  for (std::size_t j = 0; j < f.ray_count(); ++j) {
    const auto prime = InvariantDivisor::prime(f.ray_count(), j);
    for (std::size_t w = 0; w < ws.size(); ++w) out(w, j) = intersect_wall(f, prime, ws[w]).get_num();
  }
  return out;
}

inline std::vector<Rational> wall_numbers(const Fan& f, const InvariantDivisor& d) {
  std::vector<Rational> out;
  for (const auto& w : walls(f)) out.push_back(intersect_wall(f, d, w));
  return out;
}

inline bool is_nef(const Fan& f, const InvariantDivisor& d) {
  for (const auto& x : wall_numbers(f, d))
    if (x < 0) return false;
  return true;
}

/// Positive on every invariant curve; for complete fans this is strict convexity.
inline bool is_ample(const Fan& f, const InvariantDivisor& d) {
  for (const auto& x : wall_numbers(f, d))
    if (x <= 0) return false;
  return true;
}

/// Witness 0 <= d <= 1 (one entry per ray of `dprime`, ascending) with
/// L - Σ d_j D_j ample, found by strict-inequality LP over the wall numbers.
inline std::optional<std::vector<Rational>> hypothesis_feasible(const Fan& f, const InvariantDivisor& l,
                                                                RaySet dprime) {
  require_divisor_on(f, l);
  if (!dprime.subset_of(f.all_rays())) throw Error(ErrorKind::MalformedInput, "log set has rays outside the fan");
  const auto ws = walls(f);
  const auto w = intersection_matrix(f, ws);
  const auto js = dprime.indices();
  const std::size_t k = js.size();
  QMatrix a(ws.size() + 2 * k, k);
  std::vector<Rational> b(ws.size() + 2 * k);
  std::vector<bool> strict(ws.size() + 2 * k, false);
  for (std::size_t r = 0; r < ws.size(); ++r) {
    Rational lw = 0;
    for (std::size_t j = 0; j < f.ray_count(); ++j) lw += l.coeffs[j] * w(r, j);
    for (std::size_t c = 0; c < k; ++c) a(r, c) = w(r, js[c]);
    b[r] = lw;
    strict[r] = true;
  }
  for (std::size_t c = 0; c < k; ++c) {
    a(ws.size() + 2 * c, c) = -1;
    b[ws.size() + 2 * c] = 0;
    a(ws.size() + 2 * c + 1, c) = 1;
    b[ws.size() + 2 * c + 1] = 1;
  }
  return lp_feasible_strict(a, b, strict);
}

/// L - Σ_{j∈dprime} d_j D_j for a witness ordered like dprime.indices().
inline InvariantDivisor residual_divisor(const InvariantDivisor& l, RaySet dprime, std::span<const Rational> d) {
  InvariantDivisor out = l;
  const auto js = dprime.indices();
  if (js.size() != d.size()) throw Error(ErrorKind::MalformedInput, "witness length does not match the log set");
  for (std::size_t c = 0; c < js.size(); ++c) out.coeffs.at(js[c]) -= d[c];
  return out;
}

/// Restriction to V(tau) through the Cartier covector of `chart` (a maximal
/// cone containing tau): the coefficient of each adjacent ray ρ becomes
/// a_ρ + <m_chart, u_ρ>. Different charts give linearly equivalent results.
inline InvariantDivisor restrict_to_stratum(const Fan& f, const StratumFan& s, const InvariantDivisor& d,
                                            std::optional<std::size_t> chart = std::nullopt) {
  require_divisor_on(f, d);
  const std::size_t c = chart ? *chart : *f.chart(s.tau);
  if (!s.tau.subset_of(f.cone(c))) throw Error(ErrorKind::NotACone, "chart does not contain the stratum cone");
  const auto m = cartier_covector(f, d, c);
  InvariantDivisor out = InvariantDivisor::zero(s.ambient_ray.size());
  for (std::size_t i = 0; i < s.ambient_ray.size(); ++i) {
    const std::size_t rho = s.ambient_ray[i];
    out.coeffs[i] = d.coeffs[rho] + pairing(m, f.ray(rho));
  }
  return out;
}

inline InvariantDivisor restrict_to_stratum(const Fan& f, const InvariantDivisor& d, RaySet tau) {
  return restrict_to_stratum(f, stratum_fan(f, tau), d);
}

/// Representative of the class of d vanishing on the rays of cone 0, and the
/// covector m0 with representative = d + div(χ^{m0}).
inline std::pair<InvariantDivisor, std::vector<Rational>> normalized_class(const Fan& f, const InvariantDivisor& d) {
  auto m0 = cartier_covector(f, d, 0);
  return {d + principal_divisor(f, m0), std::move(m0)};
}

inline bool linearly_equivalent(const Fan& f, const InvariantDivisor& a, const InvariantDivisor& b) {
  return normalized_class(f, a - b).first == InvariantDivisor::zero(f.ray_count());
}

/// An integral ample divisor if one exists (the fan is then projective).
inline std::optional<InvariantDivisor> is_projective(const Fan& f) {
  require_smooth(f);
  const auto ws = walls(f);
  const auto w = intersection_matrix(f, ws);
  QMatrix a(ws.size(), f.ray_count());
  for (std::size_t r = 0; r < ws.size(); ++r)
    for (std::size_t j = 0; j < f.ray_count(); ++j) a(r, j) = -w(r, j);
  const std::vector<Rational> zero(ws.size(), Rational(0));
  auto x = lp_feasible_strict(a, zero);
  if (!x) return std::nullopt;
  Integer l = 1;
  for (const auto& q : *x) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  InvariantDivisor out;
  for (const auto& q : *x) out.coeffs.emplace_back(q * l);
  return out;
}

/// Pins the sign convention of intersect_wall: O(1) on P^2 meets each line once.
inline void check_sign_convention() {
  const Fan p2 = projective_space(2);
  for (const auto& x : wall_numbers(p2, InvariantDivisor::prime(3, 0)))
    if (x != 1) throw Error(ErrorKind::Internal, "wall intersection sign convention broken");
}

}  // namespace toricbott
