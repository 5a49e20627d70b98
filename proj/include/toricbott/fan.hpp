#pragma once

// Smooth complete fans: cones, walls, star subdivisions and orbit-closure strata.

#include <algorithm>
#include <bit>
#include <cctype>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "toricbott/error.hpp"
#include "toricbott/exactmath.hpp"

namespace toricbott {

inline constexpr std::size_t kMaxRays = 64;

/// A set of ray indices, stored as a bit mask.
class RaySet {
 public:
  constexpr RaySet() = default;
  constexpr explicit RaySet(std::uint64_t mask) : mask_(mask) {}
  RaySet(std::initializer_list<std::size_t> idx) {
    for (auto i : idx) insert(i);
  }

  static RaySet from_indices(std::span<const std::size_t> idx) {
    RaySet s;
    for (auto i : idx) s.insert(i);
    return s;
  }
  static RaySet first_n(std::size_t n) { return RaySet(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1); }

  constexpr std::uint64_t mask() const noexcept { return mask_; }
  constexpr bool contains(std::size_t i) const noexcept { return i < 64 && ((mask_ >> i) & 1U); }
  constexpr bool empty() const noexcept { return mask_ == 0; }
  constexpr std::size_t size() const noexcept { return static_cast<std::size_t>(std::popcount(mask_)); }
  constexpr bool subset_of(RaySet o) const noexcept { return (mask_ & ~o.mask_) == 0; }

  void insert(std::size_t i) {
    if (i >= kMaxRays) throw Error(ErrorKind::MalformedInput, "ray index out of range");
    mask_ |= std::uint64_t{1} << i;
  }
  void erase(std::size_t i) noexcept {
    if (i < 64) mask_ &= ~(std::uint64_t{1} << i);
  }

  std::vector<std::size_t> indices() const {
    std::vector<std::size_t> out;
    for (std::uint64_t m = mask_; m != 0; m &= m - 1) out.push_back(static_cast<std::size_t>(std::countr_zero(m)));
    return out;
  }

  friend constexpr RaySet operator|(RaySet a, RaySet b) noexcept { return RaySet(a.mask_ | b.mask_); }
  friend constexpr RaySet operator&(RaySet a, RaySet b) noexcept { return RaySet(a.mask_ & b.mask_); }
  friend constexpr RaySet operator-(RaySet a, RaySet b) noexcept { return RaySet(a.mask_ & ~b.mask_); }
  friend constexpr bool operator==(RaySet, RaySet) noexcept = default;
  friend constexpr auto operator<=>(RaySet a, RaySet b) noexcept { return a.mask_ <=> b.mask_; }

 private:
  std::uint64_t mask_ = 0;
};

using IntVector = std::vector<std::int64_t>;

inline std::int64_t dot(std::span<const std::int64_t> a, std::span<const std::int64_t> b) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

/// A fan of simplicial full-dimensional maximal cones in N = Z^dim.
/// Construction checks structure only; smoothness and completeness are
/// reported by validate().
class Fan {
 public:
  Fan(std::size_t dim, std::vector<IntVector> rays, std::vector<std::vector<std::size_t>> max_cones)
      : dim_(dim), rays_(std::move(rays)) {
    if (rays_.size() > kMaxRays) throw Error(ErrorKind::MalformedInput, "more than 64 rays");
    for (std::size_t i = 0; i < rays_.size(); ++i) {
      const auto& u = rays_[i];
      if (u.size() != dim_) throw Error(ErrorKind::MalformedInput, "ray " + std::to_string(i) + " has wrong length");
      std::int64_t g = 0;
      for (auto x : u) g = std::gcd(g, x);
      if (g != 1) throw Error(ErrorKind::MalformedInput, "ray " + std::to_string(i) + " is not primitive");
      for (std::size_t j = 0; j < i; ++j)
        if (rays_[j] == u) throw Error(ErrorKind::MalformedInput, "duplicate ray " + std::to_string(i));
    }
    if (max_cones.empty()) throw Error(ErrorKind::MalformedInput, "fan has no maximal cones");
    RaySet used;
    for (auto& c : max_cones) {
      std::sort(c.begin(), c.end());
      if (c.size() != dim_) throw Error(ErrorKind::MalformedInput, "maximal cone of wrong size");
      if (std::adjacent_find(c.begin(), c.end()) != c.end())
        throw Error(ErrorKind::MalformedInput, "repeated ray in a cone");
      for (auto i : c)
        if (i >= rays_.size()) throw Error(ErrorKind::MalformedInput, "cone references a missing ray");
      const RaySet s = RaySet::from_indices(c);
      if (std::find(cones_.begin(), cones_.end(), s) != cones_.end())
        throw Error(ErrorKind::MalformedInput, "duplicate maximal cone");
      cones_.push_back(s);
      cone_rays_.push_back(c);
      used = used | s;
    }
    if (used != RaySet::first_n(rays_.size())) throw Error(ErrorKind::MalformedInput, "ray not used by any cone");
    for (std::size_t c = 0; c < cones_.size(); ++c) {
      Matrix<Integer> b(dim_, dim_);
      for (std::size_t j = 0; j < dim_; ++j)
        for (std::size_t i = 0; i < dim_; ++i) b(i, j) = Integer(static_cast<long>(rays_[cone_rays_[c][j]][i]));
      const Integer det = determinant(b);
      if (det == 0) throw Error(ErrorKind::MalformedInput, "maximal cone is not full-dimensional");
      dets_.push_back(det);
    }
  }

  std::size_t dim() const noexcept { return dim_; }
  std::size_t ray_count() const noexcept { return rays_.size(); }
  std::size_t cone_count() const noexcept { return cones_.size(); }
  const std::vector<IntVector>& rays() const noexcept { return rays_; }
  const IntVector& ray(std::size_t i) const { return rays_.at(i); }
  const std::vector<RaySet>& cones() const noexcept { return cones_; }
  RaySet cone(std::size_t c) const { return cones_.at(c); }
  /// Sorted ray indices of maximal cone c.
  const std::vector<std::size_t>& cone_rays(std::size_t c) const { return cone_rays_.at(c); }
  const Integer& cone_determinant(std::size_t c) const { return dets_.at(c); }
  RaySet all_rays() const { return RaySet::first_n(rays_.size()); }

  bool is_smooth() const {
    return std::all_of(dets_.begin(), dets_.end(), [](const Integer& d) { return abs(d) == 1; });
  }

  bool is_cone(RaySet tau) const {
    return std::any_of(cones_.begin(), cones_.end(), [&](RaySet s) { return tau.subset_of(s); });
  }

  /// Lowest-index maximal cone containing tau.
  std::optional<std::size_t> chart(RaySet tau) const {
    for (std::size_t c = 0; c < cones_.size(); ++c)
      if (tau.subset_of(cones_[c])) return c;
    return std::nullopt;
  }

  /// Rows m_i of the basis of M dual to the rays of a smooth cone, in cone_rays order.
  std::vector<IntVector> dual_basis(std::size_t c) const {
    if (abs(dets_.at(c)) != 1) throw Error(ErrorKind::NotSmooth, "cone " + std::to_string(c) + " is not unimodular");
    QMatrix b(dim_, dim_);
    for (std::size_t j = 0; j < dim_; ++j)
      for (std::size_t i = 0; i < dim_; ++i) b(i, j) = static_cast<long>(rays_[cone_rays_[c][j]][i]);
    const QMatrix inv = *inverse(b);
    std::vector<IntVector> out(dim_, IntVector(dim_));
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j) out[i][j] = to_int64(inv(i, j).get_num());
    return out;
  }

  friend bool operator==(const Fan& a, const Fan& b) {
    return a.dim_ == b.dim_ && a.rays_ == b.rays_ && a.cone_rays_ == b.cone_rays_;
  }

 private:
  std::size_t dim_;
  std::vector<IntVector> rays_;
  std::vector<RaySet> cones_;
  std::vector<std::vector<std::size_t>> cone_rays_;
  std::vector<Integer> dets_;
};

struct FanDiagnostics {
  bool smooth = false;
  bool complete = false;
  bool fan_axioms = false;
  /// Random directions all located in some cone; a redundant check on `complete`.
  bool point_location_consistent = false;

  bool ok() const { return smooth && complete && fan_axioms; }
};

namespace detail {

inline std::map<RaySet, std::vector<std::size_t>> facet_incidence(const Fan& f) {
  std::map<RaySet, std::vector<std::size_t>> inc;
  for (std::size_t c = 0; c < f.cone_count(); ++c)
    for (auto i : f.cone_rays(c)) {
      RaySet facet = f.cone(c);
      facet.erase(i);
      inc[facet].push_back(c);
    }
  return inc;
}

inline bool facets_closed_and_connected(const Fan& f) {
  if (f.dim() == 0) return f.cone_count() == 1;
  const auto inc = facet_incidence(f);
  for (const auto& [facet, cs] : inc)
    if (cs.size() != 2) return false;
  std::vector<std::vector<std::size_t>> adj(f.cone_count());
  for (const auto& [facet, cs] : inc) {
    adj[cs[0]].push_back(cs[1]);
    adj[cs[1]].push_back(cs[0]);
  }
  std::vector<bool> seen(f.cone_count(), false);
  std::queue<std::size_t> q;
  q.push(0);
  seen[0] = true;
  std::size_t count = 1;
  while (!q.empty()) {
    const auto c = q.front();
    q.pop();
    for (auto d : adj[c])
      if (!seen[d]) {
        seen[d] = true;
        ++count;
        q.push(d);
      }
  }
  return count == f.cone_count();
}

inline QMatrix cone_matrix(const Fan& f, std::size_t c) {
  QMatrix b(f.dim(), f.dim());
  for (std::size_t j = 0; j < f.dim(); ++j)
    for (std::size_t i = 0; i < f.dim(); ++i) b(i, j) = static_cast<long>(f.ray(f.cone_rays(c)[j])[i]);
  return b;
}

// Relative interiors of two full-dimensional simplicial cones meet iff
// B1 l = B2 m has a solution with l, m > 0.
inline bool interiors_meet(const Fan& f, std::size_t c1, std::size_t c2) {
  const std::size_t r = f.dim();
  if (r == 0) return true;
  QMatrix a(2 * r + 2 * r, 2 * r);
  std::vector<Rational> b(4 * r, Rational(0));
  std::vector<bool> strict(4 * r, false);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      const long x1 = static_cast<long>(f.ray(f.cone_rays(c1)[j])[i]);
      const long x2 = static_cast<long>(f.ray(f.cone_rays(c2)[j])[i]);
      a(i, j) = x1;
      a(i, r + j) = -x2;
      a(r + i, j) = -x1;
      a(r + i, r + j) = x2;
    }
  for (std::size_t j = 0; j < 2 * r; ++j) {
    a(2 * r + j, j) = -1;
    strict[2 * r + j] = true;
  }
  return lp_feasible_strict(a, b, strict).has_value();
}

}  // namespace detail

/// Smoothness (unimodular cones), completeness (every facet in exactly two
/// maximal cones and a connected wall graph) and the fan axiom (pairwise
/// disjoint relative interiors of maximal cones, one LP per pair).
inline FanDiagnostics validate(const Fan& f, std::uint64_t seed = 20240229) {
  FanDiagnostics d;
  d.smooth = f.is_smooth();
  d.complete = detail::facets_closed_and_connected(f);
  d.fan_axioms = true;
  for (std::size_t i = 0; i < f.cone_count() && d.fan_axioms; ++i)
    for (std::size_t j = i + 1; j < f.cone_count(); ++j)
      if (detail::interiors_meet(f, i, j)) {
        d.fan_axioms = false;
        break;
      }
  std::vector<QMatrix> inv;
  for (std::size_t c = 0; c < f.cone_count(); ++c) inv.push_back(*inverse(detail::cone_matrix(f, c)));
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> coord(-97, 97);
  bool all_located = true;
  for (int trial = 0; trial < 16 && f.dim() > 0; ++trial) {
    std::vector<Rational> v(f.dim());
    bool nonzero = false;
    for (auto& x : v) {
      x = coord(rng);
      nonzero = nonzero || x != 0;
    }
    if (!nonzero) continue;
    bool located = false;
    for (std::size_t c = 0; c < f.cone_count() && !located; ++c) {
      bool inside = true;
      for (std::size_t i = 0; i < f.dim() && inside; ++i) {
        Rational s = 0;
        for (std::size_t j = 0; j < f.dim(); ++j) s += inv[c](i, j) * v[j];
        inside = s >= 0;
      }
      located = inside;
    }
    all_located = all_located && located;
  }
  d.point_location_consistent = d.complete == all_located;
  return d;
}

/// A codimension-one cone tau shared by maximal cones sigma and sigma_prime.
struct Wall {
  RaySet tau;
  std::size_t sigma = 0;
  std::size_t sigma_prime = 0;
  std::size_t u_extra = 0;        // ray of sigma outside tau
  std::size_t u_extra_prime = 0;  // ray of sigma_prime outside tau
};

inline std::vector<Wall> walls(const Fan& f) {
  std::vector<Wall> out;
  if (f.dim() == 0) return out;
  for (const auto& [facet, cs] : detail::facet_incidence(f)) {
    if (cs.size() != 2)
      throw Error(ErrorKind::NotComplete, "a facet lies in " + std::to_string(cs.size()) + " maximal cones");
    Wall w;
    w.tau = facet;
    w.sigma = cs[0];
    w.sigma_prime = cs[1];
    w.u_extra = (f.cone(cs[0]) - facet).indices().front();
    w.u_extra_prime = (f.cone(cs[1]) - facet).indices().front();
    out.push_back(w);
  }
  return out;
}

inline void require_smooth(const Fan& f) {
  if (!f.is_smooth()) throw Error(ErrorKind::NotSmooth, "fan is not smooth");
}

/// Star subdivision at the cone tau (|tau| >= 2): adds the ray Σ_{ρ∈tau} u_ρ
/// as the last ray and splits every maximal cone containing tau.
inline Fan star_subdivision(const Fan& f, RaySet tau) {
  require_smooth(f);
  if (tau.empty()) throw Error(ErrorKind::MalformedInput, "cannot subdivide the zero cone");
  if (!f.is_cone(tau)) throw Error(ErrorKind::NotACone, "rays do not span a cone of the fan");
  if (tau.size() == 1) throw Error(ErrorKind::DuplicateRay, "subdividing a ray would duplicate it");
  IntVector u(f.dim(), 0);
  for (auto i : tau.indices())
    for (std::size_t k = 0; k < f.dim(); ++k) u[k] += f.ray(i)[k];
  std::int64_t g = 0;
  for (auto x : u) g = std::gcd(g, x);
  for (auto& x : u) x /= g;
  for (const auto& v : f.rays())
    if (v == u) throw Error(ErrorKind::DuplicateRay, "subdivision ray already present");
  std::vector<IntVector> rays = f.rays();
  rays.push_back(u);
  const std::size_t fresh = f.ray_count();
  std::vector<std::vector<std::size_t>> cones;
  for (std::size_t c = 0; c < f.cone_count(); ++c) {
    if (!tau.subset_of(f.cone(c))) {
      cones.push_back(f.cone_rays(c));
      continue;
    }
    for (auto drop : tau.indices()) {
      std::vector<std::size_t> cone;
      for (auto i : f.cone_rays(c))
        if (i != drop) cone.push_back(i);
      cone.push_back(fresh);
      cones.push_back(std::move(cone));
    }
  }
  return Fan(f.dim(), std::move(rays), std::move(cones));
}

/// The fan of a point: dimension 0, one (empty) maximal cone.
/// Exact textual content of a fan, usable as a map key.
inline std::string fan_key(const Fan& f) {
  std::string out = std::to_string(f.dim()) + "|";
  for (const auto& u : f.rays()) {
    for (auto x : u) out += std::to_string(x) + ",";
    out += ";";
  }
  out += "|";
  for (const auto& c : f.cones()) out += std::to_string(c.mask()) + ";";
  return out;
}

/// FNV-1a over fan_key.
inline std::uint64_t fan_hash(const Fan& f) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : fan_key(f)) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

inline Fan point_fan() { return Fan(0, {}, std::vector<std::vector<std::size_t>>(1)); }

/// Orbit closure V(tau) as a fan in N / span(tau), with the bookkeeping that
/// relates its rays to the rays of the ambient fan.
struct StratumFan {
  Fan fan;
  RaySet tau;
  /// Ambient index of each stratum ray; ascending.
  std::vector<std::size_t> ambient_ray;
  /// Projection N -> N(tau) as a (dim - |tau|) x dim integer matrix.
  std::vector<IntVector> projection;

  std::optional<std::size_t> local_index(std::size_t ambient) const {
    auto it = std::lower_bound(ambient_ray.begin(), ambient_ray.end(), ambient);
    if (it == ambient_ray.end() || *it != ambient) return std::nullopt;
    return static_cast<std::size_t>(it - ambient_ray.begin());
  }

  RaySet to_local(RaySet ambient) const {
    RaySet out;
    for (auto i : ambient.indices())
      if (auto l = local_index(i)) out.insert(*l);
    return out;
  }

  RaySet to_ambient(RaySet local) const {
    RaySet out;
    for (auto i : local.indices()) out.insert(ambient_ray.at(i));
    return out;
  }
};

/// Rays adjacent to tau: those rho not in tau with tau ∪ {rho} a cone.
inline RaySet adjacent_rays(const Fan& f, RaySet tau) {
  RaySet out;
  for (std::size_t c = 0; c < f.cone_count(); ++c)
    if (tau.subset_of(f.cone(c))) out = out | (f.cone(c) - tau);
  return out;
}

inline StratumFan stratum_fan(const Fan& f, RaySet tau) {
  require_smooth(f);
  const auto chart = f.chart(tau);
  if (!chart) throw Error(ErrorKind::NotACone, "rays do not span a cone of the fan");
  const std::size_t r = f.dim();
  const std::size_t k = tau.size();
  if (k == 0) {
    std::vector<IntVector> id(r, IntVector(r, 0));
    for (std::size_t i = 0; i < r; ++i) id[i][i] = 1;
    return StratumFan{f, tau, f.all_rays().indices(), std::move(id)};
  }
  // Basis of N: rays of tau, then the remaining rays of the chart.
  std::vector<std::size_t> basis = tau.indices();
  for (auto i : (f.cone(*chart) - tau).indices()) basis.push_back(i);
  QMatrix b(r, r);
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t i = 0; i < r; ++i) b(i, j) = static_cast<long>(f.ray(basis[j])[i]);
  const QMatrix inv = *inverse(b);
  std::vector<IntVector> proj(r - k, IntVector(r));
  for (std::size_t i = k; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) proj[i - k][j] = to_int64(inv(i, j).get_num());

  StratumFan out{point_fan(), tau, adjacent_rays(f, tau).indices(), proj};
  std::vector<IntVector> rays;
  for (auto i : out.ambient_ray) {
    IntVector v(r - k);
    for (std::size_t a = 0; a < r - k; ++a) v[a] = dot(proj[a], f.ray(i));
    rays.push_back(std::move(v));
  }
  std::vector<std::vector<std::size_t>> cones;
  for (std::size_t c = 0; c < f.cone_count(); ++c) {
    if (!tau.subset_of(f.cone(c))) continue;
    std::vector<std::size_t> cone;
    for (auto i : (f.cone(c) - tau).indices()) cone.push_back(*out.local_index(i));
    cones.push_back(std::move(cone));
  }
  out.fan = Fan(r - k, std::move(rays), std::move(cones));
  return out;
}

// ---------------------------------------------------------------------------
// Standard families

inline Fan projective_space(std::size_t r) {
  if (r == 0) throw Error(ErrorKind::DomainError, "projective space needs dimension >= 1");
  std::vector<IntVector> rays;
  for (std::size_t i = 0; i < r; ++i) {
    IntVector e(r, 0);
    e[i] = 1;
    rays.push_back(e);
  }
  rays.push_back(IntVector(r, -1));
  std::vector<std::vector<std::size_t>> cones;
  for (std::size_t k = 0; k <= r; ++k) {
    std::vector<std::size_t> c;
    for (std::size_t j = 0; j < r; ++j) c.push_back((k + j) % (r + 1));
    cones.push_back(c);
  }
  return Fan(r, std::move(rays), std::move(cones));
}

inline Fan hirzebruch(std::int64_t a) {
  return Fan(2, {{1, 0}, {0, 1}, {-1, a}, {0, -1}}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
}

inline Fan product(const Fan& f1, const Fan& f2) {
  const std::size_t r1 = f1.dim(), r2 = f2.dim();
  std::vector<IntVector> rays;
  for (const auto& u : f1.rays()) {
    IntVector v(u);
    v.resize(r1 + r2, 0);
    rays.push_back(v);
  }
  for (const auto& u : f2.rays()) {
    IntVector v(r1, 0);
    v.insert(v.end(), u.begin(), u.end());
    rays.push_back(v);
  }
  std::vector<std::vector<std::size_t>> cones;
  for (std::size_t a = 0; a < f1.cone_count(); ++a)
    for (std::size_t b = 0; b < f2.cone_count(); ++b) {
      std::vector<std::size_t> c = f1.cone_rays(a);
      for (auto i : f2.cone_rays(b)) c.push_back(f1.ray_count() + i);
      cones.push_back(c);
    }
  return Fan(r1 + r2, std::move(rays), std::move(cones));
}

namespace detail {

class FamilyParser {
 public:
  explicit FamilyParser(std::string_view s) : s_(s) {}

  Fan parse_all() {
    Fan f = parse();
    skip();
    if (pos_ != s_.size()) fail("trailing input");
    return f;
  }

 private:
  Fan parse() {
    skip();
    std::string name;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      name += s_[pos_++];
    expect('(');
    if (name == "product") {
      Fan a = parse();
      expect(',');
      Fan b = parse();
      expect(')');
      return product(a, b);
    }
    const std::int64_t n = number();
    expect(')');
    if (name == "projective_space") {
      if (n < 1) throw Error(ErrorKind::DomainError, "projective_space needs dimension >= 1");
      return projective_space(static_cast<std::size_t>(n));
    }
    if (name == "hirzebruch") return hirzebruch(n);
    throw Error(ErrorKind::UnknownFamily, "unknown fan family '" + name + "'");
  }

  std::int64_t number() {
    skip();
    std::string digits;
    if (pos_ < s_.size() && s_[pos_] == '-') digits += s_[pos_++];
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) digits += s_[pos_++];
    if (digits.empty() || digits == "-") fail("expected an integer");
    return std::stoll(digits);
  }

  void expect(char c) {
    skip();
    if (pos_ >= s_.size() || s_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorKind::MalformedInput, why + " at offset " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Builds a standard fan from an expression such as "projective_space(2)",
/// "hirzebruch(1)" or "product(projective_space(1),projective_space(1))".
inline Fan builtin(std::string_view expr) { return detail::FamilyParser(expr).parse_all(); }

}  // namespace toricbott
