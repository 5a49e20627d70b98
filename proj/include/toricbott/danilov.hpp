#pragma once

// Equivariant cohomology of Ω^p(log D') ⊗ O(T) on a smooth complete toric
// variety, one character at a time, through the alternating Čech complex of
// the affine cover by maximal cones.
//
// Sections over U_τ of weight m live in ∧^p M_Q (dlog frame). With margins
// c_ρ = <m,u_ρ> + t_ρ they are zero unless c_ρ >= 0 for all ρ in τ, and then
// they are the forms killed by contraction with u_ρ for every ρ in τ with
// c_ρ = 0 and ρ outside the log set.

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "toricbott/divisors.hpp"
#include "toricbott/error.hpp"
#include "toricbott/exactmath.hpp"
#include "toricbott/fan.hpp"

namespace toricbott {

struct LogFormSheafSpec {
  std::size_t p = 0;
  RaySet logset;
  IntVector twist;

  friend bool operator==(const LogFormSheafSpec&, const LogFormSheafSpec&) = default;
};

/// Weight m and its margins c_ρ = <m,u_ρ> + t_ρ.
struct WeightConditions {
  IntVector weight;
  IntVector margins;
};

inline WeightConditions weight_conditions(const Fan& f, const IntVector& twist, const IntVector& m) {
  if (m.size() != f.dim()) throw Error(ErrorKind::MalformedInput, "weight has the wrong length");
  if (twist.size() != f.ray_count()) throw Error(ErrorKind::MalformedInput, "twist has the wrong length");
  WeightConditions w{m, IntVector(f.ray_count())};
  for (std::size_t i = 0; i < f.ray_count(); ++i) w.margins[i] = dot(m, f.ray(i)) + twist[i];
  return w;
}

struct CohomologyResult {
  std::vector<std::size_t> dims;
  std::map<IntVector, std::vector<std::size_t>> weight_support;
  std::int64_t euler = 0;

  bool higher_vanish() const {
    for (std::size_t k = 1; k < dims.size(); ++k)
      if (dims[k] != 0) return false;
    return true;
  }
  friend bool operator==(const CohomologyResult&, const CohomologyResult&) = default;
};

inline std::int64_t alternating_sum(const std::vector<std::size_t>& h) {
  std::int64_t e = 0;
  for (std::size_t k = 0; k < h.size(); ++k) e += (k % 2 == 0 ? 1 : -1) * static_cast<std::int64_t>(h[k]);
  return e;
}

inline void validate_spec(const Fan& f, const LogFormSheafSpec& s) {
  if (s.p > f.dim()) throw Error(ErrorKind::MalformedInput, "form degree exceeds the dimension");
  if (!s.logset.subset_of(f.all_rays())) throw Error(ErrorKind::MalformedInput, "log set has rays outside the fan");
  if (s.twist.size() != f.ray_count())
    throw Error(ErrorKind::MalformedInput, "twist has " + std::to_string(s.twist.size()) + " coefficients, fan has " +
                                               std::to_string(f.ray_count()) + " rays");
}

namespace detail {

/// Bitmasks of the k-element subsets of {0..n-1}, ascending.
inline std::vector<std::uint64_t> combinations(std::size_t n, std::size_t k) {
  std::vector<std::uint64_t> out;
  if (k > n) return out;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m)
    if (static_cast<std::size_t>(std::popcount(m)) == k) out.push_back(m);
  return out;
}

inline std::vector<std::size_t> bits_of(std::uint64_t m) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; m != 0; ++i, m >>= 1)
    if (m & 1U) out.push_back(i);
  return out;
}

/// Margin class of one ray; zero margins on log rays impose nothing and are
/// folded into Positive.
enum class Margin : std::uint8_t { Negative = 0, Zero = 1, Positive = 2 };

using Pattern = std::string;

}  // namespace detail

/// Basis of the weight-m sections over U_tau, given as index sets into the
/// rays of `chart` (bit i = i-th ray of the chart in ascending order).
struct SectionSpace {
  std::size_t chart = 0;
  std::vector<std::uint64_t> index_sets;
};

inline SectionSpace weight_sections(const Fan& f, const LogFormSheafSpec& s, RaySet tau, const IntVector& m,
                                    std::optional<std::size_t> chart = std::nullopt) {
  require_smooth(f);
  validate_spec(f, s);
  const auto own = f.chart(tau);
  if (!own) throw Error(ErrorKind::NotACone, "rays do not span a cone of the fan");
  const std::size_t c = chart.value_or(*own);
  if (c >= f.cone_count() || !tau.subset_of(f.cone(c)))
    throw Error(ErrorKind::NotACone, "chart does not contain the cone");
  const auto w = weight_conditions(f, s.twist, m);
  SectionSpace out{c, {}};
  std::uint64_t forbidden = 0;
  const auto& rays = f.cone_rays(c);
  for (std::size_t i = 0; i < rays.size(); ++i) {
    if (!tau.contains(rays[i])) continue;
    const auto cr = w.margins[rays[i]];
    if (cr < 0) return out;
    if (cr == 0 && !s.logset.contains(rays[i])) forbidden |= std::uint64_t{1} << i;
  }
  for (auto idx : detail::combinations(f.dim(), s.p))
    if ((idx & forbidden) == 0) out.index_sets.push_back(idx);
  return out;
}

/// Rows: the section basis written in the standard basis of ∧^p M_Q
/// (coordinates indexed by detail::combinations(dim, p)).
inline QMatrix wedge_coordinates(const Fan& f, const SectionSpace& s, std::size_t p) {
  const auto dual = f.dual_basis(s.chart);
  const auto std_sets = detail::combinations(f.dim(), p);
  QMatrix out(s.index_sets.size(), std_sets.size());
  for (std::size_t a = 0; a < s.index_sets.size(); ++a) {
    const auto rows = detail::bits_of(s.index_sets[a]);
    for (std::size_t b = 0; b < std_sets.size(); ++b) {
      const auto cols = detail::bits_of(std_sets[b]);
      Matrix<Integer> minor(p, p);
      for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < p; ++j) minor(i, j) = static_cast<long>(dual[rows[i]][cols[j]]);
      out(a, b) = Rational(determinant(minor));
    }
  }
  return out;
}

enum class WeightMode { Chamber, Box };

struct EngineOptions {
  WeightMode mode = WeightMode::Chamber;
  /// Half-width N of the brute-force box [-N, N]^r.
  std::int64_t box_bound = -1;
  /// Whether results carry the per-weight support.
  bool collect_weights = true;
};

/// Integer box [lo, hi] (per coordinate).
struct WeightBox {
  IntVector lo;
  IntVector hi;

  bool contains(const WeightBox& o) const {
    for (std::size_t i = 0; i < lo.size(); ++i)
      if (o.lo[i] < lo[i] || o.hi[i] > hi[i]) return false;
    return true;
  }
};

/// Cohomology engine for one fan. Caches pattern complexes, chamber
/// boundedness and results per divisor class. Not thread-safe; use one
/// engine per thread.
class CohomologyEngine {
 public:
  static constexpr std::size_t kMaxCones = 20;

  explicit CohomologyEngine(Fan f) : fan_(std::move(f)) {
    require_smooth(fan_);
    r_ = fan_.dim();
    n_ = fan_.ray_count();
    cones_ = fan_.cone_count();
    if (cones_ > kMaxCones)
      throw Error(ErrorKind::DomainError, "Čech cover with " + std::to_string(cones_) + " charts is too large");
    for (std::size_t c = 0; c < cones_; ++c) duals_.push_back(fan_.dual_basis(c));
    const std::size_t subsets = std::size_t{1} << cones_;
    tau_.assign(subsets, RaySet());
    chart_.assign(subsets, 0);
    by_size_.assign(cones_ + 1, {});
    for (std::size_t s = 1; s < subsets; ++s) {
      RaySet t = fan_.all_rays();
      for (auto c : detail::bits_of(s)) t = t & fan_.cone(c);
      tau_[s] = t;
      chart_[s] = *fan_.chart(t);
      by_size_[static_cast<std::size_t>(std::popcount(s))].push_back(s);
    }
    for (std::size_t p = 0; p <= r_; ++p) combos_.push_back(detail::combinations(r_, p));
    guard_done_.assign(r_ + 1, false);
    for (auto idx : detail::combinations(n_, r_)) {
      const auto rays = detail::bits_of(idx);
      QMatrix u(r_, r_);
      for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = 0; j < r_; ++j) u(i, j) = static_cast<long>(fan_.ray(rays[i])[j]);
      if (auto inv = inverse(u)) vertex_systems_.push_back({rays, std::move(*inv)});
    }
  }

  const Fan& fan() const noexcept { return fan_; }
  std::size_t patterns_cached() const noexcept { return pattern_cache_.size(); }

  CohomologyResult compute(const LogFormSheafSpec& s, const EngineOptions& opt = {}) {
    validate_spec(fan_, s);
    CohomologyResult out = opt.mode == WeightMode::Box ? compute_box(s, opt.box_bound)
                                                       : compute_chamber(s, opt.collect_weights);
    if (!opt.collect_weights) out.weight_support.clear();
    return out;
  }

  /// Per-degree dims at one weight, from a freshly assembled complex.
  std::vector<std::size_t> weight_cohomology(const LogFormSheafSpec& s, const IntVector& m) {
    validate_spec(fan_, s);
    if (s.p > r_) return std::vector<std::size_t>(r_ + 1, 0);
    return complex_cohomology(s.p, pattern_at(s, m));
  }

  /// Bounding box of every vertex of the arrangement {c_ρ = -1, 0, 1}; it
  /// holds every weight lying in a bounded margin chamber.
  WeightBox vertex_box(const IntVector& twist) const {
    WeightBox box{IntVector(r_, 0), IntVector(r_, 0)};
    bool first = true;
    std::vector<Rational> b(r_);
    for (const auto& [rays, inv] : vertex_systems_) {
      std::vector<int> k(r_, -1);
      while (true) {
        for (std::size_t i = 0; i < r_; ++i) b[i] = k[i] - twist[rays[i]];
        for (std::size_t j = 0; j < r_; ++j) {
          Rational x = 0;
          for (std::size_t i = 0; i < r_; ++i) x += inv(j, i) * b[i];
          const auto lo = to_int64(floor_of(x));
          const auto hi = to_int64(ceil_of(x));
          if (first || lo < box.lo[j]) box.lo[j] = lo;
          if (first || hi > box.hi[j]) box.hi[j] = hi;
        }
        first = false;
        std::size_t i = 0;
        while (i < r_ && k[i] == 1) k[i++] = -1;
        if (i == r_) break;
        ++k[i];
      }
    }
    return box;
  }

  WeightBox symmetric_box(std::int64_t n) const { return {IntVector(r_, -n), IntVector(r_, n)}; }

  /// Whether the recession cone of a margin pattern is {0}.
  bool pattern_bounded(const detail::Pattern& pat) {
    if (auto it = bounded_cache_.find(pat); it != bounded_cache_.end()) return it->second;
    std::vector<std::vector<Rational>> rows;
    for (std::size_t i = 0; i < n_; ++i) {
      std::vector<Rational> u(r_);
      for (std::size_t j = 0; j < r_; ++j) u[j] = static_cast<long>(fan_.ray(i)[j]);
      std::vector<Rational> neg(r_);
      for (std::size_t j = 0; j < r_; ++j) neg[j] = -u[j];
      const auto m = static_cast<detail::Margin>(pat[i]);
      if (m != detail::Margin::Positive) rows.push_back(u);
      if (m != detail::Margin::Negative) rows.push_back(neg);
    }
    const bool out = r_ == 0 || recession_cone_trivial(QMatrix::from_rows(rows));
    bounded_cache_.emplace(pat, out);
    return out;
  }

  detail::Pattern pattern_at(const LogFormSheafSpec& s, const IntVector& m) const {
    detail::Pattern pat(n_, '\0');
    for (std::size_t i = 0; i < n_; ++i) {
      const auto c = dot(m, fan_.ray(i)) + s.twist[i];
      detail::Margin k = c < 0 ? detail::Margin::Negative : c == 0 ? detail::Margin::Zero : detail::Margin::Positive;
      if (k == detail::Margin::Zero && s.logset.contains(i)) k = detail::Margin::Positive;
      pat[i] = static_cast<char>(k);
    }
    return pat;
  }

  /// Assembles the Čech complex of a pattern.
  IntChainComplex pattern_complex(std::size_t p, const detail::Pattern& pat) {
    std::vector<std::vector<std::size_t>> basis(tau_.size());
    std::map<RaySet, std::vector<std::size_t>> by_tau;
    for (std::size_t s = 1; s < tau_.size(); ++s) {
      auto it = by_tau.find(tau_[s]);
      if (it == by_tau.end()) it = by_tau.emplace(tau_[s], allowed(p, pat, tau_[s], chart_[s])).first;
      basis[s] = it->second;
    }
    std::vector<std::size_t> dims(cones_, 0);
    std::vector<std::size_t> offset(tau_.size(), 0);
    for (std::size_t j = 0; j < cones_; ++j)
      for (auto s : by_size_[j + 1]) {
        offset[s] = dims[j];
        dims[j] += basis[s].size();
      }
    std::vector<IMatrix> d;
    for (std::size_t j = 0; j + 1 < cones_; ++j) {
      IMatrix m(dims[j + 1], dims[j]);
      for (auto big : by_size_[j + 2]) {
        if (basis[big].empty()) continue;
        const auto members = detail::bits_of(big);
        for (std::size_t i = 0; i < members.size(); ++i) {
          const std::size_t small = big & ~(std::size_t{1} << members[i]);
          if (basis[small].empty()) continue;
          const long sign = i % 2 == 0 ? 1 : -1;
          const auto& g = compound(chart_[small], chart_[big], p);
          const std::size_t width = combos_[p].size();
          for (std::size_t a = 0; a < basis[small].size(); ++a)
            for (std::size_t b = 0; b < basis[big].size(); ++b) {
              const auto v = g[basis[small][a] * width + basis[big][b]];
              if (v != 0) m(offset[big] + b, offset[small] + a) = sign * v;
            }
          check_restriction(p, pat, small, big);
        }
      }
      d.push_back(std::move(m));
    }
    return IntChainComplex(dims, std::move(d));
  }

 private:
  struct VertexSystem {
    std::vector<std::size_t> rays;
    QMatrix inverse;
  };

  /// Combination indices (into combos_[p]) spanning the sections over tau.
  std::vector<std::size_t> allowed(std::size_t p, const detail::Pattern& pat, RaySet tau, std::size_t chart) const {
    std::vector<std::size_t> out;
    std::uint64_t forbidden = 0;
    const auto& rays = fan_.cone_rays(chart);
    for (std::size_t i = 0; i < rays.size(); ++i) {
      if (!tau.contains(rays[i])) continue;
      const auto m = static_cast<detail::Margin>(pat[rays[i]]);
      if (m == detail::Margin::Negative) return out;
      if (m == detail::Margin::Zero) forbidden |= std::uint64_t{1} << i;
    }
    for (std::size_t k = 0; k < combos_[p].size(); ++k)
      if ((combos_[p][k] & forbidden) == 0) out.push_back(k);
    return out;
  }

  /// p-th compound of the change of dual basis from chart a to chart b:
  /// entry [I][J] is the coefficient of m^b_J in m^a_I.
  const std::vector<long>& compound(std::size_t a, std::size_t b, std::size_t p) {
    const auto key = std::make_tuple(a, b, p);
    if (auto it = compound_cache_.find(key); it != compound_cache_.end()) return it->second;
    const auto& rb = fan_.cone_rays(b);
    std::vector<IntVector> g(r_, IntVector(r_));
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < r_; ++j) g[i][j] = dot(duals_[a][i], fan_.ray(rb[j]));
    const auto& sets = combos_[p];
    std::vector<long> out(sets.size() * sets.size());
    for (std::size_t x = 0; x < sets.size(); ++x) {
      const auto rows = detail::bits_of(sets[x]);
      for (std::size_t y = 0; y < sets.size(); ++y) {
        const auto cols = detail::bits_of(sets[y]);
        Matrix<Integer> minor(p, p);
        for (std::size_t i = 0; i < p; ++i)
          for (std::size_t j = 0; j < p; ++j) minor(i, j) = static_cast<long>(g[rows[i]][cols[j]]);
        out[x * sets.size() + y] = to_int64(determinant(minor));
      }
    }
    return compound_cache_.emplace(key, std::move(out)).first->second;
  }

  /// The image of the sections over a larger cone must lie in the sections
  /// over the smaller one; this holds because the section space is intrinsic.
  void check_restriction(std::size_t p, const detail::Pattern& pat, std::size_t small, std::size_t big) {
    const auto key = std::make_tuple(tau_[small], tau_[big], p, pat);
    if (!checked_.insert(key).second) return;
    const auto src = allowed(p, pat, tau_[small], chart_[small]);
    const auto dst = allowed(p, pat, tau_[big], chart_[big]);
    const auto& g = compound(chart_[small], chart_[big], p);
    const std::size_t width = combos_[p].size();
    for (auto a : src)
      for (std::size_t b = 0; b < width; ++b)
        if (g[a * width + b] != 0 && !std::binary_search(dst.begin(), dst.end(), b))
          throw Error(ErrorKind::Internal, "restriction leaves the section space");
  }

  std::vector<std::size_t> complex_cohomology(std::size_t p, const detail::Pattern& pat) {
    const IntChainComplex c = pattern_complex(p, pat);
    bool empty = true;
    for (auto x : c.term_dims()) empty = empty && x == 0;
    std::vector<std::size_t> h = empty ? std::vector<std::size_t>(cones_, 0) : cohomology_dims(c);
    for (std::size_t k = r_ + 1; k < h.size(); ++k)
      if (h[k] != 0) throw Error(ErrorKind::Internal, "Čech cohomology above the dimension");
    h.resize(r_ + 1, 0);
    return h;
  }

  const std::vector<std::size_t>& pattern_cohomology(std::size_t p, const detail::Pattern& pat) {
    std::string key(1, static_cast<char>(p));
    key += pat;
    if (auto it = pattern_cache_.find(key); it != pattern_cache_.end()) return it->second;
    return pattern_cache_.emplace(std::move(key), complex_cohomology(p, pat)).first->second;
  }

  static bool nonzero(const std::vector<std::size_t>& h) {
    return std::any_of(h.begin(), h.end(), [](std::size_t x) { return x != 0; });
  }

  /// Every pattern with a nontrivial recession cone must have zero
  /// cohomology; otherwise some twist would have infinitely many weights.
  void run_guard(std::size_t p) {
    if (guard_done_[p]) return;
    detail::Pattern pat(n_, static_cast<char>(detail::Margin::Negative));
    while (true) {
      if (!pattern_bounded(pat) && nonzero(pattern_cohomology(p, pat)))
        throw Error(ErrorKind::UnboundedCohomologyChamber, "unbounded margin chamber carries cohomology");
      std::size_t i = 0;
      while (i < n_ && pat[i] == static_cast<char>(detail::Margin::Positive))
        pat[i++] = static_cast<char>(detail::Margin::Negative);
      if (i == n_) break;
      ++pat[i];
    }
    guard_done_[p] = true;
  }

  template <class Fn>
  void for_each_weight(const WeightBox& box, Fn&& fn) const {
    IntVector m = box.lo;
    for (std::size_t j = 0; j < r_; ++j)
      if (box.lo[j] > box.hi[j]) return;
    while (true) {
      fn(m);
      std::size_t j = 0;
      while (j < r_ && m[j] == box.hi[j]) {
        m[j] = box.lo[j];
        ++j;
      }
      if (j == r_) break;
      ++m[j];
    }
  }

  static CohomologyResult zero_result(std::size_t r) { return {std::vector<std::size_t>(r + 1, 0), {}, 0}; }

  static void add_weight(CohomologyResult& res, const IntVector& m, const std::vector<std::size_t>& h) {
    for (std::size_t k = 0; k < h.size(); ++k) res.dims[k] += h[k];
    res.weight_support.emplace(m, h);
  }

  CohomologyResult compute_chamber(const LogFormSheafSpec& s, bool weights) {
    if (s.p > r_) return zero_result(r_);
    // Move T within its class so that it vanishes on the rays of chart 0;
    // weights shift by the Cartier covector m0.
    IntVector m0(r_, 0);
    IntVector t = s.twist;
    if (r_ > 0) {
      for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = 0; j < r_; ++j) m0[j] -= s.twist[fan_.cone_rays(0)[i]] * duals_[0][i][j];
      for (std::size_t i = 0; i < n_; ++i) t[i] += dot(m0, fan_.ray(i));
    }
    const auto key = std::make_tuple(s.p, s.logset, t);
    auto it = class_cache_.find(key);
    if (it == class_cache_.end()) {
      run_guard(s.p);
      const LogFormSheafSpec normal{s.p, s.logset, t};
      CohomologyResult res = zero_result(r_);
      for_each_weight(vertex_box(t), [&](const IntVector& m) {
        const auto pat = pattern_at(normal, m);
        const auto& h = pattern_cohomology(s.p, pat);
        if (!nonzero(h)) return;
        if (!pattern_bounded(pat))
          throw Error(ErrorKind::UnboundedCohomologyChamber, "unbounded margin chamber carries cohomology");
        add_weight(res, m, h);
      });
      res.euler = alternating_sum(res.dims);
      it = class_cache_.emplace(key, std::move(res)).first;
    }
    CohomologyResult out{it->second.dims, {}, it->second.euler};
    if (!weights) return out;
    for (const auto& [m, h] : it->second.weight_support) {
      IntVector w = m;
      for (std::size_t j = 0; j < r_; ++j) w[j] += m0[j];
      out.weight_support.emplace(std::move(w), h);
    }
    return out;
  }

  CohomologyResult compute_box(const LogFormSheafSpec& s, std::int64_t n) {
    if (n < 0) throw Error(ErrorKind::MalformedInput, "box mode needs an explicit bound N >= 0");
    if (s.p > r_) return zero_result(r_);
    CohomologyResult res = zero_result(r_);
    for_each_weight(symmetric_box(n), [&](const IntVector& m) {
      const auto h = complex_cohomology(s.p, pattern_at(s, m));
      if (nonzero(h)) add_weight(res, m, h);
    });
    res.euler = alternating_sum(res.dims);
    return res;
  }

  Fan fan_;
  std::size_t r_ = 0;
  std::size_t n_ = 0;
  std::size_t cones_ = 0;
  std::vector<std::vector<IntVector>> duals_;
  std::vector<RaySet> tau_;
  std::vector<std::size_t> chart_;
  std::vector<std::vector<std::size_t>> by_size_;
  std::vector<std::vector<std::uint64_t>> combos_;
  std::vector<VertexSystem> vertex_systems_;
  std::vector<bool> guard_done_;
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::vector<long>> compound_cache_;
  std::unordered_map<std::string, std::vector<std::size_t>> pattern_cache_;
  std::unordered_map<std::string, bool> bounded_cache_;
  std::set<std::tuple<RaySet, RaySet, std::size_t, detail::Pattern>> checked_;
  std::map<std::tuple<std::size_t, RaySet, IntVector>, CohomologyResult> class_cache_;
};

/// One engine per distinct fan.
class EnginePool {
 public:
  CohomologyEngine& engine(const Fan& f) {
    auto key = fan_key(f);
    auto it = engines_.find(key);
    if (it == engines_.end()) it = engines_.emplace(std::move(key), std::make_unique<CohomologyEngine>(f)).first;
    return *it->second;
  }

 private:
  std::map<std::string, std::unique_ptr<CohomologyEngine>> engines_;
};

inline CohomologyResult cech_cohomology(const Fan& f, const LogFormSheafSpec& s, const EngineOptions& opt = {}) {
  return CohomologyEngine(f).compute(s, opt);
}

/// spec(p, dprime, L - dprime).
inline LogFormSheafSpec theorem_spec(std::size_t p, RaySet dprime, const InvariantDivisor& l) {
  auto t = l.to_ints();
  for (auto i : dprime.indices()) t.at(i) -= 1;
  return {p, dprime, std::move(t)};
}

struct VanishingReport {
  bool pass = false;
  bool unchecked = false;
  std::optional<std::vector<Rational>> witness;
  /// Cohomology of spec(p, D', L - D') for p = 0..r.
  std::vector<CohomologyResult> per_p;
};

/// Checks that a witness d satisfies 0 <= d <= 1 and L - Σ d_j D_j ample.
inline bool witness_valid(const Fan& f, const InvariantDivisor& l, RaySet dprime, const std::vector<Rational>& d) {
  if (d.size() != dprime.size()) return false;
  for (const auto& x : d)
    if (x < 0 || x > 1) return false;
  return is_ample(f, residual_divisor(l, dprime, d));
}

inline VanishingReport verify_vanishing(CohomologyEngine& e, RaySet dprime, const InvariantDivisor& l,
                                        const std::optional<std::vector<Rational>>& witness, bool unchecked = false) {
  const Fan& f = e.fan();
  require_divisor_on(f, l);
  if (!unchecked) {
    if (!witness) throw Error(ErrorKind::HypothesisNotVerified, "no hypothesis witness supplied");
    if (!witness_valid(f, l, dprime, *witness))
      throw Error(ErrorKind::HypothesisNotVerified, "supplied witness does not make the residual ample");
  }
  VanishingReport rep{true, unchecked, witness, {}};
  for (std::size_t p = 0; p <= f.dim(); ++p) {
    rep.per_p.push_back(e.compute(theorem_spec(p, dprime, l)));
    rep.pass = rep.pass && rep.per_p.back().higher_vanish();
  }
  return rep;
}

inline VanishingReport verify_vanishing(const Fan& f, RaySet dprime, const InvariantDivisor& l,
                                        const std::optional<std::vector<Rational>>& witness, bool unchecked = false) {
  CohomologyEngine e(f);
  return verify_vanishing(e, dprime, l, witness, unchecked);
}

struct HodgeCountReport {
  bool pass = false;
  std::size_t chart = 0;
  std::size_t s = 0;
  /// h[p][q] = h^q(Ω^p(log D')).
  std::vector<std::vector<std::size_t>> h;
  std::vector<std::int64_t> sums;
  std::vector<std::int64_t> expected;
};

/// Lowest-index maximal cone whose complement rays all lie in dprime.
inline std::optional<std::size_t> complement_chart(const Fan& f, RaySet dprime) {
  for (std::size_t c = 0; c < f.cone_count(); ++c)
    if ((f.all_rays() - f.cone(c)).subset_of(dprime)) return c;
  return std::nullopt;
}

inline HodgeCountReport hodge_count_check(CohomologyEngine& e, RaySet dprime) {
  const Fan& f = e.fan();
  const auto c = complement_chart(f, dprime);
  if (!c) throw Error(ErrorKind::ChartConditionFails, "the complement of the log set is not inside one chart");
  const std::size_t r = f.dim();
  HodgeCountReport rep;
  rep.chart = *c;
  rep.s = (dprime & f.cone(*c)).size();
  rep.pass = true;
  for (std::size_t p = 0; p <= r; ++p) {
    rep.h.push_back(e.compute({p, dprime, IntVector(f.ray_count(), 0)}).dims);
    for (std::size_t q = 1; q <= r; ++q) rep.pass = rep.pass && rep.h[p][q] == 0;
  }
  for (std::size_t k = 0; k <= 2 * r; ++k) {
    std::int64_t sum = 0;
    for (std::size_t p = 0; p <= std::min(k, r); ++p)
      if (k - p <= r) sum += static_cast<std::int64_t>(rep.h[p][k - p]);
    rep.sums.push_back(sum);
    rep.expected.push_back(to_int64(binomial(static_cast<std::int64_t>(rep.s), static_cast<std::int64_t>(k))));
    rep.pass = rep.pass && rep.sums.back() == rep.expected.back();
  }
  return rep;
}

struct EulerAdditivityReport {
  bool pass = false;
  /// Per p: (middle, sub, quotient) Euler characteristics.
  std::vector<std::array<std::int64_t, 3>> euler;
};

/// χ(spec(p, D', L-D')) = χ(spec(p, D'+H, L-D'-H)) + χ_H(spec(p, D'|_H, (L-D')|_H)).
inline EulerAdditivityReport euler_additivity_check(EnginePool& pool, const Fan& f, RaySet dprime, std::size_t h,
                                                    const InvariantDivisor& l) {
  if (h >= f.ray_count() || dprime.contains(h))
    throw Error(ErrorKind::MalformedInput, "added ray must be a ray outside the log set");
  const StratumFan sh = stratum_fan(f, RaySet{h});
  const auto middle = theorem_spec(0, dprime, l).twist;
  auto sub = middle;
  sub[h] -= 1;
  InvariantDivisor mid_div = InvariantDivisor::from_ints(middle);
  const auto quotient = restrict_to_stratum(f, sh, mid_div).to_ints();
  const RaySet qlog = sh.to_local(dprime);
  EulerAdditivityReport rep{true, {}};
  auto& ex = pool.engine(f);
  auto& eh = pool.engine(sh.fan);
  for (std::size_t p = 0; p <= f.dim(); ++p) {
    const auto a = ex.compute({p, dprime, middle}).euler;
    const auto b = ex.compute({p, dprime | RaySet{h}, sub}).euler;
    // Forms of degree above the divisor's dimension vanish.
    const auto c = p <= sh.fan.dim() ? eh.compute({p, qlog, quotient}).euler : 0;
    rep.euler.push_back({a, b, c});
    rep.pass = rep.pass && a == b + c;
  }
  return rep;
}

}  // namespace toricbott
