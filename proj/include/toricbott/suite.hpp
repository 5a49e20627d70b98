#pragma once

// Property suites over a fixed family of small smooth projective fans. Each
// runner returns one CriterionResult; instances are spread across threads,
// each thread owning its engines.

#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <mutex>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "toricbott/certifier.hpp"
#include "toricbott/counterexample.hpp"
#include "toricbott/danilov.hpp"
#include "toricbott/divisors.hpp"
#include "toricbott/fan.hpp"

namespace toricbott::suite {

struct NamedFan {
  std::string name;
  Fan fan;
};

/// P^2 blown up at k of its torus-fixed points (k <= 3).
inline Fan blown_up_plane(std::size_t k) {
  static const RaySet centers[] = {RaySet{0, 1}, RaySet{1, 2}, RaySet{0, 2}};
  Fan f = projective_space(2);
  for (std::size_t i = 0; i < k; ++i) f = star_subdivision(f, centers[i]);
  return f;
}

inline std::vector<NamedFan> suite_fans() {
  return {{"P1", projective_space(1)},
          {"P2", projective_space(2)},
          {"P3", projective_space(3)},
          {"P1xP1", product(projective_space(1), projective_space(1))},
          {"F1", hirzebruch(1)},
          {"F2", hirzebruch(2)},
          {"Bl1P2", blown_up_plane(1)},
          {"Bl2P2", blown_up_plane(2)},
          {"Bl3P2", blown_up_plane(3)}};
}

struct Options {
  std::uint64_t seed = 20240229;
  unsigned jobs = 0;
  std::size_t log_serre_samples = 300;
  std::size_t euler_samples = 240;
  std::size_t method_samples = 200;
};

struct CriterionResult {
  std::string id;
  std::string title;
  bool pass = false;
  std::size_t instances = 0;
  std::string detail;
  double seconds = 0;
};

namespace detail {

inline unsigned thread_count(unsigned jobs) {
  if (jobs != 0) return jobs;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

/// Runs work(i, thread) for i in [0, count) on a pool of threads.
inline void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t, unsigned)>& work) {
  const unsigned t = std::min<unsigned>(thread_count(jobs), static_cast<unsigned>(std::max<std::size_t>(count, 1)));
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex m;
  auto body = [&](unsigned id) {
    try {
      for (std::size_t i; (i = next++) < count;) work(i, id);
    } catch (...) {
      std::lock_guard lock(m);
      if (!error) error = std::current_exception();
      next = count;
    }
  };
  std::vector<std::thread> threads;
  for (unsigned i = 1; i < t; ++i) threads.emplace_back(body, i);
  body(0);
  for (auto& th : threads) th.join();
  if (error) std::rethrow_exception(error);
}

/// Per-thread strata contexts, one per suite fan.
class Contexts {
 public:
  Contexts(const std::vector<NamedFan>& fans, unsigned threads) : slots_(threads) {
    for (auto& s : slots_)
      for (const auto& f : fans) s.emplace_back(f.fan);
  }
  StrataContext& at(unsigned thread, std::size_t fan) { return slots_[thread][fan]; }

 private:
  std::vector<std::vector<StrataContext>> slots_;
};

inline IntVector digits(std::size_t code, std::size_t n, std::int64_t base, std::int64_t offset) {
  IntVector out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = static_cast<std::int64_t>(code % static_cast<std::size_t>(base)) + offset;
    code /= static_cast<std::size_t>(base);
  }
  return out;
}

inline std::size_t power(std::size_t b, std::size_t e) {
  std::size_t out = 1;
  while (e-- > 0) out *= b;
  return out;
}

inline std::string format_rays(RaySet s) {
  std::string out = "{";
  for (auto i : s.indices()) out += (out.size() > 1 ? "," : "") + std::to_string(i);
  return out + "}";
}

inline std::string format_ints(const IntVector& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out + ")";
}

template <class Fn>
CriterionResult timed(std::string id, std::string title, Fn&& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  CriterionResult r = fn();
  r.id = std::move(id);
  r.title = std::move(title);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

/// Collects counts and the first few failure descriptions across threads.
class Tally {
 public:
  void fail(std::string what) {
    std::lock_guard lock(m_);
    ++failures_;
    if (examples_.size() < 5) examples_.push_back(std::move(what));
  }
  std::size_t failures() const { return failures_; }
  std::string examples() const {
    std::string out;
    for (const auto& e : examples_) out += "; " + e;
    return out;
  }

 private:
  std::mutex m_;
  std::size_t failures_ = 0;
  std::vector<std::string> examples_;
};

}  // namespace detail

struct SweepStats {
  std::size_t candidates = 0;
  std::size_t feasible = 0;
  std::size_t direct_violations = 0;
  std::size_t certificate_failures = 0;
  std::size_t disagreements = 0;
  std::size_t strata_mismatches = 0;
  std::size_t bound_violations = 0;
  std::string direct_examples;
  std::string certificate_examples;
  double seconds = 0;
};

/// Every fan, every D', every L in {0,1,2}^n with a hypothesis witness:
/// direct vanishing, certificate round trip and agreement.
inline SweepStats theorem_sweep(const Options& opt = {}) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto fans = suite_fans();
  struct Item {
    std::size_t fan;
    RaySet dprime;
  };
  std::vector<Item> items;
  for (std::size_t f = 0; f < fans.size(); ++f)
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << fans[f].fan.ray_count()); ++m) items.push_back({f, RaySet(m)});
  const unsigned threads = detail::thread_count(opt.jobs);
  detail::Contexts ctx(fans, threads);
  std::atomic<std::size_t> candidates{0}, feasible{0};
  detail::Tally direct, cert, disagree, strata, bound;
  detail::parallel_for(items.size(), opt.jobs, [&](std::size_t i, unsigned t) {
    const auto& [fi, dprime] = items[i];
    const Fan& f = fans[fi].fan;
    StrataContext& c = ctx.at(t, fi);
    const std::size_t n = f.ray_count();
    const auto expected = strata_outside(f, dprime);
    const std::size_t bound_leaves = detail::power(2, n - dprime.size()) * all_cones(f).size();
    for (std::size_t code = 0; code < detail::power(3, n); ++code) {
      ++candidates;
      const auto l = InvariantDivisor::from_ints(detail::digits(code, n, 3, 0));
      const auto witness = hypothesis_feasible(f, l, dprime);
      if (!witness) continue;
      ++feasible;
      const std::string tag = fans[fi].name + " D'=" + detail::format_rays(dprime) + " L=" +
                              detail::format_ints(l.to_ints());
      const auto cv = cross_validate(c, dprime, l);
      if (!cv.direct_pass) direct.fail(tag);
      if (!cv.certificate_ok) cert.fail(tag + " " + cv.check.messages.front());
      if (!cv.agree) disagree.fail(tag);
      const auto& chk = cv.check;
      if (chk.depth > n + f.dim()) bound.fail(tag + " depth");
      for (const auto& leaves : chk.leaf_strata) {
        const std::set<RaySet> distinct(leaves.begin(), leaves.end());
        if (distinct != expected || distinct.size() != leaves.size()) strata.fail(tag + " visited strata differ");
        if (leaves.size() > bound_leaves) bound.fail(tag + " leaf bound");
      }
    }
  });
  SweepStats s;
  s.candidates = candidates;
  s.feasible = feasible;
  s.direct_violations = direct.failures();
  s.certificate_failures = cert.failures();
  s.disagreements = disagree.failures();
  s.strata_mismatches = strata.failures();
  s.bound_violations = bound.failures();
  s.direct_examples = direct.examples();
  s.certificate_examples = cert.examples() + strata.examples() + bound.examples();
  s.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return s;
}

inline CriterionResult sweep_criterion(const SweepStats& s) {
  CriterionResult r{"C1", "vanishing sweep over suite fans, all D', L in {0,1,2}^n", false, s.feasible, "", s.seconds};
  r.pass = s.feasible > 0 && s.direct_violations == 0;
  r.detail = std::to_string(s.feasible) + " hypothesis-feasible of " + std::to_string(s.candidates) + ", " +
             std::to_string(s.direct_violations) + " violations" + s.direct_examples;
  return r;
}

inline CriterionResult certificate_criterion(const SweepStats& s) {
  CriterionResult r{"C2", "certificate round trip and cross-validation on the sweep", false, s.feasible, "", s.seconds};
  r.pass = s.feasible > 0 && s.certificate_failures == 0 && s.disagreements == 0 && s.strata_mismatches == 0 &&
           s.bound_violations == 0;
  r.detail = std::to_string(s.certificate_failures) + " check failures, " + std::to_string(s.disagreements) +
             " disagreements, " + std::to_string(s.strata_mismatches) + " visited-strata mismatches" +
             s.certificate_examples;
  return r;
}

inline CriterionResult negative_control() {
  return detail::timed("C3", "negative control: P2 Omega^1 has h^1 = 1", [] {
    const auto h = cech_cohomology(projective_space(2), {1, RaySet(), {0, 0, 0}});
    CriterionResult r;
    r.instances = 1;
    r.pass = h.dims == std::vector<std::size_t>{0, 1, 0};
    r.detail = "h = [" + std::to_string(h.dims[0]) + "," + std::to_string(h.dims[1]) + "," +
               std::to_string(h.dims[2]) + "]";
    return r;
  });
}

inline std::vector<std::size_t> reversed(std::vector<std::size_t> v) {
  std::reverse(v.begin(), v.end());
  return v;
}

inline CriterionResult serre_duality(const Options& opt = {}) {
  return detail::timed("C4", "Serre duality: all |a| <= 3, sampled log duality", [&] {
    const auto fans = suite_fans();
    const unsigned threads = detail::thread_count(opt.jobs);
    detail::Contexts ctx(fans, threads);
    struct Item {
      std::size_t fan;
      std::size_t block;
    };
    // Blocks of 343 divisors keep the work items balanced.
    constexpr std::size_t kBlock = 343;
    std::vector<Item> items;
    std::size_t total = 0;
    for (std::size_t f = 0; f < fans.size(); ++f) {
      const std::size_t count = detail::power(7, fans[f].fan.ray_count());
      total += count;
      for (std::size_t b = 0; b * kBlock < count; ++b) items.push_back({f, b});
    }
    detail::Tally bad;
    const EngineOptions no_weights{WeightMode::Chamber, -1, false};
    detail::parallel_for(items.size(), opt.jobs, [&](std::size_t i, unsigned t) {
      const Fan& f = fans[items[i].fan].fan;
      auto& e = ctx.at(t, items[i].fan).engine(RaySet());
      const std::size_t n = f.ray_count();
      const std::size_t count = detail::power(7, n);
      for (std::size_t code = items[i].block * kBlock; code < std::min(count, (items[i].block + 1) * kBlock); ++code) {
        const auto d = detail::digits(code, n, 7, -3);
        IntVector kd(n);
        for (std::size_t j = 0; j < n; ++j) kd[j] = -1 - d[j];
        const auto a = e.compute({0, RaySet(), d}, no_weights).dims;
        const auto b = e.compute({0, RaySet(), kd}, no_weights).dims;
        if (a != reversed(b)) bad.fail(fans[items[i].fan].name + " D=" + detail::format_ints(d));
      }
    });
    // Log version: h^q(Ω^p(log D')(L - D')) = h^{r-q}(Ω^{r-p}(log D')(-L)).
    std::mt19937_64 rng(opt.seed);
    std::size_t log_checked = 0;
    for (std::size_t s = 0; s < opt.log_serre_samples; ++s) {
      const std::size_t fi = rng() % fans.size();
      const Fan& f = fans[fi].fan;
      const std::size_t n = f.ray_count();
      const RaySet dprime(rng() & RaySet::first_n(n).mask());
      IntVector l(n);
      for (auto& x : l) x = static_cast<std::int64_t>(rng() % 5) - 2;
      const std::size_t p = rng() % (f.dim() + 1);
      auto& e = ctx.at(0, fi).engine(RaySet());
      IntVector t = l, neg(n);
      for (auto i : dprime.indices()) t[i] -= 1;
      for (std::size_t j = 0; j < n; ++j) neg[j] = -l[j];
      const auto a = e.compute({p, dprime, t}, no_weights).dims;
      const auto b = e.compute({f.dim() - p, dprime, neg}, no_weights).dims;
      ++log_checked;
      if (a != reversed(b))
        bad.fail(fans[fi].name + " log D'=" + detail::format_rays(dprime) + " L=" + detail::format_ints(l) +
                 " p=" + std::to_string(p));
    }
    CriterionResult r;
    r.instances = total + log_checked;
    r.pass = bad.failures() == 0;
    r.detail = std::to_string(total) + " line bundles, " + std::to_string(log_checked) + " log samples, " +
               std::to_string(bad.failures()) + " mismatches" + bad.examples();
    return r;
  });
}

inline CriterionResult euler_additivity(const Options& opt = {}) {
  return detail::timed("C5", "Euler additivity across the residue sequence", [&] {
    const auto fans = suite_fans();
    std::mt19937_64 rng(opt.seed + 1);
    EnginePool pool;
    detail::Tally bad;
    std::size_t done = 0;
    while (done < opt.euler_samples) {
      const std::size_t fi = rng() % fans.size();
      const Fan& f = fans[fi].fan;
      const std::size_t n = f.ray_count();
      const RaySet dprime(rng() & RaySet::first_n(n).mask());
      if (dprime == f.all_rays()) continue;
      const auto outside = (f.all_rays() - dprime).indices();
      const std::size_t h = outside[rng() % outside.size()];
      IntVector l(n);
      for (auto& x : l) x = static_cast<std::int64_t>(rng() % 7) - 3;
      const auto rep = euler_additivity_check(pool, f, dprime, h, InvariantDivisor::from_ints(l));
      ++done;
      if (!rep.pass)
        bad.fail(fans[fi].name + " D'=" + detail::format_rays(dprime) + " H=" + std::to_string(h) +
                 " L=" + detail::format_ints(l));
    }
    CriterionResult r;
    r.instances = done;
    r.pass = bad.failures() == 0;
    r.detail = std::to_string(done) + " seeded samples (all p), " + std::to_string(bad.failures()) + " failures" +
               bad.examples();
    return r;
  });
}

inline CriterionResult hodge_count(const Options& = {}) {
  return detail::timed("C6", "Hodge count of the complement for chart-condition D'", [&] {
    std::size_t checked = 0;
    detail::Tally bad;
    for (const auto& nf : suite_fans()) {
      CohomologyEngine e(nf.fan);
      for (std::uint64_t m = 0; m < (std::uint64_t{1} << nf.fan.ray_count()); ++m) {
        const RaySet dprime(m);
        if (!complement_chart(nf.fan, dprime)) continue;
        ++checked;
        if (!hodge_count_check(e, dprime).pass) bad.fail(nf.name + " D'=" + detail::format_rays(dprime));
      }
    }
    CriterionResult r;
    r.instances = checked;
    r.pass = checked > 0 && bad.failures() == 0;
    r.detail = std::to_string(checked) + " (fan, D') pairs, " + std::to_string(bad.failures()) + " failures" +
               bad.examples();
    return r;
  });
}

inline CriterionResult counterexample_arithmetic() {
  return detail::timed("C7", "counterexample arithmetic", [] {
    CriterionResult r;
    const auto dmin = minimal_failing_degree();
    const auto s8 = scenario(8);
    bool ok = dmin == 8 && s8.genus == 21 && s8.rr_lower_bound == 4 && s8.bott_fails;
    for (std::int64_t d = 1; d <= 50; ++d) {
      const auto s = scenario(d);
      ok = ok && relative_ample_check(d) && 2 * s.rr_lower_bound == d * d - 7 * d && riemann_roch_consistency(d) &&
           s.bott_fails == (d >= 8) && s.e_invariant + s.deg_wedge2_conormal == 2 * d;
    }
    r.instances = 50;
    r.pass = ok;
    r.detail = "minimal failing degree " + std::to_string(dmin) + ", d=8: g=" + std::to_string(s8.genus) +
               " bound=" + std::to_string(s8.rr_lower_bound);
    return r;
  });
}

inline CriterionResult method_agreement(const Options& opt = {}) {
  return detail::timed("C8", "chamber and brute-force box enumeration agree", [&] {
    const auto fans = suite_fans();
    std::mt19937_64 rng(opt.seed + 2);
    struct Item {
      std::size_t fan;
      LogFormSheafSpec spec;
    };
    std::vector<Item> items;
    // Fixed instances first, then seeded samples.
    items.push_back({1, {0, RaySet(), {2, 0, 0}}});
    items.push_back({1, {1, RaySet(), {0, 0, 0}}});
    items.push_back({1, {2, RaySet(), {0, 0, 0}}});
    while (items.size() < opt.method_samples) {
      const std::size_t fi = rng() % fans.size();
      const Fan& f = fans[fi].fan;
      const std::size_t n = f.ray_count();
      IntVector t(n);
      for (auto& x : t) x = static_cast<std::int64_t>(rng() % 7) - 3;
      items.push_back({fi, {rng() % (f.dim() + 1), RaySet(rng() & RaySet::first_n(n).mask()), t}});
    }
    const unsigned threads = detail::thread_count(opt.jobs);
    detail::Contexts ctx(fans, threads);
    detail::Tally bad;
    detail::parallel_for(items.size(), opt.jobs, [&](std::size_t i, unsigned t) {
      auto& e = ctx.at(t, items[i].fan).engine(RaySet());
      const auto vb = e.vertex_box(items[i].spec.twist);
      std::int64_t bound = 0;
      for (std::size_t j = 0; j < vb.lo.size(); ++j) bound = std::max({bound, -vb.lo[j], vb.hi[j]});
      if (!e.symmetric_box(bound).contains(vb)) throw Error(ErrorKind::Internal, "box does not cover the vertices");
      const auto a = e.compute(items[i].spec);
      const auto b = e.compute(items[i].spec, {WeightMode::Box, bound, true});
      if (!(a == b)) bad.fail(fans[items[i].fan].name + " p=" + std::to_string(items[i].spec.p));
    });
    CriterionResult r;
    r.instances = items.size();
    r.pass = bad.failures() == 0;
    r.detail = std::to_string(items.size()) + " instances with a covering box, " + std::to_string(bad.failures()) +
               " mismatches" + bad.examples();
    return r;
  });
}

/// All criteria in order.
inline std::vector<CriterionResult> run_all(const Options& opt = {}) {
  const SweepStats s = theorem_sweep(opt);
  return {sweep_criterion(s), certificate_criterion(s), negative_control(), serre_duality(opt),
          euler_additivity(opt), hodge_count(opt),      counterexample_arithmetic(), method_agreement(opt)};
}

}  // namespace toricbott::suite
