#pragma once

// Vanishing certificates. A claim says h^k = 0 for k >= 1 for
// Ω^p(log logset) ⊗ O(twist) on a stratum V(tau). Inner nodes add one
// boundary ray h to the log set, with children
//   sub:      (tau,     p, logset + h,        twist - D_h)
//   quotient: (tau + h, p, logset restricted, twist restricted)
// Leaves carry the full boundary as log set, so the sheaf is a sum of
// C(dim, p) copies of O(twist) and is checked directly.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "toricbott/danilov.hpp"
#include "toricbott/divisors.hpp"
#include "toricbott/error.hpp"
#include "toricbott/exactmath.hpp"
#include "toricbott/fan.hpp"

namespace toricbott {

struct VanishingClaim {
  /// Rays of the cone tau (ambient indices); empty for X itself.
  RaySet stratum;
  std::size_t p = 0;
  /// Ambient indices, among the rays of the stratum fan.
  RaySet logset;
  /// One coefficient per stratum ray, in ascending ambient order.
  IntVector twist;

  friend bool operator==(const VanishingClaim&, const VanishingClaim&) = default;
};

enum class Rule { LeafTrivialLog, ResidueStep };

inline std::string_view to_string(Rule r) { return r == Rule::LeafTrivialLog ? "LeafTrivialLog" : "ResidueStep"; }

struct CertificateNode {
  VanishingClaim claim;
  Rule rule = Rule::LeafTrivialLog;
  /// Ambient index of the ray added to the log set (ResidueStep only).
  std::size_t added_ray = 0;
  /// ResidueStep: {sub, quotient}. Leaf: empty.
  std::vector<CertificateNode> children;

  friend bool operator==(const CertificateNode&, const CertificateNode&) = default;
};

struct Certificate {
  /// One tree per form degree p = 0..dim.
  std::vector<CertificateNode> roots;
  RaySet dprime;
  InvariantDivisor divisor;
  std::vector<Rational> witness;
  std::uint64_t fan_hash = 0;

  friend bool operator==(const Certificate&, const Certificate&) = default;
};

/// Stratum fans, their engines and iterated restrictions for one ambient fan.
class StrataContext {
 public:
  explicit StrataContext(Fan f) : fan_(std::move(f)) { require_smooth(fan_); }

  const Fan& fan() const noexcept { return fan_; }

  const StratumFan& stratum(RaySet tau) {
    auto it = strata_.find(tau);
    if (it == strata_.end()) it = strata_.emplace(tau, stratum_fan(fan_, tau)).first;
    return it->second;
  }

  RaySet stratum_rays(RaySet tau) { return RaySet::from_indices(stratum(tau).ambient_ray); }

  CohomologyEngine& engine(RaySet tau) { return pool_.engine(stratum(tau).fan); }

  /// Restricts a divisor on V(tau) to V(tau + h), passing through the
  /// stratum fan of tau so that the result is computed intrinsically there.
  InvariantDivisor restrict_divisor(RaySet tau, std::size_t h, const InvariantDivisor& d) {
    const StratumFan& outer = stratum(tau);
    const auto local = outer.local_index(h);
    if (!local) throw Error(ErrorKind::NotACone, "added ray is not a ray of the stratum");
    const auto key = std::make_pair(tau, h);
    auto it = inner_.find(key);
    if (it == inner_.end()) {
      StratumFan inner = stratum_fan(outer.fan, RaySet{*local});
      RaySet tau_h = tau;
      tau_h.insert(h);
      const StratumFan& direct = stratum(tau_h);
      std::vector<std::size_t> mapped;
      for (auto i : inner.ambient_ray) mapped.push_back(outer.ambient_ray[i]);
      if (mapped != direct.ambient_ray) throw Error(ErrorKind::Internal, "iterated stratum rays disagree");
      it = inner_.emplace(key, std::move(inner)).first;
    }
    return restrict_to_stratum(outer.fan, it->second, d);
  }

  EnginePool& pool() noexcept { return pool_; }

 private:
  Fan fan_;
  std::map<RaySet, StratumFan> strata_;
  std::map<std::pair<RaySet, std::size_t>, StratumFan> inner_;
  EnginePool pool_;
};

/// Every cone of the fan (faces of maximal cones), including the zero cone.
inline std::set<RaySet> all_cones(const Fan& f) {
  std::set<RaySet> out;
  for (const auto& c : f.cones()) {
    const auto idx = c.indices();
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << idx.size()); ++m) {
      RaySet s;
      for (std::size_t i = 0; i < idx.size(); ++i)
        if ((m >> i) & 1U) s.insert(idx[i]);
      out.insert(s);
    }
  }
  return out;
}

/// Cones whose orbit closure is not contained in any component of dprime.
inline std::set<RaySet> strata_outside(const Fan& f, RaySet dprime) {
  std::set<RaySet> out;
  for (auto t : all_cones(f))
    if ((t & dprime).empty()) out.insert(t);
  return out;
}

struct BuildOptions {
  /// Order in which missing boundary rays are added; empty means ascending.
  std::vector<std::size_t> order;
};

namespace detail {

class CertificateBuilder {
 public:
  CertificateBuilder(StrataContext& ctx, const BuildOptions& opt) : ctx_(ctx) {
    const std::size_t n = ctx.fan().ray_count();
    order_ = opt.order;
    if (order_.empty())
      for (std::size_t i = 0; i < n; ++i) order_.push_back(i);
    auto sorted = order_;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i)
      if (sorted.size() != n || sorted[i] != i)
        throw Error(ErrorKind::MalformedInput, "addition order is not a permutation of the rays");
  }

  CertificateNode build(VanishingClaim claim, const InvariantDivisor& residual) {
    const RaySet rays = ctx_.stratum_rays(claim.stratum);
    const RaySet missing = rays - claim.logset;
    if (missing.empty()) return {std::move(claim), Rule::LeafTrivialLog, 0, {}};
    const std::size_t h = *std::find_if(order_.begin(), order_.end(), [&](std::size_t i) { return missing.contains(i); });
    const std::size_t local = *ctx_.stratum(claim.stratum).local_index(h);

    VanishingClaim sub = claim;
    sub.logset.insert(h);
    sub.twist[local] -= 1;

    RaySet tau_h = claim.stratum;
    tau_h.insert(h);
    const auto twist = ctx_.restrict_divisor(claim.stratum, h, InvariantDivisor::from_ints(claim.twist));
    const auto res = ctx_.restrict_divisor(claim.stratum, h, residual);
    if (!is_ample(ctx_.stratum(tau_h).fan, res))
      throw Error(ErrorKind::StratumHypothesisFails, "restricted residual class is not ample");
    VanishingClaim quot{tau_h, claim.p, claim.logset & ctx_.stratum_rays(tau_h), twist.to_ints()};

    CertificateNode node{std::move(claim), Rule::ResidueStep, h, {}};
    node.children.push_back(build(std::move(sub), residual));
    node.children.push_back(build(std::move(quot), res));
    return node;
  }

 private:
  StrataContext& ctx_;
  std::vector<std::size_t> order_;
};

}  // namespace detail

inline Certificate build_certificate(StrataContext& ctx, RaySet dprime, const InvariantDivisor& l,
                                     const BuildOptions& opt = {}) {
  const Fan& f = ctx.fan();
  require_divisor_on(f, l);
  auto witness = hypothesis_feasible(f, l, dprime);
  if (!witness) throw Error(ErrorKind::HypothesisInfeasible, "no 0 <= d <= 1 makes L - dD' ample");
  const InvariantDivisor residual = residual_divisor(l, dprime, *witness);
  Certificate cert{{}, dprime, l, *witness, fan_hash(f)};
  detail::CertificateBuilder b(ctx, opt);
  for (std::size_t p = 0; p <= f.dim(); ++p)
    cert.roots.push_back(b.build({RaySet(), p, dprime, theorem_spec(p, dprime, l).twist}, residual));
  return cert;
}

inline Certificate build_certificate(const Fan& f, RaySet dprime, const InvariantDivisor& l,
                                     const BuildOptions& opt = {}) {
  StrataContext ctx(f);
  return build_certificate(ctx, dprime, l, opt);
}

struct CertificateCheck {
  bool ok = true;
  /// LeafNonzero when any leaf fails; otherwise the first fault found.
  std::optional<ErrorKind> fault;
  std::vector<std::string> messages;
  std::size_t leaves = 0;
  std::size_t depth = 0;
  /// Per root p, the strata carrying a leaf.
  std::vector<std::multiset<RaySet>> leaf_strata;

  void fail(ErrorKind k, std::string msg) {
    ok = false;
    if (!fault || k == ErrorKind::LeafNonzero) fault = k;
    messages.push_back(std::string(toricbott::to_string(k)) + ": " + std::move(msg));
  }
};

namespace detail {

class CertificateChecker {
 public:
  CertificateChecker(StrataContext& ctx, CertificateCheck& out) : ctx_(ctx), out_(out) {
    limit_ = ctx.fan().ray_count() + ctx.fan().dim();
  }

  void check(const CertificateNode& node, const InvariantDivisor& residual, std::size_t depth,
             std::multiset<RaySet>& leaves) {
    out_.depth = std::max(out_.depth, depth);
    if (depth > limit_) return out_.fail(ErrorKind::MalformedNode, "tree deeper than rays + dimension");
    const VanishingClaim& c = node.claim;
    const Fan& f = ctx_.fan();
    if (!c.stratum.subset_of(f.all_rays()) || !f.is_cone(c.stratum))
      return out_.fail(ErrorKind::MalformedNode, "claim stratum is not a cone");
    const RaySet rays = ctx_.stratum_rays(c.stratum);
    const StratumFan& s = ctx_.stratum(c.stratum);
    if (!c.logset.subset_of(rays)) return out_.fail(ErrorKind::MalformedNode, "log set leaves the stratum boundary");
    if (c.twist.size() != s.ambient_ray.size()) return out_.fail(ErrorKind::MalformedNode, "twist has wrong length");

    if (node.rule == Rule::LeafTrivialLog) {
      if (!node.children.empty()) return out_.fail(ErrorKind::MalformedNode, "leaf with children");
      if (c.logset != rays) return out_.fail(ErrorKind::MalformedNode, "leaf log set is not the full boundary");
      ++out_.leaves;
      leaves.insert(c.stratum);
      const auto h = ctx_.engine(c.stratum).compute({0, RaySet(), c.twist}).dims;
      const auto mult = binomial(static_cast<std::int64_t>(s.fan.dim()), static_cast<std::int64_t>(c.p));
      for (std::size_t k = 1; k < h.size(); ++k)
        if (mult != 0 && h[k] != 0)
          out_.fail(ErrorKind::LeafNonzero,
                    "leaf on stratum " + std::to_string(c.stratum.mask()) + " has h^" + std::to_string(k) + " != 0");
      return;
    }

    if (node.children.size() != 2) return out_.fail(ErrorKind::MalformedNode, "residue step needs two children");
    const std::size_t h = node.added_ray;
    if (!rays.contains(h) || c.logset.contains(h))
      return out_.fail(ErrorKind::MalformedNode, "added ray is not a missing boundary ray");
    // Structural faults are recorded but the subtrees are still checked, so
    // a falsifying leaf is reported even under a tampered parent.
    const std::size_t local = *s.local_index(h);
    VanishingClaim sub = c;
    sub.logset.insert(h);
    sub.twist[local] -= 1;
    if (node.children[0].claim != sub)
      out_.fail(ErrorKind::MalformedNode, "sub child does not match the residue sequence");

    RaySet tau_h = c.stratum;
    tau_h.insert(h);
    const VanishingClaim& q = node.children[1].claim;
    const StratumFan& sh = ctx_.stratum(tau_h);
    if (q.stratum != tau_h || q.p != c.p || q.logset != (c.logset & ctx_.stratum_rays(tau_h)) ||
        q.twist.size() != sh.ambient_ray.size())
      return out_.fail(ErrorKind::MalformedNode, "quotient child does not match the residue sequence");
    const auto expect = ctx_.restrict_divisor(c.stratum, h, InvariantDivisor::from_ints(c.twist));
    if (!linearly_equivalent(sh.fan, InvariantDivisor::from_ints(q.twist), expect))
      out_.fail(ErrorKind::MalformedNode, "quotient twist is not the restricted class");
    const auto res = ctx_.restrict_divisor(c.stratum, h, residual);
    if (!is_ample(sh.fan, res)) out_.fail(ErrorKind::StratumHypothesisFails, "restricted residual class is not ample");
    check(node.children[0], residual, depth + 1, leaves);
    check(node.children[1], res, depth + 1, leaves);
  }

 private:
  StrataContext& ctx_;
  CertificateCheck& out_;
  std::size_t limit_ = 0;
};

}  // namespace detail

inline CertificateCheck check_certificate(StrataContext& ctx, const Certificate& cert) {
  CertificateCheck out;
  const Fan& f = ctx.fan();
  if (cert.fan_hash != fan_hash(f)) out.fail(ErrorKind::MalformedNode, "certificate was issued for another fan");
  if (!cert.dprime.subset_of(f.all_rays()) || cert.divisor.size() != f.ray_count() || !cert.divisor.integral()) {
    out.fail(ErrorKind::MalformedNode, "log set or divisor does not fit the fan");
    return out;
  }
  if (!witness_valid(f, cert.divisor, cert.dprime, cert.witness)) {
    out.fail(ErrorKind::HypothesisNotVerified, "stored witness does not make L - dD' ample");
    return out;
  }
  if (cert.roots.size() != f.dim() + 1) {
    out.fail(ErrorKind::MalformedNode, "need one root per form degree");
    return out;
  }
  const InvariantDivisor residual = residual_divisor(cert.divisor, cert.dprime, cert.witness);
  detail::CertificateChecker checker(ctx, out);
  for (std::size_t p = 0; p <= f.dim(); ++p) {
    out.leaf_strata.emplace_back();
    const VanishingClaim expect{RaySet(), p, cert.dprime, theorem_spec(p, cert.dprime, cert.divisor).twist};
    if (cert.roots[p].claim != expect) {
      out.fail(ErrorKind::MalformedNode, "root claim for p = " + std::to_string(p) + " is not the theorem's");
      continue;
    }
    checker.check(cert.roots[p], residual, 0, out.leaf_strata.back());
  }
  return out;
}

inline CertificateCheck check_certificate(const Fan& f, const Certificate& cert) {
  StrataContext ctx(f);
  return check_certificate(ctx, cert);
}

/// Throws the recorded fault of a failed check.
inline void require_valid(const CertificateCheck& c) {
  if (!c.ok) throw Error(*c.fault, c.messages.front());
}

struct CrossValidation {
  bool certificate_ok = false;
  bool direct_pass = false;
  bool agree = false;
  CertificateCheck check;
  VanishingReport direct;
};

inline CrossValidation cross_validate(StrataContext& ctx, RaySet dprime, const InvariantDivisor& l) {
  CrossValidation out;
  const Certificate cert = build_certificate(ctx, dprime, l);
  out.check = check_certificate(ctx, cert);
  out.certificate_ok = out.check.ok;
  out.direct = verify_vanishing(ctx.engine(RaySet()), dprime, l, cert.witness);
  out.direct_pass = out.direct.pass;
  out.agree = out.certificate_ok == out.direct_pass;
  return out;
}

inline CrossValidation cross_validate(const Fan& f, RaySet dprime, const InvariantDivisor& l) {
  StrataContext ctx(f);
  return cross_validate(ctx, dprime, l);
}

}  // namespace toricbott
