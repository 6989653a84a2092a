#pragma once

// Combinatorics of DFT row-index sets M in Z_N. The coset a + <d> of the
// subgroup generated by a divisor d is the residue class a mod d, so every
// count below is a residue count.

#include <cmath>
#include <cstdint>
#include <deque>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "sparkforge/error.hpp"
#include "sparkforge/index_set.hpp"
#include "sparkforge/number_theory.hpp"

namespace sparkforge {

struct DistributionReport {
  std::int64_t divisor = 1;
  std::vector<std::int64_t> coset_counts;  // entry a = |M intersect (a + <d>)|
  std::int64_t lo = 0;                     // floor(|M| / d)
  std::int64_t hi = 0;                     // ceil(|M| / d)
  bool uniform = true;
};

inline DistributionReport distribution_report(const IndexSet& rows, std::int64_t d) {
  const std::int64_t n = rows.order();
  if (d < 1 || n % d != 0)
    throw Error(Errc::NotADivisor, std::to_string(d) + " does not divide " + std::to_string(n));
  DistributionReport rep;
  rep.divisor = d;
  rep.coset_counts.assign(static_cast<std::size_t>(d), 0);
  for (auto m : rows) ++rep.coset_counts[static_cast<std::size_t>(m % d)];
  const auto size = static_cast<std::int64_t>(rows.size());
  rep.lo = size / d;
  rep.hi = (size + d - 1) / d;
  for (auto c : rep.coset_counts)
    if (c != rep.lo && c != rep.hi) rep.uniform = false;
  return rep;
}

struct UniformityResult {
  bool uniform = true;
  std::vector<DistributionReport> violations;
};

/// Checks the coset-balance condition for every divisor of N.
inline UniformityResult is_uniformly_distributed(const IndexSet& rows) {
  if (rows.empty()) throw Error(Errc::InvalidInput, "row set is empty");
  UniformityResult res;
  for (auto d : divisors(rows.order())) {
    auto rep = distribution_report(rows, d);
    if (!rep.uniform) {
      res.uniform = false;
      res.violations.push_back(std::move(rep));
    }
  }
  return res;
}

struct PrimePowerVerdict {
  bool full_spark = false;
  PrimePower modulus{};
  UniformityResult uniformity;
};

/// For prime-power N, the DFT rows indexed by M form a full spark frame
/// exactly when M is uniformly distributed over the divisors of N.
/// Other N are refused: uniformity is necessary there but not sufficient.
inline PrimePowerVerdict full_spark_prime_power(const IndexSet& rows) {
  const auto pp = as_prime_power(rows.order());
  if (!pp)
    throw Error(Errc::NotPrimePower,
                std::to_string(rows.order()) + " is not a prime power; run the determinant sweep");
  PrimePowerVerdict v;
  v.modulus = *pp;
  v.uniformity = is_uniformly_distributed(rows);
  v.full_spark = v.uniformity.uniform;
  return v;
}

inline constexpr std::size_t kDefaultOrbitCap = 100'000;

/// Closure of {M} under translation, multiplication by units of Z_N and
/// complementation.
inline std::set<IndexSet> closure_orbit(const IndexSet& rows, std::size_t cap = kDefaultOrbitCap) {
  const std::int64_t n = rows.order();
  if (rows.empty() || rows.size() == static_cast<std::size_t>(n))
    throw Error(Errc::DegenerateSet, "orbit needs a nonempty proper subset of Z_" + std::to_string(n));
  std::vector<std::int64_t> units;
  for (std::int64_t a = 2; a < n; ++a)
    if (std::gcd(a, n) == 1) units.push_back(a);

  std::set<IndexSet> seen{rows};
  std::deque<IndexSet> queue{rows};
  auto visit = [&](IndexSet s) {
    if (seen.insert(s).second) {
      if (seen.size() > cap)
        throw Error(Errc::OrbitCapExceeded, "orbit exceeds " + std::to_string(cap) + " sets");
      queue.push_back(std::move(s));
    }
  };
  while (!queue.empty()) {
    const IndexSet cur = std::move(queue.front());
    queue.pop_front();
    visit(cur.translate(1));
    for (auto a : units) visit(cur.scale(a));
    visit(cur.complement());
  }
  return seen;
}

struct RipViolation {
  std::int64_t divisor;
  std::int64_t residue;
  std::int64_t count;
  double deviation;  // |count - |M|/d|
  double allowed;    // (|M|/d) * delta
};

struct RipCheck {
  bool pass = true;
  std::vector<RipViolation> violations;
};

/// Necessary condition for the column-normalized harmonic frame to be
/// (K, delta)-RIP: every coset count of every divisor d <= K must lie within
/// (|M|/d) delta of |M|/d. A failure rules RIP out; a pass proves nothing.
inline RipCheck rip_necessary_check(const IndexSet& rows, std::int64_t k, double delta) {
  if (k < 1) throw Error(Errc::InvalidInput, "sparsity K must be >= 1");
  RipCheck res;
  const double size = static_cast<double>(rows.size());
  for (auto d : divisors(rows.order())) {
    if (d > k) break;
    const auto rep = distribution_report(rows, d);
    const double mean = size / static_cast<double>(d);
    const double allowed = mean * delta;
    for (std::int64_t a = 0; a < d; ++a) {
      const auto count = rep.coset_counts[static_cast<std::size_t>(a)];
      const double dev = std::abs(static_cast<double>(count) - mean);
      if (dev > allowed) res.violations.push_back({d, a, count, dev, allowed});
    }
  }
  res.pass = res.violations.empty();
  return res;
}

}  // namespace sparkforge
