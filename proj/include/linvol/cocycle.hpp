#pragma once

// The Rauzy-Veech cocycle: lengths renormalised by the inverse branch, vectors
// pushed forward by the transposed step matrices, and Lyapunov exponents by
// periodic re-orthonormalisation of a frame.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "errors.hpp"
#include "genperm.hpp"
#include "numeric.hpp"
#include "rauzy.hpp"
#include "sampler.hpp"
#include "suspension.hpp"

namespace linvol {

// ---------------------------------------------------------------------------
// Hilbert projective metric

/// sup over i, j of |log(x_i y_j / (x_j y_i))|; +inf never arises for
/// positive input.
template <class Scalar>
Scalar hilbertDistance(const std::vector<Scalar>& x, const std::vector<Scalar>& y) {
  if (x.size() != y.size() || x.empty()) throw ParameterMismatch("vectors of different length");
  Scalar hi = -std::numeric_limits<Scalar>::infinity(), lo = std::numeric_limits<Scalar>::infinity();
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0) || !(y[i] > 0)) throw NonPositiveInput("Hilbert metric needs strictly positive entries");
    Scalar r = xlog(x[i]) - xlog(y[i]);
    hi = std::max(hi, r);
    lo = std::min(lo, r);
  }
  return hi - lo;
}

inline long double hilbertDistance(const std::vector<Rational>& x, const std::vector<Rational>& y) {
  if (x.size() != y.size() || x.empty()) throw ParameterMismatch("vectors of different length");
  long double hi = -std::numeric_limits<long double>::infinity(), lo = std::numeric_limits<long double>::infinity();
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] <= 0 || y[i] <= 0) throw NonPositiveInput("Hilbert metric needs strictly positive entries");
    long double r = logRational(x[i] / y[i]);
    hi = std::max(hi, r);
    lo = std::min(lo, r);
  }
  return hi - lo;
}

/// Diameter of the image of the positive cone: the largest distance
/// between two columns. Infinite if some column has a zero entry.
inline long double projectiveDiameter(const BigMatrix& b) {
  const std::size_t d = b.size();
  std::vector<std::vector<Rational>> cols(d, std::vector<Rational>(d));
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t i = 0; i < d; ++i) {
      if (b(i, j) <= 0) return std::numeric_limits<long double>::infinity();
      cols[j][i] = Rational(b(i, j));
    }
  long double diam = 0;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) diam = std::max(diam, hilbertDistance(cols[i], cols[j]));
  return diam;
}

// ---------------------------------------------------------------------------
// Cocycle dynamics

/// Integer-indexed Rauzy class for fast stepping.
struct ClassGraph {
  RauzyClass cls;
  std::vector<std::array<int, 2>> last;  // (last top letter, last bottom letter)
  std::vector<LetterClasses> letters;

  explicit ClassGraph(const GeneralizedPermutation& pi, std::size_t cap = 100000) : cls(rauzyClass(pi, cap)) {
    for (const auto& n : cls.nodes) {
      last.push_back({n.lastTopLetter(), n.lastBottomLetter()});
      letters.push_back(letterClasses(n));
    }
  }
  std::size_t dimension() const { return cls.nodes.front().size(); }
};

template <class Scalar = Extended>
struct CocycleState {
  int node = 0;
  std::vector<Scalar> lambda;              // normalised to sum 1
  std::vector<std::vector<Scalar>> frame;  // k vectors of length d
  std::vector<Scalar> logGrowth;           // accumulated log stretch per frame vector
  std::size_t elementary = 0, zorich = 0;
  std::size_t sinceOrtho = 0;
};

namespace detail {

template <class Scalar>
Scalar dot(const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
  Scalar s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace detail

/// Modified Gram-Schmidt; adds the log of each pivot norm to logGrowth.
template <class Scalar>
void reorthonormalize(CocycleState<Scalar>& s) {
  for (std::size_t i = 0; i < s.frame.size(); ++i) {
    auto& v = s.frame[i];
    for (std::size_t j = 0; j < i; ++j) {
      Scalar c = detail::dot(v, s.frame[j]);
      for (std::size_t t = 0; t < v.size(); ++t) v[t] -= c * s.frame[j][t];
    }
    Scalar n = xsqrt(detail::dot(v, v));
    if (!(n > 0)) throw SingularOrbit("frame became degenerate");
    s.logGrowth[i] += xlog(n);
    for (auto& x : v) x /= n;
  }
  s.sinceOrtho = 0;
}

/// One Zorich step: a maximal run of equal moves. Lengths follow the inverse
/// branch and are renormalised; frame vectors follow the transposed matrices
/// (w[loser] += w[winner]). Re-orthonormalises every q Zorich steps (q = 0
/// disables it).
template <class Scalar>
void renormalize(const ClassGraph& g, CocycleState<Scalar>& s, std::size_t q = 5, std::size_t runCap = 10000) {
  auto moveAt = [&]() {
    const auto& l = g.last[static_cast<std::size_t>(s.node)];
    const Scalar& x = s.lambda[static_cast<std::size_t>(l[0])];
    const Scalar& y = s.lambda[static_cast<std::size_t>(l[1])];
    if (x == y) throw TieError(s.elementary);
    return x > y ? 0 : 1;
  };
  const int m = moveAt();
  const int start = s.node;
  // within a run only the winner shrinks and the nodes cycle (moves are
  // invertible), so whole periods can be skipped at once
  std::vector<int> losers;
  bool skipped = false;
  std::size_t run = 0;
  do {
    const auto [w, u] = g.cls.players[static_cast<std::size_t>(s.node)][static_cast<std::size_t>(m)];
    const int next = g.cls.edges[static_cast<std::size_t>(s.node)][static_cast<std::size_t>(m)];
    if (next < 0) throw MoveUndefined("move leaves the Rauzy class");
    s.lambda[static_cast<std::size_t>(w)] -= s.lambda[static_cast<std::size_t>(u)];
    for (auto& v : s.frame) v[static_cast<std::size_t>(u)] += v[static_cast<std::size_t>(w)];
    s.node = next;
    ++s.elementary;
    if (++run > runCap) throw RunCapExceeded("Zorich run exceeded " + std::to_string(runCap) + " elementary steps");
    if (!skipped) losers.push_back(u);
    if (!skipped && s.node == start) {
      skipped = true;
      Scalar period = 0, top = 0;
      for (int x : losers) {
        period += s.lambda[static_cast<std::size_t>(x)];
        top = std::max(top, s.lambda[static_cast<std::size_t>(x)]);
      }
      Scalar& lw = s.lambda[static_cast<std::size_t>(w)];
      Scalar n = xfloor((lw - top) / period);
      while (n > 0 && !(lw - n * period > top)) n -= 1;
      if (n > 0) {
        lw -= n * period;
        for (int x : losers)
          for (auto& v : s.frame) v[static_cast<std::size_t>(x)] += n * v[static_cast<std::size_t>(w)];
        const double skip = static_cast<double>(n) * static_cast<double>(losers.size());
        s.elementary += skip < 1e18 ? static_cast<std::size_t>(skip) : std::size_t(1e18);
      }
    }
  } while (moveAt() == m);
  // rounding drifts off the length equation and the drift is expanded, so
  // project back onto it
  const auto& c = g.letters[static_cast<std::size_t>(s.node)];
  if (!c.a1.empty()) {
    Scalar s0 = 0, s1 = 0;
    for (int a : c.a0) s0 += s.lambda[static_cast<std::size_t>(a)];
    for (int a : c.a1) s1 += s.lambda[static_cast<std::size_t>(a)];
    for (int a : c.a1) s.lambda[static_cast<std::size_t>(a)] *= s0 / s1;
  }
  Scalar total = 0;
  for (const auto& x : s.lambda) total += x;
  for (auto& x : s.lambda) x /= total;
  ++s.zorich;
  if (q > 0 && ++s.sinceOrtho >= q) reorthonormalize(s);
}

template <class Scalar>
CocycleState<Scalar> initialState(const ClassGraph& g, const GeneralizedPermutation& pi, std::vector<Scalar> lambda, std::size_t k) {
  auto id = g.cls.find(pi);
  if (!id) throw ParameterMismatch("permutation is not in the class");
  const std::size_t d = g.dimension();
  CocycleState<Scalar> s;
  s.node = *id;
  Scalar total = 0;
  for (const auto& x : lambda) total += x;
  for (auto& x : lambda) x /= total;
  s.lambda = std::move(lambda);
  s.frame.assign(k, std::vector<Scalar>(d, 0));
  for (std::size_t i = 0; i < k && i < d; ++i) s.frame[i][i] = 1;
  s.logGrowth.assign(k, 0);
  return s;
}

// ---------------------------------------------------------------------------
// Lyapunov spectrum

struct LyapunovConfig {
  std::size_t steps = 50000;   // Zorich steps per batch
  std::size_t batches = 64;
  std::size_t k = 0;           // 0 means d
  std::size_t warmup = 1000;   // Zorich steps before the frame starts
  std::size_t frameWarmup = 0; // Zorich steps before growth is counted; 0 means 4 * steps
  std::size_t q = 5;           // re-orthonormalisation period
  std::uint64_t seed = 1;
  std::size_t runCap = 10000;
};

struct LyapunovReport {
  std::vector<double> exponents;      // per Zorich step, descending
  std::vector<double> stderrs;        // batch means
  std::vector<double> perElementary;  // same exponents per elementary step
  std::vector<double> perElementaryStderr;
  std::vector<double> ratios;         // theta_i / theta_1
  std::vector<double> gaps;           // theta_i - theta_{i+1}
  std::vector<std::vector<double>> batchExponents;
  std::size_t nearZeroCount = 0;
  std::size_t nearZeroCountElementary = 0;
  std::size_t sampleCount = 0;
  std::size_t elementarySteps = 0;
  std::uint64_t seed = 0;
};

namespace detail {

inline std::pair<std::vector<double>, std::vector<double>> meanAndStderr(const std::vector<std::vector<double>>& rows) {
  const std::size_t k = rows.front().size(), n = rows.size();
  std::vector<double> mean(k, 0), se(k, 0);
  for (const auto& r : rows)
    for (std::size_t i = 0; i < k; ++i) mean[i] += r[i] / static_cast<double>(n);
  if (n > 1) {
    for (std::size_t i = 0; i < k; ++i) {
      double ss = 0;
      for (const auto& r : rows) ss += (r[i] - mean[i]) * (r[i] - mean[i]);
      se[i] = std::sqrt(ss / static_cast<double>(n - 1)) / std::sqrt(static_cast<double>(n));
    }
  }
  return {mean, se};
}

inline std::size_t countNearZero(const std::vector<double>& m, const std::vector<double>& se) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < m.size(); ++i)
    if (std::fabs(m[i]) <= 3 * se[i]) ++c;
  return c;
}

}  // namespace detail

/// Top-k exponents with batch-mean errors. Every batch draws its own
/// admissible lengths from the seeded generator, in batch order.
inline LyapunovReport lyapunovSpectrum(const GeneralizedPermutation& pi, const LyapunovConfig& cfg) {
  if (!isDynamicallyIrreducible(pi).irreducible) throw HypothesisError("permutation is not dynamically irreducible");
  ClassGraph g(pi);
  const std::size_t d = pi.size();
  const std::size_t k = cfg.k == 0 ? d : std::min(cfg.k, d);
  if (cfg.batches == 0 || cfg.steps == 0) throw InsufficientSteps("need at least one batch and one step");
  Rng rng(cfg.seed);
  LyapunovReport rep;
  rep.seed = cfg.seed;
  std::vector<std::vector<double>> perElem;
  for (std::size_t b = 0; b < cfg.batches; ++b) {
    auto lambda = sampleAdmissible<Extended>(pi, rng);
    auto s = initialState<Extended>(g, pi, lambda, k);
    try {
      for (std::size_t t = 0; t < cfg.warmup; ++t) renormalize(g, s, 0, cfg.runCap);
      // random starting frame so no vector sits in a special subspace
      for (auto& v : s.frame)
        for (auto& x : v) x = static_cast<Extended>(uniformOpen(rng) - 0.5);
      reorthonormalize(s);
      // let the frame settle first: a bounded direction still grows by O(1)
      // from a random start, which would bias the zero exponents upwards
      const std::size_t settle = cfg.frameWarmup == 0 ? 4 * cfg.steps : cfg.frameWarmup;
      for (std::size_t t = 0; t < settle; ++t) renormalize(g, s, cfg.q, cfg.runCap);
      reorthonormalize(s);
      std::fill(s.logGrowth.begin(), s.logGrowth.end(), Extended(0));
      const std::size_t e0 = s.elementary;
      for (std::size_t t = 0; t < cfg.steps; ++t) renormalize(g, s, cfg.q, cfg.runCap);
      reorthonormalize(s);
      std::vector<double> row(k), rowE(k);
      const double elem = static_cast<double>(s.elementary - e0);
      for (std::size_t i = 0; i < k; ++i) {
        row[i] = static_cast<double>(s.logGrowth[i]) / static_cast<double>(cfg.steps);
        rowE[i] = static_cast<double>(s.logGrowth[i]) / elem;
      }
      rep.elementarySteps += s.elementary - e0;
      rep.batchExponents.push_back(row);
      perElem.push_back(rowE);
    } catch (const TieError& e) {
      throw InsufficientSteps("batch " + std::to_string(b) + " stopped early: " + e.what());
    } catch (const RunCapExceeded& e) {
      throw InsufficientSteps("batch " + std::to_string(b) + " stopped early: " + e.what());
    }
  }
  std::tie(rep.exponents, rep.stderrs) = detail::meanAndStderr(rep.batchExponents);
  std::tie(rep.perElementary, rep.perElementaryStderr) = detail::meanAndStderr(perElem);
  rep.nearZeroCount = detail::countNearZero(rep.exponents, rep.stderrs);
  rep.nearZeroCountElementary = detail::countNearZero(rep.perElementary, rep.perElementaryStderr);
  rep.sampleCount = cfg.batches;
  for (std::size_t i = 0; i < k; ++i) rep.ratios.push_back(rep.exponents[0] != 0 ? rep.exponents[i] / rep.exponents[0] : 0.0);
  for (std::size_t i = 0; i + 1 < k; ++i) rep.gaps.push_back(rep.exponents[i] - rep.exponents[i + 1]);
  return rep;
}

// ---------------------------------------------------------------------------
// Isometric directions

/// Non-zero integer vectors with entries in [-bound, bound] whose images
/// under the transposed matrices of `trials` random paths stay within
/// d * bound in sup norm.
inline std::vector<std::vector<long>> isometricPartProbe(const GeneralizedPermutation& pi, std::size_t trials = 50, long bound = 1, std::size_t depth = 60,
                                                        std::uint64_t seed = 1) {
  if (!isDynamicallyIrreducible(pi).irreducible) throw HypothesisError("permutation is not dynamically irreducible");
  const std::size_t d = pi.size();
  Rng rng(seed);
  std::vector<BigMatrix> mats;
  for (std::size_t t = 0; t < trials; ++t) {
    auto lambda = sampleAdmissibleRational(pi, rng, 128);
    mats.push_back(inductPath(pi, lambda, depth).path.visiting());
  }
  const BigInt limit = BigInt(static_cast<long>(d) * bound);
  std::vector<std::vector<long>> out;
  std::vector<long> w(d, -bound);
  for (;;) {
    bool zero = std::all_of(w.begin(), w.end(), [](long x) { return x == 0; });
    if (!zero) {
      std::vector<BigInt> v(w.begin(), w.end());
      bool ok = true;
      for (const auto& m : mats) {
        for (const auto& x : m.apply(v))
          if (abs(x) > limit) {
            ok = false;
            break;
          }
        if (!ok) break;
      }
      if (ok) out.push_back(w);
    }
    std::size_t i = 0;
    while (i < d && w[i] == bound) w[i++] = -bound;
    if (i == d) break;
    ++w[i];
  }
  return out;
}

/// Rank of a set of integer vectors.
inline std::size_t integerRank(const std::vector<std::vector<long>>& vs) {
  std::vector<std::vector<Rational>> rows;
  for (const auto& v : vs) rows.emplace_back(v.begin(), v.end());
  return rationalRank(rows);
}

}  // namespace linvol
