#pragma once

// Weak-mixing probes: the obstruction series n -> dist((B^n)^T v, Z^d), the
// eigenvalue scan over v = t(1,...,1), and Cesaro averages of correlations
// estimated along a single orbit.
//
// Integer matrices preserve the lattice, so (B^n)^T v is only ever needed
// mod Z^d. For rational v we keep numerators mod a common denominator, which
// keeps the whole series exact at the cost of a few integer additions.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "cocycle.hpp"
#include "errors.hpp"
#include "genperm.hpp"
#include "involution.hpp"
#include "numeric.hpp"
#include "rauzy.hpp"
#include "sampler.hpp"
#include "suspension.hpp"

namespace linvol {

/// Distance from x to the nearest integer, in [0, 1/2].
inline Rational distanceToIntegers(const Rational& x) {
  BigInt f;
  mpz_fdiv_q(f.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  Rational frac = x - Rational(f);
  Rational other = 1 - frac;
  return frac < other ? frac : other;
}

// ---------------------------------------------------------------------------
// Induction trace shared by every vector probed on the same (pi, lambda)

struct InductionTrace {
  std::vector<std::pair<int, int>> players;  // (winner, loser) of step k
  std::vector<std::size_t> returns;          // n with pi^(n) = pi and lambda^(n) near lambda
  std::size_t d = 0;
  double radius = 1.0;
};

/// N exact steps, recording every return to pi whose projectivised lengths
/// lie within `radius` of the start in the Hilbert metric.
inline InductionTrace traceInduction(const GeneralizedPermutation& pi, const std::vector<Rational>& lambda, std::size_t n, double radius = 1.0) {
  InductionTrace tr;
  tr.radius = radius;
  tr.d = pi.size();
  GeneralizedPermutation cur = pi;
  std::vector<Rational> len = lambda;
  for (std::size_t k = 0; k < n; ++k) {
    auto [s, next] = inductStep(cur, len, k);
    tr.players.emplace_back(s.winner, s.loser);
    cur = std::move(s.successor);
    len = std::move(next);
    if (cur == pi && static_cast<double>(hilbertDistance(len, lambda)) <= radius) tr.returns.push_back(k + 1);
  }
  return tr;
}

// ---------------------------------------------------------------------------
// Obstruction series

struct ObstructionSeries {
  std::vector<Rational> v;
  std::vector<Rational> distances;    // d_0 .. d_N
  std::vector<std::size_t> returns;   // the return set E
  std::vector<std::size_t> tail;      // last quarter of E (or of all steps, see fallback)
  bool fallback = false;              // E was empty
  Rational tailMin, tailMax, overallMin;
};

namespace detail {

/// Indices making up the last quarter of the returns; when there are no
/// returns, the last quarter of all steps instead.
inline std::vector<std::size_t> tailIndices(const InductionTrace& tr, bool& fallback) {
  std::vector<std::size_t> out;
  fallback = tr.returns.empty();
  if (!fallback) {
    const std::size_t k = (tr.returns.size() + 3) / 4;
    out.assign(tr.returns.end() - static_cast<std::ptrdiff_t>(k), tr.returns.end());
  } else {
    const std::size_t n = tr.players.size();
    for (std::size_t i = n - n / 4; i <= n; ++i) out.push_back(i);
  }
  return out;
}

}  // namespace detail

/// The series along a precomputed trace.
inline ObstructionSeries obstructionSeries(const InductionTrace& tr, const std::vector<Rational>& v) {
  ObstructionSeries s;
  s.v = v;
  const std::size_t d = v.size();
  BigInt den = 1;
  for (const auto& x : v) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
  std::vector<BigInt> num(d);
  for (std::size_t i = 0; i < d; ++i) {
    BigInt a = v[i].get_num() * (den / v[i].get_den());
    mpz_fdiv_r(num[i].get_mpz_t(), a.get_mpz_t(), den.get_mpz_t());
  }
  auto dist = [&]() {
    BigInt best = 0;
    for (const auto& r : num) {
      BigInt c = den - r;
      const BigInt& m = r < c ? r : c;
      if (m > best) best = m;
    }
    return Rational(best, den);
  };
  s.distances.reserve(tr.players.size() + 1);
  s.distances.push_back(dist());
  for (auto [w, u] : tr.players) {
    auto& x = num[static_cast<std::size_t>(u)];
    x += num[static_cast<std::size_t>(w)];
    if (x >= den) x -= den;
    s.distances.push_back(dist());
  }
  for (auto& x : s.distances) x.canonicalize();
  s.returns = tr.returns;
  s.tail = detail::tailIndices(tr, s.fallback);
  s.tailMin = s.tailMax = s.distances[s.tail.front()];
  for (std::size_t i : s.tail) {
    s.tailMin = std::min(s.tailMin, s.distances[i]);
    s.tailMax = std::max(s.tailMax, s.distances[i]);
  }
  s.overallMin = *std::min_element(s.distances.begin(), s.distances.end());
  return s;
}

inline ObstructionSeries obstructionSeries(const GeneralizedPermutation& pi, const std::vector<Rational>& lambda, const std::vector<Rational>& v,
                                           std::size_t n, double radius = 1.0) {
  if (v.size() != pi.size() || lambda.size() != pi.size()) throw ParameterMismatch("vector length does not match the alphabet");
  return obstructionSeries(traceInduction(pi, lambda, n, radius), v);
}

/// Floating-point series for irrational v. Rounding errors are amplified by
/// the row sums of (B^n)^T; once those need more than mantissa - 64 bits the
/// series is meaningless and PrecisionExhausted is raised.
template <class Scalar = Extended>
std::vector<double> obstructionSeriesFloat(const GeneralizedPermutation& pi, std::vector<Scalar> lambda, std::vector<Scalar> v, std::size_t n) {
  if (v.size() != pi.size() || lambda.size() != pi.size()) throw ParameterMismatch("vector length does not match the alphabet");
  const int mantissa = std::numeric_limits<Scalar>::digits > 0 ? std::numeric_limits<Scalar>::digits : 113;
  const double limit = std::ldexp(1.0, mantissa - 64);
  std::vector<double> growth(pi.size(), 1.0);
  auto reduce = [](Scalar x) { return x - xfloor(x); };
  auto dist = [&]() {
    double best = 0;
    for (const auto& x : v) best = std::max(best, static_cast<double>(std::min(x, Scalar(1) - x)));
    return best;
  };
  for (auto& x : v) x = reduce(x);
  std::vector<double> out{dist()};
  GeneralizedPermutation cur = pi;
  for (std::size_t k = 0; k < n; ++k) {
    auto [s, next] = inductStep(cur, lambda, k);
    const auto w = static_cast<std::size_t>(s.winner), u = static_cast<std::size_t>(s.loser);
    v[u] = reduce(v[u] + v[w]);
    growth[u] += growth[w];
    if (growth[u] > limit) throw PrecisionExhausted("step " + std::to_string(k + 1) + " needs more than " + std::to_string(mantissa) + " bits");
    cur = std::move(s.successor);
    lambda = std::move(next);
    out.push_back(dist());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Eigenvalue scan

enum class Verdict { Decaying, NonDecaying, Inconclusive };

inline const char* toString(Verdict v) {
  switch (v) {
    case Verdict::Decaying: return "decaying";
    case Verdict::NonDecaying: return "non-decaying";
    default: return "inconclusive";
  }
}

struct ScanThresholds {
  double decaying = 1e-6;     // every tail value below this
  double nonDecaying = 1e-2;  // every tail value above this
  double radius = 1.0;
};

struct EigenCandidate {
  Rational t;
  Verdict verdict = Verdict::Inconclusive;
  Rational tailMin, tailMax;
  bool fallback = false;
  std::optional<ObstructionSeries> series;  // kept unless non-decaying
};

inline Verdict classify(const ObstructionSeries& s, const ScanThresholds& th) {
  if (s.tailMax < Rational(th.decaying)) return Verdict::Decaying;
  if (s.tailMin > Rational(th.nonDecaying)) return Verdict::NonDecaying;
  return Verdict::Inconclusive;
}

/// All reduced p/q in [0, 1) with q <= maxQ, ascending.
inline std::vector<Rational> fareyGrid(long maxQ) {
  std::vector<Rational> out;
  for (long q = 1; q <= maxQ; ++q)
    for (long p = 0; p < q; ++p)
      if (std::gcd(p, q) == 1) out.emplace_back(p, q);
  std::sort(out.begin(), out.end());
  return out;
}

/// "q64" for a Farey grid, otherwise a comma-separated list of rationals.
inline std::vector<Rational> parseGrid(const std::string& text) {
  if (!text.empty() && text[0] == 'q') {
    long q = 0;
    try {
      q = std::stol(text.substr(1));
    } catch (const std::exception&) {
      throw ParseError("malformed grid '" + text + "'");
    }
    if (q < 1) throw ParseError("grid denominator must be positive");
    return fareyGrid(q);
  }
  std::vector<Rational> out;
  std::size_t i = 0;
  while (i < text.size()) {
    std::size_t j = text.find(',', i);
    if (j == std::string::npos) j = text.size();
    out.push_back(parseRational(text.substr(i, j - i)));
    i = j + 1;
  }
  return out;
}

inline std::vector<EigenCandidate> eigenvalueScan(const InductionTrace& tr, const std::vector<Rational>& grid, const ScanThresholds& th = {}) {
  std::vector<EigenCandidate> out;
  for (const auto& t : grid) {
    auto s = obstructionSeries(tr, std::vector<Rational>(tr.d, t));
    EigenCandidate c{t, classify(s, th), s.tailMin, s.tailMax, s.fallback, std::nullopt};
    if (c.verdict != Verdict::NonDecaying) c.series = std::move(s);
    out.push_back(std::move(c));
  }
  return out;
}

inline std::vector<EigenCandidate> eigenvalueScan(const GeneralizedPermutation& pi, const std::vector<Rational>& lambda, const std::vector<Rational>& grid,
                                                  std::size_t n, const ScanThresholds& th = {}) {
  if (grid.empty()) return {};
  return eigenvalueScan(traceInduction(pi, lambda, n, th.radius), grid, th);
}

// ---------------------------------------------------------------------------
// Cesaro correlations

struct Interval {
  int component = 0;
  Rational a, b;  // [a, b)
};

/// Indicator of a finite union of intervals on the two components.
struct Observable {
  std::vector<Interval> pieces;

  bool operator()(const MarkedPoint& p) const {
    for (const auto& I : pieces)
      if (I.component == p.component && I.a <= p.x && p.x < I.b) return true;
    return false;
  }
  static Observable component(const LinearInvolution& T, int c) { return {{{c, 0, T.total()}}}; }
  static Observable constant(const LinearInvolution& T) { return {{{0, 0, T.total()}, {1, 0, T.total()}}}; }
};

struct CorrelationReport {
  Observable f, g;
  std::size_t orbitLength = 0;
  MarkedPoint start;
  double meanF = 0, meanG = 0;
  std::vector<std::size_t> grid;  // N = 1, 2, 4, ...
  std::vector<double> values;     // C_N
  std::vector<double> errors;     // half the gap between the two orbit halves
  std::optional<double> slope;    // least squares of log C_N against log N
};

namespace detail {

inline std::vector<double> cesaroValues(const std::vector<char>& fv, const std::vector<char>& gv, std::size_t m, const std::vector<std::size_t>& grid, double& mf,
                                        double& mg) {
  mf = mg = 0;
  for (std::size_t k = 0; k < m; ++k) {
    mf += fv[k];
    mg += gv[k];
  }
  mf /= static_cast<double>(m);
  mg /= static_cast<double>(m);
  const std::size_t nMax = grid.empty() ? 0 : grid.back();
  std::vector<double> out;
  double acc = 0;
  std::size_t next = 0;
  for (std::size_t n = 0; n < nMax; ++n) {
    std::size_t c = 0;
    for (std::size_t k = 0; k < m; ++k) c += static_cast<std::size_t>(fv[k + n] & gv[k]);
    acc += std::fabs(static_cast<double>(c) / static_cast<double>(m) - mf * mg);
    if (n + 1 == grid[next]) {
      out.push_back(acc / static_cast<double>(n + 1));
      ++next;
    }
  }
  return out;
}

}  // namespace detail

inline std::vector<std::size_t> doublingGrid(std::size_t n) {
  std::vector<std::size_t> g;
  for (std::size_t k = 1; k < n; k *= 2) g.push_back(k);
  if (n > 0) g.push_back(n);
  return g;
}

/// C_N = (1/N) sum_{n<N} |<f o T^n, g> - <f><g>| with inner products taken as
/// Birkhoff averages of length orbitLen from `start`.
inline CorrelationReport cesaroCorrelation(const LinearInvolution& T, const Observable& f, const Observable& g, std::size_t n, std::size_t orbitLen,
                                           const MarkedPoint& start) {
  if (n == 0 || orbitLen < 2) throw InsufficientSteps("need N >= 1 and an orbit of at least two points");
  CorrelationReport r;
  r.f = f;
  r.g = g;
  r.orbitLength = orbitLen;
  r.start = start;
  r.grid = doublingGrid(n);
  const std::size_t total = orbitLen + n;
  std::vector<char> fv(total), gv(total);
  MarkedPoint p = start;
  for (std::size_t k = 0; k < total; ++k) {
    fv[k] = f(p);
    gv[k] = g(p);
    if (k + 1 < total) {
      if (T.isSingular(p)) throw SingularOrbit("orbit hits a singularity at step " + std::to_string(k));
      try {
        p = T.evaluate(p);
      } catch (const SingularPoint& e) {
        throw SingularOrbit(std::string("orbit hits a singularity: ") + e.what());
      }
    }
  }
  r.values = detail::cesaroValues(fv, gv, orbitLen, r.grid, r.meanF, r.meanG);
  // Monte Carlo error from the two halves of the orbit
  const std::size_t half = orbitLen / 2;
  if (half >= 1) {
    std::vector<char> f1(fv.begin(), fv.begin() + static_cast<std::ptrdiff_t>(half + n)), g1(gv.begin(), gv.begin() + static_cast<std::ptrdiff_t>(half + n));
    std::vector<char> f2(fv.begin() + static_cast<std::ptrdiff_t>(half), fv.end()), g2(gv.begin() + static_cast<std::ptrdiff_t>(half), gv.end());
    double a, b;
    auto v1 = detail::cesaroValues(f1, g1, half, r.grid, a, b);
    auto v2 = detail::cesaroValues(f2, g2, orbitLen - half, r.grid, a, b);
    for (std::size_t i = 0; i < v1.size(); ++i) r.errors.push_back(std::fabs(v1[i] - v2[i]) / 2);
  }
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < r.grid.size(); ++i)
    if (r.values[i] > 0) {
      xs.push_back(std::log(static_cast<double>(r.grid[i])));
      ys.push_back(std::log(r.values[i]));
    }
  if (xs.size() >= 2) {
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      mx += xs[i];
      my += ys[i];
    }
    mx /= static_cast<double>(xs.size());
    my /= static_cast<double>(xs.size());
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sxy += (xs[i] - mx) * (ys[i] - my);
      sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    if (sxx > 0) r.slope = sxy / sxx;
  }
  return r;
}

/// Random non-singular starting point with a 64-bit dyadic coordinate.
inline MarkedPoint randomPoint(const LinearInvolution& T, Rng& rng) {
  for (int t = 0; t < 64; ++t) {
    Rational u(randomBits(rng, 64), BigInt(1) << 64);
    MarkedPoint p{u * T.total(), static_cast<int>(rng() & 1)};
    p.x.canonicalize();
    if (p.x > 0 && !T.isSingular(p)) return p;
  }
  throw SingularOrbit("could not draw a regular starting point");
}

// ---------------------------------------------------------------------------
// Aggregate report

struct WeakMixConfig {
  std::size_t samples = 50;
  std::vector<Rational> grid = fareyGrid(64);
  std::size_t steps = 2000;
  std::uint64_t seed = 1;
  unsigned bits = 1024;  // size of exact sampled lengths
  ScanThresholds thresholds;
  std::size_t correlationN = 256;
  std::size_t orbitLength = 20000;
  unsigned jobs = 1;
};

struct WeakMixSample {
  std::vector<Rational> lambda;
  std::vector<EigenCandidate> candidates;
  std::size_t decaying = 0, nonDecaying = 0, inconclusive = 0;  // nontrivial t only
  std::size_t returns = 0;
  std::optional<CorrelationReport> correlation;
  std::string correlationError;
};

struct WeakMixReport {
  GeneralizedPermutation pi;
  int genus = 0;
  std::vector<WeakMixSample> samples;
  std::size_t nontrivialPairs = 0, nonDecayingPairs = 0, decayingPairs = 0;
  std::size_t samplesWithDecaying = 0;
  double fractionNonDecaying = 0, fractionSamplesWithDecaying = 0;
};

inline WeakMixReport weakMixingReport(const GeneralizedPermutation& pi, const WeakMixConfig& cfg) {
  WeakMixReport rep;
  rep.pi = pi;
  if (!isDynamicallyIrreducible(pi).irreducible) throw HypothesisError("permutation is not dynamically irreducible");
  rep.genus = genus(pi);
  if (rep.genus <= 1)
    throw HypothesisError("suspension has genus " + std::to_string(rep.genus) + "; weak mixing is only asserted for genus greater than 1");
  // inputs are drawn serially so the report does not depend on the job count
  Rng rng(cfg.seed);
  std::vector<std::vector<Rational>> lambdas;
  std::vector<std::uint64_t> pointSeeds;
  for (std::size_t i = 0; i < cfg.samples; ++i) {
    lambdas.push_back(sampleAdmissibleRational(pi, rng, cfg.bits));
    pointSeeds.push_back(rng());
  }
  rep.samples.resize(cfg.samples);
  auto work = [&](std::size_t i) {
    auto& s = rep.samples[i];
    s.lambda = lambdas[i];
    auto tr = traceInduction(pi, s.lambda, cfg.steps, cfg.thresholds.radius);
    s.returns = tr.returns.size();
    s.candidates = eigenvalueScan(tr, cfg.grid, cfg.thresholds);
    for (auto& c : s.candidates) {
      if (c.t == 0) continue;
      if (c.verdict == Verdict::Decaying) ++s.decaying;
      else if (c.verdict == Verdict::NonDecaying) ++s.nonDecaying;
      else ++s.inconclusive;
    }
    if (cfg.correlationN > 0) {
      LinearInvolution T(pi, s.lambda);
      Rng prng(pointSeeds[i]);
      try {
        auto f = Observable{{{0, 0, T.end(pi.flat(Row::Top, 0))}}};
        auto g = Observable{{{1, 0, T.end(pi.flat(Row::Bottom, 0))}}};
        s.correlation = cesaroCorrelation(T, f, g, cfg.correlationN, cfg.orbitLength, randomPoint(T, prng));
      } catch (const SingularOrbit& e) {
        s.correlationError = e.what();
      }
    }
  };
  const unsigned jobs = std::max(1u, cfg.jobs);
  if (jobs == 1) {
    for (std::size_t i = 0; i < cfg.samples; ++i) work(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(jobs);
    for (unsigned j = 0; j < jobs; ++j)
      pool.emplace_back([&, j] {
        try {
          for (std::size_t i; (i = next++) < cfg.samples;) work(i);
        } catch (...) {
          errors[j] = std::current_exception();
        }
      });
    for (auto& t : pool) t.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
  for (const auto& s : rep.samples) {
    rep.nontrivialPairs += s.decaying + s.nonDecaying + s.inconclusive;
    rep.nonDecayingPairs += s.nonDecaying;
    rep.decayingPairs += s.decaying;
    if (s.decaying > 0) ++rep.samplesWithDecaying;
  }
  if (rep.nontrivialPairs > 0) rep.fractionNonDecaying = static_cast<double>(rep.nonDecayingPairs) / static_cast<double>(rep.nontrivialPairs);
  if (!rep.samples.empty()) rep.fractionSamplesWithDecaying = static_cast<double>(rep.samplesWithDecaying) / static_cast<double>(rep.samples.size());
  return rep;
}

}  // namespace linvol
