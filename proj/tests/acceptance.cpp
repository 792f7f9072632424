// Acceptance runner: one PASS/FAIL line per criterion.
//
//   acceptance [--only 1,3,7] [--expect-fail 6] [--dump decaying.json]
//
// Exits non-zero only when a criterion fails that was not expected to.

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "linvol/cli.hpp"
#include "support.hpp"

using namespace linvol;
using linvol::io::json;
namespace lt = linvol::testing;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double x, int prec = 4) {
  std::ostringstream s;
  s.precision(prec);
  s << x;
  return s.str();
}

// the 500 cases shared by the first two criteria
struct Case {
  GeneralizedPermutation pi;
  std::vector<Rational> lambda;
};

std::vector<Case> inductionCases(std::size_t count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Case> out;
  while (out.size() < count) {
    auto pi = lt::randomIrreducible(rng, 6);
    out.push_back({pi, sampleAdmissibleRational(pi, rng, 128)});
  }
  return out;
}

Outcome inversion() {
  auto t0 = Clock::now();
  auto cases = inductionCases(500, 101);
  std::size_t bad = 0;
  for (const auto& c : cases) {
    auto r = inductPath(c.pi, c.lambda, 25);
    if (r.path.product.apply(r.lengths) != c.lambda) ++bad;
  }
  const double t = seconds(t0);
  return {bad == 0 && t < 120, std::to_string(cases.size()) + " cases, " + std::to_string(bad) + " mismatches, " + fmt(t, 3) + " s"};
}

Outcome firstReturn() {
  auto cases = inductionCases(500, 101);
  std::size_t bad = 0;
  for (const auto& c : cases) {
    auto cur = c.pi;
    auto l = c.lambda;
    for (std::size_t k = 0; k < 10; ++k) {
      auto [s, next] = inductStep(cur, l, k);
      LinearInvolution T(cur, l);
      auto F = firstReturnMap(T, inductionWindow(T));
      if (!(F.permutation() == s.successor) || F.lengths() != next) {
        ++bad;
        break;
      }
      cur = s.successor;
      l = std::move(next);
    }
  }
  return {bad == 0, std::to_string(cases.size()) + " cases x 10 steps, " + std::to_string(bad) + " discrepancies"};
}

Outcome visiting() {
  Rng rng(103);
  std::size_t bad = 0;
  for (std::size_t i = 0; i < 100; ++i) {
    auto pi = lt::randomIrreducible(rng, 6);
    auto lambda = sampleAdmissibleRational(pi, rng, 128);
    const std::size_t n = 1 + i % 8;
    auto B = inductPath(pi, lambda, n).path.product;
    if (!(B.transpose() == visitingCounts(LinearInvolution(pi, lambda), n))) ++bad;
  }
  return {bad == 0, "100 cases, " + std::to_string(bad) + " mismatches"};
}

Outcome suspensionFeasibility() {
  std::size_t total = 0, bad = 0, irreducible = 0;
  for (int d = 1; d <= 5; ++d)
    for (const auto& pi : enumerateAll(d)) {
      ++total;
      const bool irr = isIrreducible(pi).irreducible;
      irreducible += irr;
      if (suspensionLp(pi).feasible != irr) ++bad;
    }
  return {bad == 0, std::to_string(total) + " permutations (" + std::to_string(irreducible) + " irreducible), " + std::to_string(bad) + " disagreements"};
}

Outcome strata() {
  std::size_t checked = 0, bad = 0;
  // a single letter has no singularity to read off
  for (int d = 2; d <= 5; ++d)
    for (const auto& pi : enumerateAll(d)) {
      if (!isIrreducible(pi).irreducible || !hasValidLengths(pi)) continue;
      auto k = singularityPattern(pi);
      const int s = k.sum();
      const bool ok = s % 4 == 0 && k.genus() >= 0 && s == 4 * k.genus() - 4;
      auto c = doubleCoverPattern(k);
      if (!ok || c.sum() != 2 * c.genus() - 2) ++bad;
      ++checked;
    }
  Rng rng(105);
  std::size_t drift = 0;
  for (int i = 0; i < 100; ++i) {
    auto pi = lt::randomIrreducible(rng, 6);
    auto k = singularityPattern(pi);
    auto r = inductPath(pi, sampleAdmissibleRational(pi, rng, 128), 20);
    for (const auto& st : r.path.path)
      if (!(singularityPattern(st.successor) == k)) {
        ++drift;
        break;
      }
  }
  return {bad == 0 && drift == 0,
          std::to_string(checked) + " patterns, " + std::to_string(bad) + " bad sums; 100 paths, " + std::to_string(drift) + " with changing kappa"};
}

struct SpectrumCheck {
  std::string text;
  bool a = false, b = false, c = false;
  std::string detail;
};

SpectrumCheck spectrumCheck(const std::string& text, std::uint64_t seed) {
  auto pi = GeneralizedPermutation::parse(text);
  auto k = singularityPattern(pi);
  LyapunovConfig cfg;  // 64 batches of 5e4 Zorich steps
  cfg.seed = seed;
  auto r = lyapunovSpectrum(pi, cfg);
  const auto& th = r.exponents;
  const auto& se = r.stderrs;
  const std::size_t d = th.size();
  const std::size_t nonzero = static_cast<std::size_t>(2 * k.genus() + k.oddCount() - 2);
  SpectrumCheck out;
  out.text = text;
  out.a = d >= 2 && th[0] - th[1] > 3 * std::hypot(se[0], se[1]) && th[1] > 3 * se[1];
  out.b = true;
  for (std::size_t i = 0; i < nonzero / 2; ++i)
    if (std::fabs(th[i] + th[d - 1 - i]) > 3 * std::hypot(se[i], se[d - 1 - i])) out.b = false;
  out.c = r.nearZeroCount == d - nonzero;
  std::ostringstream s;
  s << "g=" << k.genus() << " n=" << k.oddCount() << " theta=(";
  for (std::size_t i = 0; i < d; ++i) s << (i ? " " : "") << fmt(th[i]) << "+-" << fmt(se[i], 2);
  s << ") nearZero=" << r.nearZeroCount << "/" << d - nonzero << " [a=" << out.a << " b=" << out.b << " c=" << out.c << "]";
  out.detail = s.str();
  return out;
}

Outcome lyapunov() {
  auto t0 = Clock::now();
  const std::vector<std::string> perms{"A B A C D C\nD E B E", "A A\nB C B C D E D E", "A B A B C\nC D E F D E F"};
  bool all = true;
  std::string detail;
  for (std::size_t i = 0; i < perms.size(); ++i) {
    auto c = spectrumCheck(perms[i], 1 + i);
    all = all && c.a && c.b && c.c;
    detail += (i ? "; " : "") + c.detail;
    std::cerr << "  lyapunov " << i + 1 << "/" << perms.size() << ": " << c.detail << " (" << fmt(seconds(t0), 4) << " s)\n";
  }
  const double t = seconds(t0);
  return {all && t < 1800, detail + "; " + fmt(t, 4) + " s"};
}

Outcome integerVectors() {
  Rng rng(107);
  std::size_t nonzero = 0;
  for (int i = 0; i < 20; ++i) {
    auto pi = lt::randomIrreducible(rng, 6);
    auto tr = traceInduction(pi, sampleAdmissibleRational(pi, rng, 1024), 500);
    for (int j = 0; j < 50; ++j) {
      std::vector<Rational> v(pi.size());
      for (auto& x : v) x = Rational(static_cast<long>(rng() % 2001) - 1000);
      auto s = obstructionSeries(tr, v);
      for (const auto& x : s.distances)
        if (x != 0) {
          ++nonzero;
          break;
        }
    }
  }
  return {nonzero == 0, "20 pairs x 50 vectors x 500 steps, " + std::to_string(nonzero) + " nonzero series"};
}

Outcome eigenvalues(const std::string& dumpPath) {
  WeakMixConfig cfg;
  cfg.samples = 50;
  cfg.grid = fareyGrid(16);
  cfg.steps = 2000;
  cfg.correlationN = 0;
  auto r = weakMixingReport(lt::figure1(), cfg);
  json dump = json::array();
  for (std::size_t i = 0; i < r.samples.size(); ++i)
    for (const auto& c : r.samples[i].candidates)
      if (c.t != 0 && c.verdict == Verdict::Decaying) dump.push_back({{"sample", i}, {"lambda", io::toJson(r.samples[i].lambda)}, {"candidate", io::toJson(c)}});
  std::string where;
  if (!dump.empty()) {
    std::ofstream(dumpPath) << dump.dump(2) << "\n";
    where = ", dumped to " + dumpPath;
  }
  return {r.fractionNonDecaying >= 0.9, std::to_string(r.nonDecayingPairs) + "/" + std::to_string(r.nontrivialPairs) + " non-decaying (" +
                                            fmt(100 * r.fractionNonDecaying, 4) + "%), " + std::to_string(r.decayingPairs) + " decaying" + where};
}

Outcome contraction() {
  const std::vector<std::string> perms{"A B A C D C\nD E B E", "A A\nB C B C D E D E", "A B A B C\nC D E F D E F", "A A\nB C B C D D"};
  Rng rng(109);
  bool all = true;
  std::string detail;
  for (const auto& text : perms) {
    auto pi = GeneralizedPermutation::parse(text);
    auto cyc = findPositiveCycle(pi);
    if (!cyc) return {false, "no positive cycle for " + text};
    const auto& B = cyc->product;
    const long double diam = projectiveDiameter(B);
    std::size_t expanded = 0;
    for (int i = 0; i < 10000; ++i) {
      std::vector<Rational> x(pi.size()), y(pi.size());
      for (auto& t : x) t = Rational(randomBits(rng, 30) + 1);
      for (auto& t : y) t = Rational(randomBits(rng, 30) + 1);
      // exact: compare max/min ratios instead of their logs
      if (lt::hilbertRatio(B.apply(x), B.apply(y)) > lt::hilbertRatio(x, y)) ++expanded;
    }
    all = all && std::isfinite(static_cast<double>(diam)) && expanded == 0;
    detail += (detail.empty() ? "" : "; ") + std::string("length ") + std::to_string(cyc->length()) + " diam " + fmt(static_cast<double>(diam)) +
              " expanded " + std::to_string(expanded);
  }
  return {all, detail};
}

Outcome reproducible() {
  const std::vector<std::vector<std::string>> runs{
      {"linvol", "lyapunov", "--perm", "A A|B C B C D D", "--steps", "500", "--batches", "8", "--seed", "11"},
      {"linvol", "veech", "--perm", "A B A C D C|D E B E", "--steps", "500", "--tgrid", "q8", "--seed", "12"},
      {"linvol", "correlate", "--perm", "A B A C D C|D E B E", "--N", "64", "--orbit", "5000", "--seed", "13"},
      {"linvol", "weakmix", "scan", "--perm", "A B A C D C|D E B E", "--samples", "4", "--tgrid", "q6", "--steps", "300", "--N", "16", "--orbit", "2000",
       "--seed", "14"},
  };
  std::size_t differ = 0;
  for (const auto& args : runs) {
    std::ostringstream a, b, e;
    const int ca = cli::run(args, a, e), cb = cli::run(args, b, e);
    if (ca != 0 || cb != 0 || a.str() != b.str()) ++differ;
  }
  // the worker count must not leak into the report
  auto scan = runs.back();
  std::ostringstream one, three, e;
  cli::run(scan, one, e);
  scan.insert(scan.end(), {"--jobs", "3"});
  cli::run(scan, three, e);
  auto strip = [](const std::string& s) {
    auto j = json::parse(s);
    j.erase("meta");
    return j.dump();
  };
  const bool jobsAgree = strip(one.str()) == strip(three.str());
  return {differ == 0 && jobsAgree, std::to_string(runs.size()) + " commands rerun, " + std::to_string(differ) + " differ; jobs 1 vs 3 " +
                                        (jobsAgree ? "agree" : "differ")};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"linvol acceptance checks"};
  std::vector<int> only, expectFail;
  std::string dumpPath = "decaying_candidates.json";
  app.add_option("--only", only, "criteria to run")->delimiter(',');
  app.add_option("--expect-fail", expectFail, "criteria known to fail")->delimiter(',');
  app.add_option("--dump", dumpPath, "where decaying candidates are written");
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"induction inverts the lengths", inversion},
      {"induction step is the first return map", firstReturn},
      {"transposed product counts visits", visiting},
      {"suspension exists iff irreducible", suspensionFeasibility},
      {"strata, covers and invariance of kappa", strata},
      {"Lyapunov spectrum", lyapunov},
      {"integer vectors have zero obstruction", integerVectors},
      {"no eigenvalue candidates survive", [&] { return eigenvalues(dumpPath); }},
      {"positive cycles contract the Hilbert metric", contraction},
      {"reports reproduce from config and seed", reproducible},
  };
  const std::set<int> want(only.begin(), only.end()), expected(expectFail.begin(), expectFail.end());
  int unexpected = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i + 1);
    if (!want.empty() && !want.count(id)) continue;
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::string verdict = o.pass ? "PASS" : "FAIL";
    if (!o.pass && expected.count(id)) verdict += " (expected)";
    if (!o.pass && !expected.count(id)) ++unexpected;
    std::cout << "[" << id << "] " << verdict << "  " << criteria[i].first << ": " << o.detail << std::endl;
  }
  return unexpected == 0 ? 0 : 1;
}
