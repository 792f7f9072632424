#pragma once

// Generators and independent oracles shared by the unit tests and the
// acceptance runner.

#include <algorithm>
#include <string>
#include <vector>

#include "linvol/linvol.hpp"

namespace linvol::testing {

inline GeneralizedPermutation figure1() { return GeneralizedPermutation::parse("A B A C D C\nD E B E"); }
inline std::vector<Rational> figure1Lengths() { return {1, 2, 2, 3, 3}; }

/// Uniform word on d doubled letters, cut at a uniform split.
inline GeneralizedPermutation randomWord(Rng& rng, int d) {
  std::vector<int> w;
  for (int a = 0; a < d; ++a) w.insert(w.end(), {a, a});
  std::shuffle(w.begin(), w.end(), rng);
  std::vector<int> rename(static_cast<std::size_t>(d), -1);
  int next = 0;
  for (int& x : w) {
    if (rename[static_cast<std::size_t>(x)] < 0) rename[static_cast<std::size_t>(x)] = next++;
    x = rename[static_cast<std::size_t>(x)];
  }
  const auto l = static_cast<std::ptrdiff_t>(1 + rng() % static_cast<std::uint64_t>(2 * d - 1));
  std::vector<std::string> alphabet;
  for (int k = 0; k < d; ++k) alphabet.push_back(defaultLabel(k));
  return GeneralizedPermutation(alphabet, std::vector<int>(w.begin(), w.begin() + l), std::vector<int>(w.begin() + l, w.end()));
}

/// Random irreducible permutation with admissible lengths, 2 <= d <= dmax.
/// With `involution`, both rows must also contain a doubled letter.
inline GeneralizedPermutation randomIrreducible(Rng& rng, int dmax, bool involution = false) {
  for (;;) {
    const int d = 2 + static_cast<int>(rng() % static_cast<std::uint64_t>(dmax - 1));
    auto pi = randomWord(rng, d);
    if (involution && !pi.satisfiesInvolutionAssumption()) continue;
    if (!isIrreducible(pi).irreducible) continue;
    if (!isDynamicallyIrreducible(pi).irreducible) continue;
    return pi;
  }
}

/// Exact Hilbert "ratio" max(x/y) / min(x/y): comparing distances without logs.
inline Rational hilbertRatio(const std::vector<Rational>& x, const std::vector<Rational>& y) {
  Rational hi = x[0] / y[0], lo = hi;
  for (std::size_t i = 1; i < x.size(); ++i) {
    Rational r = x[i] / y[i];
    if (r > hi) hi = r;
    if (r < lo) lo = r;
  }
  return hi / lo;
}

/// Irreducibility decided geometrically: a suspension exists exactly for the
/// irreducible permutations, and the LP finds one without any corner analysis.
inline bool bruteIrreducible(const GeneralizedPermutation& pi) { return suspensionLp(pi).feasible; }

/// Entries of (B^T v) computed by explicit matrix products.
inline std::vector<Rational> transposeApply(const BigMatrix& b, const std::vector<Rational>& v) {
  std::vector<Rational> out(v.size(), 0);
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += Rational(b(j, i)) * v[j];
  return out;
}

}  // namespace linvol::testing
