#pragma once

// Random admissible length vectors.
//
// Lengths are iid unit exponentials; the letters of A1 are then rescaled by
// sum(A0) / sum(A1), which is exactly the length equation once the letters
// crossing the rows cancel out. Non-admissible draws are rejected.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "errors.hpp"
#include "genperm.hpp"
#include "numeric.hpp"

namespace linvol {

using Rng = std::mt19937_64;

/// Uniform double in (0, 1) from 53 random bits; portable across standard
/// libraries, unlike std::uniform_real_distribution.
inline double uniformOpen(Rng& rng) {
  for (;;) {
    double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    if (u > 0.0) return u;
  }
}

inline double exponential(Rng& rng) { return -std::log(uniformOpen(rng)); }

/// Random integer in [0, 2^bits).
inline BigInt randomBits(Rng& rng, unsigned bits) {
  BigInt z = 0;
  unsigned have = 0;
  while (have < bits) {
    unsigned take = std::min(64u, bits - have);
    std::uint64_t chunk = rng();
    if (take < 64) chunk &= (std::uint64_t{1} << take) - 1;
    z <<= take;
    mpz_class c;
    mpz_import(c.get_mpz_t(), 1, 1, sizeof(chunk), 0, 0, &chunk);
    z += c;
    have += take;
  }
  return z;
}

/// Exponential draw as an integer of about `bits` bits: the double's 52-bit
/// mantissa scaled up and extended with random low-order bits.
inline BigInt exponentialInteger(Rng& rng, unsigned bits) {
  double e = exponential(rng);
  BigInt head;
  mpz_set_d(head.get_mpz_t(), std::ldexp(e, 52));
  if (head == 0) head = 1;
  if (bits <= 52) return head;
  return (head << (bits - 52)) + randomBits(rng, bits - 52);
}

/// Rescales lengths so that the top and bottom rows have equal sums.
template <class Scalar>
void enforceLengthEquation(const GeneralizedPermutation& pi, std::vector<Scalar>& lambda) {
  auto cls = letterClasses(pi);
  if (cls.a0.empty() && cls.a1.empty()) return;
  Scalar s0 = 0, s1 = 0;
  for (int a : cls.a0) s0 += lambda[static_cast<std::size_t>(a)];
  for (int a : cls.a1) s1 += lambda[static_cast<std::size_t>(a)];
  for (int a : cls.a1) lambda[static_cast<std::size_t>(a)] = lambda[static_cast<std::size_t>(a)] * s0 / s1;
}

/// Integer-scaled version for exact lengths: multiplies A1 by sum(A0) and
/// everything else by sum(A1), keeping integers integral.
inline void enforceLengthEquation(const GeneralizedPermutation& pi, std::vector<BigInt>& lambda) {
  auto cls = letterClasses(pi);
  if (cls.a0.empty() && cls.a1.empty()) return;
  BigInt s0 = 0, s1 = 0;
  for (int a : cls.a0) s0 += lambda[static_cast<std::size_t>(a)];
  for (int a : cls.a1) s1 += lambda[static_cast<std::size_t>(a)];
  std::vector<bool> inA1(pi.size(), false);
  for (int a : cls.a1) inA1[static_cast<std::size_t>(a)] = true;
  for (std::size_t a = 0; a < lambda.size(); ++a) lambda[a] *= inA1[a] ? s0 : s1;
}

/// Exact admissible lengths with entries of roughly 2 * bits bits.
inline std::vector<Rational> sampleAdmissibleRational(const GeneralizedPermutation& pi, Rng& rng, unsigned bits = 256, int maxTries = 10000) {
  if (!hasValidLengths(pi)) throw NoAdmissibleSample("no positive lengths satisfy the length equation");
  for (int t = 0; t < maxTries; ++t) {
    std::vector<BigInt> z(pi.size());
    for (auto& x : z) x = exponentialInteger(rng, bits);
    enforceLengthEquation(pi, z);
    std::vector<Rational> lambda(z.begin(), z.end());
    if (admissibleCheck(pi, lambda).admissible) return lambda;
  }
  throw NoAdmissibleSample("no admissible draw in " + std::to_string(maxTries) + " tries");
}

/// Floating-point admissible lengths normalised to total length 1.
template <class Scalar>
std::vector<Scalar> sampleAdmissible(const GeneralizedPermutation& pi, Rng& rng, int maxTries = 10000) {
  if (!hasValidLengths(pi)) throw NoAdmissibleSample("no positive lengths satisfy the length equation");
  for (int t = 0; t < maxTries; ++t) {
    std::vector<Scalar> lambda(pi.size());
    for (auto& x : lambda) x = static_cast<Scalar>(exponential(rng));
    enforceLengthEquation(pi, lambda);
    Scalar s = 0;
    for (const auto& x : lambda) s += x;
    for (auto& x : lambda) x /= s;
    if (admissibleCheck(pi, lambda).admissible) return lambda;
  }
  throw NoAdmissibleSample("no admissible draw in " + std::to_string(maxTries) + " tries");
}

}  // namespace linvol
