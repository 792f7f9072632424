#include <gtest/gtest.h>

#include "support.hpp"

using namespace linvol;
using linvol::testing::figure1;

namespace {

std::vector<std::string> names(const GeneralizedPermutation& pi, const std::vector<int>& xs) {
  std::vector<std::string> out;
  for (int x : xs) out.push_back(pi.label(x));
  return out;
}

}  // namespace

TEST(Validate, Figure1Shape) {
  auto pi = validate({"A", "B", "A", "C", "D", "C"}, {"D", "E", "B", "E"});
  EXPECT_EQ(pi.size(), 5u);
  EXPECT_EQ(pi.topLength(), 6);
  EXPECT_EQ(pi.bottomLength(), 4);
  EXPECT_TRUE(pi.satisfiesInvolutionAssumption());
  for (int p = 0; p < pi.positions(); ++p) {
    EXPECT_NE(pi.partner(p), p);
    EXPECT_EQ(pi.partner(pi.partner(p)), p);
    EXPECT_EQ(pi.letterAt(pi.partner(p)), pi.letterAt(p));
  }
}

TEST(Validate, Errors) {
  EXPECT_THROW(validate({"A", "A", "B"}, {"B", "B", "A"}), LabelCountError);
  EXPECT_THROW(validate({}, {"A", "A"}), EmptyRowError);
  EXPECT_THROW(validate({"A", "A"}, {}), EmptyRowError);
  EXPECT_THROW(GeneralizedPermutation::parse("A B A"), ParseError);
}

TEST(Validate, CrossingOnlyIsFlaggedNotRejected) {
  auto pi = validate({"A", "B"}, {"A", "B"});
  EXPECT_FALSE(pi.satisfiesInvolutionAssumption());
  auto c = letterClasses(pi);
  EXPECT_TRUE(c.a0.empty());
  EXPECT_TRUE(c.a1.empty());
}

TEST(Validate, Idempotent) {
  Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    auto pi = linvol::testing::randomWord(rng, 2 + i % 5);
    auto again = validate(names(pi, pi.top()), names(pi, pi.bottom()));
    EXPECT_EQ(again, pi);
    EXPECT_EQ(GeneralizedPermutation::parse(pi.toText()), pi);
  }
}

TEST(LetterClasses, Examples) {
  auto pi = figure1();
  auto c = letterClasses(pi);
  EXPECT_EQ(names(pi, c.a0), (std::vector<std::string>{"A", "C"}));
  EXPECT_EQ(names(pi, c.a1), (std::vector<std::string>{"E"}));
  EXPECT_EQ(names(pi, c.a01), (std::vector<std::string>{"B", "D"}));

  auto q = validate({"A", "A"}, {"B", "B"});
  auto cq = letterClasses(q);
  EXPECT_EQ(names(q, cq.a0), (std::vector<std::string>{"A"}));
  EXPECT_EQ(names(q, cq.a1), (std::vector<std::string>{"B"}));
  EXPECT_TRUE(cq.a01.empty());

  auto r = validate({"A", "B"}, {"B", "A"});
  auto cr = letterClasses(r);
  EXPECT_EQ(cr.a01.size(), 2u);
}

TEST(LengthEquation, ReducesToA0EqualsA1) {
  Rng rng(11);
  auto pi = figure1();
  auto c = letterClasses(pi);
  for (int i = 0; i < 1000; ++i) {
    std::vector<BigInt> z(pi.size());
    for (auto& x : z) x = exponentialInteger(rng, 40);
    enforceLengthEquation(pi, z);
    BigInt top = 0, bottom = 0, s0 = 0, s1 = 0;
    for (int a : pi.top()) top += z[static_cast<std::size_t>(a)];
    for (int a : pi.bottom()) bottom += z[static_cast<std::size_t>(a)];
    for (int a : c.a0) s0 += z[static_cast<std::size_t>(a)];
    for (int a : c.a1) s1 += z[static_cast<std::size_t>(a)];
    ASSERT_EQ(top, bottom);
    ASSERT_EQ(s0, s1);
  }
}

TEST(Irreducible, Figure1) { EXPECT_TRUE(isIrreducible(figure1()).irreducible); }

TEST(Irreducible, AgreesWithSuspensionOracleUpToFourLetters) {
  std::size_t reducible = 0;
  for (int d = 1; d <= 4; ++d)
    for (const auto& pi : enumerateAll(d)) {
      auto r = isIrreducible(pi);
      ASSERT_EQ(r.irreducible, linvol::testing::bruteIrreducible(pi)) << pi.toText();
      ASSERT_EQ(r.witness.has_value(), !r.irreducible);
      if (r.witness) {
        ++reducible;
        EXPECT_FALSE(r.witness->shape.empty());
      }
    }
  EXPECT_GT(reducible, 0u);
}

TEST(Irreducible, CommonPrefixIsReducible) {
  // the two rows start with the same letter pair arrangement
  auto pi = validate({"A", "B", "B", "C"}, {"A", "D", "D", "C"});
  auto r = isIrreducible(pi);
  EXPECT_FALSE(r.irreducible);
  ASSERT_TRUE(r.witness.has_value());
}

TEST(Admissible, Figure1Lengths) {
  auto pi = figure1();
  auto v = admissibleCheck(pi, linvol::testing::figure1Lengths());
  EXPECT_TRUE(v.admissible);
  EXPECT_FALSE(v.witness.has_value());
  EXPECT_THROW(admissibleCheck(pi, std::vector<Rational>{1, 2, 3}), ParameterMismatch);
}

TEST(Admissible, WitnessesRecheck) {
  Rng rng(5);
  std::size_t rejected = 0;
  for (int i = 0; i < 300; ++i) {
    auto pi = linvol::testing::randomWord(rng, 2 + i % 4);
    if (!hasValidLengths(pi)) continue;
    std::vector<BigInt> z(pi.size());
    for (auto& x : z) x = exponentialInteger(rng, 20);
    enforceLengthEquation(pi, z);
    std::vector<Rational> lambda(z.begin(), z.end());
    auto v = admissibleCheck(pi, lambda);
    ASSERT_EQ(v.witness.has_value(), !v.admissible);
    if (v.admissible) {
      EXPECT_TRUE(isDynamicallyIrreducible(pi).irreducible) << pi.toText();
    } else {
      ++rejected;
      EXPECT_TRUE(witnessHolds(pi, lambda, *v.witness)) << pi.toText();
    }
  }
  EXPECT_GT(rejected, 0u);
}

TEST(Admissible, CaseOneIsParameterFree) {
  auto pi = validate({"A", "B", "B", "C"}, {"A", "D", "D", "C"});
  ASSERT_FALSE(caseOneWitnesses(pi).empty());
  EXPECT_FALSE(isDynamicallyIrreducible(pi).irreducible);
  Rng rng(2);
  for (int i = 0; i < 20; ++i) {
    std::vector<Rational> lambda(4);
    for (auto& x : lambda) x = Rational(exponentialInteger(rng, 16)) + 1;
    lambda[3] = lambda[1];  // B and D are the doubled letters
    EXPECT_FALSE(admissibleCheck(pi, lambda).admissible);
  }
}

TEST(DynamicallyIrreducible, Figure1WitnessIsAdmissible) {
  auto r = isDynamicallyIrreducible(figure1());
  ASSERT_TRUE(r.irreducible);
  EXPECT_GT(r.slack, 0);
  EXPECT_TRUE(admissibleCheck(figure1(), r.witnessLengths).admissible);
  LinearInvolution T(figure1(), r.witnessLengths);  // satisfies the length equation
  EXPECT_GT(T.total(), 0);
}

TEST(DynamicallyIrreducible, WitnessLengthsAreAdmissible) {
  for (int d = 2; d <= 4; ++d)
    for (const auto& pi : enumerateAll(d)) {
      auto r = isDynamicallyIrreducible(pi);
      if (!r.irreducible) continue;
      ASSERT_TRUE(admissibleCheck(pi, r.witnessLengths).admissible) << pi.toText();
    }
}
