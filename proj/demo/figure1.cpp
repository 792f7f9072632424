// Walks through the standard genus-2 example: letter classes, stratum,
// one induction step, the suspension and the Rauzy class.
#include <iomanip>
#include <iostream>

#include "linvol/linvol.hpp"

using namespace linvol;

namespace {

void printLabels(const GeneralizedPermutation& pi, const char* name, const std::vector<int>& xs) {
  std::cout << "  " << name << ":";
  for (int a : xs) std::cout << " " << pi.label(a);
  std::cout << "\n";
}

template <class V>
void printVector(const char* name, const V& v) {
  std::cout << "  " << name << " = (";
  for (std::size_t i = 0; i < v.size(); ++i) std::cout << (i ? ", " : "") << v[i];
  std::cout << ")\n";
}

}  // namespace

int main() {
  auto pi = GeneralizedPermutation::parse("A B A C D C\nD E B E");
  std::vector<Rational> lambda{1, 2, 2, 3, 3};
  std::cout << pi.toText() << "\n\n";

  auto cls = letterClasses(pi);
  std::cout << "letters\n";
  printLabels(pi, "top only", cls.a0);
  printLabels(pi, "bottom only", cls.a1);
  printLabels(pi, "both rows", cls.a01);
  std::cout << "  irreducible: " << std::boolalpha << isIrreducible(pi).irreducible
            << ", dynamically: " << isDynamicallyIrreducible(pi).irreducible << "\n\n";

  auto k = singularityPattern(pi);
  std::cout << "stratum Q(";
  for (std::size_t i = 0; i < k.orders.size(); ++i) std::cout << (i ? "," : "") << k.orders[i];
  auto cover = doubleCoverPattern(k);
  std::cout << "), genus " << k.genus() << ", dim H^- = " << hDimension(pi) << "; double cover has genus " << cover.genus() << "\n\n";

  LinearInvolution T(pi, lambda);
  std::cout << "T on [0, " << T.total() << "), induction window [0, " << inductionWindow(T) << ")\n";
  auto [step, next] = inductStep(pi, lambda);
  std::cout << "  " << toString(step.move) << " move, winner " << pi.label(step.winner) << ", loser " << pi.label(step.loser) << "\n";
  std::cout << "  successor:\n" << step.successor.toText() << "\n";
  printVector("lengths", next);
  auto F = firstReturnMap(T, inductionWindow(T));
  std::cout << "  first return map agrees: " << (F.permutation() == step.successor && F.lengths() == next) << "\n\n";

  auto z = findSuspensionData(pi, lambda);
  auto h = heights(z);
  std::cout << "suspension\n";
  printVector("tau", z.tau);
  printVector("heights", h.height);
  std::cout << "  area " << h.area << "\n\n";

  auto rc = rauzyClass(pi);
  std::cout << "Rauzy class: " << rc.size() << " permutations\n";
  if (auto cyc = findPositiveCycle(pi))
    std::cout << "positive cycle of length " << cyc->length() << ", projective diameter " << std::setprecision(3)
              << static_cast<double>(projectiveDiameter(cyc->product)) << "\n";
}
