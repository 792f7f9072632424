// Lyapunov spectra for a few strata.
//   demo_lyapunov_table [steps] [batches]
#include <cstdlib>
#include <iomanip>
#include <iostream>

#include "linvol/linvol.hpp"

using namespace linvol;

int main(int argc, char** argv) {
  LyapunovConfig cfg;
  cfg.steps = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 5000;
  cfg.batches = argc > 2 ? std::strtoul(argv[2], nullptr, 10) : 16;
  cfg.warmup = 200;
  const char* perms[] = {"A A B B\nC C", "A A\nB C B C D D", "A B A C D C\nD E B E", "A A\nB C B C D E D E", "A B A B C\nC D E F D E F"};

  std::cout << std::fixed << std::setprecision(4);
  for (const char* text : perms) {
    auto pi = GeneralizedPermutation::parse(text);
    auto k = singularityPattern(pi);
    std::cout << "Q(";
    for (std::size_t i = 0; i < k.orders.size(); ++i) std::cout << (i ? "," : "") << k.orders[i];
    std::cout << ")  g=" << k.genus() << "  d=" << pi.size() << "\n";
    auto r = lyapunovSpectrum(pi, cfg);
    for (std::size_t i = 0; i < r.exponents.size(); ++i)
      std::cout << "  " << std::setw(9) << r.exponents[i] << " +- " << r.stderrs[i] << "   ratio " << std::setw(7) << r.ratios[i] << "\n";
    std::cout << "  near zero: " << r.nearZeroCount << " (expected " << pi.size() - static_cast<std::size_t>(hDimension(pi)) << ")\n\n";
  }
}
