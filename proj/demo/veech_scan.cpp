// Eigenvalue scan on the genus-2 example: for every t in the Farey grid,
// how many sampled length vectors leave t looking like an eigenvalue.
//   demo_veech_scan [samples] [maxq]
#include <cstdlib>
#include <iostream>
#include <array>
#include <map>

#include "linvol/linvol.hpp"

using namespace linvol;

int main(int argc, char** argv) {
  auto pi = GeneralizedPermutation::parse("A B A C D C\nD E B E");
  WeakMixConfig cfg;
  cfg.samples = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 10;
  cfg.grid = fareyGrid(argc > 2 ? std::strtol(argv[2], nullptr, 10) : 8);
  cfg.steps = 1000;
  cfg.correlationN = 64;
  cfg.orbitLength = 10000;
  auto r = weakMixingReport(pi, cfg);

  std::map<Rational, std::array<int, 3>> tally;
  for (const auto& s : r.samples)
    for (const auto& c : s.candidates) ++tally[c.t][static_cast<int>(c.verdict)];
  std::cout << "t        decaying  non-decaying  inconclusive\n";
  for (const auto& [t, n] : tally) {
    std::string ts = t.get_str();
    ts.resize(9, ' ');
    std::cout << ts << n[0] << "         " << n[1] << "            " << n[2] << "\n";
  }
  std::cout << "\n" << r.nonDecayingPairs << "/" << r.nontrivialPairs << " nontrivial pairs are non-decaying\n";

  std::cout << "\ncorrelations of the first sample (N, C_N):\n";
  if (const auto& c = r.samples.front().correlation)
    for (std::size_t i = 0; i < c->grid.size(); ++i) std::cout << "  " << c->grid[i] << "  " << c->values[i] << "\n";
}
