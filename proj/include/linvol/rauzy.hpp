#pragma once

// Rauzy-Veech induction on generalized permutations.
//
// With a0 the last top letter and a1 the last bottom letter, the move is Top
// when lambda[a0] > lambda[a1] and Bottom otherwise; the longer one is the
// winner w and the shorter the loser u. The winner is shortened by the loser
// and the loser is moved next to the other occurrence of the winner. The
// elementary matrix is B = I + E(w, u), so that B * lambda' = lambda.

#include <array>
#include <deque>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "errors.hpp"
#include "genperm.hpp"
#include "involution.hpp"
#include "numeric.hpp"
#include "sampler.hpp"

namespace linvol {

enum class Move : std::uint8_t { Top = 0, Bottom = 1 };

inline const char* toString(Move m) { return m == Move::Top ? "top" : "bottom"; }

struct InductionStep {
  Move move = Move::Top;
  int winner = 0;
  int loser = 0;
  GeneralizedPermutation successor;

  /// The elementary matrix I + E(winner, loser).
  BigMatrix matrix(std::size_t d) const {
    BigMatrix b = BigMatrix::identity(d);
    b(static_cast<std::size_t>(winner), static_cast<std::size_t>(loser)) = 1;
    return b;
  }
};

/// Winner and loser of a move on pi, independent of lengths.
inline std::pair<int, int> players(const GeneralizedPermutation& pi, Move m) {
  int a0 = pi.lastTopLetter(), a1 = pi.lastBottomLetter();
  return m == Move::Top ? std::make_pair(a0, a1) : std::make_pair(a1, a0);
}

/// The combinatorial successor of pi under a move.
inline GeneralizedPermutation applyMove(const GeneralizedPermutation& pi, Move m) {
  auto [w, u] = players(pi, m);
  std::vector<int> rows[2] = {pi.top(), pi.bottom()};
  const int winRow = m == Move::Top ? 0 : 1;
  const int loseRow = 1 - winRow;
  // remove the loser from the end of its row
  rows[loseRow].pop_back();
  // the other occurrence of the winner (not the last one of winRow)
  auto [p, q] = pi.occurrences(w);
  int lastWin = pi.flat(static_cast<Row>(winRow), pi.rowLength(static_cast<Row>(winRow)) - 1);
  int other = p == lastWin ? q : p;
  const int otherRow = index(pi.rowOf(other));
  int j = pi.indexInRow(other);
  if (otherRow == loseRow) {
    // partner on the opposite row: the loser goes right after it
    rows[otherRow].insert(rows[otherRow].begin() + j + 1, u);
  } else {
    // partner on the same row: the loser goes right before it
    rows[otherRow].insert(rows[otherRow].begin() + j, u);
  }
  if (rows[0].empty() || rows[1].empty()) throw MoveUndefined(std::string(toString(m)) + " move would empty a row");
  return GeneralizedPermutation(pi.alphabet(), std::move(rows[0]), std::move(rows[1]));
}

template <class Scalar>
Move moveFor(const GeneralizedPermutation& pi, const std::vector<Scalar>& lambda, std::size_t step = 0) {
  const auto& x = lambda[static_cast<std::size_t>(pi.lastTopLetter())];
  const auto& y = lambda[static_cast<std::size_t>(pi.lastBottomLetter())];
  if (x == y) throw TieError(step);
  return x > y ? Move::Top : Move::Bottom;
}

/// One induction step; returns the step and the new lengths.
template <class Scalar>
std::pair<InductionStep, std::vector<Scalar>> inductStep(const GeneralizedPermutation& pi, const std::vector<Scalar>& lambda, std::size_t stepIndex = 0) {
  if (lambda.size() != pi.size()) throw ParameterMismatch("length vector does not match the alphabet");
  Move m = moveFor(pi, lambda, stepIndex);
  auto [w, u] = players(pi, m);
  InductionStep s{m, w, u, applyMove(pi, m)};
  std::vector<Scalar> next = lambda;
  next[static_cast<std::size_t>(w)] -= lambda[static_cast<std::size_t>(u)];
  return {std::move(s), std::move(next)};
}

struct PathMatrix {
  std::vector<InductionStep> path;
  BigMatrix product;  // B_0 B_1 ... B_{n-1}
  GeneralizedPermutation startPerm, endPerm;

  static PathMatrix identity(const GeneralizedPermutation& pi) { return {{}, BigMatrix::identity(pi.size()), pi, pi}; }

  /// Right-multiplies by the elementary matrix of s.
  void append(const InductionStep& s) {
    const std::size_t d = product.size();
    for (std::size_t i = 0; i < d; ++i) product(i, static_cast<std::size_t>(s.loser)) += product(i, static_cast<std::size_t>(s.winner));
    endPerm = s.successor;
    path.push_back(s);
  }

  std::size_t length() const { return path.size(); }
  BigMatrix visiting() const { return product.transpose(); }
};

template <class Scalar>
struct InductionResult {
  PathMatrix path;
  std::vector<Scalar> lengths;  // lambda^(n)
};

/// n elementary steps. On a tie, the TieError carries the step index; the
/// partial path is lost with the exception, so callers wanting it should use
/// inductStep directly.
template <class Scalar>
InductionResult<Scalar> inductPath(const GeneralizedPermutation& pi, const std::vector<Scalar>& lambda, std::size_t n) {
  InductionResult<Scalar> r{PathMatrix::identity(pi), lambda};
  for (std::size_t k = 0; k < n; ++k) {
    auto [s, next] = inductStep(r.path.endPerm, r.lengths, k);
    r.path.append(s);
    r.lengths = std::move(next);
  }
  return r;
}

struct ZorichStep {
  Move move;
  std::size_t runLength;
};

template <class Scalar>
struct ZorichResult {
  PathMatrix path;  // the underlying elementary path
  std::vector<ZorichStep> runs;
  std::vector<Scalar> lengths;
};

/// k accelerated steps, each a maximal run of equal moves. A run ends when
/// the next move differs or is undefined by a tie.
template <class Scalar>
ZorichResult<Scalar> zorichPath(const GeneralizedPermutation& pi, const std::vector<Scalar>& lambda, std::size_t k, std::size_t runCap = 10000) {
  ZorichResult<Scalar> r{PathMatrix::identity(pi), {}, lambda};
  std::size_t elementary = 0;
  for (std::size_t z = 0; z < k; ++z) {
    Move m = moveFor(r.path.endPerm, r.lengths, elementary);
    std::size_t run = 0;
    for (;;) {
      auto [s, next] = inductStep(r.path.endPerm, r.lengths, elementary);
      r.path.append(s);
      r.lengths = std::move(next);
      ++run;
      ++elementary;
      if (run > runCap) throw RunCapExceeded("Zorich run exceeded " + std::to_string(runCap) + " elementary steps");
      const auto& pi2 = r.path.endPerm;
      const auto& x = r.lengths[static_cast<std::size_t>(pi2.lastTopLetter())];
      const auto& y = r.lengths[static_cast<std::size_t>(pi2.lastBottomLetter())];
      if (x == y || (x > y ? Move::Top : Move::Bottom) != m) break;
    }
    r.runs.push_back({m, run});
  }
  return r;
}

/// Groups a sequence of moves into maximal runs.
inline std::vector<ZorichStep> groupRuns(const std::vector<Move>& moves) {
  std::vector<ZorichStep> out;
  for (Move m : moves) {
    if (!out.empty() && out.back().move == m)
      ++out.back().runLength;
    else
      out.push_back({m, 1});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Rauzy classes

/// Is there an admissible lambda for pi under which the move happens?
inline bool moveRealizable(const GeneralizedPermutation& pi, Move m) {
  if (!caseOneWitnesses(pi).empty()) return false;
  auto [w, u] = players(pi, m);
  if (w == u) return false;
  const std::size_t d = pi.size();
  lp::Problem base(d);
  std::vector<Rational> eq(d, 0), norm(d, 1);
  for (int a : pi.top()) eq[static_cast<std::size_t>(a)] += 1;
  for (int a : pi.bottom()) eq[static_cast<std::size_t>(a)] -= 1;
  base.add(eq, lp::Sense::Equal, 0);
  base.add(norm, lp::Sense::Equal, 1);
  std::vector<lp::Constraint> strict;
  for (std::size_t a = 0; a < d; ++a) {
    std::vector<Rational> e(d, 0);
    e[a] = 1;
    strict.push_back({e, lp::Sense::GreaterEq, 0});
  }
  for (const auto& wit : caseTwoDecompositions(pi)) strict.push_back({detail::caseTwoMargin(d, wit), lp::Sense::GreaterEq, 0});
  std::vector<Rational> win(d, 0);
  win[static_cast<std::size_t>(w)] = 1;
  win[static_cast<std::size_t>(u)] = -1;
  strict.push_back({win, lp::Sense::GreaterEq, 0});
  return lp::strictFeasible(base, strict).feasible;
}

struct RauzyClass {
  std::vector<GeneralizedPermutation> nodes;
  // edges[node][move] = successor id, or -1 when the move is undefined or
  // never happens for admissible lengths
  std::vector<std::array<int, 2>> edges;
  std::vector<std::array<std::pair<int, int>, 2>> players;  // (winner, loser)
  std::unordered_map<std::string, int> ids;

  std::size_t size() const { return nodes.size(); }
  std::optional<int> find(const GeneralizedPermutation& pi) const {
    auto it = ids.find(pi.key());
    if (it == ids.end()) return std::nullopt;
    return it->second;
  }
  bool contains(const GeneralizedPermutation& pi) const { return find(pi).has_value(); }

  /// Graphviz rendering.
  std::string toDot() const {
    std::string s = "digraph rauzy {\n";
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      std::string label = nodes[i].toText();
      std::replace(label.begin(), label.end(), '\n', '|');
      s += "  n" + std::to_string(i) + " [label=\"" + label + "\"];\n";
    }
    for (std::size_t i = 0; i < nodes.size(); ++i)
      for (int m = 0; m < 2; ++m)
        if (edges[i][static_cast<std::size_t>(m)] >= 0)
          s += "  n" + std::to_string(i) + " -> n" + std::to_string(edges[i][static_cast<std::size_t>(m)]) + " [label=\"" + (m == 0 ? "t" : "b") + "\"];\n";
    return s + "}\n";
  }
};

/// Breadth-first closure of pi under the moves that occur for admissible
/// lengths. Undefined moves are recorded as -1.
inline RauzyClass rauzyClass(const GeneralizedPermutation& pi, std::size_t cap = 100000) {
  RauzyClass c;
  auto intern = [&](const GeneralizedPermutation& p) {
    auto [it, fresh] = c.ids.emplace(p.key(), static_cast<int>(c.nodes.size()));
    if (fresh) {
      if (c.nodes.size() >= cap) throw ClassCapExceeded("Rauzy class exceeds " + std::to_string(cap) + " nodes");
      c.nodes.push_back(p);
      c.edges.push_back({-1, -1});
      c.players.push_back({std::make_pair(-1, -1), std::make_pair(-1, -1)});
    }
    return it->second;
  };
  intern(pi);
  for (std::size_t i = 0; i < c.nodes.size(); ++i) {
    for (int m = 0; m < 2; ++m) {
      const auto node = c.nodes[i];
      Move mv = static_cast<Move>(m);
      if (!moveRealizable(node, mv)) continue;
      try {
        int j = intern(applyMove(node, mv));
        c.edges[i][static_cast<std::size_t>(m)] = j;
        c.players[i][static_cast<std::size_t>(m)] = players(node, mv);
      } catch (const MoveUndefined&) {
      }
    }
  }
  return c;
}

/// A closed path at pi whose matrix has all entries >= 1. Follows the
/// induction orbit of exact admissible lengths drawn from a fixed seed until
/// the product is positive. If the orbit does not come back to pi on its own
/// (large classes), the loop is closed along a shortest path in the Rauzy
/// class; appending elementary matrices keeps a positive product positive.
inline std::optional<PathMatrix> findPositiveCycle(const GeneralizedPermutation& pi, std::size_t maxSteps = 20000, std::uint64_t seed = 1, int attempts = 8) {
  Rng rng(seed);
  std::optional<PathMatrix> positive;
  for (int t = 0; t < attempts; ++t) {
    std::vector<Rational> lambda = sampleAdmissibleRational(pi, rng, 512);
    PathMatrix path = PathMatrix::identity(pi);
    try {
      for (std::size_t k = 0; k < maxSteps; ++k) {
        auto [s, next] = inductStep(path.endPerm, lambda, k);
        path.append(s);
        lambda = std::move(next);
        if (path.product.minEntry() < 1) continue;
        if (path.endPerm == pi) return path;
        if (!positive) positive = path;
      }
    } catch (const TieError&) {
    }
  }
  if (!positive) return std::nullopt;
  RauzyClass cls;
  try {
    cls = rauzyClass(pi);
  } catch (const ClassCapExceeded&) {
    return std::nullopt;
  }
  const int from = *cls.find(positive->endPerm), to = *cls.find(pi);
  std::vector<std::pair<int, int>> parent(cls.size(), {-1, -1});  // (node, move)
  std::vector<int> queue{from};
  parent[static_cast<std::size_t>(from)] = {from, -1};
  for (std::size_t h = 0; h < queue.size() && parent[static_cast<std::size_t>(to)].first < 0; ++h)
    for (int m = 0; m < 2; ++m) {
      const int j = cls.edges[static_cast<std::size_t>(queue[h])][static_cast<std::size_t>(m)];
      if (j < 0 || parent[static_cast<std::size_t>(j)].first >= 0) continue;
      parent[static_cast<std::size_t>(j)] = {queue[h], m};
      queue.push_back(j);
    }
  if (parent[static_cast<std::size_t>(to)].first < 0) return std::nullopt;
  std::vector<InductionStep> tail;
  for (int v = to; v != from; v = parent[static_cast<std::size_t>(v)].first) {
    auto [u, m] = parent[static_cast<std::size_t>(v)];
    auto [w, l] = cls.players[static_cast<std::size_t>(u)][static_cast<std::size_t>(m)];
    tail.push_back({static_cast<Move>(m), w, l, cls.nodes[static_cast<std::size_t>(v)]});
  }
  for (auto it = tail.rbegin(); it != tail.rend(); ++it) positive->append(*it);
  return positive;
}

}  // namespace linvol
