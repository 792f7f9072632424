#pragma once

// Linear involutions T = tau o f on two copies of [0, L).
//
// f sends a point of the subinterval at position i isometrically onto the
// subinterval of its partner position: by a translation when the two
// positions lie in different rows, by a flip when they share a row. tau then
// exchanges the two components. Each subinterval owns its left endpoint; the
// interior breakpoints of a row are the singularities of T on that row.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "genperm.hpp"
#include "numeric.hpp"

namespace linvol {

struct MarkedPoint {
  Rational x;
  int component = 0;

  bool operator==(const MarkedPoint& o) const { return component == o.component && x == o.x; }
  bool operator!=(const MarkedPoint& o) const { return !(*this == o); }
  bool operator<(const MarkedPoint& o) const { return component != o.component ? component < o.component : x < o.x; }
};

struct Connection {
  MarkedPoint start;  // singularity of the inverse
  std::size_t length = 0;
  MarkedPoint end;  // singularity of T
};

struct Orbit {
  std::vector<MarkedPoint> points;
  std::vector<int> itinerary;  // flat position of each point (-1 if singular)
  bool truncated = false;
  std::optional<std::size_t> cycleStart;  // first index of the periodic part
  std::optional<std::size_t> period;
};

class LinearInvolution {
 public:
  LinearInvolution() = default;

  LinearInvolution(GeneralizedPermutation pi, std::vector<Rational> lambda) : pi_(std::move(pi)), lambda_(std::move(lambda)) {
    if (lambda_.size() != pi_.size())
      throw ParameterMismatch("length vector has " + std::to_string(lambda_.size()) + " entries for " + std::to_string(pi_.size()) + " letters");
    for (std::size_t a = 0; a < lambda_.size(); ++a)
      if (lambda_[a] <= 0) throw PositivityError("length of '" + pi_.label(static_cast<int>(a)) + "' is not positive");
    Rational top = 0, bottom = 0;
    start_.resize(static_cast<std::size_t>(pi_.positions()));
    for (int p = 0; p < pi_.positions(); ++p) {
      Rational& acc = pi_.rowOf(p) == Row::Top ? top : bottom;
      start_[static_cast<std::size_t>(p)] = acc;
      acc += length(pi_.letterAt(p));
    }
    if (top != bottom) throw SumMismatch("top row sums to " + toString(top) + " but bottom row to " + toString(bottom));
    total_ = top;
  }

  const GeneralizedPermutation& permutation() const { return pi_; }
  const std::vector<Rational>& lengths() const { return lambda_; }
  const Rational& length(int letter) const { return lambda_[static_cast<std::size_t>(letter)]; }
  const Rational& total() const { return total_; }

  /// Left endpoint of the subinterval at a flat position.
  const Rational& start(int pos) const { return start_[static_cast<std::size_t>(pos)]; }
  Rational end(int pos) const { return start(pos) + length(pi_.letterAt(pos)); }

  /// Right endpoints of the subintervals of one row, left to right.
  std::vector<Rational> endpoints(Row r) const {
    std::vector<Rational> out;
    for (int i = 0; i < pi_.rowLength(r); ++i) out.push_back(end(pi_.flat(r, i)));
    return out;
  }

  /// Interior breakpoints 0 < x < L of a row.
  std::vector<Rational> breakpoints(Row r) const {
    std::vector<Rational> out;
    for (int i = 1; i < pi_.rowLength(r); ++i) out.push_back(start(pi_.flat(r, i)));
    return out;
  }

  bool isBreakpoint(Row r, const Rational& x) const {
    if (x <= 0 || x >= total_) return false;
    return locate(r, x).second == 0;
  }

  /// Flat position of the subinterval of row r owning x, and the offset of x in it.
  std::pair<int, Rational> locate(Row r, const Rational& x) const {
    if (x < 0 || x >= total_) throw SingularPoint("coordinate " + toString(x) + " outside [0, " + toString(total_) + ")");
    int lo = pi_.flat(r, 0), hi = lo + pi_.rowLength(r) - 1;
    while (lo < hi) {  // last position with start <= x
      int mid = (lo + hi + 1) / 2;
      if (start(mid) <= x)
        lo = mid;
      else
        hi = mid - 1;
    }
    return {lo, x - start(lo)};
  }

  int positionOf(const MarkedPoint& p) const { return locate(static_cast<Row>(p.component), p.x).first; }

  bool isSingular(const MarkedPoint& p) const { return isBreakpoint(static_cast<Row>(p.component), p.x); }
  bool isInverseSingular(const MarkedPoint& p) const { return isBreakpoint(static_cast<Row>(1 - p.component), p.x); }

  /// Image of the isometry f restricted to position pos, evaluated at offset.
  std::pair<Rational, Row> applyBranch(int pos, const Rational& offset) const {
    int q = pi_.partner(pos);
    Rational y = pi_.rowOf(q) == pi_.rowOf(pos) ? Rational(end(q) - offset) : Rational(start(q) + offset);
    return {y, pi_.rowOf(q)};
  }

  MarkedPoint evaluate(const MarkedPoint& p) const {
    Row r = static_cast<Row>(p.component);
    if (isBreakpoint(r, p.x)) throw SingularPoint("point " + toString(p.x) + " on component " + std::to_string(p.component) + " is a breakpoint");
    auto [pos, offset] = locate(r, p.x);
    auto [y, row] = applyBranch(pos, offset);
    if (y == total_) throw SingularPoint("image of " + toString(p.x) + " falls on the right end");
    return {y, 1 - index(row)};
  }

  MarkedPoint evaluateInverse(const MarkedPoint& p) const {
    Row r = other(static_cast<Row>(p.component));
    if (isBreakpoint(r, p.x)) throw SingularPoint("point " + toString(p.x) + " is singular for the inverse");
    auto [pos, offset] = locate(r, p.x);
    auto [y, row] = applyBranch(pos, offset);
    if (y == total_) throw SingularPoint("inverse image of " + toString(p.x) + " falls on the right end");
    return {y, index(row)};
  }

  /// Forward orbit of length n, stopping early at a singularity. With
  /// detectCycle, stops at the first repeated state and reports the period.
  Orbit orbit(const MarkedPoint& p, std::size_t n, bool detectCycle = false) const {
    Orbit o;
    std::map<MarkedPoint, std::size_t> seen;
    MarkedPoint cur = p;
    for (std::size_t k = 0;; ++k) {
      if (detectCycle) {
        auto [it, fresh] = seen.emplace(cur, k);
        if (!fresh) {
          o.cycleStart = it->second;
          o.period = k - it->second;
          return o;
        }
      }
      o.points.push_back(cur);
      bool singular = isSingular(cur);
      o.itinerary.push_back(singular ? -1 : positionOf(cur));
      if (k == n) break;
      if (singular) {
        o.truncated = true;
        break;
      }
      try {
        cur = evaluate(cur);
      } catch (const SingularPoint&) {
        o.truncated = true;
        break;
      }
    }
    return o;
  }

  /// Searches for an orbit segment from a singularity of the inverse to a
  /// singularity of T of length at most maxLen.
  std::optional<Connection> detectConnection(std::size_t maxLen) const {
    std::vector<MarkedPoint> starts;
    for (int c = 0; c < 2; ++c)
      for (const auto& x : breakpoints(other(static_cast<Row>(c)))) starts.push_back({x, c});
    std::optional<Connection> best;
    for (const auto& s : starts) {
      MarkedPoint cur = s;
      for (std::size_t n = 0; n <= maxLen; ++n) {
        if (best && n >= best->length) break;
        if (isSingular(cur)) {
          best = Connection{s, n, cur};
          break;
        }
        if (n == maxLen) break;
        try {
          cur = evaluate(cur);
        } catch (const SingularPoint&) {
          break;
        }
      }
    }
    return best;
  }

  bool operator==(const LinearInvolution& o) const { return pi_ == o.pi_ && lambda_ == o.lambda_; }
  bool operator!=(const LinearInvolution& o) const { return !(*this == o); }

 private:
  GeneralizedPermutation pi_;
  std::vector<Rational> lambda_;
  std::vector<Rational> start_;
  Rational total_ = 0;
};

inline LinearInvolution build(const GeneralizedPermutation& pi, const std::vector<Rational>& lambda) { return LinearInvolution(pi, lambda); }

// ---------------------------------------------------------------------------
// First-return maps by exact interval propagation

namespace detail {

// An open interval (a, b) of the base, carried by the current iterate of T:
// its image is y(x) = lo + sign * (x - a) on component `comp`.
struct Piece {
  int row = 0;
  Rational a, b;
  int comp = 0;
  Rational lo;
  int sign = 1;
  std::size_t steps = 0;

  Rational image(const Rational& x) const { return sign > 0 ? Rational(lo + (x - a)) : Rational(lo - (x - a)); }
  Rational preimage(const Rational& y) const { return sign > 0 ? Rational(a + (y - lo)) : Rational(a + (lo - y)); }
  std::pair<Rational, Rational> imageSpan() const {
    Rational u = image(a), v = image(b);
    return u < v ? std::make_pair(u, v) : std::make_pair(v, u);
  }
};

}  // namespace detail

/// The map induced by T on [0, sub) x {0, 1}, as a new linear involution.
/// Letters are kept when both pieces of a new pair lie inside the same old
/// letter; other pairs take the unused old letters in alphabet order.
inline LinearInvolution firstReturnMap(const LinearInvolution& T, const Rational& sub, std::size_t cap = 1000000) {
  const auto& pi = T.permutation();
  if (sub <= 0 || sub > T.total()) throw ParameterMismatch("window " + toString(sub) + " outside (0, L]");

  std::vector<detail::Piece> work, done;
  for (int c = 0; c < 2; ++c) {
    Row r = static_cast<Row>(c);
    std::vector<Rational> cuts{0};
    for (const auto& x : T.breakpoints(r))
      if (x < sub) cuts.push_back(x);
    cuts.push_back(sub);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) work.push_back({c, cuts[i], cuts[i + 1], c, cuts[i], 1, 0});
  }

  std::size_t iterations = 0;
  while (!work.empty()) {
    detail::Piece p = work.back();
    work.pop_back();
    if (++iterations > cap) throw NotFiniteReturn("first return not reached within " + std::to_string(cap) + " iterations");
    // split where the current image straddles a breakpoint of its row
    auto [u, v] = p.imageSpan();
    std::optional<Rational> cut;
    for (const auto& x : T.breakpoints(static_cast<Row>(p.comp)))
      if (u < x && x < v) {
        cut = x;
        break;
      }
    if (cut) {
      Rational xa = p.preimage(*cut);
      detail::Piece left = p, right = p;
      left.b = xa;
      right.a = xa;
      right.lo = p.image(xa);
      work.push_back(right);
      work.push_back(left);
      continue;
    }
    // apply T on the single branch containing the image
    Rational mid = (u + v) / 2;
    auto [pos, offset] = T.locate(static_cast<Row>(p.comp), mid);
    auto [ylo, row] = T.applyBranch(pos, p.lo - T.start(pos));
    const bool flip = pi.rowOf(pi.partner(pos)) == pi.rowOf(pos);
    p.lo = ylo;
    p.sign = flip ? -p.sign : p.sign;
    p.comp = 1 - index(row);
    ++p.steps;
    auto [u2, v2] = p.imageSpan();
    if (v2 <= sub) {
      done.push_back(p);
    } else if (u2 < sub) {
      Rational xa = p.preimage(sub);
      detail::Piece left = p, right = p;
      left.b = xa;
      right.a = xa;
      right.lo = p.image(xa);
      for (auto* half : {&left, &right}) {
        auto [hu, hv] = half->imageSpan();
        (hv <= sub ? done : work).push_back(*half);
      }
    } else {
      work.push_back(p);
    }
  }

  // Order the pieces on each row and pair them through f' = tau o T_Y.
  std::sort(done.begin(), done.end(), [](const detail::Piece& x, const detail::Piece& y) { return x.row != y.row ? x.row < y.row : x.a < y.a; });
  const int n = static_cast<int>(done.size());
  std::map<std::pair<int, Rational>, int> byStart;
  for (int i = 0; i < n; ++i) byStart.emplace(std::make_pair(done[static_cast<std::size_t>(i)].row, done[static_cast<std::size_t>(i)].a), i);
  std::vector<int> mate(static_cast<std::size_t>(n), -1);
  for (int i = 0; i < n; ++i) {
    const auto& p = done[static_cast<std::size_t>(i)];
    auto [u, v] = p.imageSpan();
    int targetRow = 1 - p.comp;
    auto it = byStart.find({targetRow, u});
    if (it == byStart.end()) throw DegeneratePiece("return image of a piece is not a piece");
    const auto& q = done[static_cast<std::size_t>(it->second)];
    if (q.b != v) throw DegeneratePiece("return image of a piece is not a piece");
    bool sameRow = targetRow == p.row;
    if ((p.sign < 0) != sameRow) throw DegeneratePiece("orientation of the induced map is inconsistent");
    mate[static_cast<std::size_t>(i)] = it->second;
  }
  for (int i = 0; i < n; ++i) {
    int j = mate[static_cast<std::size_t>(i)];
    if (j == i || mate[static_cast<std::size_t>(j)] != i) throw DegeneratePiece("induced pairing is not an involution");
  }

  // Labels.
  auto oldLetter = [&](const detail::Piece& p) { return pi.letterAt(T.locate(static_cast<Row>(p.row), p.a).first); };
  std::vector<int> label(static_cast<std::size_t>(n), -1);
  std::vector<bool> used(pi.size(), false);
  for (int i = 0; i < n; ++i) {
    int j = mate[static_cast<std::size_t>(i)];
    if (j < i || label[static_cast<std::size_t>(i)] >= 0) continue;
    int a = oldLetter(done[static_cast<std::size_t>(i)]);
    if (a == oldLetter(done[static_cast<std::size_t>(j)]) && !used[static_cast<std::size_t>(a)]) {
      used[static_cast<std::size_t>(a)] = true;
      label[static_cast<std::size_t>(i)] = label[static_cast<std::size_t>(j)] = a;
    }
  }
  std::vector<std::string> names = pi.alphabet();
  std::size_t nextFree = 0;
  for (int i = 0; i < n; ++i) {
    int j = mate[static_cast<std::size_t>(i)];
    if (label[static_cast<std::size_t>(i)] >= 0) continue;
    while (nextFree < used.size() && used[nextFree]) ++nextFree;
    int a;
    if (nextFree < used.size()) {
      a = static_cast<int>(nextFree);
      used[nextFree] = true;
    } else {
      a = static_cast<int>(names.size());
      std::string fresh;
      for (int k = static_cast<int>(names.size());; ++k) {
        fresh = defaultLabel(k);
        if (std::find(names.begin(), names.end(), fresh) == names.end()) break;
      }
      names.push_back(fresh);
      used.push_back(true);
    }
    label[static_cast<std::size_t>(i)] = label[static_cast<std::size_t>(j)] = a;
  }

  // Drop letters that no longer occur, keeping alphabet order.
  std::vector<int> remap(names.size(), -1);
  std::vector<std::string> alphabet;
  for (std::size_t a = 0; a < names.size(); ++a)
    if (used[a]) {
      remap[a] = static_cast<int>(alphabet.size());
      alphabet.push_back(names[a]);
    }
  std::vector<int> top, bottom;
  std::vector<Rational> lambda(alphabet.size());
  for (int i = 0; i < n; ++i) {
    const auto& p = done[static_cast<std::size_t>(i)];
    int a = remap[static_cast<std::size_t>(label[static_cast<std::size_t>(i)])];
    (p.row == 0 ? top : bottom).push_back(a);
    lambda[static_cast<std::size_t>(a)] = p.b - p.a;
  }
  return LinearInvolution(GeneralizedPermutation(std::move(alphabet), std::move(top), std::move(bottom)), std::move(lambda));
}

/// Window of one induction step: L minus the shorter of the two last letters.
inline Rational inductionWindow(const LinearInvolution& T) {
  const auto& pi = T.permutation();
  Rational a = T.total() - T.length(pi.lastTopLetter());
  Rational b = T.total() - T.length(pi.lastBottomLetter());
  return a > b ? a : b;
}

/// Visits of the return orbit of each depth-n induced letter to the original
/// letters: row alpha counts, for a point of the new letter alpha, how often
/// its orbit lies in each original letter before returning.
inline BigMatrix visitingCounts(const LinearInvolution& T, std::size_t n, std::size_t cap = 1000000) {
  const std::size_t d = T.permutation().size();
  LinearInvolution cur = T;
  for (std::size_t k = 0; k < n; ++k) {
    const auto& pi = cur.permutation();
    if (cur.length(pi.lastTopLetter()) == cur.length(pi.lastBottomLetter())) throw TieError(k);
    cur = firstReturnMap(cur, inductionWindow(cur), cap);
  }
  if (cur.permutation().size() != d) throw DegeneratePiece("induced map has a different number of letters");
  BigMatrix V(d);
  const auto& ipi = cur.permutation();
  for (int a = 0; a < static_cast<int>(d); ++a) {
    int pos = ipi.occurrences(a).first;
    MarkedPoint p{cur.start(pos) + cur.length(a) / 2, index(ipi.rowOf(pos))};
    int row = std::find(T.permutation().alphabet().begin(), T.permutation().alphabet().end(), ipi.label(a)) - T.permutation().alphabet().begin();
    std::size_t steps = 0;
    do {
      ++V(static_cast<std::size_t>(row), static_cast<std::size_t>(T.permutation().letterAt(T.positionOf(p))));
      p = T.evaluate(p);
      if (++steps > cap) throw NotFiniteReturn("return orbit exceeded the iteration cap");
    } while (p.x >= cur.total());
  }
  return V;
}

}  // namespace linvol
