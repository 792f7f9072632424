#pragma once

// Generalized permutations: the combinatorial datum of a linear involution.
//
// Positions are flat indices 0..2d-1. Positions 0..l-1 form the top row
// (component 0), positions l..l+m-1 the bottom row (component 1). Letters are
// indices into the alphabet, which is kept in first-appearance order of the
// constructing rows and never reordered by induction.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "lp.hpp"
#include "numeric.hpp"

namespace linvol {

enum class Row : std::uint8_t { Top = 0, Bottom = 1 };

inline Row other(Row r) { return r == Row::Top ? Row::Bottom : Row::Top; }
inline int index(Row r) { return static_cast<int>(r); }

class GeneralizedPermutation {
 public:
  GeneralizedPermutation() = default;

  /// Builds and validates a permutation from letter indices.
  GeneralizedPermutation(std::vector<std::string> alphabet, std::vector<int> top, std::vector<int> bottom)
      : alphabet_(std::move(alphabet)), top_(std::move(top)), bottom_(std::move(bottom)) {
    if (top_.empty() || bottom_.empty())
      throw EmptyRowError("both rows of a generalized permutation must be non-empty");
    const int d = static_cast<int>(alphabet_.size());
    std::vector<int> count(alphabet_.size(), 0);
    for (int a : top_) {
      if (a < 0 || a >= d) throw LabelCountError("letter index out of range");
      ++count[static_cast<std::size_t>(a)];
    }
    for (int a : bottom_) {
      if (a < 0 || a >= d) throw LabelCountError("letter index out of range");
      ++count[static_cast<std::size_t>(a)];
    }
    for (std::size_t a = 0; a < count.size(); ++a)
      if (count[a] != 2)
        throw LabelCountError("label '" + alphabet_[a] + "' occurs " + std::to_string(count[a]) +
                              " times; every label must occur exactly twice");
    buildSigma();
  }

  /// Validates two rows of labels. The alphabet is the order of first
  /// appearance reading the top row, then the bottom row.
  static GeneralizedPermutation fromLabels(const std::vector<std::string>& top, const std::vector<std::string>& bottom) {
    if (top.empty() || bottom.empty())
      throw EmptyRowError("both rows of a generalized permutation must be non-empty");
    std::vector<std::string> alphabet;
    std::map<std::string, int> id;
    auto intern = [&](const std::string& s) {
      auto it = id.find(s);
      if (it != id.end()) return it->second;
      int k = static_cast<int>(alphabet.size());
      id.emplace(s, k);
      alphabet.push_back(s);
      return k;
    };
    std::vector<int> t, b;
    for (const auto& s : top) t.push_back(intern(s));
    for (const auto& s : bottom) b.push_back(intern(s));
    return GeneralizedPermutation(std::move(alphabet), std::move(t), std::move(b));
  }

  /// Parses the two-line text format, e.g. "A B A C D C\nD E B E".
  static GeneralizedPermutation parse(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<std::vector<std::string>> rows;
    while (std::getline(in, line)) {
      auto hash = line.find('#');
      if (hash != std::string::npos) line = line.substr(0, hash);
      std::istringstream ls(line);
      std::vector<std::string> row;
      std::string tok;
      while (ls >> tok) row.push_back(tok);
      if (!row.empty()) rows.push_back(std::move(row));
    }
    if (rows.size() != 2) throw ParseError("expected exactly two non-empty rows, got " + std::to_string(rows.size()));
    return fromLabels(rows[0], rows[1]);
  }

  std::size_t size() const { return alphabet_.size(); }  // d
  int topLength() const { return static_cast<int>(top_.size()); }
  int bottomLength() const { return static_cast<int>(bottom_.size()); }
  int positions() const { return topLength() + bottomLength(); }

  const std::vector<std::string>& alphabet() const { return alphabet_; }
  const std::vector<int>& top() const { return top_; }
  const std::vector<int>& bottom() const { return bottom_; }
  const std::vector<int>& row(Row r) const { return r == Row::Top ? top_ : bottom_; }
  const std::string& label(int letter) const { return alphabet_[static_cast<std::size_t>(letter)]; }

  int letterAt(int pos) const { return pos < topLength() ? top_[static_cast<std::size_t>(pos)] : bottom_[static_cast<std::size_t>(pos - topLength())]; }
  Row rowOf(int pos) const { return pos < topLength() ? Row::Top : Row::Bottom; }
  int indexInRow(int pos) const { return pos < topLength() ? pos : pos - topLength(); }
  int flat(Row r, int i) const { return r == Row::Top ? i : topLength() + i; }
  int rowLength(Row r) const { return r == Row::Top ? topLength() : bottomLength(); }

  /// The fixed-point-free involution pairing the two occurrences of a label.
  int partner(int pos) const { return sigma_[static_cast<std::size_t>(pos)]; }
  const std::vector<int>& sigma() const { return sigma_; }

  /// Flat positions of both occurrences of a letter, in increasing order.
  std::pair<int, int> occurrences(int letter) const { return occ_[static_cast<std::size_t>(letter)]; }

  int lastTopLetter() const { return top_.back(); }
  int lastBottomLetter() const { return bottom_.back(); }

  /// Both rows contain a letter occurring twice in that row. Required for
  /// a permutation to come from a non-orientable foliation; a warning only.
  bool satisfiesInvolutionAssumption() const {
    bool top = false, bottom = false;
    for (int p = 0; p < positions(); ++p) {
      if (rowOf(p) == rowOf(partner(p))) (rowOf(p) == Row::Top ? top : bottom) = true;
    }
    return top && bottom;
  }

  std::vector<std::string> topLabels() const { return labels(top_); }
  std::vector<std::string> bottomLabels() const { return labels(bottom_); }

  std::string toText() const {
    std::string s;
    for (std::size_t i = 0; i < top_.size(); ++i) s += (i ? " " : "") + label(top_[i]);
    s += "\n";
    for (std::size_t i = 0; i < bottom_.size(); ++i) s += (i ? " " : "") + label(bottom_[i]);
    return s;
  }

  /// Compact key used for hashing nodes of Rauzy classes.
  std::string key() const {
    std::string s;
    for (int a : top_) s += label(a) + " ";
    s += "|";
    for (int a : bottom_) s += " " + label(a);
    return s;
  }

  bool operator==(const GeneralizedPermutation& o) const {
    return alphabet_ == o.alphabet_ && top_ == o.top_ && bottom_ == o.bottom_;
  }
  bool operator!=(const GeneralizedPermutation& o) const { return !(*this == o); }
  bool operator<(const GeneralizedPermutation& o) const {
    return std::tie(alphabet_, top_, bottom_) < std::tie(o.alphabet_, o.top_, o.bottom_);
  }

  /// Exchanges the rows (conjugation of the involution by the component swap).
  GeneralizedPermutation swappedRows() const { return GeneralizedPermutation(alphabet_, bottom_, top_); }

 private:
  std::vector<std::string> labels(const std::vector<int>& r) const {
    std::vector<std::string> out;
    out.reserve(r.size());
    for (int a : r) out.push_back(label(a));
    return out;
  }

  void buildSigma() {
    const int n = positions();
    sigma_.assign(static_cast<std::size_t>(n), -1);
    occ_.assign(alphabet_.size(), {-1, -1});
    for (int p = 0; p < n; ++p) {
      auto& o = occ_[static_cast<std::size_t>(letterAt(p))];
      (o.first < 0 ? o.first : o.second) = p;
    }
    for (const auto& [a, b] : occ_) {
      sigma_[static_cast<std::size_t>(a)] = b;
      sigma_[static_cast<std::size_t>(b)] = a;
    }
  }

  std::vector<std::string> alphabet_;
  std::vector<int> top_, bottom_;
  std::vector<int> sigma_;
  std::vector<std::pair<int, int>> occ_;
};

/// Re-validates a permutation from its own label rows.
inline GeneralizedPermutation validate(const std::vector<std::string>& top, const std::vector<std::string>& bottom) {
  return GeneralizedPermutation::fromLabels(top, bottom);
}

// ---------------------------------------------------------------------------
// Letter classes

struct LetterClasses {
  std::vector<int> a01;  // one occurrence per row
  std::vector<int> a0;   // both occurrences in the top row
  std::vector<int> a1;   // both occurrences in the bottom row
};

inline LetterClasses letterClasses(const GeneralizedPermutation& pi) {
  LetterClasses c;
  for (int a = 0; a < static_cast<int>(pi.size()); ++a) {
    auto [p, q] = pi.occurrences(a);
    Row rp = pi.rowOf(p), rq = pi.rowOf(q);
    if (rp != rq)
      c.a01.push_back(a);
    else if (rp == Row::Top)
      c.a0.push_back(a);
    else
      c.a1.push_back(a);
  }
  return c;
}

// ---------------------------------------------------------------------------
// Corner decompositions and geometric reducibility
//
// A decomposition places four blocks: a top-row prefix holding A u B, a
// top-row suffix holding B u D, a bottom-row prefix holding A u C and a
// bottom-row suffix holding D u C. Each letter of A, B, C, D has its two
// occurrences in the corresponding pair of blocks; all other letters live in
// the (possibly empty) middles.

struct CornerDecomposition {
  int l = 0, m = 0;
  int topLeft = 0, topRight = 0, bottomLeft = 0, bottomRight = 0;  // block lengths
  std::vector<int> A, B, C, D;
  std::string shape;  // which reducibility case matched

  bool emptyTopLeft() const { return topLeft == 0; }
  bool emptyTopRight() const { return topRight == 0; }
  bool emptyBottomLeft() const { return bottomLeft == 0; }
  bool emptyBottomRight() const { return bottomRight == 0; }
};

namespace detail {

enum class Block : std::uint8_t { None, TL, TR, BL, BR };

/// Checks the block layout for the given lengths and fills the letter sets.
/// Returns false if some block letter's partner is not in an allowed block.
inline bool layoutCorners(const GeneralizedPermutation& pi, int tl, int tr, int bl, int br, CornerDecomposition& out) {
  const int l = pi.topLength(), m = pi.bottomLength();
  if (tl + tr > l || bl + br > m) return false;
  auto blockOf = [&](int pos) {
    int i = pi.indexInRow(pos);
    if (pi.rowOf(pos) == Row::Top) {
      if (i < tl) return Block::TL;
      if (i >= l - tr) return Block::TR;
    } else {
      if (i < bl) return Block::BL;
      if (i >= m - br) return Block::BR;
    }
    return Block::None;
  };
  out = CornerDecomposition{l, m, tl, tr, bl, br, {}, {}, {}, {}, {}};
  for (int p = 0; p < pi.positions(); ++p) {
    Block b = blockOf(p);
    if (b == Block::None) continue;
    Block q = blockOf(pi.partner(p));
    int a = pi.letterAt(p);
    bool first = p < pi.partner(p);
    auto pair = [&](Block x, Block y) { return (b == x && q == y) || (b == y && q == x); };
    if (pair(Block::TL, Block::BL)) {
      if (first) out.A.push_back(a);
    } else if (pair(Block::TL, Block::TR)) {
      if (first) out.B.push_back(a);
    } else if (pair(Block::BL, Block::BR)) {
      if (first) out.C.push_back(a);
    } else if (pair(Block::TR, Block::BR)) {
      if (first) out.D.push_back(a);
    } else {
      return false;
    }
  }
  for (auto* v : {&out.A, &out.B, &out.C, &out.D}) std::sort(v->begin(), v->end());
  return true;
}

inline std::optional<std::string> reducibleShape(const CornerDecomposition& c) {
  const bool tl = c.emptyTopLeft(), tr = c.emptyTopRight(), bl = c.emptyBottomLeft(), br = c.emptyBottomRight();
  const int empties = tl + tr + bl + br;
  if (empties == 0) return "no-empty-corner";
  if (empties == 1 && (tl || bl)) return "one-empty-left-corner";
  // with two empty corners the blocks may not swallow the rows: on the left
  // at least one middle must survive, on the right both must
  const bool fullTop = c.topLeft + c.topRight == c.l, fullBottom = c.bottomLeft + c.bottomRight == c.m;
  if (empties == 2 && tl && bl && !(fullTop && fullBottom)) return "two-empty-left-corners";
  if (empties == 2 && tr && br && !fullTop && !fullBottom) return "two-empty-right-corners";
  return std::nullopt;
}

}  // namespace detail

struct IrreducibilityResult {
  bool irreducible = true;
  std::optional<CornerDecomposition> witness;  // present iff reducible
};

/// Geometric irreducibility: searches every corner decomposition for one of
/// the three reducible shapes.
inline IrreducibilityResult isIrreducible(const GeneralizedPermutation& pi) {
  const int l = pi.topLength(), m = pi.bottomLength();
  CornerDecomposition c;
  for (int tl = 0; tl <= l; ++tl)
    for (int tr = 0; tl + tr <= l; ++tr)
      for (int bl = 0; bl <= m; ++bl)
        for (int br = 0; bl + br <= m; ++br) {
          if (tl + tr + bl + br == 0) continue;
          if (!detail::layoutCorners(pi, tl, tr, bl, br, c)) continue;
          if (auto shape = detail::reducibleShape(c)) {
            c.shape = *shape;
            return {false, c};
          }
        }
  return {true, std::nullopt};
}

// ---------------------------------------------------------------------------
// Admissibility of length parameters

/// A decomposition certifying non-admissibility.
///
/// kind 1 (parameter-free): shape "left" is a common prefix A of both rows,
/// "right" a common suffix D, "full" splits both rows completely as
/// (A u B | B u D) over (A u C | C u D) with B = A0 and C = A1.
///
/// kind 2: top = (A u B) * (B u D), bottom = (A u C) beta * beta (D u C) with
/// B non-empty; it disqualifies lengths with
///   sum_A <= sum_B + lambda_beta + sum_C.
struct AdmissibilityWitness {
  int kind = 1;
  std::string shape;
  std::vector<int> A, B, C, D;
  std::optional<int> beta;
  bool emptyTopWildcard = false;
  bool emptyBottomWildcard = false;

  auto tie() const { return std::tie(kind, shape, A, B, C, D, beta); }
  bool operator<(const AdmissibilityWitness& o) const { return tie() < o.tie(); }
  bool operator==(const AdmissibilityWitness& o) const { return tie() == o.tie(); }
};

struct AdmissibilityVerdict {
  bool admissible = true;
  std::optional<AdmissibilityWitness> witness;
};

namespace detail {

inline bool sameLetterSet(std::vector<int> x, std::vector<int> y) {
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  return x == y && std::adjacent_find(x.begin(), x.end()) == x.end();
}

}  // namespace detail

/// All parameter-free (kind 1) obstructions.
inline std::vector<AdmissibilityWitness> caseOneWitnesses(const GeneralizedPermutation& pi) {
  std::vector<AdmissibilityWitness> out;
  const int l = pi.topLength(), m = pi.bottomLength();
  const auto& top = pi.top();
  const auto& bot = pi.bottom();
  // Common prefix / suffix of letters each occurring once per row.
  for (int k = 1; k <= std::min(l, m); ++k) {
    std::vector<int> tp(top.begin(), top.begin() + k), bp(bot.begin(), bot.begin() + k);
    if (detail::sameLetterSet(tp, bp)) {
      AdmissibilityWitness w;
      w.shape = "left";
      w.A = tp;
      std::sort(w.A.begin(), w.A.end());
      w.emptyTopWildcard = k == l;
      w.emptyBottomWildcard = k == m;
      out.push_back(w);
    }
    std::vector<int> ts(top.end() - k, top.end()), bs(bot.end() - k, bot.end());
    if (detail::sameLetterSet(ts, bs)) {
      AdmissibilityWitness w;
      w.shape = "right";
      w.D = ts;
      std::sort(w.D.begin(), w.D.end());
      w.emptyTopWildcard = k == l;
      w.emptyBottomWildcard = k == m;
      out.push_back(w);
    }
  }
  // Full split with B = A0, C = A1.
  const LetterClasses cls = letterClasses(pi);
  CornerDecomposition c;
  for (int p = 0; p <= l; ++p)
    for (int q = 0; q <= m; ++q) {
      if (!detail::layoutCorners(pi, p, l - p, q, m - q, c)) continue;
      if (c.B != cls.a0 || c.C != cls.a1) continue;
      AdmissibilityWitness w;
      w.shape = "full";
      w.A = c.A;
      w.B = c.B;
      w.C = c.C;
      w.D = c.D;
      w.emptyTopWildcard = w.emptyBottomWildcard = true;
      out.push_back(w);
    }
  return out;
}

/// All kind-2 decompositions, deduplicated by their letter sets and beta.
inline std::vector<AdmissibilityWitness> caseTwoDecompositions(const GeneralizedPermutation& pi) {
  std::set<AdmissibilityWitness> found;
  const int l = pi.topLength(), m = pi.bottomLength();
  CornerDecomposition c;
  for (int tl = 1; tl <= l; ++tl)
    for (int tr = 1; tl + tr <= l; ++tr)
      for (int bl = 0; bl + 2 <= m; ++bl)
        for (int br = 0; bl + br + 2 <= m; ++br) {
          const int left = pi.flat(Row::Bottom, bl);
          const int right = pi.flat(Row::Bottom, m - br - 1);
          if (pi.partner(left) != right) continue;
          if (!detail::layoutCorners(pi, tl, tr, bl, br, c)) continue;
          if (c.B.empty()) continue;
          AdmissibilityWitness w;
          w.kind = 2;
          w.shape = "beta";
          w.A = c.A;
          w.B = c.B;
          w.C = c.C;
          w.D = c.D;
          w.beta = pi.letterAt(left);
          w.emptyTopWildcard = tl + tr == l;
          w.emptyBottomWildcard = right == left + 1;
          found.insert(w);
        }
  return {found.begin(), found.end()};
}

namespace detail {

/// sum_A - sum_B - lambda_beta - sum_C as a coefficient vector.
inline std::vector<Rational> caseTwoMargin(std::size_t d, const AdmissibilityWitness& w) {
  std::vector<Rational> coeff(d, 0);
  for (int a : w.A) coeff[static_cast<std::size_t>(a)] += 1;
  for (int a : w.B) coeff[static_cast<std::size_t>(a)] -= 1;
  for (int a : w.C) coeff[static_cast<std::size_t>(a)] -= 1;
  coeff[static_cast<std::size_t>(*w.beta)] -= 1;
  return coeff;
}

template <class Scalar>
Scalar dot(const std::vector<Rational>& c, const std::vector<Scalar>& x) {
  Scalar s = 0;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c[i] != 0) s += Scalar(c[i].get_d()) * x[i];
  return s;
}

inline Rational dot(const std::vector<Rational>& c, const std::vector<Rational>& x) {
  Rational s = 0;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c[i] != 0) s += c[i] * x[i];
  return s;
}

}  // namespace detail

/// Decides whether the lengths (indexed by letter) are admissible for pi.
template <class Scalar>
AdmissibilityVerdict admissibleCheck(const GeneralizedPermutation& pi, const std::vector<Scalar>& lambda) {
  if (lambda.size() != pi.size())
    throw ParameterMismatch("length vector has " + std::to_string(lambda.size()) + " entries for an alphabet of " +
                            std::to_string(pi.size()) + " letters");
  auto one = caseOneWitnesses(pi);
  if (!one.empty()) return {false, one.front()};
  for (const auto& w : caseTwoDecompositions(pi)) {
    if (detail::dot(detail::caseTwoMargin(pi.size(), w), lambda) <= 0) return {false, w};
  }
  return {true, std::nullopt};
}

/// Independently re-derives a witness against pi and lambda: the blocks must
/// be laid out as the witness claims and, for kind 2, the inequality hold.
inline bool witnessHolds(const GeneralizedPermutation& pi, const std::vector<Rational>& lambda, const AdmissibilityWitness& w) {
  const auto& top = pi.top();
  const auto& bot = pi.bottom();
  auto block = [](const std::vector<int>& row, std::size_t from, std::size_t len) {
    return std::vector<int>(row.begin() + static_cast<std::ptrdiff_t>(from), row.begin() + static_cast<std::ptrdiff_t>(from + len));
  };
  auto join = [](std::vector<int> x, const std::vector<int>& y) {
    x.insert(x.end(), y.begin(), y.end());
    return x;
  };
  const std::size_t l = top.size(), m = bot.size();
  if (w.kind == 1 && w.shape == "left") {
    std::size_t k = w.A.size();
    return k >= 1 && k <= std::min(l, m) && detail::sameLetterSet(block(top, 0, k), w.A) && detail::sameLetterSet(block(bot, 0, k), w.A);
  }
  if (w.kind == 1 && w.shape == "right") {
    std::size_t k = w.D.size();
    return k >= 1 && k <= std::min(l, m) && detail::sameLetterSet(block(top, l - k, k), w.D) &&
           detail::sameLetterSet(block(bot, m - k, k), w.D);
  }
  const std::size_t tl = w.A.size() + w.B.size(), tr = w.B.size() + w.D.size();
  const std::size_t bl = w.A.size() + w.C.size(), br = w.C.size() + w.D.size();
  if (tl + tr > l || bl + br > m) return false;
  bool layout = detail::sameLetterSet(block(top, 0, tl), join(w.A, w.B)) && detail::sameLetterSet(block(top, l - tr, tr), join(w.B, w.D)) &&
                detail::sameLetterSet(block(bot, 0, bl), join(w.A, w.C)) && detail::sameLetterSet(block(bot, m - br, br), join(w.D, w.C));
  if (!layout) return false;
  if (w.kind == 1) {
    auto cls = letterClasses(pi);
    return tl + tr == l && bl + br == m && w.B == cls.a0 && w.C == cls.a1;
  }
  if (!w.beta || w.B.empty() || bl + br + 2 > m) return false;
  if (bot[bl] != *w.beta || bot[m - br - 1] != *w.beta) return false;
  return detail::dot(detail::caseTwoMargin(pi.size(), w), lambda) <= 0;
}

struct DynamicalIrreducibility {
  bool irreducible = false;
  std::vector<Rational> witnessLengths;  // an admissible parameter when irreducible
  Rational slack = 0;
};

/// Exact LP: is there lambda > 0 satisfying the length equation and every
/// kind-2 strict inequality, with no kind-1 obstruction?
inline DynamicalIrreducibility isDynamicallyIrreducible(const GeneralizedPermutation& pi) {
  DynamicalIrreducibility out;
  if (!caseOneWitnesses(pi).empty()) return out;
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
  for (const auto& w : caseTwoDecompositions(pi)) strict.push_back({detail::caseTwoMargin(d, w), lp::Sense::GreaterEq, 0});
  auto r = lp::strictFeasible(base, strict);
  out.irreducible = r.feasible;
  out.slack = r.slack;
  if (r.feasible) out.witnessLengths = r.x;
  return out;
}

/// Is there any positive lambda satisfying the length equation at all?
inline bool hasValidLengths(const GeneralizedPermutation& pi) {
  auto c = letterClasses(pi);
  return c.a0.empty() == c.a1.empty();
}

// ---------------------------------------------------------------------------
// Enumeration

inline std::string defaultLabel(int k) {
  std::string s;
  do {
    s.insert(s.begin(), static_cast<char>('A' + k % 26));
    k = k / 26 - 1;
  } while (k >= 0);
  return s;
}

/// Every generalized permutation on d letters up to relabelling: letters are
/// named in order of first appearance and every split 1 <= l <= 2d-1 is used.
inline std::vector<GeneralizedPermutation> enumerateAll(int d) {
  std::vector<GeneralizedPermutation> out;
  std::vector<std::string> alphabet;
  for (int k = 0; k < d; ++k) alphabet.push_back(defaultLabel(k));
  std::vector<int> word(static_cast<std::size_t>(2 * d), -1);
  std::vector<int> used(static_cast<std::size_t>(d), 0);
  auto rec = [&](auto&& self, int pos, int next) -> void {
    if (pos == 2 * d) {
      for (int l = 1; l < 2 * d; ++l)
        out.emplace_back(alphabet, std::vector<int>(word.begin(), word.begin() + l), std::vector<int>(word.begin() + l, word.end()));
      return;
    }
    for (int a = 0; a < next; ++a) {
      if (used[static_cast<std::size_t>(a)] != 1) continue;
      used[static_cast<std::size_t>(a)] = 2;
      word[static_cast<std::size_t>(pos)] = a;
      self(self, pos + 1, next);
      used[static_cast<std::size_t>(a)] = 1;
    }
    if (next < d) {
      used[static_cast<std::size_t>(next)] = 1;
      word[static_cast<std::size_t>(pos)] = next;
      self(self, pos + 1, next + 1);
      used[static_cast<std::size_t>(next)] = 0;
    }
  };
  rec(rec, 0, 0);
  return out;
}

}  // namespace linvol
