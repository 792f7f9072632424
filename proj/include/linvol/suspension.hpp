#pragma once

// Suspensions of linear involutions: complex side vectors zeta = lambda + i tau
// laid out along the two rows, the zippered-rectangle heights, and the
// singularity pattern of the resulting half-translation surface.

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "errors.hpp"
#include "genperm.hpp"
#include "lp.hpp"
#include "numeric.hpp"
#include "rauzy.hpp"

namespace linvol {

struct Complex {
  Rational re, im;
  Complex operator+(const Complex& o) const { return {re + o.re, im + o.im}; }
  Complex operator-(const Complex& o) const { return {re - o.re, im - o.im}; }
  bool operator==(const Complex& o) const { return re == o.re && im == o.im; }
};

struct SuspensionData {
  GeneralizedPermutation pi;
  std::vector<Rational> lambda;
  std::vector<Rational> tau;

  Complex zeta(int letter) const { return {lambda[static_cast<std::size_t>(letter)], tau[static_cast<std::size_t>(letter)]}; }
};

namespace detail {

// Row sums of tau over proper prefixes, as LP coefficient rows.
inline std::vector<std::vector<Rational>> prefixRows(const GeneralizedPermutation& pi, Row r) {
  std::vector<std::vector<Rational>> out;
  std::vector<Rational> acc(pi.size(), 0);
  const auto& row = pi.row(r);
  for (std::size_t j = 0; j + 1 < row.size(); ++j) {
    acc[static_cast<std::size_t>(row[j])] += 1;
    out.push_back(acc);
  }
  return out;
}

}  // namespace detail

/// Checks the four suspension conditions exactly.
inline bool isSuspensionData(const SuspensionData& z) {
  const auto& pi = z.pi;
  if (z.lambda.size() != pi.size() || z.tau.size() != pi.size()) return false;
  for (const auto& x : z.lambda)
    if (x <= 0) return false;
  Rational s = 0;
  for (std::size_t j = 0; j < pi.top().size(); ++j) {
    s += z.tau[static_cast<std::size_t>(pi.top()[j])];
    if (j + 1 < pi.top().size() && s <= 0) return false;
  }
  Rational t = 0;
  for (std::size_t j = 0; j < pi.bottom().size(); ++j) {
    t += z.tau[static_cast<std::size_t>(pi.bottom()[j])];
    if (j + 1 < pi.bottom().size() && t >= 0) return false;
  }
  Rational lt = 0, lb = 0;
  for (int a : pi.top()) lt += z.lambda[static_cast<std::size_t>(a)];
  for (int a : pi.bottom()) lb += z.lambda[static_cast<std::size_t>(a)];
  return s == t && lt == lb;
}

/// Is there any tau making (pi, tau) a suspension? The conditions on tau do
/// not involve lambda.
inline lp::StrictResult suspensionLp(const GeneralizedPermutation& pi) {
  const std::size_t d = pi.size();
  lp::Problem base(d);
  base.freeVar.assign(d, true);
  std::vector<Rational> eq(d, 0);
  for (int a : pi.top()) eq[static_cast<std::size_t>(a)] += 1;
  for (int a : pi.bottom()) eq[static_cast<std::size_t>(a)] -= 1;
  base.add(eq, lp::Sense::Equal, 0);
  std::vector<lp::Constraint> strict;
  for (auto& r : detail::prefixRows(pi, Row::Top)) strict.push_back({r, lp::Sense::GreaterEq, 0});
  for (auto r : detail::prefixRows(pi, Row::Bottom)) {
    for (auto& x : r) x = -x;
    strict.push_back({r, lp::Sense::GreaterEq, 0});
  }
  return lp::strictFeasible(base, strict);
}

inline SuspensionData findSuspensionData(const GeneralizedPermutation& pi, const std::vector<Rational>& lambda) {
  if (lambda.size() != pi.size()) throw ParameterMismatch("length vector does not match the alphabet");
  Rational lt = 0, lb = 0;
  for (int a : pi.top()) lt += lambda[static_cast<std::size_t>(a)];
  for (int a : pi.bottom()) lb += lambda[static_cast<std::size_t>(a)];
  if (lt != lb) throw SumMismatch("lengths do not satisfy the length equation");
  auto r = suspensionLp(pi);
  if (!r.feasible) throw Infeasible("no suspension data exists for this permutation");
  return {pi, lambda, r.x};
}

// ---------------------------------------------------------------------------
// Polygon

struct Polygon {
  std::vector<Complex> top;     // U_0 .. U_l
  std::vector<Complex> bottom;  // W_0 .. W_m
};

inline Polygon buildPolygon(const SuspensionData& z) {
  Polygon p;
  p.top.push_back({0, 0});
  for (int a : z.pi.top()) p.top.push_back(p.top.back() + z.zeta(a));
  p.bottom.push_back({0, 0});
  for (int a : z.pi.bottom()) p.bottom.push_back(p.bottom.back() + z.zeta(a));
  return p;
}

/// Signed area enclosed between the chains (shoelace).
inline Rational polygonArea(const Polygon& p) {
  // boundary: bottom chain left to right, then top chain right to left
  std::vector<Complex> ring = p.bottom;
  for (std::size_t i = p.top.size() - 1; i-- > 1;) ring.push_back(p.top[i]);
  Rational twice = 0;
  for (std::size_t i = 0; i < ring.size(); ++i) {
    const auto& a = ring[i];
    const auto& b = ring[(i + 1) % ring.size()];
    twice += a.re * b.im - b.re * a.im;
  }
  return twice / 2;
}

// ---------------------------------------------------------------------------
// Singularity patterns

enum class Flavor { HalfTranslation, Abelian };

struct SingularityPattern {
  std::vector<int> orders;  // sorted, descending; -1 pole, 0 marked point
  Flavor flavor = Flavor::HalfTranslation;

  int sum() const { return std::accumulate(orders.begin(), orders.end(), 0); }

  /// Genus from the order sum; throws PatternError if not integral.
  int genus() const {
    int s = sum();
    if (flavor == Flavor::HalfTranslation) {
      if ((s + 4) % 4 != 0 || s < -4) throw PatternError("orders sum to " + std::to_string(s) + ", not 4g-4");
      return (s + 4) / 4;
    }
    if ((s + 2) % 2 != 0 || s < -2) throw PatternError("orders sum to " + std::to_string(s) + ", not 2g-2");
    return (s + 2) / 2;
  }

  /// Number of singularities of odd order (poles included).
  int oddCount() const {
    return static_cast<int>(std::count_if(orders.begin(), orders.end(), [](int n) { return n % 2 != 0; }));
  }

  /// Orders with marked points removed.
  std::vector<int> singularities() const {
    std::vector<int> out;
    for (int n : orders)
      if (n != 0) out.push_back(n);
    return out;
  }

  bool operator==(const SingularityPattern& o) const { return orders == o.orders && flavor == o.flavor; }
};

inline SingularityPattern makePattern(std::vector<int> orders, Flavor f = Flavor::HalfTranslation) {
  std::sort(orders.rbegin(), orders.rend());
  for (int n : orders)
    if (n < -1) throw PatternError("order " + std::to_string(n) + " below -1");
  SingularityPattern p{std::move(orders), f};
  p.genus();
  return p;
}

namespace detail {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    return x;
  }
  void unite(int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); }
};

}  // namespace detail

/// Identification classes of polygon vertices. Vertex ids: U_i is i,
/// W_j is l + 1 + j.
inline std::vector<int> vertexClasses(const GeneralizedPermutation& pi) {
  const int l = pi.topLength(), m = pi.bottomLength();
  auto U = [](int i) { return i; };
  auto W = [l](int j) { return l + 1 + j; };
  detail::UnionFind uf(l + m + 2);
  uf.unite(U(0), W(0));
  uf.unite(U(l), W(m));
  for (int a = 0; a < static_cast<int>(pi.size()); ++a) {
    auto [p, q] = pi.occurrences(a);
    int i = pi.indexInRow(p), k = pi.indexInRow(q);
    Row rp = pi.rowOf(p), rq = pi.rowOf(q);
    if (rp != rq) {
      // translation: start to start, end to end
      uf.unite(U(i), W(k));
      uf.unite(U(i + 1), W(k + 1));
    } else if (rp == Row::Top) {
      uf.unite(U(i), U(k + 1));
      uf.unite(U(i + 1), U(k));
    } else {
      uf.unite(W(i), W(k + 1));
      uf.unite(W(i + 1), W(k));
    }
  }
  std::vector<int> cls(static_cast<std::size_t>(l + m + 2));
  for (int v = 0; v < l + m + 2; ++v) cls[static_cast<std::size_t>(v)] = uf.find(v);
  return cls;
}

/// Cone point orders by counting vertical prongs: each interior vertex of
/// either chain sends exactly one vertical ray into the polygon, the two end
/// vertices none, and a point of order n has n + 2 prongs.
inline SingularityPattern singularityPattern(const GeneralizedPermutation& pi) {
  const int l = pi.topLength(), m = pi.bottomLength();
  auto cls = vertexClasses(pi);
  std::map<int, int> prongs;
  for (int v = 0; v < l + m + 2; ++v) prongs[cls[static_cast<std::size_t>(v)]] += 0;
  for (int i = 1; i < l; ++i) ++prongs[cls[static_cast<std::size_t>(i)]];
  for (int j = 1; j < m; ++j) ++prongs[cls[static_cast<std::size_t>(l + 1 + j)]];
  std::vector<int> orders;
  for (const auto& [c, k] : prongs) {
    if (k < 1) throw TraceError("vertex class without vertical prongs");
    orders.push_back(k - 2);
  }
  return makePattern(orders);
}

/// Same, after checking that zeta is valid suspension data.
inline SingularityPattern singularityPattern(const GeneralizedPermutation& pi, const SuspensionData& z) {
  if (!(z.pi == pi) || !isSuspensionData(z)) throw TraceError("suspension data does not match the permutation");
  return singularityPattern(pi);
}

inline int genus(const GeneralizedPermutation& pi) { return singularityPattern(pi).genus(); }

/// Dimension 2g + n - 2 of the part of R^d where the cocycle is not an
/// isometry; n counts the singularities of odd order.
inline int hDimension(const GeneralizedPermutation& pi) {
  auto k = singularityPattern(pi);
  return 2 * k.genus() + k.oddCount() - 2;
}

/// Pattern of the orientation double cover: odd n lifts to one point of
/// order n + 1 (poles become marked points), even n to two points of order n / 2.
inline SingularityPattern doubleCoverPattern(const SingularityPattern& k) {
  if (k.flavor != Flavor::HalfTranslation) throw PatternError("double cover needs a half-translation pattern");
  k.genus();
  std::vector<int> out;
  for (int n : k.orders) {
    if (n % 2 != 0) {
      out.push_back(n + 1);
    } else {
      out.push_back(n / 2);
      out.push_back(n / 2);
    }
  }
  return makePattern(out, Flavor::Abelian);
}

// ---------------------------------------------------------------------------
// Zippered rectangles

struct ZipperedRectangles {
  std::vector<Rational> width;
  std::vector<Rational> height;
  Rational area = 0;
};

/// Heights from the imaginary parts of the polygon vertices: a letter
/// crossing the rows spans from its bottom start up to its top start; a
/// letter repeated on a row spans between its two sides.
inline ZipperedRectangles heights(const SuspensionData& z) {
  const auto& pi = z.pi;
  Polygon poly = buildPolygon(z);
  ZipperedRectangles r;
  r.width = z.lambda;
  r.height.assign(pi.size(), 0);
  for (int a = 0; a < static_cast<int>(pi.size()); ++a) {
    auto [p, q] = pi.occurrences(a);
    int i = pi.indexInRow(p), k = pi.indexInRow(q);
    Row rp = pi.rowOf(p), rq = pi.rowOf(q);
    Rational h;
    if (rp != rq)
      h = poly.top[static_cast<std::size_t>(i)].im - poly.bottom[static_cast<std::size_t>(k)].im;
    else if (rp == Row::Top)
      h = poly.top[static_cast<std::size_t>(i + 1)].im + poly.top[static_cast<std::size_t>(k)].im;
    else
      h = -(poly.bottom[static_cast<std::size_t>(i + 1)].im + poly.bottom[static_cast<std::size_t>(k)].im);
    if (h <= 0) throw NonpositiveHeight("height of '" + pi.label(a) + "' is " + toString(h));
    r.height[static_cast<std::size_t>(a)] = h;
    r.area += z.lambda[static_cast<std::size_t>(a)] * h;
  }
  return r;
}

/// One induction step applied to both real and imaginary parts.
inline SuspensionData suspensionInduct(const SuspensionData& z, std::size_t stepIndex = 0) {
  auto [s, lam] = inductStep(z.pi, z.lambda, stepIndex);
  std::vector<Rational> tau = z.tau;
  tau[static_cast<std::size_t>(s.winner)] -= z.tau[static_cast<std::size_t>(s.loser)];
  return {s.successor, std::move(lam), std::move(tau)};
}

}  // namespace linvol
