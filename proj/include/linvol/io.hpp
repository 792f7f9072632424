#pragma once

// JSON views of the library's values. Exact rationals are written as
// strings ("p/q") so nothing is lost; floats as numbers.

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "cocycle.hpp"
#include "genperm.hpp"
#include "involution.hpp"
#include "numeric.hpp"
#include "rauzy.hpp"
#include "suspension.hpp"
#include "weakmix.hpp"

namespace linvol::io {

using json = nlohmann::ordered_json;

inline json toJson(const Rational& r) { return r.get_str(); }
inline json toJson(const BigInt& z) { return z.get_str(); }

inline json toJson(const std::vector<Rational>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(toJson(x));
  return a;
}

inline json toJson(const BigMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.size(); ++j) row.push_back(m(i, j).get_str());
    rows.push_back(std::move(row));
  }
  return rows;
}

inline json labels(const GeneralizedPermutation& pi, const std::vector<int>& letters) {
  json a = json::array();
  for (int x : letters) a.push_back(pi.label(x));
  return a;
}

inline json toJson(const GeneralizedPermutation& pi) { return {{"top", labels(pi, pi.top())}, {"bottom", labels(pi, pi.bottom())}}; }

/// Accepts {top:[...], bottom:[...]}.
inline GeneralizedPermutation permFromJson(const json& j) {
  if (!j.is_object() || !j.contains("top") || !j.contains("bottom")) throw ParseError("permutation needs 'top' and 'bottom'");
  return GeneralizedPermutation::fromLabels(j.at("top").get<std::vector<std::string>>(), j.at("bottom").get<std::vector<std::string>>());
}

/// Inline rows separated by '|' or a newline, or the path of a file in the
/// two-line text format.
inline GeneralizedPermutation readPermutation(const std::string& source) {
  std::ifstream in(source);
  if (in) {
    std::stringstream ss;
    ss << in.rdbuf();
    return GeneralizedPermutation::parse(ss.str());
  }
  std::string text = source;
  for (auto& c : text)
    if (c == '|') c = '\n';
  return GeneralizedPermutation::parse(text);
}

/// One-line form with '|' between the rows, as accepted by --perm.
inline std::string inlineText(const GeneralizedPermutation& pi) {
  std::string t = pi.toText();
  for (auto& c : t)
    if (c == '\n') c = '|';
  return t;
}

/// Comma- or space-separated rationals.
inline std::vector<Rational> parseVector(const std::string& text) {
  std::vector<Rational> out;
  std::string tok;
  auto flush = [&] {
    if (!tok.empty()) out.push_back(parseRational(tok));
    tok.clear();
  };
  for (char c : text) {
    if (c == ',' || c == ' ' || c == '\t') flush();
    else tok += c;
  }
  flush();
  return out;
}

inline json toJson(const LetterClasses& c, const GeneralizedPermutation& pi) {
  return {{"a0", labels(pi, c.a0)}, {"a1", labels(pi, c.a1)}, {"a01", labels(pi, c.a01)}};
}

inline json toJson(const CornerDecomposition& c, const GeneralizedPermutation& pi) {
  return {{"shape", c.shape},
          {"blocks", {c.topLeft, c.topRight, c.bottomLeft, c.bottomRight}},
          {"A", labels(pi, c.A)},
          {"B", labels(pi, c.B)},
          {"C", labels(pi, c.C)},
          {"D", labels(pi, c.D)}};
}

inline json toJson(const AdmissibilityWitness& w, const GeneralizedPermutation& pi) {
  json j{{"kind", w.kind}, {"shape", w.shape}, {"A", labels(pi, w.A)}, {"B", labels(pi, w.B)}, {"C", labels(pi, w.C)}, {"D", labels(pi, w.D)}};
  j["beta"] = w.beta ? json(pi.label(*w.beta)) : json(nullptr);
  j["emptyTopWildcard"] = w.emptyTopWildcard;
  j["emptyBottomWildcard"] = w.emptyBottomWildcard;
  return j;
}

inline json toJson(const SingularityPattern& k) {
  json j{{"orders", k.orders}, {"flavor", k.flavor == Flavor::HalfTranslation ? "half-translation" : "abelian"}, {"sum", k.sum()}};
  j["genus"] = k.genus();
  j["oddCount"] = k.oddCount();
  return j;
}

inline json toJson(const PathMatrix& p) {
  const auto& pi = p.startPerm;
  json steps = json::array();
  for (const auto& s : p.path) steps.push_back({{"move", toString(s.move)}, {"winner", pi.label(s.winner)}, {"loser", pi.label(s.loser)}});
  return {{"length", p.length()}, {"steps", steps}, {"product", toJson(p.product)}, {"start", toJson(p.startPerm)}, {"end", toJson(p.endPerm)}};
}

inline json toJson(const Complex& z) { return {z.re.get_str(), z.im.get_str()}; }

inline json toJson(const Polygon& p) {
  json t = json::array(), b = json::array();
  for (const auto& z : p.top) t.push_back(toJson(z));
  for (const auto& z : p.bottom) b.push_back(toJson(z));
  return {{"top", t}, {"bottom", b}};
}

inline json toJson(const LyapunovReport& r) {
  return {{"exponents", r.exponents},
          {"stderrs", r.stderrs},
          {"perElementary", r.perElementary},
          {"perElementaryStderrs", r.perElementaryStderr},
          {"ratios", r.ratios},
          {"gaps", r.gaps},
          {"nearZeroCount", r.nearZeroCount},
          {"nearZeroCountElementary", r.nearZeroCountElementary},
          {"sampleCount", r.sampleCount},
          {"elementarySteps", r.elementarySteps},
          {"seed", r.seed}};
}

inline json toJson(const ObstructionSeries& s) {
  return {{"v", toJson(s.v)},
          {"distances", toJson(s.distances)},
          {"returns", s.returns},
          {"fallback", s.fallback},
          {"tailMin", toJson(s.tailMin)},
          {"tailMax", toJson(s.tailMax)},
          {"overallMin", toJson(s.overallMin)}};
}

inline json toJson(const EigenCandidate& c) {
  json j{{"t", toJson(c.t)}, {"verdict", toString(c.verdict)}, {"tailMin", toJson(c.tailMin)}, {"tailMax", toJson(c.tailMax)}, {"fallback", c.fallback}};
  if (c.series && c.t != 0) j["series"] = toJson(*c.series);
  return j;
}

inline json toJson(const Observable& f) {
  json a = json::array();
  for (const auto& I : f.pieces) a.push_back({{"component", I.component}, {"from", toJson(I.a)}, {"to", toJson(I.b)}});
  return a;
}

inline json toJson(const CorrelationReport& r) {
  json j{{"f", toJson(r.f)},
         {"g", toJson(r.g)},
         {"orbitLength", r.orbitLength},
         {"start", {{"x", toJson(r.start.x)}, {"component", r.start.component}}},
         {"meanF", r.meanF},
         {"meanG", r.meanG},
         {"N", r.grid},
         {"values", r.values},
         {"errors", r.errors}};
  j["slope"] = r.slope ? json(*r.slope) : json(nullptr);
  return j;
}

inline json toJson(const WeakMixReport& r) {
  json samples = json::array();
  for (const auto& s : r.samples) {
    json cands = json::array();
    for (const auto& c : s.candidates) cands.push_back(toJson(c));
    json j{{"lambda", toJson(s.lambda)},
           {"returns", s.returns},
           {"decaying", s.decaying},
           {"nonDecaying", s.nonDecaying},
           {"inconclusive", s.inconclusive},
           {"candidates", cands}};
    j["correlation"] = s.correlation ? toJson(*s.correlation) : json(nullptr);
    if (!s.correlationError.empty()) j["correlationError"] = s.correlationError;
    samples.push_back(std::move(j));
  }
  return {{"permutation", toJson(r.pi)},
          {"genus", r.genus},
          {"nontrivialPairs", r.nontrivialPairs},
          {"nonDecayingPairs", r.nonDecayingPairs},
          {"decayingPairs", r.decayingPairs},
          {"fractionNonDecaying", r.fractionNonDecaying},
          {"samplesWithDecaying", r.samplesWithDecaying},
          {"fractionSamplesWithDecaying", r.fractionSamplesWithDecaying},
          {"samples", samples}};
}

/// 64-bit FNV-1a, hex. Stable across platforms, unlike std::hash.
inline std::string fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::ostringstream o;
  o << std::hex;
  o.width(16);
  o.fill('0');
  o << h;
  return o.str();
}

}  // namespace linvol::io
