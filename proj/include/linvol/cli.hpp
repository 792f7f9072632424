#pragma once

// Batch front end. Every subcommand has a table of parameters with defaults;
// a JSON config file (--config) and then command-line flags override them.
// The effective parameters are hashed into the report's meta block, so a
// report can be regenerated from (config, seed).
//
// Exit codes: 0 ok, 1 computation error (JSON on stderr), 2 usage/config error.

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cocycle.hpp"
#include "genperm.hpp"
#include "involution.hpp"
#include "io.hpp"
#include "rauzy.hpp"
#include "sampler.hpp"
#include "suspension.hpp"
#include "weakmix.hpp"

namespace linvol::cli {

using io::json;

inline constexpr const char* kVersion = "0.3.0";

struct Command {
  std::string name;
  std::string help;
  json defaults;  // parameter name -> default value (its type is the parameter's type)
  std::function<json(const json&)> handler;
};

namespace detail {

inline GeneralizedPermutation perm(const json& p) {
  const auto& s = p.at("perm").get_ref<const std::string&>();
  if (s.empty()) throw ConfigError("missing --perm");
  return io::readPermutation(s);
}

/// The given lengths, or exact admissible ones drawn from the seed.
inline std::vector<Rational> lengths(const GeneralizedPermutation& pi, const json& p) {
  const auto& s = p.at("lambda").get_ref<const std::string&>();
  if (!s.empty()) return io::parseVector(s);
  Rng rng(p.at("seed").get<std::uint64_t>());
  return sampleAdmissibleRational(pi, rng, p.at("bits").get<unsigned>());
}

inline ScanThresholds thresholds(const json& p) {
  return {p.at("decaying").get<double>(), p.at("nonDecaying").get<double>(), p.at("radius").get<double>()};
}

inline json validateCmd(const json& p) {
  auto pi = perm(p);
  json j{{"d", pi.size()}, {"l", pi.topLength()}, {"m", pi.bottomLength()}, {"classes", io::toJson(letterClasses(pi), pi)}};
  json warnings = json::array();
  if (!pi.satisfiesInvolutionAssumption()) warnings.push_back("some row has no letter occurring twice in it; not a linear involution in the strict sense");
  j["warnings"] = warnings;
  return j;
}

inline json classesCmd(const json& p) {
  auto pi = perm(p);
  json j{{"permutation", io::toJson(pi)}};
  auto irr = isIrreducible(pi);
  j["irreducible"] = irr.irreducible;
  if (irr.witness) j["reducibilityWitness"] = io::toJson(*irr.witness, pi);
  auto dyn = isDynamicallyIrreducible(pi);
  j["dynamicallyIrreducible"] = dyn.irreducible;
  if (dyn.irreducible) j["admissibleLengths"] = io::toJson(dyn.witnessLengths);
  if (!dyn.irreducible) {
    j["size"] = nullptr;
    return j;
  }
  auto cls = rauzyClass(pi, p.at("cap").get<std::size_t>());
  std::size_t edges = 0;
  for (const auto& e : cls.edges) edges += static_cast<std::size_t>(e[0] >= 0) + static_cast<std::size_t>(e[1] >= 0);
  j["size"] = cls.size();
  j["edges"] = edges;
  if (p.at("list").get<bool>()) {
    json nodes = json::array();
    for (const auto& n : cls.nodes) nodes.push_back(io::toJson(n));
    j["nodes"] = nodes;
  }
  const auto& dot = p.at("dot").get_ref<const std::string&>();
  if (!dot.empty()) {
    std::ofstream out(dot);
    if (!out) throw ConfigError("cannot write '" + dot + "'");
    out << cls.toDot();
    j["dot"] = dot;
  }
  return j;
}

inline json inductCmd(const json& p) {
  auto pi = perm(p);
  auto lambda = lengths(pi, p);
  LinearInvolution T(pi, lambda);  // validates the lengths
  const auto steps = p.at("steps").get<std::size_t>();
  json j{{"permutation", io::toJson(pi)}, {"lambda", io::toJson(lambda)}};
  if (p.at("zorich").get<bool>()) {
    auto r = zorichPath(pi, lambda, steps);
    json runs = json::array();
    for (const auto& z : r.runs) runs.push_back({{"move", toString(z.move)}, {"runLength", z.runLength}});
    j["zorichRuns"] = runs;
    j["path"] = io::toJson(r.path);
    j["lengths"] = io::toJson(r.lengths);
  } else {
    auto r = inductPath(pi, lambda, steps);
    j["path"] = io::toJson(r.path);
    j["lengths"] = io::toJson(r.lengths);
  }
  return j;
}

inline json suspendCmd(const json& p) {
  auto pi = perm(p);
  auto lambda = lengths(pi, p);
  auto z = findSuspensionData(pi, lambda);
  for (std::size_t k = 0, n = p.at("steps").get<std::size_t>(); k < n; ++k) z = suspensionInduct(z, k);
  auto poly = buildPolygon(z);
  auto h = heights(z);
  json zeta = json::array();
  for (std::size_t a = 0; a < z.pi.size(); ++a) zeta.push_back(io::toJson(z.zeta(static_cast<int>(a))));
  return {{"permutation", io::toJson(z.pi)},
          {"lambda", io::toJson(z.lambda)},
          {"tau", io::toJson(z.tau)},
          {"zeta", zeta},
          {"polygon", io::toJson(poly)},
          {"heights", io::toJson(h.height)},
          {"area", io::toJson(h.area)}};
}

inline json stratumCmd(const json& p) {
  auto pi = perm(p);
  auto k = singularityPattern(pi);
  json j{{"permutation", io::toJson(pi)}, {"kappa", io::toJson(k)}};
  j["singularities"] = k.singularities();
  j["hDimension"] = hDimension(pi);
  return j;
}

inline json coverCmd(const json& p) {
  const auto& ks = p.at("kappa").get_ref<const std::string&>();
  SingularityPattern k;
  if (!ks.empty()) {
    std::vector<int> orders;
    for (const auto& r : io::parseVector(ks)) {
      if (r.get_den() != 1 || !r.get_num().fits_sint_p()) throw ParseError("orders must be integers");
      orders.push_back(static_cast<int>(r.get_num().get_si()));
    }
    k = makePattern(orders);
  } else {
    k = singularityPattern(perm(p));
  }
  auto c = doubleCoverPattern(k);
  return {{"kappa", io::toJson(k)}, {"cover", io::toJson(c)}};
}

inline json lyapunovCmd(const json& p) {
  auto pi = perm(p);
  LyapunovConfig c;
  c.steps = p.at("steps").get<std::size_t>();
  c.batches = p.at("batches").get<std::size_t>();
  c.k = p.at("k").get<std::size_t>();
  c.q = p.at("q").get<std::size_t>();
  c.warmup = p.at("warmup").get<std::size_t>();
  c.frameWarmup = p.at("frameWarmup").get<std::size_t>();
  c.seed = p.at("seed").get<std::uint64_t>();
  auto r = lyapunovSpectrum(pi, c);
  auto k = singularityPattern(pi);
  json j{{"permutation", io::toJson(pi)}, {"genus", k.genus()}, {"oddCount", k.oddCount()}, {"hDimension", hDimension(pi)}};
  j["expectedNearZero"] = static_cast<long>(pi.size()) - hDimension(pi);
  j["spectrum"] = io::toJson(r);
  return j;
}

inline json veechCmd(const json& p) {
  auto pi = perm(p);
  auto lambda = lengths(pi, p);
  LinearInvolution T(pi, lambda);
  const auto th = thresholds(p);
  auto tr = traceInduction(pi, lambda, p.at("steps").get<std::size_t>(), th.radius);
  json j{{"permutation", io::toJson(pi)}, {"lambda", io::toJson(lambda)}, {"returns", tr.returns}};
  const auto& vs = p.at("v").get_ref<const std::string&>();
  if (!vs.empty()) {
    auto v = io::parseVector(vs);
    if (v.size() != pi.size()) throw ParameterMismatch("v has " + std::to_string(v.size()) + " entries for " + std::to_string(pi.size()) + " letters");
    j["series"] = io::toJson(obstructionSeries(tr, v));
    return j;
  }
  json cands = json::array();
  for (const auto& c : eigenvalueScan(tr, parseGrid(p.at("tgrid").get<std::string>()), th)) cands.push_back(io::toJson(c));
  j["candidates"] = cands;
  return j;
}

inline json correlateCmd(const json& p) {
  auto pi = perm(p);
  auto lambda = lengths(pi, p);
  LinearInvolution T(pi, lambda);
  Rng rng(p.at("seed").get<std::uint64_t>() ^ 0x9e3779b97f4a7c15ULL);
  auto f = Observable{{{0, 0, T.end(pi.flat(Row::Top, 0))}}};
  auto g = Observable{{{1, 0, T.end(pi.flat(Row::Bottom, 0))}}};
  auto r = cesaroCorrelation(T, f, g, p.at("N").get<std::size_t>(), p.at("orbit").get<std::size_t>(), randomPoint(T, rng));
  return {{"permutation", io::toJson(pi)}, {"lambda", io::toJson(lambda)}, {"correlation", io::toJson(r)}};
}

inline json scanCmd(const json& p) {
  auto pi = perm(p);
  WeakMixConfig c;
  c.samples = p.at("samples").get<std::size_t>();
  c.grid = parseGrid(p.at("tgrid").get<std::string>());
  c.steps = p.at("steps").get<std::size_t>();
  c.seed = p.at("seed").get<std::uint64_t>();
  c.bits = p.at("bits").get<unsigned>();
  c.thresholds = thresholds(p);
  c.correlationN = p.at("N").get<std::size_t>();
  c.orbitLength = p.at("orbit").get<std::size_t>();
  c.jobs = p.at("jobs").get<unsigned>();
  return io::toJson(weakMixingReport(pi, c));
}

}  // namespace detail

inline std::vector<Command> commands() {
  using namespace detail;
  const json scan{{"decaying", 1e-6}, {"nonDecaying", 1e-2}, {"radius", 1.0}};
  auto with = [](json a, const json& b) {
    a.update(b);
    return a;
  };
  return {
      {"validate", "validate a permutation and classify its letters", {{"perm", ""}}, validateCmd},
      {"classes", "irreducibility and the Rauzy class", {{"perm", ""}, {"cap", 100000}, {"dot", ""}, {"list", false}}, classesCmd},
      {"induct", "Rauzy-Veech induction path", {{"perm", ""}, {"lambda", ""}, {"seed", 1}, {"bits", 256}, {"steps", 25}, {"zorich", false}}, inductCmd},
      {"suspend", "suspension data, polygon and heights", {{"perm", ""}, {"lambda", ""}, {"seed", 1}, {"bits", 64}, {"steps", 0}}, suspendCmd},
      {"stratum", "singularity pattern of the suspension", {{"perm", ""}}, stratumCmd},
      {"cover", "singularity pattern of the orientation double cover", {{"perm", ""}, {"kappa", ""}}, coverCmd},
      {"lyapunov",
       "Lyapunov spectrum of the Rauzy-Veech cocycle",
       {{"perm", ""}, {"steps", 50000}, {"batches", 64}, {"k", 0}, {"q", 5}, {"warmup", 1000}, {"frameWarmup", 0}, {"seed", 1}},
       lyapunovCmd},
      {"veech",
       "obstruction series or eigenvalue scan for one length vector",
       with({{"perm", ""}, {"lambda", ""}, {"seed", 1}, {"bits", 1024}, {"steps", 2000}, {"tgrid", "q16"}, {"v", ""}}, scan),
       veechCmd},
      {"correlate",
       "Cesaro-averaged correlations along an orbit",
       {{"perm", ""}, {"lambda", ""}, {"seed", 1}, {"bits", 256}, {"N", 256}, {"orbit", 20000}},
       correlateCmd},
      {"scan",
       "weak-mixing scan over random admissible lengths",
       with({{"perm", ""}, {"samples", 50}, {"tgrid", "q64"}, {"steps", 2000}, {"seed", 1}, {"bits", 1024}, {"N", 256}, {"orbit", 20000}, {"jobs", 1}}, scan),
       scanCmd},
  };
}

namespace detail {

/// Converts a flag value to the type of the default.
inline json convert(const std::string& key, const std::string& text, const json& like) {
  try {
    std::size_t used = 0;
    if (like.is_number_unsigned() || like.is_number_integer()) {
      if (!text.empty() && text[0] == '-') throw ConfigError("'" + key + "' must be non-negative");
      json v = std::stoull(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return v;
    }
    if (like.is_number_float()) {
      json v = std::stod(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return v;
    }
  } catch (const std::logic_error&) {
    throw ConfigError("bad value '" + text + "' for '" + key + "'");
  }
  return text;
}

/// Applies a config object over the defaults; unknown keys and wrong types
/// are config errors.
inline void applyConfig(json& params, const json& cfg) {
  if (!cfg.is_object()) throw ConfigError("config must be a JSON object");
  for (auto it = cfg.begin(); it != cfg.end(); ++it) {
    if (!params.contains(it.key())) throw ConfigError("unknown config key '" + it.key() + "'");
    const json& like = params[it.key()];
    const json& v = it.value();
    bool ok = (like.is_boolean() && v.is_boolean()) || (like.is_string() && v.is_string()) ||
              (like.is_number_float() && v.is_number()) || ((like.is_number_integer() || like.is_number_unsigned()) && v.is_number_unsigned());
    if (!ok) throw ConfigError("config key '" + it.key() + "' has the wrong type");
    params[it.key()] = like.is_number_float() ? json(v.get<double>()) : v;
  }
}

inline void emitError(std::ostream& err, const std::string& code, const std::string& message, const std::string& command) {
  json e{{"error", {{"code", code}, {"message", message}, {"command", command}}}};
  err << e.dump() << "\n";
}

}  // namespace detail

/// Runs one invocation; argv[0] is the program name. Output goes to `out`
/// unless --out names a file.
inline int run(const std::vector<std::string>& argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"linear involutions: induction, suspensions, cocycle and weak mixing"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  const auto cmds = commands();
  struct Slot {
    std::map<std::string, std::string> values;
    std::map<std::string, bool> flags;
    std::string config, output;
  };
  std::vector<Slot> slots(cmds.size());
  std::vector<CLI::App*> subs;
  CLI::App* weakmix = app.add_subcommand("weakmix", "weak-mixing experiments");
  weakmix->require_subcommand(1);
  for (std::size_t i = 0; i < cmds.size(); ++i) {
    const auto& c = cmds[i];
    CLI::App* s = c.name == "scan" ? weakmix->add_subcommand(c.name, c.help) : app.add_subcommand(c.name, c.help);
    s->add_option("--config", slots[i].config, "JSON file of parameters");
    s->add_option("--out", slots[i].output, "write the report here instead of stdout");
    for (auto it = c.defaults.begin(); it != c.defaults.end(); ++it) {
      if (it.value().is_boolean())
        s->add_flag("--" + it.key(), slots[i].flags[it.key()]);
      else
        s->add_option("--" + it.key(), slots[i].values[it.key()]);
    }
    subs.push_back(s);
  }

  std::vector<std::string> args(argv.rbegin(), argv.rend() - 1);  // CLI11 wants them reversed, minus argv[0]
  try {
    app.parse(args);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  std::size_t which = 0;
  while (which < subs.size() && !subs[which]->parsed()) ++which;
  const Command& cmd = cmds[which];
  const Slot& slot = slots[which];
  const std::string name = cmd.name == "scan" ? "weakmix scan" : cmd.name;

  json params = cmd.defaults;
  try {
    if (!slot.config.empty()) {
      std::ifstream in(slot.config);
      if (!in) throw ConfigError("cannot read config '" + slot.config + "'");
      json cfg;
      try {
        cfg = json::parse(in);
      } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
      }
      detail::applyConfig(params, cfg);
    }
    for (const auto& [k, v] : slot.values)
      if (subs[which]->count("--" + k) > 0) params[k] = detail::convert(k, v, cmd.defaults[k]);
    for (const auto& [k, v] : slot.flags)
      if (subs[which]->count("--" + k) > 0) params[k] = v;
  } catch (const ConfigError& e) {
    detail::emitError(err, e.code(), e.what(), name);
    return 2;
  }

  json report;
  try {
    // the permutation is hashed by content, not by where it was read from;
    // relative paths in a config file are taken relative to that file
    if (params.contains("perm") && !params["perm"].get_ref<const std::string&>().empty()) {
      std::string source = params["perm"];
      const std::filesystem::path rel(source);
      if (!slot.config.empty() && rel.is_relative() && !std::filesystem::exists(rel)) {
        const auto beside = std::filesystem::path(slot.config).parent_path() / rel;
        if (std::filesystem::exists(beside)) source = beside.string();
      }
      params["perm"] = io::inlineText(io::readPermutation(source));
    }
    report = cmd.handler(params);
  } catch (const ConfigError& e) {
    detail::emitError(err, e.code(), e.what(), name);
    return 2;
  } catch (const Error& e) {
    detail::emitError(err, e.code(), e.what(), name);
    return 1;
  } catch (const std::exception& e) {
    detail::emitError(err, "InternalError", e.what(), name);
    return 1;
  }

  json meta{{"version", kVersion}, {"command", name}, {"configHash", io::fnv1a(name + "\n" + params.dump())}};
  meta["seed"] = params.contains("seed") ? params["seed"] : json(nullptr);
  meta["config"] = params;
  json full{{"meta", meta}};
  for (auto it = report.begin(); it != report.end(); ++it) full[it.key()] = it.value();
  const std::string text = full.dump(2) + "\n";
  if (!slot.output.empty()) {
    std::ofstream f(slot.output);
    if (!f) {
      detail::emitError(err, "ConfigError", "cannot write '" + slot.output + "'", name);
      return 2;
    }
    f << text;
  } else {
    out << text;
  }
  return 0;
}

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  return run(std::vector<std::string>(argv, argv + argc), out, err);
}

}  // namespace linvol::cli
