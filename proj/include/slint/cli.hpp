#pragma once

// Command layer shared by the `slint` tool and its tests: reads an input
// file, runs one command and renders a text or JSON report.  Exit codes:
// 0 positive answer, 1 negative answer, 2 input error, 3 engine error.

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "slint/beth.hpp"
#include "slint/el.hpp"
#include "slint/errors.hpp"
#include "slint/formats.hpp"
#include "slint/interp.hpp"
#include "slint/locality.hpp"
#include "slint/slat.hpp"

namespace slint::cli {

using Json = nlohmann::ordered_json;

enum class Command { Check, Interpolate, Justify, Beth, ModelCheck };
enum class Format { Slp, Elp, Model };
enum class Output { Text, Json };

inline constexpr int kPositive = 0;
inline constexpr int kNegative = 1;
inline constexpr int kInputError = 2;
inline constexpr int kEngineError = 3;

inline const char* to_string(Command c) {
  switch (c) {
    case Command::Check: return "check";
    case Command::Interpolate: return "interpolate";
    case Command::Justify: return "justify";
    case Command::Beth: return "beth";
    case Command::ModelCheck: return "model-check";
  }
  return "?";
}

inline const char* to_string(Format f) {
  switch (f) {
    case Format::Slp: return "slp";
    case Format::Elp: return "elp";
    case Format::Model: return "model";
  }
  return "?";
}

inline std::optional<Command> parse_command(const std::string& s) {
  for (auto c : {Command::Check, Command::Interpolate, Command::Justify, Command::Beth, Command::ModelCheck})
    if (s == to_string(c)) return c;
  return std::nullopt;
}

inline std::optional<Format> parse_format(const std::string& s) {
  for (auto f : {Format::Slp, Format::Elp, Format::Model})
    if (s == to_string(f)) return f;
  return std::nullopt;
}

struct RunConfig {
  Command command = Command::Check;
  std::string input;
  std::optional<Format> format;  ///< inferred from the extension when unset
  Output output = Output::Text;
  bool verify = true;
  bool trace = false;
  bool justify_first = false;  ///< interpolate, EL input: minimize the ontology first
  int depth = 3;  ///< beth: enumeration depth for the model refutation
  SharingMode sharing = SharingMode::Theta;
  std::vector<std::string> sigma;  ///< beth: subsignature
  std::string target;              ///< beth: constant to define
  std::string model;               ///< beth: optional model for refutation
};

inline Format infer_format(const RunConfig& cfg) {
  if (cfg.format) return *cfg.format;
  auto ext = std::filesystem::path(cfg.input).extension().string();
  if (ext == ".slp") return Format::Slp;
  if (ext == ".elp") return Format::Elp;
  if (ext == ".model") return Format::Model;
  throw UsageError("cannot infer the format of '" + cfg.input + "'; use --format");
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace detail {

/// Accumulates the text and JSON forms of a report side by side.
struct Report {
  std::ostringstream text;
  Json result = Json::object();
  int code = kPositive;
};

inline Json atoms_json(const std::vector<Atom>& atoms) {
  Json a = Json::array();
  for (const auto& x : atoms) a.push_back(to_string(x));
  return a;
}

inline std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
  return s;
}

inline void trace_json(const locality::PurifiedProblem& red, const locality::DecideResult& r, Report& rep) {
  Json steps = Json::array();
  for (const auto& st : r.trace) {
    const auto& cl = red.instances[st.instance].clause;
    steps.push_back(Json{{"round", st.round},
                         {"schema", cl.provenance.schema},
                         {"clause", to_string(cl)},
                         {"added", atoms_json(st.added)}});
    rep.text << "  round " << st.round << "  " << cl.provenance.schema << ": " << to_string(cl) << "\n";
  }
  rep.result["trace"] = steps;
}

/// Problem and, for EL input, the parsed ontology.
struct Loaded {
  Problem problem;
  std::optional<el::ELProblem> el;
};

inline Loaded load_problem(Format fmt, const std::string& text) {
  if (fmt == Format::Slp) return {formats::parse_slp(text), std::nullopt};
  if (fmt == Format::Elp) {
    auto p = el::parse_cbox(text);
    return {el::translate(p), p};
  }
  throw UsageError("this command needs a .slp or .elp problem");
}

inline void require_goal(const Loaded& l) {
  if (!l.problem.goal) throw UsageError("the problem has no goal");
}

inline void cmd_check(const RunConfig& cfg, const Loaded& in, Report& rep) {
  require_goal(in);
  auto red = locality::reduce(in.problem, locality::ReduceOptions{cfg.sharing, {}});
  auto r = locality::decide(red);
  rep.code = r.entailed ? kPositive : kNegative;
  rep.text << (r.entailed ? "ENTAILED" : "NOT-ENTAILED") << "\n";
  if (r.entailed && r.by_inconsistency) rep.text << "the input is inconsistent\n";
  rep.result["goal"] = in.el ? el::to_string(*in.el->goal_c) + " <= " + el::to_string(*in.el->goal_d)
                             : to_string(*in.problem.goal);
  rep.result["entailed"] = r.entailed;
  rep.result["by_inconsistency"] = r.by_inconsistency;
  rep.result["rounds"] = r.rounds;
  rep.result["instances"] = red.instances.size();
  if (cfg.trace) {
    rep.text << "instances: " << red.instances.size() << ", rounds: " << r.rounds << "\n";
    trace_json(red, r, rep);
  }
}

inline Json certificate_json(const std::optional<interp::Certificate>& c) {
  if (!c) return nullptr;
  return Json{{"claim", to_string(c->claim)}, {"verified", c->verified}};
}

inline void splits_out(const interp::InterpolationResult& r, Report& rep) {
  Json sp = Json::array();
  for (const auto& s : r.splits) {
    sp.push_back(Json{{"clause", to_string(s.original)},
                      {"separator", to_string(s.separator)},
                      {"name", s.name},
                      {"premise_side", to_string(s.premise_side)},
                      {"premise_part", to_string(s.premise_part)},
                      {"other_part", to_string(s.other_part)}});
    rep.text << "  split " << to_string(s.original) << " at " << to_string(s.separator) << "\n"
             << "    " << to_string(s.premise_side) << ": " << to_string(s.premise_part) << "\n"
             << "    " << to_string(other(s.premise_side)) << ": " << to_string(s.other_part) << "\n";
  }
  rep.result["splits"] = sp;
}

inline void cmd_interpolate(const RunConfig& cfg, const Loaded& in, Report& rep) {
  require_goal(in);
  if (in.el) {
    auto r = el::el_interpolate(*in.el, el::ELInterpolateOptions{cfg.justify_first, cfg.verify});
    std::string c = el::to_string(r.description);
    rep.text << c << "\n";
    rep.result["interpolant"] = c;
    rep.result["term"] = to_string(r.result.term);
    rep.result["justification"] = r.justification ? Json(*r.justification) : Json(nullptr);
    rep.result["verified"] = cfg.verify ? Json(r.lower_verified && r.upper_verified) : Json(nullptr);
    if (cfg.verify) {
      rep.text << "certificate: " << el::to_string(*in.el->goal_c) << " <= " << c << " verified\n";
      rep.text << "certificate: " << c << " <= " << el::to_string(*in.el->goal_d) << " verified\n";
    }
    if (cfg.trace) {
      if (r.justification) rep.text << "justification: " << join(*r.justification, " ") << "\n";
      splits_out(r.result, rep);
    }
    return;
  }
  auto r = interp::interpolate(in.problem, interp::InterpolateOptions{cfg.sharing, cfg.verify});
  rep.text << to_string(r.term) << "\n";
  rep.result["interpolant"] = to_string(r.term);
  rep.result["lower"] = certificate_json(r.lower);
  rep.result["upper"] = certificate_json(r.upper);
  Json shared = Json::array();
  for (const auto& f : r.sharing.shared_functions) shared.push_back(f);
  rep.result["shared_functions"] = shared;
  Json sc = Json::array();
  for (const auto& c : r.sharing.shared_constants) sc.push_back(c);
  rep.result["shared_constants"] = sc;
  for (const auto& c : {r.lower, r.upper})
    if (c) rep.text << "certificate: " << to_string(c->claim) << " verified\n";
  if (cfg.trace) {
    rep.text << "goal side: " << to_string(r.lhs_side) << "\n";
    splits_out(r, rep);
  }
}

inline std::map<std::string, std::string> item_texts(const Loaded& in) {
  std::map<std::string, std::string> out;
  if (in.el) {
    for (const auto* box : {&in.el->a, &in.el->b})
      for (const auto& g : box->gcis) out[g.label] = el::to_string(g.lhs) + " <= " + el::to_string(g.rhs);
    for (const auto& ri : in.el->ris)
      out[ri.label] = ri.r + (ri.s ? " o " + *ri.s : "") + " <= " + ri.t;
    return out;
  }
  const auto& p = in.problem;
  for (std::size_t i = 0; i < p.a.size(); ++i) out[p.a_label(i)] = to_string(p.a[i]);
  for (std::size_t i = 0; i < p.b.size(); ++i) out[p.b_label(i)] = to_string(p.b[i]);
  for (const auto& x : p.axioms.inclusions) {
    std::ostringstream s;
    s << x;
    out[x.label] = s.str();
  }
  for (const auto& x : p.axioms.compositions) {
    std::ostringstream s;
    s << x;
    out[x.label] = s.str();
  }
  return out;
}

inline void cmd_justify(const RunConfig&, const Loaded& in, Report& rep) {
  require_goal(in);
  if (!locality::entails(in.problem)) {
    rep.code = kNegative;
    rep.text << "NOT-ENTAILED\n";
    rep.result["entailed"] = false;
    rep.result["justification"] = Json::array();
    return;
  }
  auto j = locality::minimize_axioms(in.problem);
  auto texts = item_texts(in);
  Json items = Json::array();
  for (const auto& l : j.labels) {
    rep.text << l << ": " << texts[l] << "\n";
    items.push_back(Json{{"label", l}, {"axiom", texts[l]}});
  }
  rep.result["entailed"] = true;
  rep.result["justification"] = items;
}

inline std::set<Symbol> resolve_sigma(const RunConfig& cfg, const Problem& p) {
  std::set<Symbol> syms = symbols_of(p.a);
  std::set<Symbol> out;
  for (const auto& name : cfg.sigma) {
    if (p.axioms.functions.count(name)) out.insert(Symbol{name, SymbolKind::Function});
    else if (syms.count(Symbol{name, SymbolKind::Constant})) out.insert(Symbol{name, SymbolKind::Constant});
    else throw UsageError("'" + name + "' does not occur in the problem");
  }
  return out;
}

inline void cmd_beth(const RunConfig& cfg, const Loaded& in, Report& rep) {
  if (in.el) throw UsageError("beth needs a .slp problem");
  if (cfg.target.empty()) throw UsageError("beth needs --target");
  if (!in.problem.b.empty()) throw UsageError("beth reads side A only; side B must be empty");
  auto sigma = resolve_sigma(cfg, in.problem);
  std::vector<std::string> names;
  for (const auto& s : sigma) names.push_back(s.name);
  rep.result["target"] = cfg.target;
  rep.result["sigma"] = names;
  rep.result["sharing"] = to_string(cfg.sharing);

  auto d = beth::double_signature(in.problem.a, in.problem.axioms, sigma, cfg.target);
  bool implicit = beth::is_implicitly_defined(d, cfg.sharing);
  rep.text << "implicit: " << (implicit ? "yes" : "no") << "\n";
  rep.result["implicit"] = implicit;
  if (!implicit) {
    rep.code = kNegative;
    rep.result["explicit"] = nullptr;
    return;
  }
  auto def = beth::explicit_definition(d, cfg.sharing);
  if (def.found) {
    rep.text << "explicit: " << to_string(*def.term) << "\n";
    rep.result["explicit"] = to_string(*def.term);
  } else {
    rep.code = kNegative;
    rep.text << "explicit: FAILURE (" << def.diagnostics << ")\n";
    rep.result["explicit"] = nullptr;
    rep.result["failure"] = def.diagnostics;
  }
  if (!cfg.model.empty()) {
    auto mf = formats::parse_model(read_file(cfg.model));
    auto r = beth::refute_in_model(mf.model, sigma, cfg.target, cfg.depth);
    rep.text << "model: " << r.terms << " terms up to depth " << cfg.depth << ", "
             << (r.refuted ? "none" : "some") << " evaluate to " << r.target_value;
    if (r.witness) rep.text << " (e.g. " << to_string(*r.witness) << ")";
    rep.text << "\n";
    Json counts = Json::object();
    for (const auto& [e, n] : r.value_counts) counts[e] = n;
    rep.result["refutation"] = Json{{"depth", cfg.depth},
                                    {"terms", r.terms},
                                    {"target_value", r.target_value},
                                    {"refuted", r.refuted},
                                    {"witness", r.witness ? Json(to_string(*r.witness)) : Json(nullptr)},
                                    {"value_counts", counts}};
  }
}

inline void cmd_model_check(const RunConfig&, const std::string& text, Report& rep) {
  auto mf = formats::parse_model(text);
  auto r = slat::check_finite_model(mf.model, mf.axioms, mf.atoms);
  std::size_t width = 0;
  for (const auto& c : r.checks) width = std::max(width, c.name.size());
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    rep.text << c.name << std::string(width - c.name.size() + 2, ' ') << (c.passed ? "pass" : "FAIL");
    if (!c.passed) rep.text << "  " << c.detail;
    rep.text << "\n";
    checks.push_back(Json{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  }
  rep.result["checks"] = checks;
  rep.result["all_passed"] = r.all_passed();
  rep.code = r.all_passed() ? kPositive : kNegative;
}

inline const char* status_of(int code) {
  switch (code) {
    case kPositive: return "positive";
    case kNegative: return "negative";
    case kInputError: return "input-error";
    default: return "engine-error";
  }
}

}  // namespace detail

/// Runs one command.  The report goes to `out`; in text mode errors go to `err`.
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  detail::Report rep;
  Json error = nullptr;
  std::string format_name;
  auto fail = [&](int code, const char* kind, const std::string& msg) {
    rep.code = code;
    error = Json{{"kind", kind}, {"message", msg}};
  };
  try {
    Format fmt = infer_format(cfg);
    format_name = to_string(fmt);
    std::string text = read_file(cfg.input);
    if (cfg.command == Command::ModelCheck) {
      if (fmt != Format::Model) throw UsageError("model-check needs a .model file");
      detail::cmd_model_check(cfg, text, rep);
    } else {
      auto in = detail::load_problem(fmt, text);
      switch (cfg.command) {
        case Command::Check: detail::cmd_check(cfg, in, rep); break;
        case Command::Interpolate: detail::cmd_interpolate(cfg, in, rep); break;
        case Command::Justify: detail::cmd_justify(cfg, in, rep); break;
        case Command::Beth: detail::cmd_beth(cfg, in, rep); break;
        case Command::ModelCheck: break;
      }
    }
  } catch (const ParseError& e) {
    fail(kInputError, "parse", cfg.input + ":" + e.what());
    error["line"] = e.line();
    error["column"] = e.column();
  } catch (const UsageError& e) {
    fail(kInputError, "usage", e.what());
  } catch (const LimitError& e) {
    fail(kInputError, "limit", e.what());
  } catch (const NotEntailed& e) {
    rep.code = kNegative;
    rep.text << "NOT-ENTAILED\n";
    rep.result["entailed"] = false;
  } catch (const NoSharedWitness& e) {
    fail(kEngineError, "no-shared-witness", e.what());
  } catch (const VerificationFailed& e) {
    fail(kEngineError, "verification-failed", e.what());
  } catch (const Error& e) {
    fail(kEngineError, "internal", e.what());
  }

  if (cfg.output == Output::Json) {
    Json j{{"command", to_string(cfg.command)},
           {"input", cfg.input},
           {"format", format_name.empty() ? Json(nullptr) : Json(format_name)},
           {"status", detail::status_of(rep.code)},
           {"exit_code", rep.code},
           {"result", error.is_null() ? rep.result : Json(nullptr)}};
    if (!error.is_null()) j["error"] = error;
    out << j.dump(2) << "\n";
  } else if (!error.is_null()) {
    err << "error: " << error["message"].get<std::string>() << "\n";
  } else {
    out << rep.text.str();
  }
  return rep.code;
}

}  // namespace slint::cli
