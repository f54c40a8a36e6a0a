#include "charvar/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "charvar/errors.hpp"
#include "charvar/json_io.hpp"
#include "charvar/liegroup.hpp"
#include "charvar/matrixrep.hpp"
#include "charvar/montecarlo.hpp"
#include "charvar/presentation.hpp"
#include "charvar/theorems.hpp"

namespace charvar {

namespace {

namespace fs = std::filesystem;

struct RunConfig {
  std::string group;
  std::string target;
  std::string class_tag;
  std::string mode = "check";
  std::string input;
  std::string output;
  std::string format = "json";
  std::string suite = "all";
  std::string phi;
  std::uint64_t seed = 0;
  std::size_t count = 100;
  long genus = 0;
  std::optional<double> tol;
  std::string positional;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::FormatError, "cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

bool is_file(const std::string& s) {
  std::error_code ec;
  return !s.empty() && fs::is_regular_file(s, ec);
}

// CHARVAR_TOL, when set.
std::optional<double> env_tolerance() {
  if (const char* env = std::getenv("CHARVAR_TOL")) {
    try {
      std::size_t used = 0;
      const double v = std::stod(env, &used);
      if (used == std::string(env).size() && v > 0) return v;
    } catch (const std::exception&) {
    }
    throw Error(ErrorKind::InvalidParameter, std::string("CHARVAR_TOL is not a positive number: '") + env + "'");
  }
  return std::nullopt;
}

// Presentation from a file, an inline presentation, or a standard group name.
Presentation load_group(const std::string& spec) {
  if (is_file(spec)) {
    try {
      return parse_presentation(read_file(spec));
    } catch (const Error& e) {
      throw Error(e.kind(), spec + ": " + e.what());
    }
  }
  if (spec.find("gens") != std::string::npos) return parse_presentation(spec);
  return standard_group(GroupKind::parse(spec));
}

ReductiveDescriptor load_target(const std::string& spec) {
  if (is_file(spec)) {
    try {
      return parse_descriptor(read_file(spec));
    } catch (const Error& e) {
      throw Error(e.kind(), spec + ": " + e.what());
    }
  }
  return named_group(spec);
}

// Text rendering of the JSON output: "key: value" per scalar, "- " for list items.
void render_text(const Json& j, std::ostream& out, const std::string& indent = "") {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string head = indent + (j.is_object() ? it.key() + ":" : std::string("-"));
    const Json& v = it.value();
    if (v.is_object() && !v.empty() && j.is_array()) {
      // "- key: value" on the first line, the rest aligned under it.
      std::ostringstream item;
      render_text(v, item, indent + "  ");
      out << indent << "- " << item.str().substr(indent.size() + 2);
    } else if (v.is_structured() && !v.empty()) {
      out << head << "\n";
      render_text(v, out, indent + "  ");
    } else if (v.is_string()) {
      out << head << " " << v.get<std::string>() << "\n";
    } else {
      out << head << " " << v.dump() << "\n";
    }
  }
}

std::string render(const Json& j, const std::string& format) {
  std::ostringstream s;
  if (format == "text") {
    render_text(j, s);
  } else {
    s << j.dump(2) << "\n";
  }
  return s.str();
}

// Writes to a temporary sibling and renames, so a failed run leaves no partial file.
void emit(const std::string& content, const RunConfig& cfg, std::ostream& out) {
  if (cfg.output.empty()) {
    out << content;
    return;
  }
  const fs::path target(cfg.output);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(ErrorKind::FormatError, "cannot write '" + tmp.string() + "'");
    f << content;
    if (!f.flush()) throw Error(ErrorKind::FormatError, "write to '" + tmp.string() + "' failed");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(ErrorKind::FormatError, "cannot move output into '" + cfg.output + "'");
  }
}

std::vector<long> parse_phi(const std::string& text) {
  std::vector<long> out;
  std::stringstream s(text);
  std::string item;
  while (std::getline(s, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stol(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorKind::InvalidParameter, "--phi takes comma-separated integers, got '" + text + "'");
    }
  }
  return out;
}

Json residual_array(const std::vector<double>& v) { return Json(v); }

int run_analyze(const RunConfig& cfg, std::ostream& out) {
  if (cfg.group.empty() || cfg.target.empty()) {
    throw Error(ErrorKind::InvalidParameter, "analyze needs --group and --target");
  }
  const Presentation gamma = load_group(cfg.group);
  const ReductiveDescriptor g = load_target(cfg.target);
  std::optional<ClassTag> tag;
  if (!cfg.class_tag.empty()) tag = ClassTag::parse(cfg.class_tag);
  const InvariantReport report = analyze(gamma, g, cfg.group, cfg.target, tag);
  emit(render(to_json(report), cfg.format), cfg, out);
  return report.hypothesis_failures.empty() ? kExitOk : kExitHypothesis;
}

struct VerifyInputs {
  MatrixFile file;
  Presentation presentation;
};

VerifyInputs load_verify_inputs(const RunConfig& cfg) {
  if (cfg.input.empty()) throw Error(ErrorKind::InvalidParameter, "--input <matrix file> is required for this mode");
  MatrixFile file = [&] {
    try {
      return parse_matrix_file(read_file(cfg.input), cfg.tol);
    } catch (const Error& e) {
      throw Error(e.kind(), cfg.input + ": " + e.what());
    }
  }();
  Presentation p;
  if (!cfg.group.empty()) {
    p = load_group(cfg.group);
  } else if (file.presentation) {
    p = parse_presentation(*file.presentation);
  } else {
    throw Error(ErrorKind::InvalidParameter, "no presentation: pass --group or add \"presentation\" to the matrix file");
  }
  if (!file.generators.empty() && file.generators != p.generator_names()) {
    throw Error(ErrorKind::ShapeMismatch, "matrix file generator names differ from the presentation");
  }
  return {std::move(file), std::move(p)};
}

int run_verify(const RunConfig& cfg, std::ostream& out) {
  const double tol = cfg.tol.value_or(kDefaultTolerance);
  Json j;
  j["mode"] = cfg.mode;
  bool ok = true;

  if (cfg.mode == "sample") {
    SuiteOptions opt;
    opt.seed = cfg.seed;
    opt.count = cfg.count;
    opt.tolerance = tol;
    std::vector<SuiteResult> results;
    const std::string& s = cfg.suite;
    if (s == "all") {
      results = run_all_suites(opt);
    } else if (s == "obstruction") {
      results.push_back(obstruction_suite(opt));
    } else if (s == "lift") {
      results.push_back(lift_suite(opt));
    } else if (s == "deck") {
      results.push_back(deck_suite(opt));
    } else if (s == "canonical_form") {
      results.push_back(canonical_form_suite(opt));
    } else if (s == "su2_trace") {
      results.push_back(su2_trace_suite(opt));
    } else {
      throw Error(ErrorKind::InvalidParameter, "unknown suite '" + s + "'");
    }
    j["seed"] = cfg.seed;
    j["count"] = cfg.count;
    j["tolerance"] = tol;
    Json suites = Json::array();
    for (const auto& r : results) {
      Json sj;
      sj["name"] = r.name;
      sj["pass"] = r.pass;
      sj["samples"] = r.samples;
      sj["checks"] = r.checks;
      sj["failures"] = r.failures;
      Json m = Json::object();
      for (const auto& [k, v] : r.metrics) m[k] = v;
      sj["metrics"] = m;
      sj["messages"] = r.messages;
      suites.push_back(sj);
      ok = ok && r.pass;
    }
    j["suites"] = suites;
    j["pass"] = ok;
    emit(render(j, cfg.format), cfg, out);
    return ok ? kExitOk : kExitHypothesis;
  }

  const VerifyInputs in = load_verify_inputs(cfg);
  const MatrixRep& rep = in.file.rep;
  j["target"] = rep.target().to_string();
  j["tolerance"] = rep.tolerance();

  if (cfg.mode == "check") {
    const RelatorCheck c = check_representation(rep, in.presentation);
    j["pass"] = c.ok;
    j["residuals"] = residual_array(c.residuals);
    ok = c.ok;
  } else if (cfg.mode == "lift") {
    const LiftedRep lift = lift_to_universal_cover(rep, in.presentation);
    const LiftDiagnostics d = lift_diagnostics(lift, rep, in.presentation);
    ok = d.max_relator_residual() <= 1e-10 && d.roundtrip <= 1e-12;
    j["pass"] = ok;
    j["lift"] = to_json(lift);
    j["real_residuals"] = residual_array(d.real_residuals);
    j["su_residuals"] = residual_array(d.su_residuals);
    j["max_relator_residual"] = d.max_relator_residual();
    j["roundtrip_residual"] = d.roundtrip;
  } else if (cfg.mode == "obstruction") {
    long genus = cfg.genus;
    if (genus == 0) {
      if (rep.size() % 2 != 0) throw Error(ErrorKind::ShapeMismatch, "odd number of matrices; pass --genus");
      genus = static_cast<long>(rep.size() / 2);
    }
    if (genus < 1) throw Error(ErrorKind::InvalidParameter, "genus must be at least 1");
    const ObstructionClass oc = obstruction_class(rep, static_cast<std::size_t>(genus));
    j["pass"] = true;
    j["genus"] = genus;
    j["class"] = oc.k;
    j["modulus"] = oc.n;
    j["residual"] = oc.residual;
  } else if (cfg.mode == "deck") {
    const LiftedRep lift = lift_to_universal_cover(rep, in.presentation);
    std::vector<long> phi = cfg.phi.empty() ? std::vector<long>(rep.size(), 0) : parse_phi(cfg.phi);
    const LiftedRep acted = deck_act(phi, lift, in.presentation);
    double projection = 0, separation = 0;
    const auto p0 = lift.project();
    const auto p1 = acted.project();
    for (std::size_t i = 0; i < p0.size(); ++i) {
      projection = std::max(projection, (p0[i] - p1[i]).norm());
      separation = std::max(separation, std::abs(acted.real_part(i) - lift.real_part(i)));
    }
    const double relator = lift_relator_residuals(acted, in.presentation).max_relator_residual();
    ok = projection <= 1e-12 && relator <= 1e-10;
    j["pass"] = ok;
    j["phi"] = phi;
    j["lift"] = to_json(lift);
    j["acted"] = to_json(acted);
    j["projection_change"] = projection;
    j["real_part_separation"] = separation;
    j["max_relator_residual"] = relator;
  } else {
    throw Error(ErrorKind::InvalidParameter, "unknown mode '" + cfg.mode + "' (check, lift, obstruction, deck, sample)");
  }
  emit(render(j, cfg.format), cfg, out);
  return ok ? kExitOk : kExitHypothesis;
}

int run_group_check(const RunConfig& cfg, std::ostream& out) {
  const Presentation p = load_group(cfg.positional);
  Json j;
  j["generators"] = p.generator_names();
  Json rels = Json::array();
  for (const auto& r : p.relators()) rels.push_back(p.word_to_text(r));
  j["relators"] = rels;
  j["abelianization"] = cokernel(abelianization_matrix(p)).to_string();
  const ExponentCanceling ec = is_exponent_canceling(p);
  j["exponent_canceling"] = ec.flag;
  j["rank"] = ec.rank ? Json(*ec.rank) : Json(nullptr);
  Json classes = Json::array();
  for (const auto& t : recognize_class(p)) classes.push_back(t.to_string());
  j["classes"] = classes;
  j["presentation"] = p.to_text();
  emit(render(j, cfg.format), cfg, out);
  return kExitOk;
}

int run_lie_info(const RunConfig& cfg, std::ostream& out) {
  const ReductiveDescriptor g = load_target(cfg.positional);
  Json j;
  j["spec"] = cfg.positional;
  const Json info = to_json(g);
  for (const auto& [k, v] : info.items()) j[k] = v;
  emit(render(j, cfg.format), cfg, out);
  return kExitOk;
}

int run_stable(const RunConfig& cfg, std::ostream& out) {
  const StableFacts f = stable_moduli_facts(parse_stable_target(cfg.positional), cfg.genus == 0 ? 1 : cfg.genus);
  emit(render(to_json(f), cfg.format), cfg, out);
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Topological invariants of representation spaces and character varieties"};
  app.require_subcommand(1);
  RunConfig cfg;
  double tol_flag = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--output,-o", cfg.output, "Write the report to this file instead of stdout");
  };

  auto* analyze_cmd = app.add_subcommand("analyze", "Run the theorem engine on a group and a Lie group");
  analyze_cmd->add_option("--group", cfg.group, "Standard group name, presentation text or presentation file")->required();
  analyze_cmd->add_option("--target", cfg.target, "Group name (\"U 3\", \"PSU 2 x torus 1\") or descriptor file")->required();
  analyze_cmd->add_option("--class", cfg.class_tag, "Class tag: \"free r\", \"free_abelian r\", \"surface g\", \"other\"");
  add_common(analyze_cmd);

  auto* verify_cmd = app.add_subcommand("verify", "Numerical checks on matrix representations");
  verify_cmd->add_option("--mode", cfg.mode, "check, lift, obstruction, deck or sample")
      ->check(CLI::IsMember({"check", "lift", "obstruction", "deck", "sample"}));
  verify_cmd->add_option("--input,-i", cfg.input, "Matrix file (JSON)");
  verify_cmd->add_option("--group", cfg.group, "Presentation (overrides the one in the matrix file)");
  verify_cmd->add_option("--genus", cfg.genus, "Genus for obstruction mode (default: matrices / 2)");
  verify_cmd->add_option("--phi", cfg.phi, "Deck vector for deck mode, e.g. 1,0");
  verify_cmd->add_option("--seed", cfg.seed, "Seed for sample mode")->capture_default_str();
  verify_cmd->add_option("--count", cfg.count, "Samples per suite in sample mode")->capture_default_str();
  verify_cmd->add_option("--suite", cfg.suite, "Sample suite: all, obstruction, lift, deck, canonical_form, su2_trace");
  verify_cmd->add_option("--target", cfg.target, "Accepted for symmetry with analyze; sample suites fix their targets");
  verify_cmd->add_option("--tol", tol_flag, "Tolerance (default 1e-9 or CHARVAR_TOL)");
  add_common(verify_cmd);

  auto* group_cmd = app.add_subcommand("group", "Presentation utilities");
  group_cmd->require_subcommand(1);
  auto* group_check = group_cmd->add_subcommand("check", "Parse a presentation and report its shape");
  group_check->add_option("file", cfg.positional, "Presentation file, inline text or standard group name")->required();
  add_common(group_check);

  auto* lie_cmd = app.add_subcommand("lie", "Lie group utilities");
  lie_cmd->require_subcommand(1);
  auto* lie_info = lie_cmd->add_subcommand("info", "Structure of a reductive group");
  lie_info->add_option("spec", cfg.positional, "Group name or descriptor file")->required();
  add_common(lie_info);
  auto* lie_stable = lie_cmd->add_subcommand("stable", "Homotopy of the stable moduli spaces");
  lie_stable->add_option("target", cfg.positional, "SU, U or GL")->required();
  lie_stable->add_option("--genus", cfg.genus, "Surface genus (default 1)");
  add_common(lie_stable);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }

  try {
    if (verify_cmd->count("--tol")) {
      if (!(tol_flag > 0)) throw Error(ErrorKind::InvalidParameter, "--tol must be positive");
      cfg.tol = tol_flag;
    } else {
      cfg.tol = env_tolerance();
    }
    if (analyze_cmd->parsed()) return run_analyze(cfg, out);
    if (verify_cmd->parsed()) return run_verify(cfg, out);
    if (group_check->parsed()) return run_group_check(cfg, out);
    if (lie_info->parsed()) return run_lie_info(cfg, out);
    if (lie_stable->parsed()) return run_stable(cfg, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace charvar
