// kmlattice: build and certify cocompact lattices of Kac-Moody groups from a
// flat config file. Exit codes: 0 pass, 1 I/O or parse error, 2 certified
// failure, 3 hypothesis rejected, 4 budget or cap exhausted.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "kml/error.hpp"
#include "kml/report.hpp"

namespace fs = std::filesystem;

namespace {

struct Options {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> budget;
  std::optional<std::size_t> cap;
  bool dot = false;
  bool seedless = false;  // nothing here is seeded; accepted for scripts that insist
  std::string dot_name;
};

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("-c,--config", o.config, "config file (key = value)")->required();
  sub->add_option("-o,--out", o.out, "output directory for the report and DOT files");
  sub->add_option("--budget", o.budget, "tessellation search budget (nodes)");
  sub->add_option("--cap", o.cap, "group order cap");
  sub->add_flag("--dot", o.dot, "write DOT files for the scwols and surfaces built");
  sub->add_flag("--seedless", o.seedless, "reject nondeterministic fallbacks (there are none)");
}

bool write_file(const fs::path& p, const std::string& text) {
  std::error_code ec;
  if (p.has_parent_path()) fs::create_directories(p.parent_path(), ec);
  std::ofstream out(p);
  out << text;
  if (!out) {
    std::cerr << "kmlattice: cannot write " << p << "\n";
    return false;
  }
  return true;
}

kml::ConstructionRequest load(const Options& o) {
  auto req = kml::load_config(o.config);
  if (o.budget) req.budget = *o.budget;
  if (o.cap) req.cap = *o.cap;
  return req;
}

int report_stage(const Options& o, kml::Stage stage, bool always_write) {
  kml::Outcome outcome;
  try {
    outcome = kml::run_stage(load(o), stage);
  } catch (const kml::Error& e) {
    std::cerr << "kmlattice: " << e.what() << "\n";
    return kml::exit_code(kml::Verdict::error);
  }
  const std::string text = kml::render_report(outcome);
  std::cout << text;
  const fs::path dir = o.out.empty() ? fs::path(".") : fs::path(o.out);
  if (always_write || !o.out.empty()) {
    if (!write_file(dir / "report.txt", text)) return kml::exit_code(kml::Verdict::error);
  }
  if (o.dot && outcome.result) {
    for (const auto& [name, body] : outcome.result->dot) {
      if (!write_file(dir / (name + ".dot"), body)) return kml::exit_code(kml::Verdict::error);
    }
  }
  return kml::exit_code(outcome.verdict);
}

int export_dot(const Options& o) {
  const auto outcome = kml::run_stage(load(o), kml::Stage::build);
  if (!outcome.result) {
    std::cerr << "kmlattice: " << outcome.message << "\n";
    return kml::exit_code(outcome.verdict);
  }
  bool any = false;
  for (const auto& [name, body] : outcome.result->dot) {
    if (!o.dot_name.empty() && name != o.dot_name) continue;
    any = true;
    if (o.out.empty()) {
      std::cout << body;
    } else if (!write_file(fs::path(o.out) / (name + ".dot"), body)) {
      return kml::exit_code(kml::Verdict::error);
    }
  }
  if (!any) {
    std::cerr << "kmlattice: no DOT output named '" << o.dot_name << "'\n";
    return kml::exit_code(kml::Verdict::error);
  }
  return kml::exit_code(outcome.verdict);
}

int print_presentation(const Options& o) {
  const auto outcome = kml::run_stage(load(o), kml::Stage::build);
  if (!outcome.result) {
    std::cerr << "kmlattice: " << outcome.message << "\n";
    return kml::exit_code(outcome.verdict);
  }
  if (!outcome.result->presentation) {
    std::cerr << "kmlattice: no presentation: needs trivial chamber groups over the chamber scwol\n";
    return kml::exit_code(kml::Verdict::hypothesis_rejected);
  }
  std::cout << outcome.result->presentation->to_string();
  return kml::exit_code(outcome.verdict);
}

int surface_subgroup(const Options& o) {
  const auto req = load(o);
  const auto gcm = kml::GCM::validate(req.cartan);
  std::optional<std::uint64_t> order;
  if (req.p == 2) {
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < req.h; ++i) q *= 2;
    order = q + 1;  // chamber-transitive mirror groups are cyclic of order q + 1
  }
  const auto r = kml::surface_subgroup_hypothesis(gcm, order);
  std::cout << "right_angled = " << (r.right_angled ? "yes" : "no") << "\n";
  std::cout << "exhaustive = " << (r.exhaustive ? "yes" : "no") << "\n";
  std::cout << "cycle =";
  for (int i : r.cycle) std::cout << " " << i + 1;
  std::cout << "\ninterpretation = " << r.interpretation << "\n";
  if (r.presentation) std::cout << r.presentation->to_string();
  return r.cycle.empty() ? kml::exit_code(kml::Verdict::hypothesis_rejected) : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Build and certify cocompact lattices in Kac-Moody groups over finite fields"};
  app.require_subcommand(1);
  Options o;
  auto* check = app.add_subcommand("check", "check the hypotheses only");
  auto* build = app.add_subcommand("build", "build the construction and report statistics");
  auto* verify = app.add_subcommand("verify", "build and certify the covering");
  auto* run = app.add_subcommand("run", "verify and write the report (and DOT files) to --out");
  auto* dot = app.add_subcommand("export-dot", "print or write the DOT renderings");
  auto* pres = app.add_subcommand("print-presentation", "print the lattice presentation");
  auto* surf = app.add_subcommand("surface-subgroup", "look for an induced cycle of length >= 5 in the nerve");
  for (auto* sub : {check, build, verify, run, dot, pres, surf}) add_common(sub, o);
  dot->add_option("--name", o.dot_name, "only the rendering with this name");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  const auto start = std::chrono::steady_clock::now();
  int rc = 1;
  try {
    if (*check) rc = report_stage(o, kml::Stage::check, false);
    if (*build) rc = report_stage(o, kml::Stage::build, false);
    if (*verify) rc = report_stage(o, kml::Stage::verify, false);
    if (*run) rc = report_stage(o, kml::Stage::verify, true);
    if (*dot) rc = export_dot(o);
    if (*pres) rc = print_presentation(o);
    if (*surf) rc = surface_subgroup(o);
  } catch (const kml::Error& e) {
    std::cerr << "kmlattice: " << e.what() << "\n";
    rc = 1;
  }
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  std::cerr << "elapsed " << elapsed.count() << " s\n";
  return rc;
}
