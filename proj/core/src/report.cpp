#include "kml/report.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "kml/error.hpp"

namespace kml {

namespace {

constexpr std::string_view kReportHeader = "kmlattice report";

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

template <class T>
T parse_number(const std::string& s, int line, const std::string& key) {
  T v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
    throw ParseError("line " + std::to_string(line) + ": " + key + ": '" + s + "' is not a valid number");
  }
  return v;
}

std::vector<std::vector<int>> parse_matrix(const std::string& s, int line) {
  std::vector<std::vector<int>> rows;
  for (const auto& row : split(s, ';')) {
    std::vector<int> r;
    std::istringstream is(row);
    std::string tok;
    while (is >> tok) r.push_back(parse_number<int>(tok, line, "cartan"));
    if (r.empty()) throw ParseError("line " + std::to_string(line) + ": cartan: empty row");
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<TypeMask> parse_partition(const std::string& s, int line) {
  std::vector<TypeMask> parts;
  for (const auto& part : split(s, ';')) {
    TypeMask mask = 0;
    for (const auto& idx : split(part, ',')) {
      const int i = parse_number<int>(idx, line, "partition");
      if (i < 1 || i > 31) throw ParseError("line " + std::to_string(line) + ": partition: index " + idx + " out of range");
      mask |= TypeMask{1} << (i - 1);
    }
    parts.push_back(mask);
  }
  return parts;
}

}  // namespace

ConstructionRequest parse_config(std::string_view text) {
  ConstructionRequest req;
  bool have_construction = false, have_cartan = false, have_p = false;
  bool report = false;
  std::map<std::string, int> seen;
  std::istringstream is{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(is, raw)) {
    ++line;
    const std::string s = trim(raw);
    if (s.empty() || s[0] == '#') continue;
    if (line == 1 && s == kReportHeader) {
      report = true;
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ParseError("line " + std::to_string(line) + ": expected 'key = value'");
    std::string key = trim(std::string_view(s).substr(0, eq));
    const std::string value = trim(std::string_view(s).substr(eq + 1));
    if (report) {
      if (key.rfind("config.", 0) != 0) continue;
      key = key.substr(7);
    }
    if (seen.count(key)) throw ParseError("line " + std::to_string(line) + ": duplicate key '" + key + "'");
    seen[key] = line;
    if (key == "construction") {
      const auto k = construction_from_string(value);
      if (!k) throw ParseError("line " + std::to_string(line) + ": unknown construction '" + value + "'");
      req.which = *k;
      have_construction = true;
    } else if (key == "cartan") {
      req.cartan = parse_matrix(value, line);
      have_cartan = true;
    } else if (key == "p") {
      req.p = parse_number<std::uint32_t>(value, line, key);
      have_p = true;
    } else if (key == "h") {
      req.h = parse_number<std::uint32_t>(value, line, key);
    } else if (key == "F") {
      req.faces = parse_number<std::uint32_t>(value, line, key);
    } else if (key == "genus") {
      req.genus = parse_number<std::uint32_t>(value, line, key);
    } else if (key == "partition") {
      req.partition = parse_partition(value, line);
    } else if (key == "budget") {
      req.budget = parse_number<std::uint64_t>(value, line, key);
    } else if (key == "cap") {
      req.cap = parse_number<std::size_t>(value, line, key);
    } else {
      throw ParseError("line " + std::to_string(line) + ": unknown key '" + key + "'");
    }
  }
  if (!have_construction) throw ParseError("missing key 'construction'");
  if (!have_cartan) throw ParseError("missing key 'cartan'");
  if (!have_p) throw ParseError("missing key 'p'");
  return req;
}

ConstructionRequest load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return parse_config(os.str());
}

std::string config_text(const ConstructionRequest& req) {
  std::ostringstream os;
  os << "construction = " << to_string(req.which) << "\n";
  os << "cartan = ";
  for (std::size_t i = 0; i < req.cartan.size(); ++i) {
    if (i) os << "; ";
    for (std::size_t j = 0; j < req.cartan[i].size(); ++j) os << (j ? " " : "") << req.cartan[i][j];
  }
  os << "\np = " << req.p << "\nh = " << req.h << "\n";
  if (req.faces) os << "F = " << *req.faces << "\n";
  if (req.genus) os << "genus = " << *req.genus << "\n";
  if (!req.partition.empty()) {
    os << "partition = ";
    for (std::size_t k = 0; k < req.partition.size(); ++k) {
      if (k) os << ";";
      bool first = true;
      for (int i : mask_members(req.partition[k])) {
        os << (first ? "" : ",") << i + 1;
        first = false;
      }
    }
    os << "\n";
  }
  os << "budget = " << req.budget << "\ncap = " << req.cap << "\n";
  return os.str();
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::counted: return "counted";
    case Verdict::certified_fail: return "certified_fail";
    case Verdict::hypothesis_rejected: return "hypothesis_rejected";
    case Verdict::budget_exhausted: return "budget_exhausted";
    case Verdict::error: return "error";
  }
  return "error";
}

int exit_code(Verdict v) {
  switch (v) {
    case Verdict::pass:
    case Verdict::counted: return 0;
    case Verdict::error: return 1;
    case Verdict::certified_fail: return 2;
    case Verdict::hypothesis_rejected: return 3;
    case Verdict::budget_exhausted: return 4;
  }
  return 1;
}

Outcome run_stage(const ConstructionRequest& req, Stage stage) {
  Outcome o;
  o.request = req;
  o.stage = stage;
  try {
    o.hypotheses = check_hypotheses(req);
    if (stage == Stage::check) {
      o.verdict = Verdict::pass;
      return o;
    }
    o.result = build(req, stage == Stage::verify);
    const auto& r = *o.result;
    if (!r.direct_failures.empty()) {
      o.verdict = Verdict::certified_fail;
    } else if (stage == Stage::build) {
      o.verdict = Verdict::pass;
    } else if (!r.certificate) {
      o.verdict = Verdict::counted;
    } else {
      o.verdict = r.certificate->pass ? Verdict::pass : Verdict::certified_fail;
    }
  } catch (const HypothesisError& e) {
    o.verdict = Verdict::hypothesis_rejected;
    o.message = e.what();
  } catch (const BudgetExceeded& e) {
    o.verdict = Verdict::budget_exhausted;
    o.message = e.what();
  } catch (const CapExceeded& e) {
    o.verdict = Verdict::budget_exhausted;
    o.message = e.what();
  } catch (const Error& e) {
    o.verdict = Verdict::error;
    o.message = e.what();
  }
  return o;
}

std::string render_report(const Outcome& o) {
  std::ostringstream os;
  os << kReportHeader << "\n";
  std::istringstream cfg(config_text(o.request));
  std::string line;
  while (std::getline(cfg, line)) os << "config." << line << "\n";
  os << "stage = " << (o.stage == Stage::check ? "check" : o.stage == Stage::build ? "build" : "verify") << "\n";
  const bool rejected = o.verdict == Verdict::hypothesis_rejected;
  os << "hypotheses = " << (rejected ? "rejected" : o.hypotheses.empty() ? "not checked" : "pass") << "\n";
  for (const auto& [k, v] : o.hypotheses) os << k << " = " << v << "\n";
  if (!o.message.empty()) os << "message = " << o.message << "\n";
  if (o.result) {
    const auto& r = *o.result;
    for (const auto& [k, v] : r.stats) {
      if (k.rfind("hypothesis.", 0) == 0) continue;
      os << "stat." << k << " = " << v << "\n";
    }
    for (const auto& f : r.direct_failures) os << "direct_failure = " << f << "\n";
    if (r.certificate) {
      const auto& c = *r.certificate;
      os << "certificate = " << (c.pass ? "pass" : "fail") << "\n";
      os << "certificate.checks = " << c.checks.size() << "\n";
      os << "certificate.failed = " << c.failed_checks << "\n";
      const auto& y = r.complex->base;
      const auto& k = r.morphism->target->scwol;
      const auto& t = *r.morphism->target;
      for (const auto& ck : c.checks) {
        const auto& b = k.edge(ck.target_edge);
        os << "check = " << y.name(ck.vertex) << " over " << mask_label(t.vertex_type(b.i)) << "->"
           << mask_label(t.vertex_type(b.t)) << ": fibre " << ck.fibre << ", domain " << ck.domain << ", image "
           << ck.image << ", index " << ck.index << (ck.ok ? ", ok" : ", FAIL") << "\n";
      }
      for (const auto& w : c.witnesses()) os << "witness = " << w << "\n";
    } else {
      os << "certificate = not run\n";
    }
  }
  os << "verdict = " << to_string(o.verdict) << "\n";
  return os.str();
}

}  // namespace kml
