#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kml/constructions.hpp"

namespace kml {

/// Flat `key = value` config. Keys: construction, cartan ("2 -2; -2 2"),
/// p, h, F, genus, partition ("1,2;3", 1-based), budget, cap. Lines starting
/// with '#' are comments. A report is accepted too: its config.* lines are read.
ConstructionRequest parse_config(std::string_view text);
ConstructionRequest load_config(const std::filesystem::path& path);
/// Canonical config text; parse_config(config_text(r)) == r.
std::string config_text(const ConstructionRequest& req);

enum class Stage { check, build, verify };

enum class Verdict {
  pass,                 ///< everything requested was certified
  counted,              ///< counting mode: numbers only, nothing to certify
  certified_fail,       ///< a check ran and failed, with witnesses
  hypothesis_rejected,  ///< the construction does not apply
  budget_exhausted,     ///< search budget or group-order cap ran out
  error,                ///< bad input or I/O
};

std::string to_string(Verdict v);
int exit_code(Verdict v);

struct Outcome {
  ConstructionRequest request;
  Stage stage = Stage::verify;
  Verdict verdict = Verdict::error;
  Stats hypotheses;
  std::optional<ConstructionResult> result;
  std::string message;  ///< rejection or error text
};

/// Runs the requested stage, mapping library errors onto verdicts.
Outcome run_stage(const ConstructionRequest& req, Stage stage);

/// Deterministic report text with a fixed key order (no timing).
std::string render_report(const Outcome& o);

}  // namespace kml
