#pragma once

// Analysis reports: the structured outcome of one CLI command, rendered
// either as JSON or as flattened "path: value" lines carrying the same
// content.

#include <string>
#include <vector>

#include <json.hpp>

namespace lvk::cli {

enum class Status { ok, failed, unavailable };

std::string status_name(Status s);

struct Certificate {
  std::string identity;
  std::string residual;  ///< canonical rendering, "0" when the identity holds
  bool is_zero = true;
};

struct AnalysisReport {
  std::string command;
  std::string system_name;
  Status status = Status::ok;
  int exit_code = 0;
  nlohmann::json result = nlohmann::json::object();
  std::vector<Certificate> certificates;
  std::vector<std::string> warnings;
  /// Set when the command stopped on an error.
  std::string error_kind;
  std::string error_message;
};

nlohmann::json to_json(const AnalysisReport& r);

/// Byte-stable: keys sorted, two-space indent, trailing newline.
std::string render_json(const AnalysisReport& r);

/// One "path: value" line per JSON leaf, in key order.
std::string render_text(const AnalysisReport& r);

/// The leaves of a JSON value as (path, value) pairs; strings unquoted.
std::vector<std::pair<std::string, std::string>> flatten(const nlohmann::json& j);

}  // namespace lvk::cli
