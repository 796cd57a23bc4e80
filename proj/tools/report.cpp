#include "report.hpp"

namespace lvk::cli {

std::string status_name(Status s) {
  switch (s) {
    case Status::ok: return "ok";
    case Status::failed: return "failed";
    case Status::unavailable: return "unavailable";
  }
  return "failed";
}

nlohmann::json to_json(const AnalysisReport& r) {
  nlohmann::json j;
  j["command"] = r.command;
  j["systemName"] = r.system_name;
  j["status"] = status_name(r.status);
  j["exitCode"] = r.exit_code;
  j["result"] = r.result;
  j["certificates"] = nlohmann::json::array();
  for (const auto& c : r.certificates) {
    j["certificates"].push_back(
        {{"identity", c.identity}, {"residual", c.residual}, {"isZero", c.is_zero}});
  }
  j["warnings"] = r.warnings;
  if (!r.error_kind.empty()) {
    j["error"] = {{"kind", r.error_kind}, {"message", r.error_message}};
  }
  return j;
}

std::string render_json(const AnalysisReport& r) { return to_json(r).dump(2) + "\n"; }

namespace {

void flatten_into(const nlohmann::json& j, const std::string& path,
                  std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object()) {
    if (j.empty()) out.emplace_back(path, "{}");
    for (auto it = j.begin(); it != j.end(); ++it) {
      flatten_into(it.value(), path.empty() ? it.key() : path + "." + it.key(), out);
    }
  } else if (j.is_array()) {
    if (j.empty()) out.emplace_back(path, "[]");
    for (std::size_t i = 0; i < j.size(); ++i) {
      flatten_into(j[i], path + "[" + std::to_string(i) + "]", out);
    }
  } else if (j.is_string()) {
    out.emplace_back(path, j.get<std::string>());
  } else {
    out.emplace_back(path, j.dump());
  }
}

}  // namespace

std::vector<std::pair<std::string, std::string>> flatten(const nlohmann::json& j) {
  std::vector<std::pair<std::string, std::string>> out;
  flatten_into(j, "", out);
  return out;
}

std::string render_text(const AnalysisReport& r) {
  std::string s;
  for (const auto& [path, value] : flatten(to_json(r))) s += path + ": " + value + "\n";
  return s;
}

}  // namespace lvk::cli
