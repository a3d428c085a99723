#pragma once

// JSON encoding of case bundles, discourse state and metrics.

#include <filesystem>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "msgplan/critique_model.hpp"
#include "msgplan/pipeline.hpp"

namespace msgplan {

// Malformed JSON or a field of the wrong shape; `path` locates it.
struct CaseParseError : std::runtime_error {
  CaseParseError(std::string path, const std::string& message);
  std::string path;
};

CaseBundle bundle_from_json(const nlohmann::json& j);
nlohmann::json bundle_to_json(const CaseBundle& bundle);

DiscourseState state_from_json(const nlohmann::json& j, const std::string& path = "state");
nlohmann::json state_to_json(const DiscourseState& state);

nlohmann::json report_to_json(const MetricsReport& report);

CaseBundle load_bundle(const std::filesystem::path& file);
DiscourseState load_state(const std::filesystem::path& file);
void save_state(const std::filesystem::path& file, const DiscourseState& state);

}  // namespace msgplan
