#pragma once

#include <optional>
#include <string>

#include "json.hpp"

namespace drh {

/// Structured result of an experiment run. Serializes with a fixed field order so identical
/// runs give identical bytes; runtime_seconds stays null unless a caller fills it in.
struct ExperimentReport {
    std::string experiment;
    std::string criterion;
    nlohmann::ordered_json inputs = nlohmann::ordered_json::object();
    nlohmann::ordered_json per_point = nlohmann::ordered_json::array();
    nlohmann::ordered_json checks = nlohmann::ordered_json::object();
    std::optional<double> slope;
    std::optional<double> slope_residual;
    std::optional<double> sup_ratio;
    bool pass = false;
    std::optional<double> runtime_seconds;

    nlohmann::ordered_json to_json() const {
        const auto opt = [](const std::optional<double>& v) -> nlohmann::ordered_json {
            return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
        };
        nlohmann::ordered_json j;
        j["experiment"] = experiment;
        j["inputs"] = inputs;
        j["per_point"] = per_point;
        j["slope"] = opt(slope);
        j["slope_residual"] = opt(slope_residual);
        j["sup_ratio"] = opt(sup_ratio);
        j["checks"] = checks;
        j["pass"] = pass;
        j["criterion"] = criterion;
        j["runtime_seconds"] = opt(runtime_seconds);
        return j;
    }
};

}  // namespace drh
