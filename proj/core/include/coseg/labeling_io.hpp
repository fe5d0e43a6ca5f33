#pragma once

#include <string>

#include "coseg/baselines.hpp"

namespace coseg {

// Versioned labeling file (version: 1): per-image chosen_box and 0/1 labels
// plus the relaxed values, alongside the run's objective figures.
std::string serialize_labeling(const RunResult& res, const std::string& mode);
RunResult parse_labeling(const std::string& text);

void save_labeling(const RunResult& res, const std::string& mode, const std::string& path);
RunResult load_labeling(const std::string& path);

}  // namespace coseg
