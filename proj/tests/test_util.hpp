#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "coseg/generator.hpp"
#include "coseg/instance_io.hpp"

namespace testutil {

inline std::string data_path(const std::string& name) {
  return std::string(TEST_DATA_DIR) + "/" + name;
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline coseg::InstanceSet appendix_fixture() {
  return coseg::parse_instance(slurp(data_path("appendix.json")));
}

// desk-scale planted instance small enough for the brute-force oracle
inline coseg::InstanceSet small_planted(std::uint64_t seed, int images = 2, int superpixels = 5,
                                        int boxes = 2) {
  coseg::SynthConfig cfg;
  cfg.images = images;
  cfg.superpixels = superpixels;
  cfg.boxes = boxes;
  cfg.feature_dim = 3;
  cfg.box_feature_dim = 3;
  cfg.seed = seed;
  return coseg::generate(cfg);
}

}  // namespace testutil
