#pragma once

#include <stdexcept>
#include <string>

#include "coseg/instance.hpp"

namespace coseg {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Versioned JSON instance file (version: 1). Parsing validates the result
// and throws ParseError naming the offending image/entity.
InstanceSet parse_instance(const std::string& text);
std::string serialize_instance(const InstanceSet& set);

InstanceSet load_instance(const std::string& path);
void save_instance(const InstanceSet& set, const std::string& path);

}  // namespace coseg
