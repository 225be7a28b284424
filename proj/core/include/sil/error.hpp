#pragma once

#include <stdexcept>
#include <string>

namespace sil {

// domain errors use std::domain_error, range errors std::out_of_range

struct precondition_error : std::logic_error {
  using std::logic_error::logic_error;
};

// schema violation in a config; `path` names the offending field
struct parse_error : std::runtime_error {
  parse_error(std::string path, const std::string& what)
      : std::runtime_error(path.empty() ? what : path + ": " + what), path(std::move(path)) {}
  std::string path;
};

struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace sil
