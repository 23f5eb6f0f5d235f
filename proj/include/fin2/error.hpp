#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace fin2 {

/// Domain error carrying a stable machine-readable name (e.g. "NotIdempotent").
/// The CLI reports `name()` verbatim and maps every Error to exit code 1.
class Error : public std::runtime_error {
 public:
  Error(std::string name, const std::string& what)
      : std::runtime_error(what), name_(std::move(name)) {}

  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

}  // namespace fin2
