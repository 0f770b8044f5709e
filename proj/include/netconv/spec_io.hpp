#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "netconv/network.hpp"
#include "netconv/policy.hpp"
#include "netconv/serialize.hpp"

namespace netconv {

struct Environment {
  int max_failures = 0;
};

/// A network description file: configuration, policies and environment.
struct NetworkSpec {
  Network network;
  std::vector<PolicySpec> policies;
  Environment environment;
};

/// Malformed input; `line` is 1-based, 0 when unknown.
class SpecError : public std::runtime_error {
 public:
  SpecError(const std::string& what, int line) : std::runtime_error(what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

NetworkSpec parse_spec(std::string_view text);
NetworkSpec load_spec(const std::filesystem::path& file);
Json spec_to_json(const NetworkSpec& spec);

}  // namespace netconv
