#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace fnt {

// Named functions on [-1,1]^m used by the CLI and the convergence checks.
// Dimension comes from the argument length; min_dim guards the few formulas
// that need at least two coordinates.
struct TestFunction {
  std::string name;
  std::string description;
  int min_dim = 1;
  std::function<double(std::span<const double>)> fn;
};

const std::vector<TestFunction>& test_functions();

// lookup by name; unknown names raise ArgumentError listing what exists
const TestFunction& test_function(const std::string& name);

}  // namespace fnt
