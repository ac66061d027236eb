#include "fnt/testfn.hpp"

#include <cmath>

#include "fnt/errors.hpp"

namespace fnt {

namespace {

double norm2_sq(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

std::vector<TestFunction> build() {
  std::vector<TestFunction> v;
  v.push_back({"runge", "1 / (1 + 25 |x|^2)", 1,
               [](std::span<const double> x) { return 1.0 / (1.0 + 25.0 * norm2_sq(x)); }});
  v.push_back({"perturbed-runge",
               "1 / (1 + 25 (x^2 + y^2)) + 0.1 sin(20 x) sin(20 y), two coordinates", 2,
               [](std::span<const double> x) {
                 return 1.0 / (1.0 + 25.0 * (x[0] * x[0] + x[1] * x[1])) +
                        0.1 * std::sin(20.0 * x[0]) * std::sin(20.0 * x[1]);
               }});
  v.push_back({"simple-runge", "1 / (1 + |x|^2)", 1,
               [](std::span<const double> x) { return 1.0 / (1.0 + norm2_sq(x)); }});
  v.push_back({"radial-cosine", "cos(pi |x|^2 / 2)", 1, [](std::span<const double> x) {
                 return std::cos(1.5707963267948966 * norm2_sq(x));
               }});
  v.push_back({"sine-product", "product of sin(pi x_i)", 1, [](std::span<const double> x) {
                 double p = 1.0;
                 for (double xi : x) p *= std::sin(3.141592653589793 * xi);
                 return p;
               }});
  v.push_back({"gaussian-stripe", "exp(-4 (x_1 - x_2)^2)", 2, [](std::span<const double> x) {
                 const double d = x[0] - x[1];
                 return std::exp(-4.0 * d * d);
               }});
  return v;
}

}  // namespace

const std::vector<TestFunction>& test_functions() {
  static const std::vector<TestFunction> table = build();
  return table;
}

const TestFunction& test_function(const std::string& name) {
  for (const TestFunction& f : test_functions())
    if (f.name == name) return f;
  std::string names;
  for (const TestFunction& f : test_functions()) {
    if (!names.empty()) names += ", ";
    names += f.name;
  }
  throw ArgumentError("unknown test function '" + name + "'; available: " + names);
}

}  // namespace fnt
