#include "wtg/kernel.hpp"

#include <cmath>
#include <string>

#include "wtg/error.hpp"

namespace wtg {

double KernelSpec::operator()(double x) const {
  const double a = std::abs(x);
  if (a >= 1.0) return 0.0;
  const double w = 1.0 - x * x;
  switch (kind) {
    case KernelKind::epanechnikov:
      return 0.75 * w;
    case KernelKind::biweight:
      return 0.9375 * w * w;
  }
  return 0.0;
}

const char* KernelSpec::name() const {
  switch (kind) {
    case KernelKind::epanechnikov: return "epanechnikov";
    case KernelKind::biweight: return "biweight";
  }
  return "unknown";
}

KernelSpec KernelSpec::parse(std::string_view name) {
  if (name == "epanechnikov") return {KernelKind::epanechnikov};
  if (name == "biweight") return {KernelKind::biweight};
  fail(ErrorCode::invalid_argument, "KernelSpec::parse",
       "unknown kernel '" + std::string(name) + "'");
}

}  // namespace wtg
