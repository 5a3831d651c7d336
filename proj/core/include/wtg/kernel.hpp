#pragma once

#include <string_view>

namespace wtg {

enum class KernelKind {
  epanechnikov,  // 0.75 (1 - x^2) on [-1, 1]; the default
  biweight,      // 15/16 (1 - x^2)^2 on [-1, 1]
};

/// Symmetric probability-density kernel with support [-1, 1], used by the
/// local-linear machinery.
struct KernelSpec {
  KernelKind kind = KernelKind::epanechnikov;

  double operator()(double x) const;

  /// K((d)/h)/h, the bandwidth-scaled kernel.
  double scaled(double d, double h) const { return (*this)(d / h) / h; }

  const char* name() const;
  static KernelSpec parse(std::string_view name);
};

}  // namespace wtg
