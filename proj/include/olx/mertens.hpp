#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "olx/lfamily.hpp"

namespace olx {

/// Smallest |1 - alpha/p^s| accepted in a local factor before reporting degeneracy.
inline constexpr double kDegenerateFactor = 1e-15;

/// Lambda_F(p^r) = (1/r) sum_j alpha_j(p)^r.
std::complex<double> lambda_coeff(const LFunctionModel& model, std::uint64_t p, int r);

/// ln F_x(1) = -sum_{p<=x} sum_j ln|1 - alpha_j(p)/p|.
double log_truncated_product_at_1(const LFunctionModel& model, double x);

/// F_x(1) = prod_{p<=x} prod_j (1 - alpha_j(p)/p)^{-1}.
double truncated_product_at_1(const LFunctionModel& model, double x);

/// c_{-m} e^{gamma m} (ln x)^m.
double mertens_prediction(const LFunctionModel& model, double x);

struct MertensReport {
  std::string label;
  std::vector<double> grid;
  std::vector<double> product;
  std::vector<double> prediction;
  std::vector<double> ratio;
};

/// Products, predictions and their ratios on a strictly ascending grid. No fitting.
MertensReport mertens_report(const LFunctionModel& model, std::span<const double> grid);

}  // namespace olx
