#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dualrw/eval.hpp"
#include "dualrw/term.hpp"

namespace dualrw {

/// Fill value of the benchmark's parameter array.
inline constexpr double kBenchFill = 1.5;

/// `lam v (array n real). ifold n (lam acc j. acc + v[j]) 0`
Term vector_sum(std::uint64_t n);

/// vector_sum as a loss: ignores its data arguments (arrays of size 1).
Term vector_sum_loss(std::uint64_t n);

/// The gradient of vector_sum_loss applied to constant-filled arrays.
Term vector_sum_gradient_program(std::uint64_t n, double fill = kBenchFill);

struct BenchRow {
    std::uint64_t n;
    std::string variant; // "unoptimized" or "optimized"
    OpCounter ops;
};

struct BenchReport {
    std::vector<BenchRow> rows;
    double slope_unoptimized = 0;
    double slope_optimized = 0;

    std::string table() const;
    /// One `n,variant,totalOps` line per row.
    std::string machine_lines() const;
};

/// Least-squares slope of log(y) against log(x).
double loglog_slope(std::span<const double> x, std::span<const double> y);

/// Evaluates the unoptimized and the default-pipeline-optimized gradient
/// program for each size. Sizes must be non-empty, strictly increasing and
/// at least 2. Throws std::runtime_error if a gradient is not all ones.
BenchReport bench_vector_sum(std::span<const std::uint64_t> sizes);

} // namespace dualrw
