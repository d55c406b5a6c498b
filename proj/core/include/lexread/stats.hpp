#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "lexread/indices.hpp"

namespace lexread {

/// Name of the quantile rule used by describe(); embedded in reports.
inline constexpr std::string_view kQuantileConvention =
    "linear interpolation between order statistics (type 7)";

struct SummaryStats {
    std::size_t n = 0;
    double mean = 0.0;
    /// Sample standard deviation (n - 1 denominator); 0 when n == 1.
    double standard_deviation = 0.0;
    double median = 0.0;
    double q1 = 0.0;
    double q3 = 0.0;
    double min = 0.0;
    double max = 0.0;

    friend bool operator==(const SummaryStats&, const SummaryStats&) = default;
};

/// Pearson coefficients over the five grade columns in kIndexNames order.
struct CorrelationMatrix {
    std::array<std::string_view, 5> labels = kIndexNames;
    std::array<std::array<double, 5>, 5> values{};

    friend bool operator==(const CorrelationMatrix&, const CorrelationMatrix&) = default;
};

/// Sample Pearson correlation. Throws StatsError on length mismatch, fewer
/// than two points, or a constant input.
double pearson(std::span<const double> x, std::span<const double> y);

/// Throws StatsError naming the offending column pair.
CorrelationMatrix correlation_matrix(std::span<const GradeVector> grades);

/// Cronbach's alpha over k columns of equal length, with sample variances:
/// k/(k-1) * (1 - sum(var_i) / var(row totals)).
double cronbach_alpha(std::span<const std::vector<double>> columns);

/// Quantile at probability p in [0, 1] of already sorted values (type 7).
double quantile_sorted(std::span<const double> sorted, double p);

SummaryStats describe(std::span<const double> values);

struct YearAggregate {
    int year = 0;
    std::size_t count = 0;
    double mean = 0.0;
    double median = 0.0;

    friend bool operator==(const YearAggregate&, const YearAggregate&) = default;
};

struct YearValue {
    int year = 0;
    double value = 0.0;
};

/// One row per distinct year, ascending. Throws StatsError for years outside
/// 1000..9999.
std::vector<YearAggregate> per_year_aggregate(std::span<const YearValue> records);

bool is_valid_year(int year);

/// Column `index` (0..4, kIndexNames order) of the grade table.
std::vector<double> grade_column(std::span<const GradeVector> grades, std::size_t index);

}  // namespace lexread
