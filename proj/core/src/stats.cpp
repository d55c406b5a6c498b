#include "lexread/stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "lexread/error.hpp"

namespace lexread {

namespace {

double mean_of(std::span<const double> v) {
    double total = 0.0;
    for (double x : v) {
        total += x;
    }
    return total / static_cast<double>(v.size());
}

double sample_variance(std::span<const double> v) {
    const double m = mean_of(v);
    double ss = 0.0;
    for (double x : v) {
        ss += (x - m) * (x - m);
    }
    return ss / static_cast<double>(v.size() - 1);
}

bool is_constant(std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [&](double x) { return x == v.front(); });
}

}  // namespace

double pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        throw StatsError("pearson: length mismatch (" + std::to_string(x.size()) + " vs " +
                         std::to_string(y.size()) + ")");
    }
    if (x.size() < 2) {
        throw StatsError("pearson: need at least 2 observations");
    }
    if (is_constant(x) || is_constant(y)) {
        throw StatsError("pearson: constant input, correlation undefined");
    }
    const double mx = mean_of(x);
    const double my = mean_of(y);
    double sxy = 0.0;
    double sxx = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    const double r = sxy / std::sqrt(sxx * syy);
    return std::clamp(r, -1.0, 1.0);
}

std::vector<double> grade_column(std::span<const GradeVector> grades, std::size_t index) {
    std::vector<double> column;
    column.reserve(grades.size());
    for (const auto& g : grades) {
        column.push_back(static_cast<double>(g.grades().at(index)));
    }
    return column;
}

CorrelationMatrix correlation_matrix(std::span<const GradeVector> grades) {
    if (grades.size() < 2) {
        throw StatsError("correlation matrix: n < 2");
    }
    std::array<std::vector<double>, 5> columns;
    for (std::size_t i = 0; i < 5; ++i) {
        columns[i] = grade_column(grades, i);
        if (is_constant(columns[i])) {
            throw StatsError("correlation matrix: column " + std::string(kIndexNames[i]) +
                             " is constant, correlation undefined");
        }
    }
    CorrelationMatrix cm;
    for (std::size_t i = 0; i < 5; ++i) {
        cm.values[i][i] = 1.0;
        for (std::size_t j = i + 1; j < 5; ++j) {
            double r = 0.0;
            try {
                r = pearson(columns[i], columns[j]);
            } catch (const StatsError& e) {
                throw StatsError("correlation matrix (" + std::string(kIndexNames[i]) + ", " +
                                 std::string(kIndexNames[j]) + "): " + e.what());
            }
            cm.values[i][j] = r;
            cm.values[j][i] = r;
        }
    }
    return cm;
}

double cronbach_alpha(std::span<const std::vector<double>> columns) {
    const std::size_t k = columns.size();
    if (k < 2) {
        throw StatsError("cronbach alpha: need at least 2 columns");
    }
    const std::size_t n = columns.front().size();
    if (n < 2) {
        throw StatsError("cronbach alpha: need at least 2 rows");
    }
    std::vector<double> totals(n, 0.0);
    double item_variance = 0.0;
    for (const auto& column : columns) {
        if (column.size() != n) {
            throw StatsError("cronbach alpha: columns differ in length");
        }
        item_variance += sample_variance(column);
        for (std::size_t i = 0; i < n; ++i) {
            totals[i] += column[i];
        }
    }
    const double total_variance = sample_variance(totals);
    if (!(total_variance > 0.0)) {
        throw StatsError("cronbach alpha: variance of row totals is zero");
    }
    const double kd = static_cast<double>(k);
    return kd / (kd - 1.0) * (1.0 - item_variance / total_variance);
}

double quantile_sorted(std::span<const double> sorted, double p) {
    if (sorted.empty()) {
        throw StatsError("quantile of empty input");
    }
    const double h = static_cast<double>(sorted.size() - 1) * p;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

SummaryStats describe(std::span<const double> values) {
    if (values.empty()) {
        throw StatsError("describe: empty input");
    }
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());

    SummaryStats s;
    s.n = sorted.size();
    // Summing in sorted order keeps the result permutation-independent.
    s.mean = mean_of(sorted);
    s.standard_deviation = s.n > 1 ? std::sqrt(sample_variance(sorted)) : 0.0;
    s.median = quantile_sorted(sorted, 0.5);
    s.q1 = quantile_sorted(sorted, 0.25);
    s.q3 = quantile_sorted(sorted, 0.75);
    s.min = sorted.front();
    s.max = sorted.back();
    return s;
}

bool is_valid_year(int year) {
    return year >= 1000 && year <= 9999;
}

std::vector<YearAggregate> per_year_aggregate(std::span<const YearValue> records) {
    std::map<int, std::vector<double>> by_year;
    for (const auto& r : records) {
        if (!is_valid_year(r.year)) {
            throw StatsError("invalid year " + std::to_string(r.year));
        }
        by_year[r.year].push_back(r.value);
    }
    std::vector<YearAggregate> out;
    out.reserve(by_year.size());
    for (const auto& [year, values] : by_year) {
        const SummaryStats s = describe(values);
        out.push_back({year, s.n, s.mean, s.median});
    }
    return out;
}

}  // namespace lexread
