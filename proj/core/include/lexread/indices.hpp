#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string_view>

#include "lexread/segmenter.hpp"

namespace lexread {

enum class LinsearMode {
    /// Average over consecutive 100-word windows.
    Windowed,
    /// First 100 words only, as the textstat package computes it.
    FirstSampleCompat,
};

std::string_view to_string(LinsearMode mode);

/// Five ceiling-truncated grades of one document plus their consolidated score.
struct GradeVector {
    int flesch_kincaid = 0;
    int smog = 0;
    int ari = 0;
    int coleman_liau = 0;
    int linsear = 0;
    /// Mean of Flesch-Kincaid, SMOG and ARI.
    double sum_variable = 0.0;

    /// The five grades in column order FK, SMOG, ARI, CL, Linsear.
    std::array<int, 5> grades() const { return {flesch_kincaid, smog, ari, coleman_liau, linsear}; }

    friend bool operator==(const GradeVector&, const GradeVector&) = default;
};

inline constexpr std::array<std::string_view, 5> kIndexNames = {
    "flesch_kincaid", "smog", "ari", "coleman_liau", "linsear",
};

/// Ceiling with a 1e-9 snap to the nearest integer, so products that are
/// mathematically integral do not pick up a spurious +1.
int ceil_grade(double raw);

// Raw (pre-ceiling) formula values. Each throws DegenerateTextError when its
// denominators are zero.
double flesch_kincaid_raw(const TextMetrics& m);
double smog_raw(const TextMetrics& m);
double ari_raw(const TextMetrics& m);
double coleman_liau_raw(const TextMetrics& m);

int flesch_kincaid(const TextMetrics& m);
int smog(const TextMetrics& m);
int ari(const TextMetrics& m);
int coleman_liau(const TextMetrics& m);

/// Word counts of one Linsear Write sample.
struct LinsearSample {
    std::size_t easy_words = 0;
    std::size_t hard_words = 0;
    /// Sentences detected inside the sample; zero is scored as one.
    std::size_t sentences = 0;
};

/// Scaled (unrounded) Linsear score: r = (easy + 3 hard) / sentences, then
/// r / 2 when r > 20, else (r - 2) / 2.
double linsear_sample_score(const LinsearSample& sample);

/// Ceiling of the mean sample score. Throws DegenerateTextError on no samples.
int linsear_from_samples(std::span<const LinsearSample> samples);

/// Splits the text into 100-word samples according to `mode`.
std::vector<LinsearSample> linsear_samples(std::string_view text, LinsearMode mode);

int linsear_write(std::string_view text, LinsearMode mode);

/// Sum variable of the first three grades: (g1 + g2 + g3) / 3.
double sum_variable(int flesch_kincaid, int smog, int ari);
double sum_variable(const GradeVector& g);

/// All five grades from one metrics pass over `text`.
GradeVector grade_all(std::string_view text, LinsearMode mode);

/// Same as above when the metrics are already known for `text`.
GradeVector grade_all(std::string_view text, const TextMetrics& metrics, LinsearMode mode);

}  // namespace lexread
