#include "lexread/indices.hpp"

#include <cmath>
#include <numeric>
#include <vector>

#include "lexread/error.hpp"
#include "segmenter_internal.hpp"

namespace lexread {

namespace {

constexpr std::size_t kSampleWords = 100;
constexpr std::size_t kMinTailWords = 50;
constexpr double kIntegerSnap = 1e-9;

void require_words(const TextMetrics& m) {
    if (m.word_count == 0) {
        throw DegenerateTextError(DegenerateTextError::Reason::NoWords);
    }
}

void require_sentences(const TextMetrics& m) {
    if (m.sentence_count == 0) {
        throw DegenerateTextError(DegenerateTextError::Reason::NoSentences);
    }
}

double ratio(std::size_t num, std::size_t den) {
    return static_cast<double>(num) / static_cast<double>(den);
}

LinsearSample score_window(std::span<const detail::Run> words) {
    LinsearSample sample;
    for (const auto& w : words) {
        if (detail::count_syllables_cps(w.cps) >= 3) {
            ++sample.hard_words;
        } else {
            ++sample.easy_words;
        }
    }
    const std::vector<detail::Run> window(words.begin(), words.end());
    sample.sentences = detail::group_sentences(window).size();
    return sample;
}

}  // namespace

std::string_view to_string(LinsearMode mode) {
    return mode == LinsearMode::Windowed ? "windowed" : "compat";
}

int ceil_grade(double raw) {
    const double nearest = std::round(raw);
    if (std::fabs(raw - nearest) < kIntegerSnap) {
        return static_cast<int>(nearest);
    }
    return static_cast<int>(std::ceil(raw));
}

double flesch_kincaid_raw(const TextMetrics& m) {
    require_sentences(m);
    require_words(m);
    return 0.39 * ratio(m.word_count, m.sentence_count) +
           11.8 * ratio(m.syllable_count, m.word_count) - 15.59;
}

double smog_raw(const TextMetrics& m) {
    require_sentences(m);
    return 1.0430 * std::sqrt(30.0 * ratio(m.polysyllable_count, m.sentence_count)) + 3.1291;
}

double ari_raw(const TextMetrics& m) {
    require_sentences(m);
    require_words(m);
    return 4.71 * ratio(m.character_count, m.word_count) +
           0.5 * ratio(m.word_count, m.sentence_count) - 21.43;
}

double coleman_liau_raw(const TextMetrics& m) {
    require_words(m);
    const double letters_per_100 = 100.0 * ratio(m.letter_count, m.word_count);
    const double sentences_per_100 = 100.0 * ratio(m.sentence_count, m.word_count);
    return 0.0588 * letters_per_100 - 0.296 * sentences_per_100 - 15.8;
}

int flesch_kincaid(const TextMetrics& m) { return ceil_grade(flesch_kincaid_raw(m)); }
int smog(const TextMetrics& m) { return ceil_grade(smog_raw(m)); }
int ari(const TextMetrics& m) { return ceil_grade(ari_raw(m)); }
int coleman_liau(const TextMetrics& m) { return ceil_grade(coleman_liau_raw(m)); }

double linsear_sample_score(const LinsearSample& sample) {
    const std::size_t sentences = std::max<std::size_t>(sample.sentences, 1);
    const double r = static_cast<double>(sample.easy_words + 3 * sample.hard_words) /
                     static_cast<double>(sentences);
    return r > 20.0 ? r / 2.0 : (r - 2.0) / 2.0;
}

int linsear_from_samples(std::span<const LinsearSample> samples) {
    if (samples.empty()) {
        throw DegenerateTextError(DegenerateTextError::Reason::NoWords);
    }
    double total = 0.0;
    for (const auto& s : samples) {
        total += linsear_sample_score(s);
    }
    return ceil_grade(total / static_cast<double>(samples.size()));
}

std::vector<LinsearSample> linsear_samples(std::string_view text, LinsearMode mode) {
    const std::string normalized = normalize_nfc(text);
    std::vector<detail::Run> words;
    for (auto& run : detail::scan_runs(normalized)) {
        if (run.is_word) {
            words.push_back(std::move(run));
        }
    }
    std::vector<LinsearSample> samples;
    if (words.empty()) {
        return samples;
    }
    const std::span<const detail::Run> all(words);
    if (mode == LinsearMode::FirstSampleCompat || words.size() < kSampleWords) {
        samples.push_back(score_window(all.first(std::min(words.size(), kSampleWords))));
        return samples;
    }

    std::vector<std::pair<std::size_t, std::size_t>> windows;
    for (std::size_t begin = 0; begin < words.size(); begin += kSampleWords) {
        windows.emplace_back(begin, std::min(words.size(), begin + kSampleWords));
    }
    const auto [tail_begin, tail_end] = windows.back();
    if (windows.size() > 1 && tail_end - tail_begin < kMinTailWords) {
        windows.pop_back();
        windows.back().second = tail_end;
    }
    for (const auto& [begin, end] : windows) {
        samples.push_back(score_window(all.subspan(begin, end - begin)));
    }
    return samples;
}

int linsear_write(std::string_view text, LinsearMode mode) {
    return linsear_from_samples(linsear_samples(text, mode));
}

GradeVector grade_all(std::string_view text, LinsearMode mode) {
    return grade_all(text, compute_metrics(text), mode);
}

GradeVector grade_all(std::string_view text, const TextMetrics& metrics, LinsearMode mode) {
    require_words(metrics);
    require_sentences(metrics);
    GradeVector g;
    g.flesch_kincaid = flesch_kincaid(metrics);
    g.smog = smog(metrics);
    g.ari = ari(metrics);
    g.coleman_liau = coleman_liau(metrics);
    g.linsear = linsear_write(text, mode);
    g.sum_variable = sum_variable(g);
    return g;
}

double sum_variable(int flesch_kincaid, int smog, int ari) {
    return static_cast<double>(flesch_kincaid + smog + ari) / 3.0;
}

double sum_variable(const GradeVector& g) {
    return sum_variable(g.flesch_kincaid, g.smog, g.ari);
}

}  // namespace lexread
