// Acceptance suite. Prints one PASS/FAIL/SKIP line per criterion, followed by
// indented detail lines. Exit status: 0 all selected criteria pass, 1 any
// failure, 77 when the only selected criterion was skipped.
//
//   lexread_acceptance                 all criteria
//   lexread_acceptance --criterion N   one criterion (1..7)
//
// Criterion 6 needs a user-assembled corpus:
//   LEXREAD_ACCEPTANCE_MANIFEST=path/to/manifest.csv
//   LEXREAD_ACCEPTANCE_TEXTS=dir/with/<id>.txt   (optional; a fetch cache works)

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>
#include <nlohmann/json.hpp>

#include "cli.hpp"
#include "lexread/corpus.hpp"
#include "lexread/error.hpp"
#include "lexread/indices.hpp"
#include "lexread/segmenter.hpp"
#include "lexread/stats.hpp"
#include "stub_server.hpp"
#include "test_support.hpp"

namespace {

using namespace lexread;
using lexread::testing::data_path;
using lexread::testing::slurp;
using lexread::testing::TempDir;
using Rational = boost::multiprecision::cpp_rational;
using Clock = std::chrono::steady_clock;

enum class Status { Pass, Fail, Skip };

struct Result {
    Status status = Status::Fail;
    std::string summary;
    std::vector<std::string> details;
};

std::string ms_since(Clock::time_point start) {
    const double ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    std::ostringstream s;
    s << std::fixed << std::setprecision(1) << ms << " ms";
    return s.str();
}

std::string fmt(double v, int precision = 6) {
    std::ostringstream s;
    s << std::setprecision(precision) << v;
    return s.str();
}

Rational q(long long num, long long den = 1) {
    return Rational(num) / den;
}

// ---------------------------------------------------------------- criterion 1

TextMetrics metrics(std::size_t words, std::size_t sentences, std::size_t syllables = 0, std::size_t poly = 0,
                    std::size_t chars = 0, std::size_t letters = 0) {
    TextMetrics m;
    m.word_count = words;
    m.sentence_count = sentences;
    m.syllable_count = syllables;
    m.polysyllable_count = poly;
    m.hard_word_count = poly;
    m.easy_word_count = words >= poly ? words - poly : 0;
    m.character_count = chars;
    m.letter_count = letters;
    return m;
}

Result criterion_formulas() {
    const auto start = Clock::now();
    Result r;
    struct Example {
        std::string name;
        std::function<int()> run;
        std::optional<int> expected;  // nullopt: must throw DegenerateTextError
    };
    const auto package = nlohmann::json::parse(slurp(data_path("fixture_paragraph.package_linsear.json")));
    const std::string fixture = slurp(data_path("fixture_paragraph.txt"));

    const std::vector<Example> examples = {
        {"FK words=3 sentences=1 syllables=3", [] { return flesch_kincaid(metrics(3, 1, 3)); }, -2},
        {"FK words=100 sentences=5 syllables=150", [] { return flesch_kincaid(metrics(100, 5, 150)); }, 10},
        {"FK sentences=0", [] { return flesch_kincaid(metrics(3, 0, 3)); }, std::nullopt},
        {"SMOG poly=0 sentences=1", [] { return smog(metrics(10, 1, 10, 0)); }, 4},
        {"SMOG poly=30 sentences=30", [] { return smog(metrics(100, 30, 150, 30)); }, 9},
        {"SMOG poly=90 sentences=30", [] { return smog(metrics(100, 30, 300, 90)); }, 14},
        {"ARI chars=9 words=3 sentences=1", [] { return ari(metrics(3, 1, 3, 0, 9)); }, -5},
        {"ARI chars=500 words=100 sentences=5", [] { return ari(metrics(100, 5, 150, 0, 500)); }, 13},
        {"ARI words=0", [] { return ari(metrics(0, 1)); }, std::nullopt},
        {"CL letters=450 words=100 sentences=5", [] { return coleman_liau(metrics(100, 5, 0, 0, 450, 450)); }, 10},
        {"CL letters=9 words=3 sentences=1", [] { return coleman_liau(metrics(3, 1, 3, 0, 9, 9)); }, -8},
        {"CL words=0", [] { return coleman_liau(metrics(0, 1)); }, std::nullopt},
        {"Linsear easy=80 hard=20 sentences=10",
         [] {
             const LinsearSample s{80, 20, 10};
             return linsear_from_samples(std::span(&s, 1));
         },
         6},
        {"Linsear easy=50 hard=50 sentences=5",
         [] {
             const LinsearSample s{50, 50, 5};
             return linsear_from_samples(std::span(&s, 1));
         },
         20},
        {"Linsear fixture paragraph, compat mode, vs " + package["package"].get<std::string>(),
         [&] { return linsear_write(fixture, LinsearMode::FirstSampleCompat); }, package["grade"].get<int>()},
    };

    std::size_t passed = 0;
    for (const auto& ex : examples) {
        std::string got;
        bool ok = false;
        try {
            const int v = ex.run();
            got = std::to_string(v);
            ok = ex.expected && *ex.expected == v;
        } catch (const DegenerateTextError& e) {
            got = std::string("error: ") + e.what();
            ok = !ex.expected;
        } catch (const std::exception& e) {
            got = std::string("unexpected exception: ") + e.what();
        }
        passed += ok;
        const std::string want = ex.expected ? std::to_string(*ex.expected) : "degenerate-text error";
        r.details.push_back(std::string(ok ? "ok   " : "FAIL ") + ex.name + ": expected " + want + ", got " + got);
    }

    // Context for the text-level example: the package's own counts run
    // through our arithmetic, and the counts our segmenter produces.
    const LinsearSample package_counts{package["easy_words"].get<std::size_t>(),
                                       package["hard_words"].get<std::size_t>(),
                                       package["sentences"].get<std::size_t>()};
    const auto ours = linsear_samples(fixture, LinsearMode::FirstSampleCompat).at(0);
    r.details.push_back("note package counts easy=" + std::to_string(package_counts.easy_words) +
                        " hard=" + std::to_string(package_counts.hard_words) +
                        " sentences=" + std::to_string(package_counts.sentences) + " -> " +
                        std::to_string(linsear_from_samples(std::span(&package_counts, 1))) +
                        " with our scaling rule; our counts easy=" + std::to_string(ours.easy_words) +
                        " hard=" + std::to_string(ours.hard_words) + " sentences=" + std::to_string(ours.sentences) +
                        " (difference is in syllabification, see criterion 3)");

    const auto elapsed = std::chrono::duration<double>(Clock::now() - start).count();
    const bool fast = elapsed < 1.0;
    r.status = passed == examples.size() && fast ? Status::Pass : Status::Fail;
    r.summary = std::to_string(passed) + "/" + std::to_string(examples.size()) + " index examples exact in " +
                ms_since(start) + (fast ? "" : " (over the 1 s budget)");
    return r;
}

// ---------------------------------------------------------------- criterion 2

TextMetrics random_metrics(std::mt19937_64& rng) {
    const bool small = rng() % 2 == 0;
    const std::size_t max_words = small ? 40 : 20000;
    TextMetrics m;
    m.word_count = std::uniform_int_distribution<std::size_t>(1, max_words)(rng);
    m.sentence_count = std::uniform_int_distribution<std::size_t>(1, m.word_count)(rng);
    m.syllable_count = m.word_count + std::uniform_int_distribution<std::size_t>(0, 2 * m.word_count)(rng);
    m.hard_word_count = std::uniform_int_distribution<std::size_t>(0, std::min(m.word_count, m.syllable_count / 3))(rng);
    m.polysyllable_count = m.hard_word_count;
    m.easy_word_count = m.word_count - m.hard_word_count;
    m.character_count = m.word_count * std::uniform_int_distribution<std::size_t>(1, 14)(rng);
    m.letter_count = std::uniform_int_distribution<std::size_t>(0, m.character_count)(rng);
    return m;
}

bool within_ceiling(int grade, const Rational& raw) {
    return Rational(grade) - 1 < raw && raw <= Rational(grade);
}

// 1.0430 * sqrt(x) + 3.1291, compared exactly by squaring the bounds.
bool smog_within_ceiling(int grade, const Rational& x) {
    const Rational a = q(10430, 10000);
    const Rational b = q(31291, 10000);
    const Rational hi = (Rational(grade) - b) / a;
    const Rational lo = (Rational(grade) - 1 - b) / a;
    const bool below_hi = hi >= 0 && x <= hi * hi;
    const bool above_lo = lo < 0 || x > lo * lo;
    return below_hi && above_lo;
}

Rational linsear_exact(const LinsearSample& s) {
    const Rational r = Rational(static_cast<long long>(s.easy_words + 3 * s.hard_words)) /
                       static_cast<long long>(std::max<std::size_t>(s.sentences, 1));
    return r > 20 ? Rational(r / 2) : Rational((r - 2) / 2);
}

Result criterion_ceiling() {
    const auto start = Clock::now();
    Result r;
    std::mt19937_64 rng(20210301);
    const char* names[] = {"flesch_kincaid", "smog", "ari", "coleman_liau", "linsear"};
    std::array<std::size_t, 5> violations{};
    std::vector<std::string> examples;
    constexpr int kInputs = 1000;

    for (int i = 0; i < kInputs; ++i) {
        const auto m = random_metrics(rng);
        const long long w = static_cast<long long>(m.word_count);
        const long long s = static_cast<long long>(m.sentence_count);
        const long long syl = static_cast<long long>(m.syllable_count);
        const long long p = static_cast<long long>(m.polysyllable_count);
        const long long c = static_cast<long long>(m.character_count);
        const long long l = static_cast<long long>(m.letter_count);

        const Rational fk = q(39, 100) * q(w, s) + q(118, 10) * q(syl, w) - q(1559, 100);
        const Rational ar = q(471, 100) * q(c, w) + q(1, 2) * q(w, s) - q(2143, 100);
        const Rational cl = q(588, 10000) * q(100 * l, w) - q(296, 1000) * q(100 * s, w) - q(158, 10);
        const Rational smog_x = q(30 * p, s);

        const std::array<bool, 4> ok = {
            within_ceiling(flesch_kincaid(m), fk),
            smog_within_ceiling(smog(m), smog_x),
            within_ceiling(ari(m), ar),
            within_ceiling(coleman_liau(m), cl),
        };
        for (std::size_t k = 0; k < ok.size(); ++k) {
            if (!ok[k]) {
                ++violations[k];
                if (examples.size() < 5) {
                    examples.push_back(std::string(names[k]) + " on words=" + std::to_string(w) +
                                       " sentences=" + std::to_string(s));
                }
            }
        }

        // Linsear: one to five samples with counts drawn around these metrics.
        std::vector<LinsearSample> samples(1 + rng() % 5);
        Rational total = 0;
        for (auto& smp : samples) {
            const std::size_t words = 1 + rng() % 150;
            smp.hard_words = rng() % (words + 1);
            smp.easy_words = words - smp.hard_words;
            smp.sentences = rng() % 12;
            total += linsear_exact(smp);
        }
        const Rational mean = total / static_cast<long long>(samples.size());
        if (!within_ceiling(linsear_from_samples(samples), mean)) {
            ++violations[4];
            if (examples.size() < 5) {
                examples.push_back("linsear on " + std::to_string(samples.size()) + " samples");
            }
        }
    }

    std::size_t total_violations = 0;
    for (std::size_t k = 0; k < 5; ++k) {
        total_violations += violations[k];
        r.details.push_back(std::string(names[k]) + ": " + std::to_string(kInputs - violations[k]) + "/" +
                            std::to_string(kInputs) + " satisfy 0 <= grade - raw < 1 (exact rational check)");
    }
    for (const auto& e : examples) {
        r.details.push_back("violation: " + e);
    }
    r.status = total_violations == 0 ? Status::Pass : Status::Fail;
    r.summary = std::to_string(kInputs) + " random inputs x 5 indices, " + std::to_string(total_violations) +
                " violations, " + ms_since(start);
    return r;
}

// ---------------------------------------------------------------- criterion 3

Result criterion_syllables() {
    const auto start = Clock::now();
    Result r;
    std::istringstream in(slurp(data_path("syllable_oracle.tsv")));
    std::string line;
    std::size_t total = 0;
    std::size_t exact = 0;
    std::map<long, std::size_t> by_diff;
    std::vector<std::string> far;
    std::string source;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        if (line[0] == '#') {
            source = line.substr(1);
            continue;
        }
        const auto tab = line.find('\t');
        const std::string word = line.substr(0, tab);
        const long expected = std::stol(line.substr(tab + 1));
        const long got = static_cast<long>(count_syllables(word));
        ++total;
        ++by_diff[got - expected];
        if (got == expected) {
            ++exact;
        } else if (std::labs(got - expected) > 1) {
            far.push_back(word + " (ours " + std::to_string(got) + ", oracle " + std::to_string(expected) + ")");
        }
    }
    const double agreement = total ? static_cast<double>(exact) / static_cast<double>(total) : 0.0;
    r.details.push_back("oracle:" + source);
    for (const auto& [diff, n] : by_diff) {
        r.details.push_back("ours - oracle = " + std::string(diff > 0 ? "+" : "") + std::to_string(diff) + ": " +
                            std::to_string(n) + " words");
    }
    for (const auto& f : far) {
        r.details.push_back("off by more than 1: " + f);
    }
    const bool rate_ok = agreement >= 0.90;
    const bool spread_ok = far.empty();
    r.details.push_back(std::string(rate_ok ? "ok   " : "FAIL ") + "agreement " + fmt(100.0 * agreement, 4) +
                        "% (needs >= 90%)");
    r.details.push_back(std::string(spread_ok ? "ok   " : "FAIL ") + std::to_string(far.size()) +
                        " words off by more than 1 (needs 0)");
    r.status = rate_ok && spread_ok ? Status::Pass : Status::Fail;
    r.summary = std::to_string(exact) + "/" + std::to_string(total) + " exact (" + fmt(100.0 * agreement, 4) +
                "%), " + std::to_string(far.size()) + " off by >1, " + ms_since(start);
    return r;
}

// ---------------------------------------------------------------- criterion 4

using LD = long double;

std::optional<LD> pearson_bf(const std::vector<double>& x, const std::vector<double>& y) {
    LD sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = i + 1; j < x.size(); ++j) {
            const LD dx = static_cast<LD>(x[i]) - x[j];
            const LD dy = static_cast<LD>(y[i]) - y[j];
            sxy += dx * dy;
            sxx += dx * dx;
            syy += dy * dy;
        }
    }
    if (sxx == 0 || syy == 0) {
        return std::nullopt;
    }
    return sxy / std::sqrt(sxx * syy);
}

LD covariance_bf(const std::vector<double>& x, const std::vector<double>& y) {
    LD sum = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = i + 1; j < x.size(); ++j) {
            sum += (static_cast<LD>(x[i]) - x[j]) * (static_cast<LD>(y[i]) - y[j]);
        }
    }
    const LD n = static_cast<LD>(x.size());
    return sum / (n * (n - 1));
}

std::optional<LD> cronbach_bf(const std::vector<std::vector<double>>& cols) {
    const std::size_t k = cols.size();
    LD trace = 0, all = 0;
    for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = 0; b < k; ++b) {
            const LD c = covariance_bf(cols[a], cols[b]);
            all += c;
            if (a == b) {
                trace += c;
            }
        }
    }
    if (all == 0) {
        return std::nullopt;
    }
    return static_cast<LD>(k) / (k - 1) * (1 - trace / all);
}

struct DescribeBf {
    LD mean, sd, q1, median, q3, min, max;
};

DescribeBf describe_bf(std::vector<double> v) {
    // Insertion sort keeps the oracle free of library ordering code.
    for (std::size_t i = 1; i < v.size(); ++i) {
        for (std::size_t j = i; j > 0 && v[j - 1] > v[j]; --j) {
            std::swap(v[j - 1], v[j]);
        }
    }
    const std::size_t n = v.size();
    LD sum = 0;
    for (double x : v) {
        sum += x;
    }
    auto quantile = [&](LD p) {
        const LD h = (n - 1) * p;
        const std::size_t lo = static_cast<std::size_t>(std::floor(h));
        const std::size_t hi = std::min(lo + 1, n - 1);
        return v[lo] + (h - lo) * (static_cast<LD>(v[hi]) - v[lo]);
    };
    const LD var = n > 1 ? covariance_bf(v, v) : 0;
    return {sum / n, std::sqrt(var), quantile(0.25L), quantile(0.5L), quantile(0.75L), v.front(), v.back()};
}

GradeVector synthetic_document(std::mt19937_64& rng) {
    // Grades from random metrics, so columns carry the index correlation
    // structure and the occasional tie.
    auto m = random_metrics(rng);
    GradeVector g;
    g.flesch_kincaid = flesch_kincaid(m);
    g.smog = smog(m);
    g.ari = ari(m);
    g.coleman_liau = coleman_liau(m);
    const LinsearSample s{m.easy_word_count % 101, m.hard_word_count % 101, m.sentence_count % 13};
    g.linsear = linsear_from_samples(std::span(&s, 1));
    g.sum_variable = sum_variable(g);
    return g;
}

Result criterion_stats_oracle() {
    const auto start = Clock::now();
    Result r;
    std::mt19937_64 rng(4242);
    constexpr double kTol = 1e-9;
    std::size_t checks = 0;
    std::size_t mismatches = 0;
    std::size_t undefined_agree = 0;
    LD worst = 0;
    auto compare = [&](const std::string& what, double got, LD want) {
        ++checks;
        const LD diff = std::fabs(static_cast<LD>(got) - want);
        worst = std::max(worst, diff);
        if (!(diff <= kTol)) {
            ++mismatches;
            if (r.details.size() < 8) {
                r.details.push_back("mismatch " + what + ": got " + fmt(got, 17) + ", oracle " +
                                    fmt(static_cast<double>(want), 17));
            }
        }
    };

    for (int corpus = 0; corpus < 100; ++corpus) {
        const std::size_t n = 3 + rng() % 18;
        std::vector<GradeVector> docs;
        for (std::size_t i = 0; i < n; ++i) {
            docs.push_back(synthetic_document(rng));
        }
        std::vector<std::vector<double>> cols;
        for (std::size_t k = 0; k < 5; ++k) {
            cols.push_back(grade_column(docs, k));
        }
        std::vector<double> sums;
        for (const auto& d : docs) {
            sums.push_back(d.sum_variable);
        }
        const std::string tag = "corpus " + std::to_string(corpus);

        for (std::size_t a = 0; a < 5; ++a) {
            for (std::size_t b = a + 1; b < 5; ++b) {
                const auto want = pearson_bf(cols[a], cols[b]);
                try {
                    const double got = pearson(cols[a], cols[b]);
                    if (want) {
                        compare(tag + " pearson(" + std::to_string(a) + "," + std::to_string(b) + ")", got, *want);
                    } else {
                        ++checks;
                        ++mismatches;
                    }
                } catch (const StatsError&) {
                    ++checks;
                    if (want) {
                        ++mismatches;
                    } else {
                        ++undefined_agree;
                    }
                }
            }
        }

        const std::vector<std::vector<double>> three = {cols[0], cols[1], cols[2]};
        const auto want_alpha = cronbach_bf(three);
        try {
            const double got = cronbach_alpha(three);
            if (want_alpha) {
                compare(tag + " alpha", got, *want_alpha);
            } else {
                ++checks;
                ++mismatches;
            }
        } catch (const StatsError&) {
            ++checks;
            if (want_alpha) {
                ++mismatches;
            } else {
                ++undefined_agree;
            }
        }

        cols.push_back(sums);
        for (std::size_t k = 0; k < cols.size(); ++k) {
            const auto got = describe(cols[k]);
            const auto want = describe_bf(cols[k]);
            const std::string col = tag + " column " + std::to_string(k);
            compare(col + " mean", got.mean, want.mean);
            compare(col + " sd", got.standard_deviation, want.sd);
            compare(col + " q1", got.q1, want.q1);
            compare(col + " median", got.median, want.median);
            compare(col + " q3", got.q3, want.q3);
            compare(col + " min", got.min, want.min);
            compare(col + " max", got.max, want.max);
        }
    }
    r.details.insert(r.details.begin(), "largest absolute difference " + fmt(static_cast<double>(worst), 3) +
                                            "; undefined cases where both sides agree: " +
                                            std::to_string(undefined_agree));
    r.status = mismatches == 0 ? Status::Pass : Status::Fail;
    r.summary = "100 random corpora (3-20 documents), " + std::to_string(checks) + " values, " +
                std::to_string(mismatches) + " outside 1e-9, " + ms_since(start);
    return r;
}

// ---------------------------------------------------------------- criterion 5

std::string random_prose(std::mt19937_64& rng, std::size_t sentences) {
    static const std::vector<std::string> vocab = {
        "the", "Member", "States", "shall", "ensure", "processing", "data-driven", "Art.", "No.", "e.g.",
        "1.5", "2016/679", "(EU)", "undertaking", "recommendation", "table", "Union", "a", "\xe2\x80\x94",
        "provider", "caf\xc3\xa9", "co-operation", "\"quoted\"", "i.e.", "Dr.", "cf.",
    };
    static const std::vector<std::string> ends = {".", "!", "?", ".\"", ".)", ".]"};
    std::string text;
    for (std::size_t s = 0; s < sentences; ++s) {
        text += text.empty() ? "" : (rng() % 4 == 0 ? "\n\n" : " ");
        text += "Each";
        const std::size_t n = rng() % 16;
        for (std::size_t w = 0; w < n; ++w) {
            text += " " + vocab[rng() % vocab.size()];
        }
        text += " clause" + ends[rng() % ends.size()];
    }
    return text;
}

Result criterion_invariants() {
    const auto start = Clock::now();
    Result r;
    std::mt19937_64 rng(77);
    bool all_ok = true;
    auto report = [&](const std::string& name, std::size_t trials, std::size_t failures) {
        all_ok = all_ok && failures == 0;
        r.details.push_back(std::string(failures == 0 ? "ok   " : "FAIL ") + name + ": " +
                            std::to_string(trials - failures) + "/" + std::to_string(trials) + " trials hold");
    };
    std::uniform_real_distribution<double> value(-100.0, 100.0);
    std::uniform_real_distribution<double> scale(0.01, 50.0);

    {
        std::size_t fails = 0;
        constexpr std::size_t trials = 500;
        for (std::size_t t = 0; t < trials; ++t) {
            const std::size_t n = 2 + rng() % 40;
            std::vector<double> x(n), y(n), ax(n), cy(n), nx(n);
            for (std::size_t i = 0; i < n; ++i) {
                x[i] = value(rng);
                y[i] = value(rng);
            }
            const double a = scale(rng), b = value(rng), c = scale(rng), d = value(rng);
            for (std::size_t i = 0; i < n; ++i) {
                ax[i] = a * x[i] + b;
                cy[i] = c * y[i] + d;
                nx[i] = -a * x[i] + b;
            }
            const double base = pearson(x, y);
            fails += !(std::fabs(pearson(ax, cy) - base) <= 1e-9 && std::fabs(pearson(nx, cy) + base) <= 1e-9);
        }
        report("pearson(ax+b, cy+d) == pearson(x, y), sign flips for a < 0", trials, fails);
    }
    {
        std::size_t fails = 0;
        std::size_t trials = 0;
        while (trials < 500) {
            const std::size_t n = 2 + rng() % 30;
            const std::size_t k = 2 + rng() % 5;
            std::vector<std::vector<double>> cols(k, std::vector<double>(n));
            const bool identical = rng() % 10 == 0;
            for (auto& col : cols) {
                for (auto& v : col) {
                    v = value(rng);
                }
                if (identical) {
                    col = cols[0];
                }
            }
            try {
                const double alpha = cronbach_alpha(cols);
                ++trials;
                fails += !(alpha <= 1.0 + 1e-12) || (identical && std::fabs(alpha - 1.0) > 1e-9);
            } catch (const StatsError&) {
                // Zero total variance; draw again.
            }
        }
        report("cronbach_alpha <= 1, == 1 for identical columns", trials, fails);
    }
    {
        std::size_t fails = 0;
        std::size_t trials = 0;
        while (trials < 300) {
            std::vector<GradeVector> docs;
            const std::size_t n = 3 + rng() % 30;
            for (std::size_t i = 0; i < n; ++i) {
                docs.push_back(synthetic_document(rng));
            }
            CorrelationMatrix m;
            try {
                m = correlation_matrix(docs);
            } catch (const StatsError&) {
                continue;
            }
            ++trials;
            bool ok = true;
            for (std::size_t i = 0; i < 5; ++i) {
                ok = ok && m.values[i][i] == 1.0;
                for (std::size_t j = 0; j < 5; ++j) {
                    ok = ok && m.values[i][j] == m.values[j][i] && std::fabs(m.values[i][j]) <= 1.0;
                }
            }
            fails += !ok;
        }
        report("correlation matrix symmetric bit-for-bit, unit diagonal, entries in [-1, 1]", trials, fails);
    }
    {
        std::size_t fails = 0;
        constexpr std::size_t trials = 500;
        for (std::size_t t = 0; t < trials; ++t) {
            const std::string a = random_prose(rng, 1 + rng() % 6);
            const std::string b = random_prose(rng, 1 + rng() % 6);
            TextMetrics sum = compute_metrics(a);
            sum += compute_metrics(b);
            fails += !(compute_metrics(a + " " + b) == sum);
        }
        report("compute_metrics(a + \" \" + b) == compute_metrics(a) + compute_metrics(b)", trials, fails);
    }
    {
        std::size_t fails = 0;
        constexpr std::size_t trials = 60;
        const std::vector<std::string> texts = {"", "  \n ", "Short one.", "The Commission shall act. It reports!"};
        for (std::size_t t = 0; t < trials; ++t) {
            const std::size_t n = 1 + rng() % 30;
            std::vector<DocumentRecord> recs;
            std::map<std::string, std::string> store;
            for (std::size_t i = 0; i < n; ++i) {
                DocumentRecord rec;
                rec.id = "D" + std::to_string(rng() % 100000) + "-" + std::to_string(i);
                rec.year = 1990 + static_cast<int>(rng() % 35);
                recs.push_back(rec);
                if (rng() % 6 != 0) {
                    store[rec.id] = texts[rng() % texts.size()] + " " + random_prose(rng, rng() % 3);
                }
            }
            auto resolve = [&store](const DocumentRecord& rec) {
                const auto it = store.find(rec.id);
                if (it == store.end()) {
                    throw Error("missing text");
                }
                return it->second;
            };
            AnalyzeOptions options;
            options.jobs = 1 + rng() % 8;
            try {
                const auto report_ = analyze_corpus(recs, resolve, options);
                bool ok = report_.rows.size() + report_.failures.size() == recs.size();
                std::size_t cursor = 0;
                for (const auto& row : report_.rows) {
                    while (cursor < recs.size() && recs[cursor].id != row.record.id) {
                        ++cursor;
                    }
                    ok = ok && cursor < recs.size();
                }
                fails += !ok;
            } catch (const Error&) {
                // Every document failed: the only fatal case. Check that it really is.
                bool any_good = false;
                for (const auto& rec : recs) {
                    const auto it = store.find(rec.id);
                    any_good = any_good || (it != store.end() && !tokenize_words(it->second).empty());
                }
                fails += any_good;
            }
        }
        report("rows + failures == manifest length, rows in manifest order", trials, fails);
    }
    r.status = all_ok ? Status::Pass : Status::Fail;
    r.summary = "5 randomized invariant families, " + ms_since(start);
    return r;
}

// ---------------------------------------------------------------- criterion 6

Result criterion_real_corpus() {
    Result r;
    const char* manifest_env = std::getenv("LEXREAD_ACCEPTANCE_MANIFEST");
    if (!manifest_env || !*manifest_env) {
        r.status = Status::Skip;
        r.summary = "no corpus supplied (set LEXREAD_ACCEPTANCE_MANIFEST, optionally LEXREAD_ACCEPTANCE_TEXTS)";
        r.details.push_back("needs >= 50 English EU legal documents; none ship with the repository and the "
                            "build environment has no route to the document repository");
        return r;
    }
    const auto start = Clock::now();
    const char* texts_env = std::getenv("LEXREAD_ACCEPTANCE_TEXTS");
    const std::filesystem::path manifest(manifest_env);
    const std::filesystem::path texts = texts_env && *texts_env ? texts_env : manifest.parent_path();

    CorpusReport report;
    try {
        const auto records = load_manifest(manifest);
        AnalyzeOptions options;
        options.jobs = 0;
        report = analyze_corpus(records, make_directory_resolver(texts), options);
    } catch (const std::exception& e) {
        r.status = Status::Fail;
        r.summary = std::string("corpus could not be analyzed: ") + e.what();
        return r;
    }
    const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
    const std::size_t n = report.rows.size();

    bool ok = true;
    auto check = [&](bool pass, const std::string& text) {
        ok = ok && pass;
        r.details.push_back(std::string(pass ? "ok   " : "FAIL ") + text);
    };
    check(n >= 50, "documents analyzed: " + std::to_string(n) + " (needs >= 50; " +
                       std::to_string(report.failures.size()) + " failed)");
    if (report.correlations.value) {
        const auto& v = report.correlations.value->values;
        check(v[0][2] >= 0.95, "r(FK, ARI) = " + fmt(v[0][2], 4) + " (needs >= 0.95; reported 0.995)");
        check(v[0][1] >= 0.85, "r(FK, SMOG) = " + fmt(v[0][1], 4) + " (needs >= 0.85; reported 0.940)");
        r.details.push_back("info r(SMOG, ARI) = " + fmt(v[1][2], 4) + " (reported 0.928)");
    } else {
        check(false, "correlations unavailable: " + report.correlations.reason);
    }
    if (report.alpha.value) {
        check(*report.alpha.value >= 0.9,
              "alpha(FK, SMOG, ARI) = " + fmt(*report.alpha.value, 4) + " (needs >= 0.9; reported 0.98)");
    } else {
        check(false, "alpha unavailable: " + report.alpha.reason);
    }
    const auto& sum = report.summary.columns[5];
    check(sum.median >= 20, "sum-variable median = " + fmt(sum.median, 4) + " (needs >= 20; reported about 30)");
    r.details.push_back("info sum-variable Q1 = " + fmt(sum.q1, 4) + " (reported about 27); Linsear median = " +
                        fmt(report.summary.columns[4].median, 4) + " (reported 72); Coleman-Liau sd = " +
                        fmt(report.summary.columns[3].standard_deviation, 4) + " (reported 1.34)");
    check(seconds < 60.0 || n > 50, "analysis time " + fmt(seconds, 3) + " s (target < 60 s for 50 documents)");
    r.status = ok ? Status::Pass : Status::Fail;
    r.summary = std::to_string(n) + " documents from " + manifest.string();
    return r;
}

// ---------------------------------------------------------------- criterion 7

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = lexread::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string html_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

Result criterion_end_to_end() {
    const auto start = Clock::now();
    Result r;
    lexread::testing::StubServer server;
    const std::vector<std::string> ids = {"32002L0058", "32016R0679", "52020DC0066"};
    for (const auto& id : ids) {
        std::vector<std::string> paragraphs;
        std::istringstream lines(slurp(data_path("corpus/" + id + ".txt")));
        std::string line;
        while (std::getline(lines, line)) {
            if (!line.empty()) {
                paragraphs.push_back(html_escape(line));
            }
        }
        server.set_page(id, lexread::testing::html_page(id, paragraphs));
    }

    TempDir work;
    const std::string manifest = data_path("corpus/manifest.csv").string();
    const std::string cache = (work / "cache").string();
    const std::vector<std::string> net = {"--base-url", server.base_url(), "--delay-ms", "0", "--retries", "0"};

    auto with = [](std::vector<std::string> a, const std::vector<std::string>& b) {
        a.insert(a.end(), b.begin(), b.end());
        return a;
    };
    const auto warm = cli(with({"fetch", "-m", manifest, "--cache", cache}, net));
    bool ok = warm.code == 0;
    r.details.push_back(std::string(ok ? "ok   " : "FAIL ") + "initial fetch from stub: exit " +
                        std::to_string(warm.code) + ", " + std::to_string(server.request_count()) + " requests");
    const std::size_t warm_requests = server.request_count();

    std::vector<std::map<std::string, std::string>> runs;
    for (int pass = 0; pass < 2; ++pass) {
        std::map<std::string, std::string> outputs;
        const auto fetch = cli(with({"fetch", "-m", manifest, "--cache", cache}, net));
        outputs["fetch"] = fetch.out;
        const std::string results = (work / ("results" + std::to_string(pass) + ".csv")).string();
        const auto analyze = cli({"analyze", "-m", manifest, "--cache", cache, "-o", results});
        outputs["results.csv"] = slurp(results);
        const auto stats = cli({"stats", "-r", results});
        outputs["stats.csv"] = stats.out;
        const auto stats_json = cli({"stats", "-r", results, "--format", "json"});
        outputs["stats.json"] = stats_json.out;
        const auto report = cli({"report", "-r", results});
        outputs["report.csv"] = report.out;
        const bool codes = fetch.code == 0 && analyze.code == 0 && stats.code == 0 && stats_json.code == 0 &&
                           report.code == 0;
        ok = ok && codes;
        r.details.push_back(std::string(codes ? "ok   " : "FAIL ") + "pass " + std::to_string(pass + 1) +
                            " exit codes fetch/analyze/stats/report = " + std::to_string(fetch.code) + "/" +
                            std::to_string(analyze.code) + "/" + std::to_string(stats.code) + "/" +
                            std::to_string(report.code) + analyze.err);
        runs.push_back(std::move(outputs));
    }
    const bool no_network = server.request_count() == warm_requests;
    ok = ok && no_network;
    r.details.push_back(std::string(no_network ? "ok   " : "FAIL ") + "cached passes made " +
                        std::to_string(server.request_count() - warm_requests) + " requests");
    for (const auto& [name, bytes] : runs[0]) {
        const bool same = runs[1].at(name) == bytes;
        ok = ok && same && !bytes.empty();
        r.details.push_back(std::string(same ? "ok   " : "FAIL ") + name + ": " + std::to_string(bytes.size()) +
                            " bytes, " + (same ? "identical" : "DIFFERENT") + " across passes");
    }
    r.status = ok ? Status::Pass : Status::Fail;
    r.summary = "stub fetch -> cached fetch -> analyze -> stats -> report, twice; " + ms_since(start);
    return r;
}

struct Criterion {
    int number;
    const char* title;
    Result (*run)();
};

const Criterion kCriteria[] = {
    {1, "formula exactness", criterion_formulas},
    {2, "ceiling contract", criterion_ceiling},
    {3, "syllable oracle", criterion_syllables},
    {4, "statistics oracle equivalence", criterion_stats_oracle},
    {5, "invariant suite", criterion_invariants},
    {6, "corpus structure on real documents", criterion_real_corpus},
    {7, "end-to-end determinism", criterion_end_to_end},
};

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--criterion" && i + 1 < argc) {
            only = std::atoi(argv[++i]);
        } else {
            std::cerr << "usage: lexread_acceptance [--criterion N]\n";
            return 2;
        }
    }
    if (only < 0 || only > 7) {
        std::cerr << "criterion must be 1..7\n";
        return 2;
    }

    std::size_t passed = 0, failed = 0, skipped = 0;
    for (const auto& c : kCriteria) {
        if (only != 0 && c.number != only) {
            continue;
        }
        Result result;
        try {
            result = c.run();
        } catch (const std::exception& e) {
            result.status = Status::Fail;
            result.summary = std::string("exception: ") + e.what();
        }
        const char* tag = result.status == Status::Pass ? "PASS" : result.status == Status::Skip ? "SKIP" : "FAIL";
        std::cout << "[" << tag << "] criterion " << c.number << " " << c.title << ": " << result.summary << "\n";
        for (const auto& d : result.details) {
            std::cout << "       " << d << "\n";
        }
        (result.status == Status::Pass ? passed : result.status == Status::Skip ? skipped : failed)++;
    }
    std::cout << passed << " passed, " << failed << " failed, " << skipped << " skipped\n";
    if (failed > 0) {
        return 1;
    }
    return passed == 0 && skipped > 0 ? 77 : 0;
}
