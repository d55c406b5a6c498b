#pragma once

#include <chrono>
#include <condition_variable>
#include <cstddef>
#include <filesystem>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lexread {

/// sector, 4-digit year, one or two type letters, number; e.g. 32016R0679.
bool is_celex_id(std::string_view id);

inline constexpr std::string_view kDefaultBaseUrl = "https://eur-lex.europa.eu";
inline constexpr std::string_view kDefaultUserAgent =
    "lexread/0.1 (corpus readability research; polite batch fetcher)";
/// Rendition fetched for every document; recorded in cache metadata.
inline constexpr std::string_view kRendition = "HTML, non-consolidated, English";

/// Path and query of the English HTML view for a CELEX id.
std::string celex_path(std::string_view id);

/// Full URL under `base_url`. Throws InvalidIdentifierError on a malformed id.
std::string celex_url(std::string_view id, std::string_view base_url = kDefaultBaseUrl);

struct PolitenessConfig {
    std::string base_url = std::string(kDefaultBaseUrl);
    std::string user_agent = std::string(kDefaultUserAgent);
    /// Minimum gap between consecutive request starts to the host.
    std::chrono::milliseconds min_delay{1000};
    /// Requests allowed in flight at once.
    std::size_t concurrency = 1;
    /// Retries after the first attempt for 429, 5xx and connection failures.
    std::size_t max_retries = 3;
    /// First retry waits this long; each further retry doubles it.
    std::chrono::milliseconds backoff_base{500};
    std::chrono::seconds timeout{30};
    /// Called right before every HTTP request is sent (test instrumentation).
    std::function<void(std::string_view url)> on_request;
};

enum class FetchStatus { FetchedFresh, FromCache, NotFound, TransportError };

std::string_view to_string(FetchStatus s);

struct FetchResult {
    std::string id;
    FetchStatus status = FetchStatus::TransportError;
    /// Set iff status is FetchedFresh or FromCache.
    std::optional<std::filesystem::path> text_path;
    std::chrono::system_clock::time_point retrieved_at{};
    /// HTTP attempts made by this call; 0 for cache hits.
    std::size_t attempts = 0;
    std::string message;
};

/// Enforces the minimum start-to-start delay and the in-flight cap for one host.
class RequestGate {
public:
    RequestGate(std::chrono::milliseconds min_delay, std::size_t concurrency);

    /// Blocks until a slot is free and the delay since the previous start has passed.
    void acquire();
    void release();

private:
    std::mutex mutex_;
    std::condition_variable cv_;
    std::chrono::milliseconds min_delay_;
    std::size_t capacity_;
    std::size_t in_flight_ = 0;
    std::optional<std::chrono::steady_clock::time_point> last_start_;
};

/// Cache file locations for an id: <dir>/<id>.txt and <dir>/<id>.meta.
std::filesystem::path cache_text_path(const std::filesystem::path& cache_dir, std::string_view id);
std::filesystem::path cache_meta_path(const std::filesystem::path& cache_dir, std::string_view id);

/// Writes via a temporary file in the same directory and renames it into place.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

/// Fetches by CELEX id into a cache directory. One instance shares a single
/// RequestGate across all calls, so concurrent fetch() calls stay polite.
class Fetcher {
public:
    explicit Fetcher(PolitenessConfig config);

    FetchResult fetch(std::string_view id, const std::filesystem::path& cache_dir);

    const PolitenessConfig& config() const { return config_; }

private:
    PolitenessConfig config_;
    RequestGate gate_;
};

FetchResult fetch_document(std::string_view id, const std::filesystem::path& cache_dir,
                           const PolitenessConfig& config = {});

/// One result per id, in input order. Never throws for per-document failures.
std::vector<FetchResult> fetch_all(const std::vector<std::string>& ids, const std::filesystem::path& cache_dir,
                                   const PolitenessConfig& config = {});

/// Strips tags, scripts, styles and navigation regions; block elements become
/// paragraph breaks (a blank line); character entities are decoded.
std::string extract_text_from_html(std::string_view html);

/// Decodes named and numeric character references.
std::string decode_entities(std::string_view text);

}  // namespace lexread
