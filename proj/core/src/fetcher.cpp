#include "lexread/fetcher.hpp"

#include <atomic>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <regex>
#include <sstream>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "lexread/error.hpp"

#include <unistd.h>

namespace lexread {

namespace {

std::string format_utc(std::chrono::system_clock::time_point t) {
    const std::time_t secs = std::chrono::system_clock::to_time_t(t);
    std::tm tm{};
    gmtime_r(&secs, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::optional<std::chrono::system_clock::time_point> parse_utc(const std::string& s) {
    std::tm tm{};
    std::istringstream in(s);
    in >> std::get_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    if (in.fail()) {
        return std::nullopt;
    }
    return std::chrono::system_clock::from_time_t(timegm(&tm));
}

bool retryable(int status) {
    return status == 429 || status >= 500;
}

std::chrono::system_clock::time_point cached_retrieval_time(const std::filesystem::path& cache_dir,
                                                            std::string_view id) {
    std::ifstream in(cache_meta_path(cache_dir, id));
    if (in) {
        try {
            const auto meta = nlohmann::json::parse(in);
            if (auto t = parse_utc(meta.value("retrieved_at", std::string{}))) {
                return *t;
            }
        } catch (const nlohmann::json::exception&) {
            // Fall back to the file time below.
        }
    }
    std::error_code ec;
    const auto ftime = std::filesystem::last_write_time(cache_text_path(cache_dir, id), ec);
    if (ec) {
        return {};
    }
    return std::chrono::time_point_cast<std::chrono::system_clock::duration>(
        std::chrono::file_clock::to_sys(ftime));
}

}  // namespace

bool is_celex_id(std::string_view id) {
    static const std::regex pattern(R"(^[0-9CE][0-9]{4}[A-Z]{1,2}[0-9]{1,4}(\([0-9]{1,3}\))?$)");
    return std::regex_match(id.begin(), id.end(), pattern);
}

std::string celex_path(std::string_view id) {
    if (!is_celex_id(id)) {
        throw InvalidIdentifierError("malformed CELEX identifier \"" + std::string(id) + "\"");
    }
    return "/legal-content/EN/TXT/HTML/?uri=CELEX:" + std::string(id);
}

std::string celex_url(std::string_view id, std::string_view base_url) {
    std::string base(base_url);
    while (!base.empty() && base.back() == '/') {
        base.pop_back();
    }
    return base + celex_path(id);
}

std::string_view to_string(FetchStatus s) {
    switch (s) {
        case FetchStatus::FetchedFresh: return "fetched";
        case FetchStatus::FromCache: return "cached";
        case FetchStatus::NotFound: return "not-found";
        case FetchStatus::TransportError: return "transport-error";
    }
    return "?";
}

RequestGate::RequestGate(std::chrono::milliseconds min_delay, std::size_t concurrency)
    : min_delay_(min_delay), capacity_(std::max<std::size_t>(concurrency, 1)) {}

void RequestGate::acquire() {
    std::unique_lock lock(mutex_);
    while (true) {
        if (in_flight_ >= capacity_) {
            cv_.wait(lock);
            continue;
        }
        const auto now = std::chrono::steady_clock::now();
        if (last_start_ && now < *last_start_ + min_delay_) {
            cv_.wait_until(lock, *last_start_ + min_delay_);
            continue;
        }
        last_start_ = now;
        ++in_flight_;
        return;
    }
}

void RequestGate::release() {
    {
        std::lock_guard lock(mutex_);
        --in_flight_;
    }
    cv_.notify_all();
}

std::filesystem::path cache_text_path(const std::filesystem::path& cache_dir, std::string_view id) {
    return cache_dir / (std::string(id) + ".txt");
}

std::filesystem::path cache_meta_path(const std::filesystem::path& cache_dir, std::string_view id) {
    return cache_dir / (std::string(id) + ".meta");
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
    static std::atomic<unsigned> counter{0};
    auto tmp = path;
    tmp += ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter++);
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw Error("cannot write " + tmp.string());
        }
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) {
            std::filesystem::remove(tmp);
            throw Error("error writing " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw Error("cannot move " + tmp.string() + " into place: " + ec.message());
    }
}

Fetcher::Fetcher(PolitenessConfig config)
    : config_(std::move(config)), gate_(config_.min_delay, config_.concurrency) {}

FetchResult Fetcher::fetch(std::string_view id, const std::filesystem::path& cache_dir) {
    FetchResult result;
    result.id = std::string(id);
    if (!is_celex_id(id)) {
        result.message = "malformed CELEX identifier";
        return result;
    }

    const auto text_path = cache_text_path(cache_dir, id);
    std::error_code ec;
    if (std::filesystem::is_regular_file(text_path, ec)) {
        result.status = FetchStatus::FromCache;
        result.text_path = text_path;
        result.retrieved_at = cached_retrieval_time(cache_dir, id);
        return result;
    }
    std::filesystem::create_directories(cache_dir, ec);
    if (ec) {
        result.message = "cannot create cache directory: " + ec.message();
        return result;
    }

    std::string base = config_.base_url;
    while (!base.empty() && base.back() == '/') {
        base.pop_back();
    }
    const std::string path = celex_path(id);
    const std::string url = base + path;

    for (std::size_t attempt = 0; attempt <= config_.max_retries; ++attempt) {
        if (attempt > 0) {
            std::this_thread::sleep_for(config_.backoff_base * (1LL << (attempt - 1)));
        }
        ++result.attempts;

        httplib::Result response{nullptr, httplib::Error::Unknown};
        gate_.acquire();
        try {
            if (config_.on_request) {
                config_.on_request(url);
            }
            httplib::Client client(base);
            client.set_follow_location(true);
            client.set_connection_timeout(config_.timeout);
            client.set_read_timeout(config_.timeout);
            client.set_default_headers({{"User-Agent", config_.user_agent}});
            response = client.Get(path);
        } catch (...) {
            gate_.release();
            throw;
        }
        gate_.release();

        if (!response) {
            result.message = "transport failure: " + httplib::to_string(response.error());
            continue;
        }
        const int status = response->status;
        if (status == 200) {
            const auto now = std::chrono::system_clock::now();
            try {
                write_file_atomic(text_path, extract_text_from_html(response->body));
                const nlohmann::json meta = {
                    {"id", result.id},
                    {"source_url", url},
                    {"retrieved_at", format_utc(now)},
                    {"rendition", kRendition},
                    {"http_status", status},
                };
                write_file_atomic(cache_meta_path(cache_dir, id), meta.dump(2) + "\n");
            } catch (const Error& e) {
                result.message = e.what();
                return result;
            }
            result.status = FetchStatus::FetchedFresh;
            result.text_path = text_path;
            result.retrieved_at = now;
            result.message.clear();
            return result;
        }
        if (status == 404 || status == 410) {
            result.status = FetchStatus::NotFound;
            result.message = "HTTP " + std::to_string(status);
            return result;
        }
        result.message = "HTTP " + std::to_string(status);
        if (!retryable(status)) {
            return result;
        }
    }
    result.message += " (retries exhausted)";
    return result;
}

FetchResult fetch_document(std::string_view id, const std::filesystem::path& cache_dir,
                           const PolitenessConfig& config) {
    Fetcher fetcher(config);
    return fetcher.fetch(id, cache_dir);
}

std::vector<FetchResult> fetch_all(const std::vector<std::string>& ids, const std::filesystem::path& cache_dir,
                                   const PolitenessConfig& config) {
    std::vector<FetchResult> results(ids.size());
    if (ids.empty()) {
        return results;
    }
    Fetcher fetcher(config);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < ids.size(); i = next++) {
            try {
                results[i] = fetcher.fetch(ids[i], cache_dir);
            } catch (const std::exception& e) {
                results[i].id = ids[i];
                results[i].status = FetchStatus::TransportError;
                results[i].message = e.what();
            }
        }
    };
    const std::size_t workers = std::clamp<std::size_t>(config.concurrency, 1, ids.size());
    {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < workers; ++t) {
            pool.emplace_back(worker);
        }
    }
    return results;
}

}  // namespace lexread
