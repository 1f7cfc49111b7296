#pragma once

#include <chrono>
#include <memory>
#include <string>
#include <vector>

namespace coword {

// Local HTTP server that stands in for the tweet pages a manifest points
// at. Pages follow the fixture schema in FORMATS.md; paths can be marked
// dead (404) or flaky (a run of 503s before the first 200). Request
// arrival times are recorded so tests can verify rate limiting.
class FixtureServer {
public:
    FixtureServer();
    ~FixtureServer();

    FixtureServer(const FixtureServer&) = delete;
    FixtureServer& operator=(const FixtureServer&) = delete;

    void add_page(const std::string& path, const std::string& author,
                  const std::string& iso_timestamp, const std::string& text);
    void mark_dead(const std::string& path);
    void mark_flaky(const std::string& path, int failures_before_ok);

    // binds to 127.0.0.1 on a free port and serves in the background
    void start();
    void stop();

    int port() const;
    std::string base_url() const;

    std::vector<std::chrono::steady_clock::time_point> arrivals() const;
    std::size_t request_count() const;

    static std::string render_page(const std::string& author,
                                   const std::string& iso_timestamp,
                                   const std::string& text);

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace coword
