#include "coword/fixture_server.hpp"

#include <atomic>
#include <map>
#include <mutex>
#include <thread>

#include "httplib.h"

#include "coword/common.hpp"

namespace coword {

namespace {

std::string escape_html(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&#39;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

std::string FixtureServer::render_page(const std::string& author,
                                       const std::string& iso_timestamp,
                                       const std::string& text) {
    std::string handle = author;
    if (handle.empty() || handle.front() != '@') handle.insert(0, "@");
    std::string page;
    page += "<!doctype html>\n<html><head><meta charset=\"utf-8\"><title>tweet</title></head>\n";
    page += "<body>\n<article class=\"tweet\">\n";
    page += "<a class=\"tweet-author\" href=\"/" + escape_html(author) + "\">" +
            escape_html(handle) + "</a>\n";
    page += "<time class=\"tweet-timestamp\" datetime=\"" + iso_timestamp + "\"></time>\n";
    page += "<p class=\"tweet-text\">" + escape_html(text) + "</p>\n";
    page += "</article>\n</body></html>\n";
    return page;
}

struct FixtureServer::Impl {
    httplib::Server server;
    std::thread listener;
    int port = 0;

    std::mutex mutex;
    std::map<std::string, std::string> pages;          // path -> body
    std::map<std::string, int> flaky_remaining;        // path -> 503s left
    std::vector<std::chrono::steady_clock::time_point> arrivals;

    void handle(const httplib::Request& req, httplib::Response& res) {
        std::lock_guard<std::mutex> lock(mutex);
        arrivals.push_back(std::chrono::steady_clock::now());
        auto flaky = flaky_remaining.find(req.path);
        if (flaky != flaky_remaining.end() && flaky->second > 0) {
            --flaky->second;
            res.status = 503;
            res.set_content("try again", "text/plain");
            return;
        }
        auto page = pages.find(req.path);
        if (page == pages.end()) {
            res.status = 404;
            res.set_content("gone", "text/plain");
            return;
        }
        res.status = 200;
        res.set_content(page->second, "text/html; charset=utf-8");
    }
};

FixtureServer::FixtureServer() : impl_(std::make_unique<Impl>()) {
    impl_->server.Get(".*", [this](const httplib::Request& req, httplib::Response& res) {
        impl_->handle(req, res);
    });
}

FixtureServer::~FixtureServer() { stop(); }

void FixtureServer::add_page(const std::string& path, const std::string& author,
                             const std::string& iso_timestamp, const std::string& text) {
    std::lock_guard<std::mutex> lock(impl_->mutex);
    impl_->pages[path] = render_page(author, iso_timestamp, text);
}

void FixtureServer::mark_dead(const std::string& path) {
    std::lock_guard<std::mutex> lock(impl_->mutex);
    impl_->pages.erase(path);
}

void FixtureServer::mark_flaky(const std::string& path, int failures_before_ok) {
    std::lock_guard<std::mutex> lock(impl_->mutex);
    impl_->flaky_remaining[path] = failures_before_ok;
}

void FixtureServer::start() {
    if (impl_->listener.joinable()) return;
    impl_->port = impl_->server.bind_to_any_port("127.0.0.1");
    if (impl_->port <= 0) throw error("fixture server could not bind a port");
    impl_->listener = std::thread([this]() { impl_->server.listen_after_bind(); });
    impl_->server.wait_until_ready();
}

void FixtureServer::stop() {
    if (!impl_->listener.joinable()) return;
    impl_->server.stop();
    impl_->listener.join();
}

int FixtureServer::port() const { return impl_->port; }

std::string FixtureServer::base_url() const {
    return "http://127.0.0.1:" + std::to_string(impl_->port);
}

std::vector<std::chrono::steady_clock::time_point> FixtureServer::arrivals() const {
    std::lock_guard<std::mutex> lock(impl_->mutex);
    return impl_->arrivals;
}

std::size_t FixtureServer::request_count() const {
    std::lock_guard<std::mutex> lock(impl_->mutex);
    return impl_->arrivals.size();
}

}  // namespace coword
