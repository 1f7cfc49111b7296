#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace coword {

class error : public std::runtime_error {
public:
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// FNV-1a over bytes; used for artifact hashing and for stable file names.
std::uint64_t fnv1a64(std::string_view bytes);
std::string fnv1a64_hex(std::string_view bytes);

// SplitMix64 step, the usual seeding mixer.
std::uint64_t splitmix64(std::uint64_t x);

// Per-stage seed: mixes the run seed with a stage label so independent
// stages draw from independent streams.
std::uint64_t derive_seed(std::uint64_t base, std::string_view label);

// Deterministic RNG helpers. std::mt19937_64 is fully specified by the
// standard; the std distributions are not, so bounded draws are done here.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    // uniform in [0, n)
    std::uint64_t below(std::uint64_t n);

    // uniform in [0, 1)
    double real();

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

// Fixed-point decimal formatting ("%.*f", C locale). glibc rounds the
// binary value correctly to nearest, ties to even.
std::string format_fixed(double value, int decimals);

// fraction as a percentage with the given decimals and a trailing '%'.
std::string format_percent(double fraction, int decimals);

std::string read_file(const std::filesystem::path& path);
std::vector<std::string> read_lines(const std::filesystem::path& path);

// Writes to "<path>.partial" then renames, so an aborted run leaves only
// clearly marked partial files behind.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::vector<std::string> split(std::string_view s, char sep);
std::string trim(std::string_view s);

}  // namespace coword
