#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace phflow {

// Malformed text input. Carries the 1-based line number when known (0 otherwise).
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, std::size_t line = 0)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + msg : msg), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// Requested sizes exceed the 64-bit index width.
class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Splits [0, n) into contiguous chunks, one per worker. fn(begin, end, worker).
template <class Fn>
void parallel_for(std::size_t n, unsigned workers, Fn&& fn) {
    if (workers <= 1 || n < 2 * static_cast<std::size_t>(workers)) {
        fn(std::size_t{0}, n, 0u);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::size_t chunk = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        std::size_t b = std::min(n, w * chunk), e = std::min(n, b + chunk);
        if (b >= e) break;
        pool.emplace_back([&fn, b, e, w] { fn(b, e, w); });
    }
    for (auto& t : pool) t.join();
}

// Non-blank, non-comment line split on whitespace and commas.
struct TextLine {
    std::size_t number;
    std::vector<std::string_view> tokens;
};
std::vector<TextLine> tokenize_lines(std::string_view text);

// Shortest decimal text that parses back to the same double.
std::string format_exact(double x);
// printf("%.{digits}g") with "inf" for infinity.
std::string format_sig(double x, int digits = 9);

}  // namespace phflow
