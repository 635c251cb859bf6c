#include "phflow/common.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

namespace phflow {

std::vector<TextLine> tokenize_lines(std::string_view text) {
    std::vector<TextLine> out;
    std::size_t lineno = 0, pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        ++lineno;
        pos = end + 1;
        std::size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string_view::npos || line[first] == '#') {
            if (end == text.size()) break;
            continue;
        }
        TextLine l{lineno, {}};
        std::size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == ',' || line[i] == '\r')) ++i;
            std::size_t j = i;
            while (j < line.size() && !(line[j] == ' ' || line[j] == '\t' || line[j] == ',' || line[j] == '\r')) ++j;
            if (j > i) l.tokens.push_back(line.substr(i, j - i));
            i = j;
        }
        out.push_back(std::move(l));
        if (end == text.size()) break;
    }
    return out;
}

std::string format_exact(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, r.ptr);
}

std::string format_sig(double x, int digits) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    return buf;
}

}  // namespace phflow
