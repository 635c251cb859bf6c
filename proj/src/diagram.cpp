#include "phflow/diagram.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "phflow/common.hpp"

namespace phflow {

void PersistenceDiagram::canonicalize() {
    std::sort(finite.begin(), finite.end());
    std::sort(infinite.begin(), infinite.end());
}

DiagonalProjection project_to_diagonal(const DiagramPoint& p) {
    double m = 0.5 * (p.birth + p.death);
    return {{m, m}, (p.death - p.birth) / std::sqrt(2.0)};
}

namespace {

double parse_value(std::string_view tok, std::size_t line) {
    if (tok == "inf" || tok == "+inf" || tok == "Inf" || tok == "infinity") return INFINITY;
    double v = 0;
    auto r = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (r.ec != std::errc() || r.ptr != tok.data() + tok.size() || std::isnan(v))
        throw ParseError("not a number: '" + std::string(tok) + "'", line);
    return v;
}

}  // namespace

PersistenceDiagram parse_diagram(std::string_view text, std::uint32_t dim) {
    PersistenceDiagram d;
    d.dim = dim;
    for (const TextLine& l : tokenize_lines(text)) {
        if (l.tokens.size() != 2)
            throw ParseError("expected 'birth death', found " + std::to_string(l.tokens.size()) + " tokens", l.number);
        double b = parse_value(l.tokens[0], l.number), e = parse_value(l.tokens[1], l.number);
        if (std::isinf(b)) throw ParseError("infinite birth", l.number);
        if (std::isinf(e)) {
            d.infinite.push_back(b);
            continue;
        }
        if (e <= b) throw ParseError("death must exceed birth", l.number);
        d.finite.push_back({b, e});
    }
    return d;
}

PersistenceDiagram load_diagram(const std::string& path, std::uint32_t dim) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_diagram(ss.str(), dim);
}

std::string write_diagram(const PersistenceDiagram& d, int digits) {
    auto fmt = [digits](double x) { return digits > 0 ? format_sig(x, digits) : format_exact(x); };
    std::string out;
    for (auto& p : d.finite) out += fmt(p.birth) + " " + fmt(p.death) + "\n";
    for (double b : d.infinite) out += fmt(b) + " inf\n";
    return out;
}

void save_diagram(const std::string& path, const PersistenceDiagram& d, int digits) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write '" + path + "'");
    out << write_diagram(d, digits);
}

}  // namespace phflow
