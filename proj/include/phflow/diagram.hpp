#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace phflow {

struct DiagramPoint {
    double birth = 0.0;
    double death = 0.0;

    friend bool operator==(const DiagramPoint&, const DiagramPoint&) = default;
    friend auto operator<=>(const DiagramPoint&, const DiagramPoint&) = default;
};

struct PersistenceDiagram {
    std::uint32_t dim = 0;
    std::vector<DiagramPoint> finite;
    std::vector<double> infinite;  // births of essential classes

    // Sorts both multisets; two diagrams are equal as multisets iff equal after this.
    void canonicalize();
    friend bool operator==(const PersistenceDiagram&, const PersistenceDiagram&) = default;
};

struct DiagonalProjection {
    DiagramPoint point;  // (m, m) with m = (birth + death) / 2
    double distance;     // (death - birth) / sqrt(2)
};

DiagonalProjection project_to_diagonal(const DiagramPoint& p);

// One "birth death" pair per line; death may be "inf". '#' starts a comment line.
// A finite line with death <= birth is a ParseError.
PersistenceDiagram parse_diagram(std::string_view text, std::uint32_t dim = 0);
PersistenceDiagram load_diagram(const std::string& path, std::uint32_t dim = 0);

// digits = 0 writes the shortest text that reads back exactly.
std::string write_diagram(const PersistenceDiagram& d, int digits = 0);
void save_diagram(const std::string& path, const PersistenceDiagram& d, int digits = 0);

}  // namespace phflow
