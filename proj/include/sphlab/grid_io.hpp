#pragma once

// Grid file format: one JSON header line (d, geometry, extent, corner),
// followed by one "re,im" CSV line per value in row-major order.

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "sphlab/grid.hpp"

namespace sphlab {

inline void save_grid(const GridFunction& f, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_grid: cannot open " + path);
    nlohmann::json header;
    header["d"] = f.d;
    header["geometry"] = f.geom == Geometry::torus ? "torus" : "box";
    header["extent"] = f.extent;
    header["corner"] = f.corner;
    out << header.dump() << '\n';
    out.precision(17);
    for (const auto& v : f.values) out << v.real() << ',' << v.imag() << '\n';
}

inline GridFunction load_grid(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_grid: cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("load_grid: missing header");
    const auto header = nlohmann::json::parse(line);
    GridFunction f = GridFunction::zeros(
        header.at("d").get<int>(),
        header.at("geometry").get<std::string>() == "torus" ? Geometry::torus : Geometry::box,
        header.at("extent").get<std::vector<std::int64_t>>(),
        header.at("corner").get<std::vector<std::int64_t>>());
    for (auto& v : f.values) {
        if (!std::getline(in, line)) throw std::runtime_error("load_grid: truncated value list");
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw std::runtime_error("load_grid: bad value line");
        v = {std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1))};
    }
    return f;
}

}  // namespace sphlab
