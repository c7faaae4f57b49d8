// Copyright (C) 2026 The pstts Authors
// SPDX-License-Identifier: Apache-2.0

#include "pstts/pgm.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <vector>

#include "pstts/error.hpp"

namespace pstts {

void write_pgm(std::ostream& out, const Grid<double>& map) {
    out << "P5\n" << map.cols() << ' ' << map.rows() << "\n255\n";
    if (map.empty()) {
        return;
    }
    const auto [lo_it, hi_it] = std::minmax_element(map.values().begin(), map.values().end());
    const double lo = *lo_it;
    const double span = *hi_it - lo;
    std::vector<char> pixels(map.size());
    for (std::size_t i = 0; i < map.size(); ++i) {
        const double unit = span > 0.0 ? (map[i] - lo) / span : 0.0;
        pixels[i] = static_cast<char>(static_cast<unsigned char>(std::lround(unit * 255.0)));
    }
    out.write(pixels.data(), static_cast<std::streamsize>(pixels.size()));
}

void write_pgm(std::ostream& out, const Grid<std::uint32_t>& map) {
    Grid<double> as_double(map.rows(), map.cols());
    for (std::size_t i = 0; i < map.size(); ++i) {
        as_double[i] = static_cast<double>(map[i]);
    }
    write_pgm(out, as_double);
}

void write_pgm(const std::string& path, const Grid<double>& map) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error("cannot write '" + path + "'");
    }
    write_pgm(out, map);
}

}  // namespace pstts
