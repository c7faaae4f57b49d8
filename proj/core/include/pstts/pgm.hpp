// Copyright (C) 2026 The pstts Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "pstts/grid.hpp"

namespace pstts {

/// Writes a binary (P5) 8-bit PGM, min-max normalised to [0, 255]. A constant map is all zero.
void write_pgm(std::ostream& out, const Grid<double>& map);
void write_pgm(std::ostream& out, const Grid<std::uint32_t>& map);
void write_pgm(const std::string& path, const Grid<double>& map);

}  // namespace pstts
