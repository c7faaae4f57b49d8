// Copyright (C) 2026 The pstts Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pstts {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input record. Carries the 1-based line (CSV) or record (binary) number.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line)
        : Error("line " + std::to_string(line) + ": " + what),
          m_line(line) {}

    std::size_t line() const noexcept {
        return m_line;
    }

private:
    std::size_t m_line;
};

/// Coordinate outside the declared sensor geometry.
class BoundsError : public Error {
public:
    using Error::Error;
};

/// Field value outside its admissible set (e.g. polarity not in {-1, 0, 1}).
class ValueError : public Error {
public:
    using Error::Error;
};

/// Precondition violated by a caller-supplied argument.
class ArgumentError : public Error {
public:
    using Error::Error;
};

}  // namespace pstts
