// Copyright (C) 2026 The pstts Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace pstts {

/// Dense row-major 2D array.
template <typename T>
class Grid {
public:
    Grid() = default;
    Grid(std::size_t rows, std::size_t cols, T fill = T{})
        : m_rows(rows),
          m_cols(cols),
          m_data(rows * cols, fill) {}

    std::size_t rows() const noexcept {
        return m_rows;
    }
    std::size_t cols() const noexcept {
        return m_cols;
    }
    std::size_t size() const noexcept {
        return m_data.size();
    }
    bool empty() const noexcept {
        return m_data.empty();
    }

    T& operator()(std::size_t r, std::size_t c) {
        return m_data[r * m_cols + c];
    }
    const T& operator()(std::size_t r, std::size_t c) const {
        return m_data[r * m_cols + c];
    }

    T& operator[](std::size_t flat) {
        return m_data[flat];
    }
    const T& operator[](std::size_t flat) const {
        return m_data[flat];
    }

    std::span<T> values() noexcept {
        return m_data;
    }
    std::span<const T> values() const noexcept {
        return m_data;
    }

    std::span<const T> row(std::size_t r) const {
        return std::span<const T>(m_data).subspan(r * m_cols, m_cols);
    }

    bool operator==(const Grid&) const = default;

private:
    std::size_t m_rows = 0;
    std::size_t m_cols = 0;
    std::vector<T> m_data;
};

}  // namespace pstts
