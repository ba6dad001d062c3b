/*
   Copyright 2026 The dyadic Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

// Row-elimination kernels over GF(2^s), s <= 8, on byte-packed rows.
//
// Every kernel exists twice: a plain serial loop kept as the reference, and a
// SIMD (nibble-table shuffle) plus OpenMP variant used in production. Both
// variants run the same pivoting schedule, so their outputs are bit-identical
// whatever the thread count.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "dyadic/galois.hpp"

namespace dyadic::kernels {

class ByteField {
public:
    explicit ByteField(const Field& f);

    std::uint32_t order() const { return order_; }
    std::uint8_t mul(std::uint8_t a, std::uint8_t b) const { return mul_[a][b]; }
    std::uint8_t inv(std::uint8_t a) const { return inv_[a]; }
    const std::uint8_t* mul_row(std::uint8_t c) const { return mul_[c].data(); }
    const std::uint8_t* nibble_lo(std::uint8_t c) const { return lo_[c].data(); }
    const std::uint8_t* nibble_hi(std::uint8_t c) const { return hi_[c].data(); }

private:
    std::uint32_t order_;
    std::vector<std::array<std::uint8_t, 256>> mul_;
    std::array<std::uint8_t, 256> inv_{};
    std::vector<std::array<std::uint8_t, 16>> lo_, hi_;
};

/// dst[i] ^= c * src[i] for i < n.
void axpy_serial(const ByteField& f, std::uint8_t* dst, const std::uint8_t* src, std::uint8_t c, std::size_t n);
void axpy(const ByteField& f, std::uint8_t* dst, const std::uint8_t* src, std::uint8_t c, std::size_t n);
/// row[i] = c * row[i].
void scale_serial(const ByteField& f, std::uint8_t* row, std::uint8_t c, std::size_t n);
void scale(const ByteField& f, std::uint8_t* row, std::uint8_t c, std::size_t n);

/// Dense row-major byte matrix; the row stride is padded to 64 bytes and the
/// padding is kept zero.
class ByteMatrix {
public:
    ByteMatrix() = default;
    ByteMatrix(std::size_t rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t stride() const { return stride_; }
    std::uint8_t* row(std::size_t r) { return data_.data() + r * stride_; }
    const std::uint8_t* row(std::size_t r) const { return data_.data() + r * stride_; }
    std::uint8_t& at(std::size_t r, std::size_t c) { return data_[r * stride_ + c]; }
    std::uint8_t at(std::size_t r, std::size_t c) const { return data_[r * stride_ + c]; }
    void swap_rows(std::size_t a, std::size_t b);
    /// Drops every row from `rows` on.
    void truncate(std::size_t rows);

    static std::size_t bytes_for(std::size_t rows, std::size_t cols);

private:
    std::size_t rows_ = 0, cols_ = 0, stride_ = 0;
    std::vector<std::uint8_t> data_;
};

enum class Reduction { Echelon, Reduced };

/// Gaussian elimination in place. Pivot rule: columns left to right, first row
/// at or below the current rank with a nonzero entry; pivot rows are scaled to
/// a leading one and moved to the top. Returns the pivot column of each of the
/// first rank rows.
std::vector<std::size_t> echelonize_serial(const ByteField& f, ByteMatrix& m, Reduction mode);
std::vector<std::size_t> echelonize(const ByteField& f, ByteMatrix& m, Reduction mode);

/// Number of OpenMP worker threads the parallel kernels may use.
int max_threads();
void set_max_threads(int n);

}  // namespace dyadic::kernels
