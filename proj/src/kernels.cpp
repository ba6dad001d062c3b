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

#include "dyadic/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <cstring>

#if defined(__AVX2__) || defined(__SSSE3__)
#include <immintrin.h>
#endif

namespace dyadic::kernels {

ByteField::ByteField(const Field& f) : order_(f.order()), mul_(256), lo_(256), hi_(256) {
    if (f.order() > 256) throw Error(ErrorKind::Structural, "byte kernels need a field with at most 256 elements");
    for (std::uint32_t a = 0; a < order_; ++a) {
        for (std::uint32_t b = 0; b < order_; ++b)
            mul_[a][b] = static_cast<std::uint8_t>(f.mul(static_cast<Elem>(a), static_cast<Elem>(b)));
        inv_[a] = a == 0 ? 0 : static_cast<std::uint8_t>(f.inv(static_cast<Elem>(a)));
        for (std::uint32_t x = 0; x < 16; ++x) {
            lo_[a][x] = x < order_ ? mul_[a][x] : 0;
            hi_[a][x] = (x << 4) < order_ ? mul_[a][x << 4] : 0;
        }
    }
}

void axpy_serial(const ByteField& f, std::uint8_t* dst, const std::uint8_t* src, std::uint8_t c, std::size_t n) {
    const std::uint8_t* t = f.mul_row(c);
    for (std::size_t i = 0; i < n; ++i) dst[i] ^= t[src[i]];
}

void scale_serial(const ByteField& f, std::uint8_t* row, std::uint8_t c, std::size_t n) {
    const std::uint8_t* t = f.mul_row(c);
    for (std::size_t i = 0; i < n; ++i) row[i] = t[row[i]];
}

void axpy(const ByteField& f, std::uint8_t* dst, const std::uint8_t* src, std::uint8_t c, std::size_t n) {
    std::size_t i = 0;
#if defined(__AVX2__)
    const __m256i lo = _mm256_broadcastsi128_si256(_mm_loadu_si128(reinterpret_cast<const __m128i*>(f.nibble_lo(c))));
    const __m256i hi = _mm256_broadcastsi128_si256(_mm_loadu_si128(reinterpret_cast<const __m128i*>(f.nibble_hi(c))));
    const __m256i mask = _mm256_set1_epi8(0x0f);
    for (; i + 32 <= n; i += 32) {
        const __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
        const __m256i l = _mm256_shuffle_epi8(lo, _mm256_and_si256(s, mask));
        const __m256i h = _mm256_shuffle_epi8(hi, _mm256_and_si256(_mm256_srli_epi16(s, 4), mask));
        __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
        d = _mm256_xor_si256(d, _mm256_xor_si256(l, h));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), d);
    }
#elif defined(__SSSE3__)
    const __m128i lo = _mm_loadu_si128(reinterpret_cast<const __m128i*>(f.nibble_lo(c)));
    const __m128i hi = _mm_loadu_si128(reinterpret_cast<const __m128i*>(f.nibble_hi(c)));
    const __m128i mask = _mm_set1_epi8(0x0f);
    for (; i + 16 <= n; i += 16) {
        const __m128i s = _mm_loadu_si128(reinterpret_cast<const __m128i*>(src + i));
        const __m128i l = _mm_shuffle_epi8(lo, _mm_and_si128(s, mask));
        const __m128i h = _mm_shuffle_epi8(hi, _mm_and_si128(_mm_srli_epi16(s, 4), mask));
        __m128i d = _mm_loadu_si128(reinterpret_cast<const __m128i*>(dst + i));
        d = _mm_xor_si128(d, _mm_xor_si128(l, h));
        _mm_storeu_si128(reinterpret_cast<__m128i*>(dst + i), d);
    }
#endif
    if (i < n) axpy_serial(f, dst + i, src + i, c, n - i);
}

void scale(const ByteField& f, std::uint8_t* row, std::uint8_t c, std::size_t n) {
    std::size_t i = 0;
#if defined(__AVX2__)
    const __m256i lo = _mm256_broadcastsi128_si256(_mm_loadu_si128(reinterpret_cast<const __m128i*>(f.nibble_lo(c))));
    const __m256i hi = _mm256_broadcastsi128_si256(_mm_loadu_si128(reinterpret_cast<const __m128i*>(f.nibble_hi(c))));
    const __m256i mask = _mm256_set1_epi8(0x0f);
    for (; i + 32 <= n; i += 32) {
        const __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(row + i));
        const __m256i l = _mm256_shuffle_epi8(lo, _mm256_and_si256(s, mask));
        const __m256i h = _mm256_shuffle_epi8(hi, _mm256_and_si256(_mm256_srli_epi16(s, 4), mask));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(row + i), _mm256_xor_si256(l, h));
    }
#endif
    if (i < n) scale_serial(f, row + i, c, n - i);
}

ByteMatrix::ByteMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), stride_((cols + 63) / 64 * 64), data_(rows * stride_, 0) {}

void ByteMatrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    std::swap_ranges(row(a), row(a) + stride_, row(b));
}

void ByteMatrix::truncate(std::size_t rows) {
    if (rows >= rows_) return;
    rows_ = rows;
    data_.resize(rows * stride_);
}

std::size_t ByteMatrix::bytes_for(std::size_t rows, std::size_t cols) { return rows * ((cols + 63) / 64 * 64); }

namespace {

// Shared driver: the serial and parallel variants differ only in the row kernel
// and in whether the elimination sweep is split across threads.
template <bool Parallel>
std::vector<std::size_t> echelonize_impl(const ByteField& f, ByteMatrix& m, Reduction mode) {
    std::vector<std::size_t> pivots;
    const std::size_t rows = m.rows(), cols = m.cols();
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t p = rank;
        while (p < rows && m.at(p, col) == 0) ++p;
        if (p == rows) continue;
        m.swap_rows(rank, p);
        // Kernels start at a 32-byte boundary; the skipped prefix of the pivot
        // row is zero, so updating from there is exact.
        const std::size_t start = col / 32 * 32;
        const std::size_t len = m.stride() - start;
        std::uint8_t* prow = m.row(rank);
        const std::uint8_t lead = prow[col];
        if (lead != 1) {
            if constexpr (Parallel) scale(f, prow + start, f.inv(lead), len);
            else scale_serial(f, prow + start, f.inv(lead), len);
        }
        const std::size_t first = mode == Reduction::Reduced ? 0 : rank + 1;
        const auto n_rows = static_cast<std::ptrdiff_t>(rows);
        if constexpr (Parallel) {
#pragma omp parallel for schedule(static) num_threads(max_threads()) if (rows - first > 64)
            for (std::ptrdiff_t r = static_cast<std::ptrdiff_t>(first); r < n_rows; ++r) {
                if (static_cast<std::size_t>(r) == rank) continue;
                std::uint8_t* row = m.row(static_cast<std::size_t>(r));
                const std::uint8_t c = row[col];
                if (c) axpy(f, row + start, prow + start, c, len);
            }
        } else {
            for (std::ptrdiff_t r = static_cast<std::ptrdiff_t>(first); r < n_rows; ++r) {
                if (static_cast<std::size_t>(r) == rank) continue;
                std::uint8_t* row = m.row(static_cast<std::size_t>(r));
                const std::uint8_t c = row[col];
                if (c) axpy_serial(f, row + start, prow + start, c, len);
            }
        }
        pivots.push_back(col);
        ++rank;
    }
    return pivots;
}

int g_max_threads = 0;

}  // namespace

std::vector<std::size_t> echelonize_serial(const ByteField& f, ByteMatrix& m, Reduction mode) {
    return echelonize_impl<false>(f, m, mode);
}

std::vector<std::size_t> echelonize(const ByteField& f, ByteMatrix& m, Reduction mode) {
    return echelonize_impl<true>(f, m, mode);
}

int max_threads() { return g_max_threads > 0 ? g_max_threads : omp_get_max_threads(); }
void set_max_threads(int n) { g_max_threads = n; }

}  // namespace dyadic::kernels
