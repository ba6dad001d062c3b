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

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dyadic/galois.hpp"

namespace dyadic {

/// Dense row-major matrix over a single finite field.
class Mat {
public:
    Mat() = default;
    Mat(FieldPtr field, std::size_t rows, std::size_t cols);

    static Mat identity(FieldPtr field, std::size_t n);
    static Mat from_rows(FieldPtr field, const std::vector<std::vector<Elem>>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const FieldPtr& field() const { return field_; }
    const Field& f() const { return *field_; }
    bool empty() const { return rows_ == 0; }

    Elem& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    Elem operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    std::span<Elem> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const Elem> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    const std::vector<Elem>& data() const { return data_; }

    void append_row(std::span<const Elem> values);
    bool is_zero() const;

    Mat transpose() const;
    Mat select_rows(std::span<const std::size_t> idx) const;
    Mat select_cols(std::span<const std::size_t> idx) const;
    Mat row_range(std::size_t first, std::size_t count) const;
    Mat vstack(const Mat& below) const;
    Mat hstack(const Mat& right) const;

    friend Mat operator*(const Mat& a, const Mat& b);
    friend bool operator==(const Mat& a, const Mat& b);

private:
    FieldPtr field_;
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Elem> data_;
};

struct Rref {
    Mat m;                             // zero rows kept at the bottom
    std::vector<std::size_t> pivots;   // strictly increasing
    std::size_t rank() const { return pivots.size(); }
};

Rref rref(const Mat& m);
std::size_t rank(const Mat& m);

/// Nonzero rows of the reduced echelon form: the canonical basis of the row space.
Mat row_basis(const Mat& m);
bool same_row_space(const Mat& a, const Mat& b);
/// True when every row of `sub` lies in the row space of `m`.
bool row_space_contains(const Mat& m, const Mat& sub);

/// Rows form a basis of {v : m v^T = 0}; (cols - rank) rows.
Mat kernel_basis(const Mat& m);

struct Systematic {
    Mat m;
    bool ok = false;
};

/// Reduced form [I | A] with the identity on the leading columns. `ok` is false
/// when the leading square minor is singular. Throws RankDeficient when the rows
/// are dependent.
Systematic systematic_form(const Mat& m);

/// One X with m X = rhs, or nullopt when the system is inconsistent.
std::optional<Mat> solve_right(const Mat& m, const Mat& rhs);

/// `MAT <rows> <cols>` followed by one line of space-separated hex per row.
std::string to_text(const Mat& m);
void write_mat(std::ostream& os, const Mat& m);
Mat read_mat(std::istream& is, FieldPtr field);

}  // namespace dyadic
