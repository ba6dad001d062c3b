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

#include "dyadic/matrix.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include "dyadic/kernels.hpp"

namespace dyadic {

Mat::Mat(FieldPtr field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

Mat Mat::identity(FieldPtr field, std::size_t n) {
    Mat m(std::move(field), n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Mat Mat::from_rows(FieldPtr field, const std::vector<std::vector<Elem>>& rows) {
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    Mat m(std::move(field), 0, cols);
    for (const auto& r : rows) m.append_row(r);
    return m;
}

void Mat::append_row(std::span<const Elem> values) {
    if (rows_ == 0 && cols_ == 0) cols_ = values.size();
    if (values.size() != cols_) throw Error(ErrorKind::Structural, "row length mismatch");
    for (Elem v : values)
        if (!field_->contains(v)) throw Error(ErrorKind::Structural, "entry outside field");
    data_.insert(data_.end(), values.begin(), values.end());
    ++rows_;
}

bool Mat::is_zero() const {
    for (Elem v : data_)
        if (v) return false;
    return true;
}

Mat Mat::transpose() const {
    Mat t(field_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

Mat Mat::select_rows(std::span<const std::size_t> idx) const {
    Mat m(field_, idx.size(), cols_);
    for (std::size_t i = 0; i < idx.size(); ++i) {
        if (idx[i] >= rows_) throw Error(ErrorKind::Structural, "row index out of range");
        std::copy_n(row(idx[i]).begin(), cols_, m.row(i).begin());
    }
    return m;
}

Mat Mat::select_cols(std::span<const std::size_t> idx) const {
    for (auto c : idx)
        if (c >= cols_) throw Error(ErrorKind::Structural, "column index out of range");
    Mat m(field_, rows_, idx.size());
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t i = 0; i < idx.size(); ++i) m(r, i) = (*this)(r, idx[i]);
    return m;
}

Mat Mat::row_range(std::size_t first, std::size_t count) const {
    if (first + count > rows_) throw Error(ErrorKind::Structural, "row range out of bounds");
    Mat m(field_, count, cols_);
    std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>(first * cols_), count * cols_, m.data_.begin());
    return m;
}

Mat Mat::vstack(const Mat& below) const {
    if (rows_ == 0) return below;
    if (below.rows_ == 0) return *this;
    if (below.cols_ != cols_ || !field_->same_as(*below.field_)) throw Error(ErrorKind::Structural, "vstack mismatch");
    Mat m = *this;
    m.data_.insert(m.data_.end(), below.data_.begin(), below.data_.end());
    m.rows_ += below.rows_;
    return m;
}

Mat Mat::hstack(const Mat& right) const {
    if (right.rows_ != rows_ || !field_->same_as(*right.field_)) throw Error(ErrorKind::Structural, "hstack mismatch");
    Mat m(field_, rows_, cols_ + right.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        std::copy_n(row(r).begin(), cols_, m.row(r).begin());
        std::copy_n(right.row(r).begin(), right.cols_, m.row(r).begin() + static_cast<std::ptrdiff_t>(cols_));
    }
    return m;
}

Mat operator*(const Mat& a, const Mat& b) {
    if (a.cols_ != b.rows_ || !a.field_->same_as(*b.field_)) throw Error(ErrorKind::Structural, "product shape mismatch");
    const Field& f = *a.field_;
    Mat c(a.field_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Elem x = a(i, k);
            if (!x) continue;
            const auto brow = b.row(k);
            auto crow = c.row(i);
            for (std::size_t j = 0; j < b.cols_; ++j) crow[j] ^= f.mul(x, brow[j]);
        }
    return c;
}

bool operator==(const Mat& a, const Mat& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    if (a.field_ && b.field_ && !a.field_->same_as(*b.field_)) return false;
    return a.data_ == b.data_;
}

namespace {

Rref rref_bytes(const Mat& m) {
    const kernels::ByteField bf(m.f());
    kernels::ByteMatrix bm(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) bm.at(r, c) = static_cast<std::uint8_t>(m(r, c));
    Rref out;
    out.pivots = kernels::echelonize(bf, bm, kernels::Reduction::Reduced);
    out.m = Mat(m.field(), m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) out.m(r, c) = bm.at(r, c);
    return out;
}

Rref rref_generic(const Mat& in) {
    const Field& f = in.f();
    Rref out{in, {}};
    Mat& m = out.m;
    const std::size_t rows = m.rows(), cols = m.cols();
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t p = rank;
        while (p < rows && m(p, col) == 0) ++p;
        if (p == rows) continue;
        if (p != rank) std::swap_ranges(m.row(p).begin(), m.row(p).end(), m.row(rank).begin());
        auto prow = m.row(rank);
        const Elem s = f.inv(prow[col]);
        for (std::size_t c = col; c < cols; ++c) prow[c] = f.mul(prow[c], s);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank) continue;
            auto row = m.row(r);
            const Elem x = row[col];
            if (!x) continue;
            for (std::size_t c = col; c < cols; ++c) row[c] ^= f.mul(x, prow[c]);
        }
        out.pivots.push_back(col);
        ++rank;
    }
    return out;
}

}  // namespace

Rref rref(const Mat& m) {
    if (!m.field()) return {m, {}};
    return m.f().order() <= 256 ? rref_bytes(m) : rref_generic(m);
}

std::size_t rank(const Mat& m) { return rref(m).rank(); }

Mat row_basis(const Mat& m) {
    auto r = rref(m);
    return r.m.row_range(0, r.rank());
}

bool same_row_space(const Mat& a, const Mat& b) {
    if (a.cols() != b.cols()) return false;
    return row_basis(a) == row_basis(b);
}

bool row_space_contains(const Mat& m, const Mat& sub) {
    if (sub.rows() == 0) return true;
    return rank(m.vstack(sub)) == rank(m);
}

Mat kernel_basis(const Mat& m) {
    const auto r = rref(m);
    const std::size_t cols = m.cols();
    std::vector<bool> is_pivot(cols, false);
    for (auto p : r.pivots) is_pivot[p] = true;
    Mat k(m.field(), 0, cols);
    std::vector<Elem> v(cols);
    for (std::size_t fcol = 0; fcol < cols; ++fcol) {
        if (is_pivot[fcol]) continue;
        std::fill(v.begin(), v.end(), 0);
        v[fcol] = 1;
        for (std::size_t i = 0; i < r.pivots.size(); ++i) v[r.pivots[i]] = r.m(i, fcol);
        k.append_row(v);
    }
    return k;
}

Systematic systematic_form(const Mat& m) {
    auto r = rref(m);
    if (r.rank() != m.rows()) throw Error(ErrorKind::RankDeficient, "systematic form needs full row rank");
    bool ok = true;
    for (std::size_t i = 0; i < r.rank(); ++i)
        if (r.pivots[i] != i) ok = false;
    return {std::move(r.m), ok};
}

std::optional<Mat> solve_right(const Mat& m, const Mat& rhs) {
    if (m.rows() != rhs.rows()) throw Error(ErrorKind::Structural, "solve_right shape mismatch");
    const auto r = rref(m.hstack(rhs));
    Mat x(m.field(), m.cols(), rhs.cols());
    for (std::size_t i = 0; i < r.rank(); ++i) {
        const std::size_t p = r.pivots[i];
        if (p >= m.cols()) return std::nullopt;
        for (std::size_t j = 0; j < rhs.cols(); ++j) x(p, j) = r.m(i, m.cols() + j);
    }
    return x;
}

void write_mat(std::ostream& os, const Mat& m) {
    os << "MAT " << m.rows() << ' ' << m.cols() << '\n';
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) os << (c ? " " : "") << to_hex(m(r, c));
        os << '\n';
    }
}

std::string to_text(const Mat& m) {
    std::ostringstream os;
    write_mat(os, m);
    return os.str();
}

Mat read_mat(std::istream& is, FieldPtr field) {
    std::string tag;
    std::size_t rows = 0, cols = 0;
    if (!(is >> tag >> rows >> cols) || tag != "MAT") throw Error(ErrorKind::Parse, "expected 'MAT <rows> <cols>'");
    Mat m(field, rows, cols);
    std::string tok;
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) {
            if (!(is >> tok)) throw Error(ErrorKind::Parse, "truncated matrix");
            const auto v = parse_hex(tok);
            if (v >= field->order()) throw Error(ErrorKind::Parse, "matrix entry outside field");
            m(r, c) = static_cast<Elem>(v);
        }
    return m;
}

}  // namespace dyadic
