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

#include <array>
#include <iosfwd>
#include <span>
#include <vector>

#include "dyadic/matrix.hpp"

namespace dyadic {

using Vec = std::vector<Elem>;

/// Linear code, held by its canonical (reduced echelon) generator matrix.
class Code {
public:
    Code() = default;
    /// Any spanning set of rows; it is reduced to a basis.
    explicit Code(const Mat& spanning);
    static Code full_space(FieldPtr field, std::size_t n);
    static Code zero(FieldPtr field, std::size_t n);

    std::size_t length() const { return n_; }
    std::size_t dimension() const { return gen_.rows(); }
    const Mat& generator() const { return gen_; }
    const FieldPtr& field() const { return gen_.field(); }

    Mat parity_check() const { return kernel_basis(gen_); }
    Code dual() const { return Code(parity_check(), n_); }
    bool contains(std::span<const Elem> word) const;
    bool contains(const Code& sub) const;

    friend bool operator==(const Code& a, const Code& b);

private:
    Code(const Mat& spanning, std::size_t n);
    Mat gen_;
    std::size_t n_ = 0;
};

/// Quasi-dyadic support: x = tau (x) 1_{2^gamma} + 1_{n0} (x) g and z = y (x) 1_{2^gamma},
/// where g lists the group G spanned over GF(2) by b in orbit order
/// (entry p is the sum of the b_k whose bit k is set in p).
struct DyadicSupport {
    FieldPtr field;  // GF(q^2)
    int gamma = 0;
    Vec b, tau, y;
    Vec x, z;

    std::size_t block() const { return std::size_t{1} << gamma; }
    std::size_t n0() const { return tau.size(); }
    std::size_t n() const { return x.size(); }
};

/// Entries of G in orbit order: (0, b1, b2, b1+b2, b3, ...).
Vec group_elements(std::span<const Elem> b);

DyadicSupport dyadic_support(FieldPtr field, std::span<const Elem> b, std::span<const Elem> tau,
                             std::span<const Elem> y, int gamma);

/// Permutation of positions induced by the translation z -> z + t, t in G:
/// x[perm[i]] = x[i] + t. Indices are 0-based.
std::vector<std::size_t> induced_permutation(const DyadicSupport& s, Elem t);

Code grs_code(const FieldPtr& field, std::span<const Elem> x, std::span<const Elem> y, std::size_t t);
Vec dual_multiplier(const Field& f, std::span<const Elem> x, std::span<const Elem> y);
/// Subfield subcode over base(F) of the dual of GRS_t(x, y), via the parity
/// relations sum_i c_i y_i x_i^j = 0 (j < t) expanded over the basis {1, w}.
Code alternant_code(const FieldPtr& tower, std::span<const Elem> x, std::span<const Elem> y, std::size_t t);
/// The 2t x n expanded parity matrix over GF(q) used by alternant_code.
Mat alternant_parity(const Field& tower, std::span<const Elem> x, std::span<const Elem> y, std::size_t t);

Code star_product(const Code& a, const Code& b);
Code shorten(const Code& c, std::span<const std::size_t> positions);
Code puncture(const Code& c, std::span<const std::size_t> positions);
std::vector<std::size_t> complement_positions(std::size_t n, std::span<const std::size_t> positions);

/// Codewords constant on each length-`block` run of positions.
Code invariant_code(const Code& c, std::size_t block);
/// Block values of the invariant code (n/block columns); rows are a basis.
Mat compressed_invariant(const Code& c, std::size_t block);
/// Repeats every column of `m` `block` times.
Mat expand_blocks(const Mat& m, std::size_t block);

/// (1_n, tr(x), tr(w x), nr(x)) over GF(q).
std::array<Vec, 4> trace_norm_vectors(const Field& tower, std::span<const Elem> x);

void check_support(const Field& f, std::span<const Elem> x, std::span<const Elem> y);

/// `CODE n=<n> k=<k> field=<hex-modulus>` then the generator in MAT format.
void write_code(std::ostream& os, const Code& c);
Code read_code(std::istream& is, FieldPtr field);

}  // namespace dyadic
