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

#include "dyadic/codes.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_set>

namespace dyadic {

Code::Code(const Mat& spanning) : Code(spanning, spanning.cols()) {}

Code::Code(const Mat& spanning, std::size_t n) : gen_(row_basis(spanning)), n_(n) {
    if (gen_.rows() == 0) gen_ = Mat(spanning.field(), 0, n);
}

Code Code::full_space(FieldPtr field, std::size_t n) { return Code(Mat::identity(std::move(field), n)); }

Code Code::zero(FieldPtr field, std::size_t n) { return Code(Mat(std::move(field), 0, n), n); }

bool Code::contains(std::span<const Elem> word) const {
    if (word.size() != n_) return false;
    Mat w(field(), 0, n_);
    w.append_row(word);
    return row_space_contains(gen_, w);
}

bool Code::contains(const Code& sub) const {
    if (sub.n_ != n_) return false;
    return row_space_contains(gen_, sub.gen_);
}

bool operator==(const Code& a, const Code& b) { return a.n_ == b.n_ && a.gen_ == b.gen_; }

Vec group_elements(std::span<const Elem> b) {
    Vec g(std::size_t{1} << b.size(), 0);
    for (std::size_t p = 1; p < g.size(); ++p) {
        const auto k = static_cast<std::size_t>(std::countr_zero(p));
        g[p] = g[p & (p - 1)] ^ b[k];  // clear the lowest bit, add b_k
    }
    return g;
}

DyadicSupport dyadic_support(FieldPtr field, std::span<const Elem> b, std::span<const Elem> tau,
                             std::span<const Elem> y, int gamma) {
    if (gamma < 0 || static_cast<std::size_t>(gamma) != b.size())
        throw Error(ErrorKind::Structural, "b must hold gamma elements");
    if (tau.size() != y.size()) throw Error(ErrorKind::Structural, "tau and y lengths differ");
    const Vec g = group_elements(b);
    // GF(2)-independence <=> the 2^gamma subset sums are pairwise distinct.
    std::unordered_set<Elem> seen(g.begin(), g.end());
    if (seen.size() != g.size()) throw Error(ErrorKind::DegenerateGroup, "b is GF(2)-dependent");
    DyadicSupport s;
    s.field = std::move(field);
    s.gamma = gamma;
    s.b.assign(b.begin(), b.end());
    s.tau.assign(tau.begin(), tau.end());
    s.y.assign(y.begin(), y.end());
    std::unordered_set<Elem> xs;
    for (std::size_t i = 0; i < tau.size(); ++i) {
        if (y[i] == 0) throw Error(ErrorKind::InvalidSupport, "zero multiplier");
        for (Elem gp : g) {
            const Elem v = tau[i] ^ gp;
            if (!xs.insert(v).second) throw Error(ErrorKind::CosetCollision, "cosets tau_i + G overlap");
            s.x.push_back(v);
            s.z.push_back(y[i]);
        }
    }
    return s;
}

std::vector<std::size_t> induced_permutation(const DyadicSupport& s, Elem t) {
    const std::size_t blk = s.block();
    const Vec g = group_elements(s.b);
    std::size_t shift = g.size();
    for (std::size_t p = 0; p < g.size(); ++p)
        if (g[p] == t) shift = p;
    if (shift == g.size()) throw Error(ErrorKind::Structural, "translation not in G");
    // g[p] + g[shift] = g[p xor shift] because orbit order is the binary expansion.
    std::vector<std::size_t> perm(s.n());
    for (std::size_t i = 0; i < s.n(); ++i) perm[i] = (i / blk) * blk + ((i % blk) ^ shift);
    return perm;
}

void check_support(const Field& f, std::span<const Elem> x, std::span<const Elem> y) {
    if (x.size() != y.size()) throw Error(ErrorKind::InvalidSupport, "support and multiplier lengths differ");
    std::unordered_set<Elem> seen;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!f.contains(x[i]) || !f.contains(y[i])) throw Error(ErrorKind::InvalidSupport, "entry outside field");
        if (y[i] == 0) throw Error(ErrorKind::InvalidSupport, "zero multiplier");
        if (!seen.insert(x[i]).second) throw Error(ErrorKind::InvalidSupport, "repeated support entry");
    }
}

Code grs_code(const FieldPtr& field, std::span<const Elem> x, std::span<const Elem> y, std::size_t t) {
    const Field& f = *field;
    check_support(f, x, y);
    const std::size_t n = x.size();
    if (t < 1 || t > n) throw Error(ErrorKind::InvalidSupport, "GRS dimension out of range");
    Mat g(field, t, n);
    for (std::size_t j = 0; j < n; ++j) {
        Elem v = y[j];
        for (std::size_t i = 0; i < t; ++i) {
            g(i, j) = v;
            v = f.mul(v, x[j]);
        }
    }
    return Code(g);
}

Vec dual_multiplier(const Field& f, std::span<const Elem> x, std::span<const Elem> y) {
    check_support(f, x, y);
    const std::size_t n = x.size();
    Vec out(n);
    for (std::size_t j = 0; j < n; ++j) {
        Elem prod = y[j];
        for (std::size_t l = 0; l < n; ++l)
            if (l != j) prod = f.mul(prod, x[l] ^ x[j]);
        out[j] = f.inv(prod);
    }
    return out;
}

Mat alternant_parity(const Field& tower, std::span<const Elem> x, std::span<const Elem> y, std::size_t t) {
    if (!tower.is_tower()) throw Error(ErrorKind::Structural, "alternant codes need a tower field");
    check_support(tower, x, y);
    const std::size_t n = x.size();
    Mat h(tower.base(), 2 * t, n);
    for (std::size_t j = 0; j < n; ++j) {
        Elem v = y[j];
        for (std::size_t i = 0; i < t; ++i) {
            h(2 * i, j) = tower.coord0(v);
            h(2 * i + 1, j) = tower.coord1(v);
            v = tower.mul(v, x[j]);
        }
    }
    return h;
}

Code alternant_code(const FieldPtr& tower, std::span<const Elem> x, std::span<const Elem> y, std::size_t t) {
    if (t == 0) {
        check_support(*tower, x, y);
        return Code::full_space(tower->base(), x.size());
    }
    return Code(kernel_basis(alternant_parity(*tower, x, y, t)));
}

Code star_product(const Code& a, const Code& b) {
    if (a.length() != b.length()) throw Error(ErrorKind::Structural, "star product of codes of different lengths");
    if (!a.field()->same_as(*b.field())) throw Error(ErrorKind::Structural, "star product over different fields");
    const Field& f = *a.field();
    const std::size_t n = a.length();
    const Mat& ga = a.generator();
    const Mat& gb = b.generator();
    Mat basis(a.field(), 0, n);
    Mat batch(a.field(), 0, n);
    Vec prod(n);
    auto flush = [&] {
        basis = row_basis(basis.vstack(batch));
        batch = Mat(a.field(), 0, n);
    };
    for (std::size_t i = 0; i < ga.rows() && basis.rows() < n; ++i) {
        for (std::size_t j = 0; j < gb.rows(); ++j) {
            for (std::size_t c = 0; c < n; ++c) prod[c] = f.mul(ga(i, c), gb(j, c));
            batch.append_row(prod);
            if (batch.rows() >= 2 * n) {
                flush();
                if (basis.rows() == n) break;
            }
        }
    }
    flush();
    return Code(basis);
}

std::vector<std::size_t> complement_positions(std::size_t n, std::span<const std::size_t> positions) {
    std::vector<bool> drop(n, false);
    for (auto p : positions) {
        if (p >= n) throw Error(ErrorKind::Structural, "position out of range");
        drop[p] = true;
    }
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < n; ++i)
        if (!drop[i]) keep.push_back(i);
    return keep;
}

Code puncture(const Code& c, std::span<const std::size_t> positions) {
    const auto keep = complement_positions(c.length(), positions);
    return Code(c.generator().select_cols(keep));
}

Code shorten(const Code& c, std::span<const std::size_t> positions) {
    const auto keep = complement_positions(c.length(), positions);
    if (positions.empty()) return c;
    std::vector<std::size_t> idx(positions.begin(), positions.end());
    const Mat& g = c.generator();
    // combinations a with (a G) restricted to the positions equal to zero
    const Mat coeffs = kernel_basis(g.select_cols(idx).transpose());
    if (coeffs.rows() == 0) return Code::zero(c.field(), keep.size());
    return Code((coeffs * g).select_cols(keep));
}

Mat compressed_invariant(const Code& c, std::size_t block) {
    const std::size_t n = c.length();
    if (block == 0 || n % block) throw Error(ErrorKind::Structural, "length not divisible by block size");
    const Mat& g = c.generator();
    const std::size_t n0 = n / block;
    Mat diff(c.field(), g.rows(), n - n0);
    for (std::size_t r = 0; r < g.rows(); ++r)
        for (std::size_t b = 0, col = 0; b < n0; ++b)
            for (std::size_t p = 1; p < block; ++p, ++col) diff(r, col) = g(r, b * block + p) ^ g(r, b * block);
    const Mat coeffs = kernel_basis(diff.transpose());
    std::vector<std::size_t> heads(n0);
    for (std::size_t b = 0; b < n0; ++b) heads[b] = b * block;
    if (coeffs.rows() == 0) return Mat(c.field(), 0, n0);
    return row_basis((coeffs * g).select_cols(heads));
}

Mat expand_blocks(const Mat& m, std::size_t block) {
    Mat e(m.field(), m.rows(), m.cols() * block);
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            for (std::size_t p = 0; p < block; ++p) e(r, c * block + p) = m(r, c);
    return e;
}

Code invariant_code(const Code& c, std::size_t block) {
    const Mat compressed = compressed_invariant(c, block);
    if (compressed.rows() == 0) return Code::zero(c.field(), c.length());
    return Code(expand_blocks(compressed, block));
}

std::array<Vec, 4> trace_norm_vectors(const Field& tower, std::span<const Elem> x) {
    if (!tower.is_tower()) throw Error(ErrorKind::Structural, "trace/norm vectors need a tower field");
    std::array<Vec, 4> out;
    const Elem w = tower.omega();
    for (Elem xi : x) {
        out[0].push_back(1);
        out[1].push_back(tower.trace(xi));
        out[2].push_back(tower.trace(tower.mul(w, xi)));
        out[3].push_back(tower.norm(xi));
    }
    return out;
}

void write_code(std::ostream& os, const Code& c) {
    os << "CODE n=" << c.length() << " k=" << c.dimension() << " field=" << to_hex(c.field()->spec().modulus) << '\n';
    write_mat(os, c.generator());
}

Code read_code(std::istream& is, FieldPtr field) {
    std::string tag, ntok, ktok, ftok;
    if (!(is >> tag >> ntok >> ktok >> ftok) || tag != "CODE") throw Error(ErrorKind::Parse, "expected CODE header");
    if (ntok.rfind("n=", 0) || ktok.rfind("k=", 0) || ftok.rfind("field=", 0))
        throw Error(ErrorKind::Parse, "malformed CODE header");
    const auto n = std::stoul(ntok.substr(2));
    const auto k = std::stoul(ktok.substr(2));
    if (parse_hex(ftok.substr(6)) != field->spec().modulus) throw Error(ErrorKind::Parse, "CODE field modulus mismatch");
    Mat g = read_mat(is, field);
    if (g.cols() != n) throw Error(ErrorKind::Parse, "CODE length mismatch");
    Code c(g);
    if (c.dimension() != k) throw Error(ErrorKind::Parse, "CODE dimension mismatch");
    return c;
}

}  // namespace dyadic
