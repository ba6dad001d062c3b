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

#include "doctest.h"

#include <numeric>
#include <sstream>

#include "dyadic/codes.hpp"
#include "dyadic/rng.hpp"

using namespace dyadic;

namespace {

Vec distinct(const Field& f, std::size_t n, Rng& rng) {
    Vec all(f.order());
    std::iota(all.begin(), all.end(), Elem{0});
    rng.shuffle(all);
    return Vec(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(n));
}

Vec nonzero(const Field& f, std::size_t n, Rng& rng) {
    Vec v(n);
    for (auto& e : v) e = static_cast<Elem>(1 + rng.below(f.order() - 1));
    return v;
}

Elem horner(const Field& f, const Vec& coeffs, Elem x) {
    Elem acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = f.mul(acc, x) ^ *it;
    return acc;
}

// Every codeword of a small code.
std::vector<Vec> all_words(const Code& c) {
    const Field& f = *c.field();
    std::vector<Vec> words{Vec(c.length(), 0)};
    for (std::size_t i = 0; i < c.dimension(); ++i) {
        std::vector<Vec> next;
        for (const Vec& w : words)
            for (std::uint32_t a = 0; a < f.order(); ++a) {
                Vec v = w;
                for (std::size_t j = 0; j < v.size(); ++j) v[j] ^= f.mul(static_cast<Elem>(a), c.generator()(i, j));
                next.push_back(std::move(v));
            }
        words = std::move(next);
    }
    return words;
}

Code span_of(const FieldPtr& f, std::size_t n, const std::vector<Vec>& words) {
    Mat m(f, 0, n);
    for (const Vec& w : words) m.append_row(w);
    return Code(m);
}

Code random_code(const FieldPtr& f, std::size_t k, std::size_t n, Rng& rng) {
    Mat m(f, k, n);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = static_cast<Elem>(rng.below(f->order()));
    return Code(m);
}

}  // namespace

TEST_SUITE("codes") {

TEST_CASE("GRS code is the evaluation code of low-degree polynomials") {
    Rng rng(41);
    const FieldPtr f = Field::binary(5);
    for (int t = 0; t < 20; ++t) {
        const std::size_t n = 4 + rng.below(20), k = 1 + rng.below(n);
        const Vec x = distinct(*f, n, rng), y = nonzero(*f, n, rng);
        const Code c = grs_code(f, x, y, k);
        CHECK(c.dimension() == k);
        for (int w = 0; w < 5; ++w) {
            Vec coeffs(k);
            for (auto& e : coeffs) e = static_cast<Elem>(rng.below(f->order()));
            Vec word(n);
            for (std::size_t i = 0; i < n; ++i) word[i] = f->mul(y[i], horner(*f, coeffs, x[i]));
            CHECK(c.contains(word));
        }
    }
}

TEST_CASE("support validation") {
    const FieldPtr f = Field::binary(3);
    CHECK_THROWS_AS(grs_code(f, Vec{1, 1, 2}, Vec{1, 1, 1}, 2), Error);
    CHECK_THROWS_AS(grs_code(f, Vec{1, 2, 3}, Vec{1, 0, 1}, 2), Error);
    CHECK_THROWS_AS(grs_code(f, Vec{1, 2, 3}, Vec{1, 1, 1}, 4), Error);
}

TEST_CASE("dual multiplier gives the dual GRS code") {
    Rng rng(42);
    const FieldPtr f = Field::binary(6);
    for (int t = 0; t < 15; ++t) {
        const std::size_t n = 3 + rng.below(30), k = 1 + rng.below(n - 1);
        const Vec x = distinct(*f, n, rng), y = nonzero(*f, n, rng);
        const Code c = grs_code(f, x, y, k);
        const Code d = grs_code(f, x, dual_multiplier(*f, x, y), n - k);
        CHECK((c.generator() * d.generator().transpose()).is_zero());
        CHECK(d == c.dual());
    }
}

TEST_CASE("alternant codewords satisfy the parity relations over GF(q^2)") {
    Rng rng(43);
    const FieldPtr t = Field::quadratic(Field::binary(3));
    for (int i = 0; i < 10; ++i) {
        const std::size_t n = 10 + rng.below(30), r = 1 + rng.below(4);
        const Vec x = distinct(*t, n, rng), y = nonzero(*t, n, rng);
        const Code a = alternant_code(t, x, y, r);
        CHECK(a.dimension() >= n - 2 * r);
        for (std::size_t row = 0; row < a.dimension(); ++row)
            for (std::size_t j = 0; j < r; ++j) {
                Elem s = 0;
                for (std::size_t p = 0; p < n; ++p) s ^= t->mul(a.generator()(row, p), t->mul(y[p], t->pow(x[p], j)));
                CHECK(s == 0);
            }
    }
}

TEST_CASE("star product of GRS codes") {
    Rng rng(44);
    const FieldPtr f = Field::binary(6);
    for (int i = 0; i < 15; ++i) {
        const std::size_t n = 6 + rng.below(30), a = 1 + rng.below(n / 2), b = 1 + rng.below(n - a);
        const Vec x = distinct(*f, n, rng), y = nonzero(*f, n, rng), z = nonzero(*f, n, rng);
        Vec yz(n);
        for (std::size_t j = 0; j < n; ++j) yz[j] = f->mul(y[j], z[j]);
        CHECK(star_product(grs_code(f, x, y, a), grs_code(f, x, z, b)) == grs_code(f, x, yz, a + b - 1));
    }
}

TEST_CASE("star product contains every pairwise product and is commutative") {
    Rng rng(45);
    const FieldPtr f = Field::binary(4);
    for (int i = 0; i < 10; ++i) {
        const Code a = random_code(f, 1 + rng.below(4), 12, rng), b = random_code(f, 1 + rng.below(4), 12, rng);
        const Code s = star_product(a, b);
        CHECK(s == star_product(b, a));
        for (std::size_t p = 0; p < a.dimension(); ++p)
            for (std::size_t q = 0; q < b.dimension(); ++q) {
                Vec w(12);
                for (std::size_t j = 0; j < 12; ++j) w[j] = f->mul(a.generator()(p, j), b.generator()(q, j));
                CHECK(s.contains(w));
            }
    }
}

TEST_CASE("shortening and puncturing match their definitions") {
    Rng rng(46);
    const FieldPtr f = Field::binary(2);
    for (int i = 0; i < 15; ++i) {
        const std::size_t n = 8;
        const Code c = random_code(f, 1 + rng.below(4), n, rng);
        std::vector<std::size_t> pos;
        for (std::size_t j = 0; j < n; ++j)
            if (rng.below(3) == 0) pos.push_back(j);
        const auto keep = complement_positions(n, pos);
        std::vector<Vec> shortened, punctured;
        for (const Vec& w : all_words(c)) {
            Vec kept;
            for (auto k : keep) kept.push_back(w[k]);
            punctured.push_back(kept);
            if (std::all_of(pos.begin(), pos.end(), [&](std::size_t p) { return w[p] == 0; })) shortened.push_back(kept);
        }
        CHECK(shorten(c, pos) == span_of(f, keep.size(), shortened));
        CHECK(puncture(c, pos) == span_of(f, keep.size(), punctured));
    }
}

TEST_CASE("invariant code keeps exactly the block-constant codewords") {
    Rng rng(47);
    const FieldPtr f = Field::binary(2);
    for (int i = 0; i < 10; ++i) {
        const std::size_t block = 2, n = 8;
        // plant block-constant words so the invariant code is not always zero
        Mat g(f, 0, n);
        for (int r = 0; r < 2; ++r) {
            Vec w(n);
            for (std::size_t b = 0; b < n / block; ++b) w[b * block] = w[b * block + 1] = static_cast<Elem>(rng.below(4));
            g.append_row(w);
        }
        g = g.vstack(random_code(f, 2, n, rng).generator());
        const Code c(g);
        std::vector<Vec> fixed;
        for (const Vec& w : all_words(c)) {
            bool constant = true;
            for (std::size_t b = 0; b < n / block; ++b) constant = constant && w[b * block] == w[b * block + 1];
            if (constant) fixed.push_back(w);
        }
        CHECK(invariant_code(c, block) == span_of(f, n, fixed));
        CHECK(expand_blocks(compressed_invariant(c, block), block).rows() == invariant_code(c, block).dimension());
    }
}

TEST_CASE("dyadic support layout and induced permutations") {
    const FieldPtr t = Field::quadratic(Field::binary(3));
    const Vec b{1, 8}, tau{0, 2, 16}, y{1, 2, 3};
    const DyadicSupport s = dyadic_support(t, b, tau, y, 2);
    CHECK(group_elements(b) == Vec{0, 1, 8, 9});
    CHECK(s.x == Vec{0, 1, 8, 9, 2, 3, 10, 11, 16, 17, 24, 25});
    CHECK(s.z == Vec{1, 1, 1, 1, 2, 2, 2, 2, 3, 3, 3, 3});
    const auto perm = induced_permutation(s, 8);
    for (std::size_t i = 0; i < s.n(); ++i) CHECK(s.x[perm[i]] == (s.x[i] ^ 8));
    CHECK_THROWS_AS(dyadic_support(t, Vec{1, 1}, tau, y, 2), Error);
    CHECK_THROWS_AS(dyadic_support(t, b, Vec{0, 1}, Vec{1, 1}, 2), Error);
}

TEST_CASE("trace and norm vectors lie in the low-degree RS subfield subcodes") {
    Rng rng(48);
    const FieldPtr t = Field::quadratic(Field::binary(2));
    const std::size_t q = 4, n = 16;
    const Vec x = distinct(*t, n, rng);
    const Vec ones(n, 1);
    auto rs_over_q = [&](std::size_t deg) { return alternant_code(t, x, dual_multiplier(*t, x, ones), n - deg); };
    const auto v = trace_norm_vectors(*t, x);
    CHECK(rs_over_q(q + 1).dimension() >= 3);
    CHECK(rs_over_q(q + 2).dimension() >= 4);
    for (int k = 0; k < 3; ++k) CHECK(rs_over_q(q + 1).contains(v[k]));
    CHECK(rs_over_q(q + 2).contains(v[3]));
    CHECK_FALSE(rs_over_q(q + 1).contains(v[3]));
}

TEST_CASE("code text format round trip") {
    Rng rng(49);
    const FieldPtr f = Field::binary(5);
    const Code c = random_code(f, 3, 9, rng);
    std::stringstream ss;
    write_code(ss, c);
    CHECK(read_code(ss, f) == c);
}

}  // TEST_SUITE
