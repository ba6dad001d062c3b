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

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dyadic/matrix.hpp"
#include "dyadic/rng.hpp"

using namespace dyadic;

namespace {

Mat random_mat(const FieldPtr& f, std::size_t r, std::size_t c, Rng& rng, int zero_percent = 0) {
    Mat m(f, r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            if (static_cast<int>(rng.below(100)) >= zero_percent) m(i, j) = static_cast<Elem>(rng.below(f->order()));
    return m;
}

// Rank by counting the distinct vectors of the row space (tiny cases only).
std::size_t rank_by_enumeration(const Mat& m) {
    const Field& f = m.f();
    std::vector<std::vector<Elem>> span{std::vector<Elem>(m.cols(), 0)};
    for (std::size_t i = 0; i < m.rows(); ++i) {
        std::vector<std::vector<Elem>> next;
        for (const auto& v : span)
            for (std::uint32_t a = 0; a < f.order(); ++a) {
                auto w = v;
                for (std::size_t j = 0; j < w.size(); ++j) w[j] ^= f.mul(static_cast<Elem>(a), m(i, j));
                next.push_back(std::move(w));
            }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        span = std::move(next);
    }
    std::size_t r = 0;
    for (std::size_t n = span.size(); n > 1; n /= f.order()) ++r;
    return r;
}

}  // namespace

TEST_SUITE("matrix") {

TEST_CASE("rank agrees with counting the row space") {
    Rng rng(21);
    const FieldPtr f = Field::binary(2);
    for (int t = 0; t < 60; ++t) {
        const Mat m = random_mat(f, 1 + rng.below(4), 1 + rng.below(5), rng, 50);
        CHECK(rank(m) == rank_by_enumeration(m));
    }
}

TEST_CASE("reduced echelon form properties") {
    Rng rng(22);
    const FieldPtr f = Field::binary(5);
    for (int t = 0; t < 40; ++t) {
        const Mat m = random_mat(f, 1 + rng.below(12), 1 + rng.below(12), rng, 40);
        const Rref r = rref(m);
        CHECK(r.rank() <= std::min(m.rows(), m.cols()));
        for (std::size_t i = 0; i < r.rank(); ++i) {
            CHECK(r.m(i, r.pivots[i]) == 1);
            for (std::size_t k = 0; k < m.rows(); ++k)
                if (k != i) CHECK(r.m(k, r.pivots[i]) == 0);
        }
        CHECK(rref(r.m).m == r.m);
        CHECK(same_row_space(m, r.m));
    }
}

TEST_CASE("kernel has complementary dimension and is annihilated") {
    Rng rng(23);
    const FieldPtr f = Field::binary(6);
    for (int t = 0; t < 40; ++t) {
        const Mat m = random_mat(f, 1 + rng.below(10), 1 + rng.below(14), rng, 30);
        const Mat k = kernel_basis(m);
        CHECK(k.rows() + rank(m) == m.cols());
        if (k.rows()) CHECK((m * k.transpose()).is_zero());
        CHECK(rank(k) == k.rows());
    }
}

TEST_CASE("systematic form reports a singular leading minor") {
    const FieldPtr f = Field::binary(3);
    const Mat ok = Mat::from_rows(f, {{1, 2, 3}, {0, 1, 4}});
    const Systematic s = systematic_form(ok);
    CHECK(s.ok);
    CHECK(s.m(0, 0) == 1);
    CHECK(s.m(0, 1) == 0);
    const Mat bad = Mat::from_rows(f, {{0, 1, 3}, {0, 2, 4}});
    CHECK_FALSE(systematic_form(bad).ok);
    CHECK_THROWS_AS(systematic_form(Mat::from_rows(f, {{1, 2}, {1, 2}})), Error);
}

TEST_CASE("solve_right finds solutions and detects inconsistency") {
    Rng rng(24);
    const FieldPtr f = Field::binary(4);
    for (int t = 0; t < 30; ++t) {
        const Mat a = random_mat(f, 6, 4, rng);
        const Mat x = random_mat(f, 4, 2, rng);
        const auto sol = solve_right(a, a * x);
        REQUIRE(sol.has_value());
        CHECK(a * *sol == a * x);
    }
    const Mat a = Mat::from_rows(f, {{1, 1}, {1, 1}});
    const Mat b = Mat::from_rows(f, {{1}, {0}});
    CHECK_FALSE(solve_right(a, b).has_value());
}

TEST_CASE("products, transposes and stacking") {
    Rng rng(25);
    const FieldPtr f = Field::binary(7);
    const Mat a = random_mat(f, 3, 4, rng), b = random_mat(f, 4, 5, rng), c = random_mat(f, 5, 2, rng);
    CHECK((a * b) * c == a * (b * c));
    CHECK((a * b).transpose() == b.transpose() * a.transpose());
    CHECK(a.vstack(a).rows() == 6);
    CHECK(a.hstack(a).cols() == 8);
    CHECK(a.select_cols(std::vector<std::size_t>{0, 1, 2, 3}) == a);
    CHECK_THROWS_AS(a * a, Error);
}

TEST_CASE("text format round trip") {
    Rng rng(26);
    const FieldPtr f = Field::binary(8);
    const Mat a = random_mat(f, 5, 7, rng);
    std::stringstream ss;
    write_mat(ss, a);
    CHECK(read_mat(ss, f) == a);
    std::stringstream bad("MAT 2 2\n1 2\n3\n");
    CHECK_THROWS_AS(read_mat(bad, f), Error);
}

TEST_CASE("systematic form succeeds about as often as a random square matrix is invertible") {
    Rng rng(27);
    const FieldPtr f = Field::binary(2);
    const int d = 4, trials = 4000;
    int ok = 0, full = 0;
    while (full < trials) {
        const Mat m = random_mat(f, d, 2 * d, rng);
        if (rank(m) != static_cast<std::size_t>(d)) continue;
        ++full;
        ok += systematic_form(m).ok;
    }
    double expected = 1;
    for (int i = 1; i <= d; ++i) expected *= 1 - std::pow(4.0, -i);
    CHECK(std::abs(static_cast<double>(ok) / trials - expected) < 0.03);
}

}  // TEST_SUITE
