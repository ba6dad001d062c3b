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
#include <set>
#include <sstream>

#include "dyadic/macaulay.hpp"
#include "dyadic/rng.hpp"
#include "oracle.hpp"

using namespace dyadic;

namespace {

using Point = std::vector<Elem>;

Poly random_quadratic(const Field& f, int nvars, Rng& rng) {
    std::vector<Term> terms;
    for (int i = 0; i < nvars; ++i)
        for (int j = i; j < nvars; ++j)
            if (rng.below(2)) terms.push_back({Monomial::from_ids(std::vector<int>{i, j}), static_cast<Elem>(rng.below(f.order()))});
    for (int i = 0; i < nvars; ++i) terms.push_back({Monomial::var(i), static_cast<Elem>(rng.below(f.order()))});
    terms.push_back({Monomial(), static_cast<Elem>(rng.below(f.order()))});
    return Poly::from_terms(std::move(terms));
}

// Shift the constant so that `at` is a root.
Poly through(const Field& f, const Poly& p, const Point& at) {
    return p.add(Poly::constant(p.eval(f, at)));
}

std::set<Point> brute_force(const Field& f, int nvars, const std::vector<Poly>& polys) {
    std::set<Point> out;
    Point pt(nvars, 0);
    std::uint64_t total = 1;
    for (int i = 0; i < nvars; ++i) total *= f.order();
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        std::uint64_t r = idx;
        for (int i = 0; i < nvars; ++i, r /= f.order()) pt[i] = static_cast<Elem>(r % f.order());
        if (std::all_of(polys.begin(), polys.end(), [&](const Poly& p) { return p.eval(f, pt) == 0; })) out.insert(pt);
    }
    return out;
}

}  // namespace

TEST_SUITE("macaulay") {

TEST_CASE("solution sets of small random systems match exhaustive search") {
    Rng rng(51);
    int solved = 0, infeasible = 0;
    for (int s : {1, 2, 3}) {
        const FieldPtr f = Field::binary(s);
        for (int t = 0; t < 40; ++t) {
            const int n = 2 + static_cast<int>(rng.below(s == 3 ? 3 : 5));
            const int m = n + static_cast<int>(rng.below(n + 1));
            Point planted(n);
            for (auto& e : planted) e = static_cast<Elem>(rng.below(f->order()));
            const bool plant = rng.below(3) != 0;
            std::vector<Poly> polys;
            for (int i = 0; i < m; ++i) {
                const Poly p = random_quadratic(*f, n, rng);
                polys.push_back(plant ? through(*f, p, planted) : p);
            }
            const auto want = brute_force(*f, n, polys);
            SolveOptions opt;
            opt.dmax = 6;
            const SolveOutcome out = macaulay_solve(f, n, polys, opt);
            CAPTURE(s);
            CAPTURE(t);
            if (want.empty()) {
                CHECK(out.status == SolveStatus::Infeasible);
                infeasible += out.status == SolveStatus::Infeasible;
                continue;
            }
            REQUIRE(out.status == SolveStatus::Solved);
            CHECK_FALSE(out.partial);
            const auto got = extract_solutions(out);
            CHECK(std::set<Point>(got.begin(), got.end()) == want);
            ++solved;
        }
    }
    CHECK(solved > 40);
    CHECK(infeasible > 5);
}

TEST_CASE("contradictory linear equations give an infeasibility certificate") {
    const FieldPtr f = Field::binary(4);
    std::vector<Poly> polys{Poly::var(0).add(Poly::constant(1)), Poly::var(0).add(Poly::var(1)),
                            Poly::var(1).add(Poly::constant(2))};
    const SolveOutcome out = macaulay_solve(f, 2, polys);
    CHECK(out.status == SolveStatus::Infeasible);
    CHECK_FALSE(out.certificate.empty());
    CHECK_THROWS_AS(extract_solutions(out), Error);
}

TEST_CASE("underdetermined systems report too many solutions") {
    const FieldPtr f = Field::binary(4);
    std::vector<Poly> polys{Poly::var(0).add(Poly::var(1))};
    const SolveOutcome out = macaulay_solve(f, 6, polys);
    REQUIRE(out.status == SolveStatus::Solved);
    CHECK_THROWS_AS(extract_solutions(out, 1000), Error);
}

TEST_CASE("serial and parallel kernels agree") {
    Rng rng(52);
    const FieldPtr f = Field::binary(4);
    for (int t = 0; t < 10; ++t) {
        const int n = 5;
        Point planted(n);
        for (auto& e : planted) e = static_cast<Elem>(rng.below(16));
        std::vector<Poly> polys;
        for (int i = 0; i < 8; ++i) polys.push_back(through(*f, random_quadratic(*f, n, rng), planted));
        SolveOptions a, b;
        a.parallel = false;
        b.parallel = true;
        const SolveOutcome x = macaulay_solve(f, n, polys, a), y = macaulay_solve(f, n, polys, b);
        CHECK(x.status == y.status);
        CHECK(x.stats.max_degree == y.stats.max_degree);
        CHECK(x.stats.rows == y.stats.rows);
        if (x.status == SolveStatus::Solved) CHECK(extract_solutions(x) == extract_solutions(y));
    }
}

TEST_CASE("stats line format") {
    SolveStats s;
    s.max_degree = 3;
    s.rows = 10;
    s.cols = 20;
    CHECK(s.line(SolveStatus::Infeasible) == "SOLVE maxdeg=3 rows=10 cols=20 outcome=infeasible");
    CHECK(to_string(SolveStatus::DegreeExceeded) == "degree-exceeded");
}

TEST_CASE("DESK-B systems are solved and contain the planted solution") {
    int checked = 0;
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        const KeyPair key = keygen(preset("DESK-B"), seed);
        const BilinearSystem sys = build_system(key, 0);
        const auto planted = oracle::planted_solution(sys, key);
        if (!planted) continue;
        ++checked;
        const SolveOutcome out = macaulay_solve(sys);
        REQUIRE(out.status == SolveStatus::Solved);
        CHECK(out.stats.max_degree <= 4);
        const auto pts = extract_solutions(out);
        CHECK(std::find(pts.begin(), pts.end(), *planted) != pts.end());
    }
    CHECK(checked >= 2);
}

TEST_CASE("polynomial text format round trip") {
    Rng rng(53);
    const FieldPtr f = Field::binary(5);
    std::vector<VarIndex> vars{{VarKind::U, 1, 1}, {VarKind::U, 1, 2}, {VarKind::T, 3, 0}, {VarKind::B, 1, 0}};
    std::vector<Poly> polys;
    for (int i = 0; i < 5; ++i) polys.push_back(random_quadratic(*f, 4, rng));
    std::stringstream ss;
    write_polys(ss, vars, polys);
    CHECK(read_polys(ss, vars) == polys);
}

}  // TEST_SUITE
