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

#include <chrono>

#include "dyadic/system.hpp"
#include "oracle.hpp"

using namespace dyadic;

namespace {

bool satisfies(const BilinearSystem& sys, const std::vector<Elem>& point) {
    for (const Poly& p : sys.polys)
        if (p.eval(*sys.field, point) != 0) return false;
    return true;
}

}  // namespace

TEST_SUITE("system") {

TEST_CASE("closed-form counts for the DAGS presets") {
    struct Row {
        const char* name;
        int a0, vars, quads;
    };
    const Row rows[] = {{"DAGS-1", 0, 119, 550},  {"DAGS-3", 0, 76, 252},   {"DAGS-5", 0, 45, 189},
                        {"DAGS-1", 20, 39, 50},   {"DAGS-1", 19, 43, 75},   {"DAGS-1", 18, 47, 100},
                        {"DAGS-1", 17, 51, 125},  {"DAGS-1.1", 0, 179, 450}, {"DAGS-5.1", 0, 232, 252}};
    for (const Row& r : rows) {
        const ShapeCounts s = count_system(preset(r.name), r.a0);
        CAPTURE(r.name);
        CAPTURE(r.a0);
        CHECK(s.vars() == r.vars);
        CHECK(s.quads == r.quads);
    }
    CHECK(count_system(preset("DAGS-1.1"), 0).ratio() == doctest::Approx(2.5).epsilon(0.01));
}

TEST_CASE("count errors") {
    try {
        count_system(preset("DAGS-3.1"), 0);
        FAIL("expected NonexistentD");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NonexistentD);
    }
    const ParamSet p = preset("DESK-A");
    for (int a0 : {-1, p.k0 - p.c() + 1}) {
        try {
            count_system(p, a0);
            FAIL("expected InvalidParams");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::InvalidParams);
        }
    }
}

TEST_CASE("orbit vector") {
    const auto o = orbit_vector(3);
    REQUIRE(o.size() == 8);
    for (std::uint32_t p = 0; p < 8; ++p) CHECK(o[p] == p);
    CHECK(orbit_entry(0) == "0");
    CHECK(orbit_entry(5) == "B1+B3");
    CHECK(orbit_entry(6) == "B2+B3");
}

TEST_CASE("variable names") {
    for (const char* n : {"U_1_2", "T_17", "B_3"}) CHECK(parse_var(n).name() == n);
    CHECK_THROWS_AS(parse_var("X_1"), Error);
}

TEST_CASE("built systems have the counted shape") {
    for (const char* name : {"DESK-A", "DESK-B", "DESK-C"}) {
        const ParamSet p = preset(name);
        const KeyPair key = keygen(p, 21);
        for (int a0 = 0; a0 < p.k0 - p.c(); ++a0) {
            CAPTURE(name);
            CAPTURE(a0);
            const BilinearSystem sys = build_system(key, a0);
            const ShapeCounts want = count_system(p, a0);
            CHECK(sys.counts == want);
            CHECK(static_cast<int>(sys.vars.size()) == want.vars());
            CHECK(static_cast<int>(sys.polys.size()) == want.quads);
            for (const Poly& q : sys.polys) CHECK(q.degree() <= 2);
        }
    }
}

TEST_CASE("DAGS-5 system builds quickly with the counted shape") {
    const ParamSet p = preset("DAGS-5");
    const auto t0 = std::chrono::steady_clock::now();
    const KeyPair key = keygen(p, 1);
    const BilinearSystem sys = build_system(key, 0);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    CHECK(sys.counts == count_system(p, 0));
    CHECK(secs < 5.0);
}

TEST_CASE("planted solution satisfies the equations") {
    int checked = 0;
    for (const char* name : {"DESK-A", "DESK-B"}) {
        const ParamSet p = preset(name);
        for (std::uint64_t seed = 1; seed <= 6; ++seed) {
            const KeyPair key = keygen(p, seed);
            for (int norm = 0; norm < 2; ++norm) {
                BuildOptions opt;
                opt.normalization = norm;
                const BilinearSystem sys = build_system(key, 0, opt);
                const auto sol = oracle::planted_solution(sys, key);
                if (!sol) continue;
                ++checked;
                CHECK(satisfies(sys, *sol));
                // eliminated T variables agree with their defining polynomials
                const auto full = complete_assignment(sys, *sol);
                const auto v = oracle::planted_v(sys, key);
                for (const auto& [var, val] : full)
                    if (var.kind == VarKind::T) CHECK(val == v->t[var.i - 1]);
                // a perturbed point fails
                auto bad = *sol;
                bad[0] ^= 1;
                CHECK_FALSE(satisfies(sys, bad));
            }
        }
    }
    CHECK(checked >= 6);
}

TEST_CASE("specialization keeps the planted solution") {
    for (std::uint64_t s = 2; s < 20; ++s) {
        const KeyPair k = keygen(preset("DESK-A"), s);
        const BilinearSystem sys = build_system(k, 1);
        const auto sol = oracle::planted_solution(sys, k);
        if (!sol) continue;
        std::vector<std::pair<int, Elem>> fix{{0, (*sol)[0]}, {3, (*sol)[3]}};
        const BilinearSystem sub = specialize(sys, fix);
        CHECK(sub.vars.size() == sys.vars.size() - 2);
        std::vector<Elem> rest;
        for (std::size_t i = 0; i < sys.vars.size(); ++i)
            if (i != 0 && i != 3) rest.push_back((*sol)[i]);
        CHECK(satisfies(sub, rest));
        fix[0].second ^= 1;
        const BilinearSystem wrong = specialize(sys, fix);
        CHECK_FALSE(satisfies(wrong, rest));
        return;
    }
    FAIL("no key admitted a planted solution");
}

TEST_CASE("V equations vanish on the planted trace vector and on the all-ones T") {
    int checked = 0;
    for (std::uint64_t seed = 1; seed <= 8 && checked < 4; ++seed) {
        const KeyPair key = keygen(preset("DESK-A"), seed);
        const BilinearSystem sys = build_system(key, 2);
        const auto u = oracle::planted_u(sys, key);
        const auto v = oracle::planted_v(sys, key);
        if (!u || !v) continue;
        ++checked;
        const Mat eq = v_equations(sys, *u);
        const ParamSet& p = key.params;
        const std::size_t tail = p.n0 - sys.a0;
        std::vector<Elem> planted, ones(tail + p.gamma, 0);
        for (std::size_t b = sys.a0; b < static_cast<std::size_t>(p.n0); ++b) planted.push_back(v->t[b]);
        for (Elem e : v->b) planted.push_back(e);
        for (std::size_t b = 0; b < tail; ++b) ones[b] = 1;
        Mat both = Mat::from_rows(sys.field, {planted, ones});
        CHECK((eq * both.transpose()).is_zero());
        CHECK(rank(kernel_basis(eq)) == 3);
    }
    CHECK(checked > 0);
}

}  // TEST_SUITE
