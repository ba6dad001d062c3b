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

#include <sstream>

#include "dyadic/attack.hpp"
#include "dyadic/rng.hpp"
#include "oracle.hpp"

using namespace dyadic;

namespace {

// Alternant codes are unchanged by affine maps of the support and by Frobenius.
bool same_support_class(const Field& t, const Vec& want, const Vec& got) {
    if (oracle::affinely_related(t, want, got)) return true;
    Vec frob(want.size());
    for (std::size_t i = 0; i < want.size(); ++i) frob[i] = t.frobenius(want[i]);
    return oracle::affinely_related(t, frob, got);
}

Vec tail_of(const Vec& v, std::size_t from) { return Vec(v.begin() + static_cast<std::ptrdiff_t>(from), v.end()); }

struct Planted {
    KeyPair key;
    BilinearSystem sys;
    std::vector<Elem> solution;
};

Planted planted_instance(const char* name, int a0, std::uint64_t first_seed) {
    for (std::uint64_t seed = first_seed; seed < first_seed + 40; ++seed) {
        KeyPair key = keygen(preset(name), seed);
        BilinearSystem sys = build_system(key, a0);
        if (auto sol = oracle::planted_solution(sys, key)) return {std::move(key), std::move(sys), std::move(*sol)};
    }
    throw std::runtime_error("no key with a planted solution");
}

}  // namespace

TEST_SUITE("attack") {

TEST_CASE("trace_lift inverts the two traces") {
    Rng rng(61);
    for (int s = 1; s <= 6; ++s) {
        const FieldPtr t = Field::quadratic(Field::binary(s));
        Vec x(50), tr(50), trw(50);
        for (std::size_t i = 0; i < x.size(); ++i) {
            x[i] = static_cast<Elem>(rng.below(t->order()));
            tr[i] = t->trace(x[i]);
            trw[i] = t->trace(t->mul(t->omega(), x[i]));
        }
        CHECK(trace_lift(*t, tr, trw) == x);
    }
    const FieldPtr t = Field::quadratic(Field::binary(3));
    CHECK_THROWS_AS(trace_lift(*t, Vec{1, 2}, Vec{1}), Error);
}

TEST_CASE("reconstruction from the planted solution recovers the working support") {
    for (const char* name : {"DESK-A", "DESK-B"}) {
        const int a0 = name[5] == 'A' ? 3 : 0;
        const Planted pl = planted_instance(name, a0, 1);
        const std::size_t bs = pl.key.params.block();
        const Vec px = reconstruct_x(pl.sys, pl.key, pl.solution);
        const Vec want = tail_of(oracle::working_support(pl.sys, pl.key).x, a0 * bs);
        CAPTURE(name);
        CHECK(same_support_class(*pl.key.tower, want, px));
    }
}

TEST_CASE("complete_support fills in shortened blocks") {
    const Planted pl = planted_instance("DESK-A", 2, 5);
    const std::size_t bs = pl.key.params.block();
    const Vec px = tail_of(oracle::working_support(pl.sys, pl.key).x, 2 * bs);
    const Vec x = complete_support(pl.sys, pl.key, px);
    CHECK(x == pl.key.secret->x);
    const Vec z = recover_y(x, pl.key);
    CHECK(key_equivalent(x, z, pl.key));
}

TEST_CASE("recover_y returns the secret multipliers up to a scalar") {
    for (std::uint64_t seed : {1, 2, 3}) {
        const KeyPair key = keygen(preset("DESK-A"), seed);
        const Vec z = recover_y(key.secret->x, key);
        const Field& t = *key.tower;
        const Elem ratio = t.div(z[0], key.secret->z[0]);
        for (std::size_t i = 0; i < z.size(); ++i) CHECK(z[i] == t.mul(ratio, key.secret->z[i]));
    }
}

TEST_CASE("reconstruction contingencies") {
    const KeyPair key = keygen(preset("DESK-A"), 7);
    const std::size_t bs = key.params.block();
    auto kind_of = [](auto&& fn) {
        try {
            fn();
        } catch (const Error& e) {
            return e.kind();
        }
        return ErrorKind::Structural;
    };
    Vec swapped = key.secret->x;
    std::swap(swapped[1], swapped[bs + 2]);
    CHECK(kind_of([&] { recover_y(swapped, key); }) == ErrorKind::NoValidMultiplier);
    Vec repeated = key.secret->x;
    repeated[1] = repeated[0];
    CHECK(kind_of([&] { recover_y(repeated, key); }) == ErrorKind::DegenerateSupport);

    const BilinearSystem sys = build_system(key, 2);
    Vec px = tail_of(oracle::working_support(sys, key).x, 2 * bs);
    for (std::size_t p = 1; p < bs; ++p) px[bs + p] = px[bs];
    const ErrorKind k = kind_of([&] { complete_support(sys, key, px); });
    CHECK((k == ErrorKind::DegenerateSupport || k == ErrorKind::InconsistentStructure));

    // a solution perturbed off the variety is refused, not lifted
    const Planted pl = planted_instance("DESK-B", 0, 1);
    Vec x, z;
    std::string why;
    auto bad = pl.solution;
    bad.back() ^= 1;
    CHECK_FALSE(finish_key(pl.sys, pl.key, bad, x, z, why));
    CHECK_FALSE(why.empty());
    CHECK(finish_key(pl.sys, pl.key, pl.solution, x, z, why));
}

TEST_CASE("default shortening") {
    CHECK(default_a0(preset("DESK-A")) == 3);
    CHECK(default_a0(preset("DAGS-5")) == 0);
    CHECK(default_dmax(preset("DAGS-5")) == 3);
    CHECK(default_dmax(preset("DESK-A")) == 4);
    const ParamSet b = preset("DESK-B");
    const int a0 = default_a0(b);
    CHECK(a0 >= 0);
    CHECK(a0 < b.k0 - b.c());
}

TEST_CASE("report text round trip") {
    AttackReport r;
    r.preset = "DESK-B";
    r.success = r.equivalent = true;
    r.outcome = "success";
    r.a0 = 1;
    r.normalization = 1;
    r.order_seed = 42;
    r.attempts = 2;
    r.solve.max_degree = 4;
    r.solve.rows = 100;
    r.solve.cols = 200;
    r.groebner_seconds = 1.5;
    r.guesses_tried = 9;
    r.histogram["infeasible"] = 8;
    r.histogram["solved"] = 1;
    r.x = {1, 2, 0x3f};
    r.z = {5, 5, 5};
    std::stringstream ss;
    ss << r;
    const AttackReport back = parse_report(ss);
    CHECK(back.to_text() == r.to_text());
    CHECK(back.success);
    CHECK(back.histogram.at("infeasible") == 8);
    std::istringstream junk("colour=blue\n");
    CHECK_THROWS_AS(parse_report(junk), Error);
}

TEST_CASE("direct attack on DESK-B recovers an equivalent key for several seeds and gauges") {
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        const KeyPair key = keygen(preset("DESK-B"), seed);
        AttackConfig cfg;
        cfg.seed = seed;
        const AttackReport r = run_direct(key, cfg);
        CAPTURE(seed);
        REQUIRE(r.success);
        CHECK(key_equivalent(r.x, r.z, key));
        CHECK(same_support_class(*key.tower, key.secret->x, r.x));
        CHECK(r.solve.max_degree <= 4);

        KeyPair pub = key;
        pub.secret.reset();
        CHECK(run_direct(pub, cfg).success);
    }
}

TEST_CASE("hybrid with nothing guessed is the direct attack") {
    const KeyPair key = keygen(preset("DESK-B"), 3);
    AttackConfig cfg;
    cfg.seed = 3;
    const AttackReport d = run_direct(key, cfg);
    cfg.hybrid = true;
    const AttackReport h = hybrid_attack(key, cfg);
    CHECK(h.success == d.success);
    CHECK(h.x == d.x);
}

TEST_CASE("only the true guess of a U row survives") {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        const Planted pl = planted_instance("DESK-B", 0, seed * 10);
        const Field& f = *pl.sys.field;
        const int c = pl.key.params.c();
        int survivors = 0;
        for (std::uint32_t g = 0; g < std::uint32_t{1} << (pl.key.params.s * c); ++g) {
            std::vector<std::pair<int, Elem>> fix;
            for (int j = 0; j < c; ++j) fix.push_back({j, static_cast<Elem>(g >> (j * pl.key.params.s) & (f.order() - 1))});
            const bool truth = std::all_of(fix.begin(), fix.end(), [&](auto& a) { return pl.solution[a.first] == a.second; });
            const SolveOutcome out = macaulay_solve(specialize(pl.sys, fix));
            if (truth) {
                CHECK(out.status == SolveStatus::Solved);
            } else {
                CAPTURE(g);
                CHECK(out.status == SolveStatus::Infeasible);
            }
            survivors += out.status != SolveStatus::Infeasible;
        }
        CHECK(survivors == 1);
    }
}

TEST_CASE("hybrid attack histogram") {
    const KeyPair key = keygen(preset("DESK-B"), 7);
    AttackConfig cfg;
    cfg.seed = 7;
    cfg.hybrid = true;
    cfg.guess_width = 2;
    const AttackReport r = hybrid_attack(key, cfg);
    REQUIRE(r.success);
    CHECK(key_equivalent(r.x, r.z, key));
    std::uint64_t total = 0;
    for (const auto& [label, n] : r.histogram) total += n;
    CHECK(total == r.guesses_tried);
    CHECK(r.histogram.count("solved") == 1);
}

}  // TEST_SUITE
