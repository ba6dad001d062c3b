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

// Acceptance runner: one PASS/FAIL line per criterion. Criteria that attack
// full-size DAGS keys only run with --gated.

#include "CLI11.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

#include "dyadic/attack.hpp"
#include "dyadic/estimate.hpp"
#include "dyadic/rng.hpp"
#include "dyadic/selftest.hpp"
#include "oracle.hpp"

using namespace dyadic;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Verdict {
    bool ok = true;
    std::ostringstream detail;
    void fail(const std::string& why) {
        if (!ok) detail << "; ";
        else detail.str("");
        ok = false;
        detail << why;
    }
};

Verdict counts() {
    Verdict v;
    struct Row {
        const char* name;
        int a0, vars, quads;
    };
    const Row rows[] = {{"DAGS-1", 0, 119, 550},  {"DAGS-3", 0, 76, 252},   {"DAGS-5", 0, 45, 189},
                        {"DAGS-1", 20, 39, 50},   {"DAGS-1", 19, 43, 75},   {"DAGS-1", 18, 47, 100},
                        {"DAGS-1", 17, 51, 125},  {"DAGS-1.1", 0, 179, 450}, {"DAGS-5.1", 0, 232, 252}};
    const auto t0 = Clock::now();
    for (const Row& r : rows) {
        const ShapeCounts s = count_system(preset(r.name), r.a0);
        if (s.vars() != r.vars || s.quads != r.quads)
            v.fail(std::string(r.name) + " a0=" + std::to_string(r.a0) + " gives " + std::to_string(s.vars()) + "/" +
                   std::to_string(s.quads));
    }
    const double ratio = count_system(preset("DAGS-1.1"), 0).ratio();
    if (std::round(ratio * 10) != 25)  // quoted to one decimal
        v.fail("DAGS-1.1 ratio " + std::to_string(ratio));
    const double count_secs = since(t0);
    if (count_secs >= 1.0) v.fail("counting took " + std::to_string(count_secs) + " s");

    double worst = 0;
    for (const char* name : {"DAGS-1", "DAGS-3", "DAGS-5", "DAGS-1.1", "DAGS-5.1"}) {
        const auto t1 = Clock::now();
        const KeyPair key = keygen(preset(name), 1);
        const BilinearSystem sys = build_system(key, 0);
        worst = std::max(worst, since(t1));
        if (!(sys.counts == count_system(key.params, 0)) || static_cast<int>(sys.vars.size()) != sys.counts.vars() ||
            static_cast<int>(sys.polys.size()) != sys.counts.quads)
            v.fail(std::string(name) + ": built system disagrees with the counts");
    }
    try {
        count_system(preset("DAGS-3.1"), 0);
        v.fail("DAGS-3.1 did not report NonexistentD");
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::NonexistentD) v.fail("DAGS-3.1 raised " + std::string(to_string(e.kind())));
    }
    if (v.ok)
        v.detail << "all counts exact, counted in " << count_secs << " s, slowest keygen+build " << worst << " s";
    return v;
}

Verdict structural() {
    Verdict v;
    const auto t0 = Clock::now();
    const auto checks = selftest::run_all();
    const double secs = since(t0);
    for (const auto& c : checks)
        if (!c.ok) v.fail(c.name + ": " + c.detail);
    if (secs >= 60) v.fail("suite took " + std::to_string(secs) + " s");
    if (v.ok) v.detail << checks.size() << " checks in " << secs << " s";
    return v;
}

Verdict desk_direct(int seeds) {
    Verdict v;
    int good = 0, deg = 0;
    double slowest = 0;
    std::string failures;
    for (int seed = 1; seed <= seeds; ++seed) {
        const KeyPair key = keygen(preset("DESK-A"), static_cast<std::uint64_t>(seed));
        AttackConfig cfg;
        cfg.seed = static_cast<std::uint64_t>(seed);
        const auto t0 = Clock::now();
        const AttackReport r = run_direct(key, cfg);
        const double secs = since(t0);
        slowest = std::max(slowest, secs);
        deg = std::max(deg, r.solve.max_degree);
        const bool ok = r.success && key_equivalent(r.x, r.z, key) && secs <= 300 && r.solve.max_degree <= 4;
        good += ok;
        if (!ok) failures += " " + std::to_string(seed) + "(" + r.outcome + ")";
        std::cerr << "seed " << seed << ' ' << r.outcome << " maxdeg=" << r.solve.max_degree << ' ' << secs << " s\n";
    }
    const int need = (seeds * 95 + 99) / 100;
    if (good < need) v.fail(std::to_string(good) + "/" + std::to_string(seeds) + " keys recovered, failed:" + failures);
    if (v.ok) v.detail << good << "/" << seeds << " keys recovered, slowest " << slowest << " s, max degree " << deg;
    return v;
}

Verdict dags5() {
    Verdict v;
    const KeyPair key = keygen(preset("DAGS-5"), 1);
    AttackConfig cfg;
    cfg.seed = 1;
    const auto t0 = Clock::now();
    const AttackReport r = run_direct(key, cfg);
    if (!r.success || !key_equivalent(r.x, r.z, key)) v.fail("attack ended with " + r.outcome + " " + r.reason);
    if (r.solve.max_degree > 3) v.fail("max degree " + std::to_string(r.solve.max_degree));
    if (v.ok) v.detail << "key recovered at max degree " << r.solve.max_degree << " in " << since(t0) << " s";
    return v;
}

// Every value of the first U row, solved directly: returns the number of
// branches that were not Infeasible, and whether the true one solved.
struct RowScan {
    std::uint64_t branches = 0, survivors = 0;
    bool truth_solved = false;
};

RowScan scan_row(const BilinearSystem& sys, const std::vector<Elem>& planted) {
    const ParamSet& p = sys.params;
    const int c = p.c();
    RowScan scan;
    const std::uint64_t total = std::uint64_t{1} << (p.s * c);
    std::vector<std::pair<int, Elem>> fix(c);
    for (std::uint64_t g = 0; g < total; ++g) {
        bool truth = true;
        for (int j = 0; j < c; ++j) {
            fix[j] = {j, static_cast<Elem>(g >> (j * p.s) & (p.q() - 1))};
            truth = truth && planted[j] == fix[j].second;
        }
        const SolveOutcome out = macaulay_solve(specialize(sys, fix));
        ++scan.branches;
        if (out.status != SolveStatus::Infeasible) ++scan.survivors;
        if (truth) scan.truth_solved = out.status == SolveStatus::Solved;
    }
    return scan;
}

Verdict hybrid() {
    Verdict v;
    int scanned = 0;
    std::uint64_t branches = 0;
    struct Case {
        const char* name;
        int a0, keys;
    };
    for (const Case& cs : {Case{"DESK-B", 0, 20}, Case{"DESK-A", 3, 1}}) {
        int done = 0;
        for (std::uint64_t seed = 1; done < cs.keys && seed < 1000; ++seed) {
            const KeyPair key = keygen(preset(cs.name), seed);
            const BilinearSystem sys = build_system(key, cs.a0);
            const auto planted = oracle::planted_solution(sys, key);
            if (!planted) continue;
            ++done;
            const RowScan s = scan_row(sys, *planted);
            branches += s.branches;
            if (!s.truth_solved) v.fail(std::string(cs.name) + " seed " + std::to_string(seed) + ": true guess not solved");
            if (s.survivors != 1)
                v.fail(std::string(cs.name) + " seed " + std::to_string(seed) + ": " + std::to_string(s.survivors) +
                       " guesses not infeasible");
        }
        scanned += done;
    }

    // the attack itself: every branch before the winner must be pruned
    const KeyPair key = keygen(preset("DESK-B"), 7);
    AttackConfig cfg;
    cfg.seed = 7;
    cfg.hybrid = true;
    cfg.guess_width = key.params.c();
    const AttackReport r = hybrid_attack(key, cfg);
    if (!r.success || !key_equivalent(r.x, r.z, key)) v.fail("DESK-B hybrid attack ended with " + r.outcome);
    const auto inf = r.histogram.count("infeasible") ? r.histogram.at("infeasible") : 0;
    if (inf + 1 != r.guesses_tried) v.fail("hybrid attack saw branches that were neither infeasible nor the key");

    const ParamSet p = preset("DAGS-1.1");
    const double lin = estimate_linear_only(p).log2_ops;
    const double hyb = estimate_hybrid(p, 8, 35, 36).log2_ops;
    if (std::abs(lin - 111.39) > 0.01) v.fail("linear-only estimate " + std::to_string(lin));
    if (std::abs(hyb - 83.0) > 0.01) v.fail("hybrid estimate " + std::to_string(hyb));
    if (v.ok)
        v.detail << scanned << " keys, " << branches << " branches: only the true row survives; estimates 2^" << lin
                 << " and 2^" << hyb;
    return v;
}

Verdict systematic_rate() {
    Verdict v;
    const FieldPtr f = Field::binary(5);
    const std::size_t k = 8, n = 16;
    const int trials = 10000;
    Rng rng(2026);
    int ok = 0;
    for (int t = 0; t < trials; ++t) {
        Mat m(f, k, n);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < n; ++j) m(i, j) = static_cast<Elem>(rng.below(32));
        try {
            ok += systematic_form(m).ok;
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::RankDeficient) throw;
        }
    }
    double want = 1;
    for (std::size_t i = 1; i <= k; ++i) want *= 1 - std::pow(32.0, -static_cast<double>(i));
    const double got = static_cast<double>(ok) / trials;
    if (std::abs(got - want) > 0.02) v.fail("rate " + std::to_string(got) + " vs " + std::to_string(want));
    if (v.ok) v.detail << "rate " << got << " vs " << want << " over " << trials << " trials";
    return v;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dyadic acceptance criteria"};
    std::vector<int> only;
    bool gated = false;
    int desk_seeds = 100;
    app.add_option("--only", only, "criteria to run (default: all)")->check(CLI::Range(1, 6));
    app.add_flag("--gated", gated, "also run the criteria that attack full-size DAGS keys");
    app.add_option("--desk-seeds", desk_seeds, "DESK-A keys for criterion 3")->check(CLI::PositiveNumber);
    CLI11_PARSE(app, argc, argv);

    const std::vector<std::pair<bool, std::function<Verdict()>>> criteria{
        {false, counts},   {false, structural}, {false, [&] { return desk_direct(desk_seeds); }},
        {true, dags5},     {false, hybrid},     {false, systematic_rate},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int n = static_cast<int>(i) + 1;
        if (!only.empty() && std::find(only.begin(), only.end(), n) == only.end()) continue;
        if (criteria[i].first && !gated) {
            std::cout << "SKIP criterion " << n << ": needs --gated" << std::endl;
            continue;
        }
        Verdict v;
        try {
            v = criteria[i].second();
        } catch (const std::exception& e) {
            v.fail(std::string("exception: ") + e.what());
        }
        std::cout << (v.ok ? "PASS" : "FAIL") << " criterion " << n << ": " << v.detail.str() << std::endl;
        failed += !v.ok;
    }
    return failed ? 1 : 0;
}
