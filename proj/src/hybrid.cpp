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

#include <atomic>
#include <chrono>
#include <mutex>
#include <numeric>
#include <optional>
#include <thread>

#include "dyadic/attack.hpp"
#include "dyadic/rng.hpp"

namespace dyadic {

namespace {

// Visiting order over [0, q^width): a shuffled table when it is small, a
// seeded affine bijection modulo the power of two otherwise.
class GuessOrder {
public:
    GuessOrder(std::uint64_t total, std::uint64_t seed) : total_(total) {
        Rng rng(seed);
        if (total <= (std::uint64_t{1} << 22)) {
            table_.resize(total);
            std::iota(table_.begin(), table_.end(), std::uint64_t{0});
            rng.shuffle(table_);
        } else {
            mul_ = rng.next() | 1;
            add_ = rng.next();
        }
    }

    std::uint64_t operator[](std::uint64_t i) const {
        if (!table_.empty()) return table_[i];
        return (mul_ * i + add_) & (total_ - 1);
    }

private:
    std::uint64_t total_;
    std::vector<std::uint64_t> table_;
    std::uint64_t mul_ = 1, add_ = 0;
};

struct Shared {
    std::mutex mu;
    AttackReport rep;
    std::atomic<std::uint64_t> next{0};
    std::atomic<bool> done{false};
};

}  // namespace

AttackReport hybrid_attack(const KeyPair& pub, const AttackConfig& cfg) {
    if (cfg.guess_width <= 0) return run_direct(pub, cfg);
    const ParamSet& p = pub.params;
    if (p.k0 <= p.c())
        throw Error(ErrorKind::NonexistentD, p.name + ": c = " + std::to_string(p.c()) + " >= k0, D does not exist");
    const int a0 = cfg.a0 < 0 ? default_a0(p) : cfg.a0;
    const ShapeCounts shape = count_system(p, a0);
    if (cfg.guess_width > shape.n_u) throw Error(ErrorKind::InvalidParams, "guess width exceeds the U variables");
    if (cfg.guess_width * p.s > 62) throw Error(ErrorKind::InvalidParams, "guess space does not fit in 62 bits");

    const auto t0 = std::chrono::steady_clock::now();
    const std::uint64_t c0 = cycle_count();
    const BilinearSystem sys = build_system(pub, a0);
    const Code code = public_code(pub);
    const std::uint64_t total = std::uint64_t{1} << (cfg.guess_width * p.s);
    const std::uint64_t budget = cfg.max_guesses ? std::min(cfg.max_guesses, total) : total;
    const GuessOrder order(total, cfg.seed);
    const int jobs = std::max(1, cfg.jobs);

    Shared sh;
    sh.rep.preset = p.name;
    sh.rep.a0 = a0;
    sh.rep.attempts = 1;
    sh.rep.linalg_cycles = cycle_count() - c0;
    sh.rep.linalg_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    SolveOptions so;
    so.dmax = cfg.dmax < 0 ? default_dmax(p) : cfg.dmax;
    so.mem_cap_mb = cfg.mem_cap_mb;
    so.parallel = cfg.parallel && jobs == 1;

    auto worker = [&] {
        std::vector<std::pair<int, Elem>> guess(cfg.guess_width);
        while (!sh.done.load()) {
            const std::uint64_t i = sh.next.fetch_add(1);
            if (i >= budget) return;
            std::uint64_t g = order[i];
            for (int v = 0; v < cfg.guess_width; ++v) {
                guess[v] = {v, static_cast<Elem>(g & (p.q() - 1))};
                g >>= p.s;
            }
            const BilinearSystem br = specialize(sys, guess);
            const SolveOutcome out = macaulay_solve(br, so);
            std::string label = to_string(out.status);
            const auto l0 = std::chrono::steady_clock::now();
            const std::uint64_t lc = cycle_count();
            Vec x, z;
            bool won = false;
            if (out.status == SolveStatus::Solved) {
                try {
                    for (const auto& pt : extract_solutions(out)) {
                        std::string why;
                        if (finish_key(br, pub, code, pt, x, z, why)) {
                            won = true;
                            break;
                        }
                    }
                } catch (const Error& e) {
                    if (e.kind() != ErrorKind::SolutionSpaceTooLarge) throw;
                }
                if (!won) label = "rejected";
            }
            const double ls = std::chrono::duration<double>(std::chrono::steady_clock::now() - l0).count();
            std::lock_guard lock(sh.mu);
            ++sh.rep.guesses_tried;
            ++sh.rep.histogram[label];
            sh.rep.groebner_cycles += out.stats.cycles;
            sh.rep.groebner_seconds += out.stats.seconds;
            sh.rep.linalg_cycles += cycle_count() - lc;
            sh.rep.linalg_seconds += ls;
            if (out.stats.max_degree > sh.rep.solve.max_degree) sh.rep.solve = out.stats;
            if (won && !sh.rep.success) {
                sh.rep.success = sh.rep.equivalent = true;
                sh.rep.outcome = "success";
                sh.rep.solve = out.stats;
                sh.rep.x = std::move(x);
                sh.rep.z = std::move(z);
                sh.done = true;
            }
        }
    };

    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (!sh.rep.success) {
        sh.rep.outcome = std::string(to_string(ErrorKind::ExhaustedSearchSpace));
        sh.rep.reason = std::to_string(sh.rep.guesses_tried) + " of " + std::to_string(total) + " guesses tried";
    }
    return std::move(sh.rep);
}

}  // namespace dyadic
