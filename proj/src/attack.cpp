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

#include "dyadic/attack.hpp"

#include <algorithm>
#include <chrono>
#include <set>

#include "dyadic/rng.hpp"

namespace dyadic {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// V = (T per tail block, B_1..B_gamma) spread over the tail positions.
Vec expand_v(std::span<const Elem> v, std::size_t tail, int gamma) {
    const std::size_t bs = std::size_t{1} << gamma;
    Vec e(tail * bs);
    for (std::size_t b = 0; b < tail; ++b)
        for (std::size_t p = 0; p < bs; ++p) {
            Elem s = v[b];
            for (int k = 0; k < gamma; ++k)
                if (p >> k & 1) s ^= v[tail + k];
            e[b * bs + p] = s;
        }
    return e;
}

Mat u_matrix(const BilinearSystem& sys, const std::vector<std::pair<VarIndex, Elem>>& values) {
    const int c = sys.params.c();
    const int d = sys.params.k0 - c - sys.a0;
    Mat u(sys.field, d, c);
    for (const auto& [v, e] : values)
        if (v.kind == VarKind::U) u(v.i - 1, v.j - 1) = e;
    return u;
}

Vec v_vector(const BilinearSystem& sys, const std::vector<std::pair<VarIndex, Elem>>& values) {
    const std::size_t tail = sys.params.n0 - sys.a0;
    Vec v(tail + sys.params.gamma);
    for (const auto& [x, e] : values) {
        if (x.kind == VarKind::T && x.i > sys.a0) v[x.i - 1 - sys.a0] = e;
        if (x.kind == VarKind::B) v[tail + x.i - 1] = e;
    }
    return v;
}

bool in_span(const Mat& basis, std::span<const Elem> v) {
    Mat w(basis.field(), 0, basis.cols());
    w.append_row(v);
    return row_space_contains(basis, w);
}

Vec random_codeword(const Mat& gen, Rng& rng) {
    const Field& f = gen.f();
    Vec c(gen.cols(), 0);
    for (std::size_t i = 0; i < gen.rows(); ++i) {
        const Elem a = static_cast<Elem>(rng.below(f.order()));
        if (!a) continue;
        const auto row = gen.row(i);
        for (std::size_t j = 0; j < c.size(); ++j) c[j] ^= f.mul(a, row[j]);
    }
    return c;
}

// Rows sum_{i in block} c_i x_i^j (j < r) of the parity relations, with one
// unknown multiplier per block; columns of `words` are the positions `pos`.
Mat multiplier_relations(const Field& tower, const FieldPtr& tp, const std::vector<Vec>& words,
                         std::span<const Elem> xpos, std::span<const std::size_t> blk, std::size_t nblocks,
                         std::size_t r) {
    Mat e(tp, words.size() * r, nblocks);
    for (std::size_t w = 0; w < words.size(); ++w)
        for (std::size_t i = 0; i < xpos.size(); ++i) {
            const Elem c = words[w][i];
            if (!c) continue;
            Elem pw = c;
            for (std::size_t j = 0; j < r; ++j) {
                e(w * r + j, blk[i]) ^= pw;
                pw = tower.mul(pw, xpos[i]);
            }
        }
    return e;
}

// Block multipliers for the support `xpos` with the code spanned by `gen`
// inside A_r(x, z); nullopt when no all-nonzero one exists.
std::optional<Vec> block_multipliers(const KeyPair& pub, const Mat& gen, std::span<const Elem> xpos,
                                     std::span<const std::size_t> blk, std::size_t nblocks, Rng& rng) {
    const Field& tower = *pub.tower;
    std::vector<Vec> words;
    Mat ker;
    for (int round = 0; round < 4; ++round) {
        for (int w = 0; w < 2; ++w) words.push_back(random_codeword(gen, rng));
        ker = kernel_basis(multiplier_relations(tower, pub.tower, words, xpos, blk, nblocks, pub.params.r()));
        if (ker.rows() <= 1) break;
    }
    for (std::size_t i = 0; i < ker.rows(); ++i) {
        const auto row = ker.row(i);
        if (std::none_of(row.begin(), row.end(), [](Elem e) { return e == 0; })) {
            const Elem s = tower.inv(row[0]);
            Vec y(row.size());
            for (std::size_t b = 0; b < y.size(); ++b) y[b] = tower.mul(s, row[b]);
            return y;
        }
    }
    return std::nullopt;
}

std::vector<std::size_t> block_positions(std::size_t block, std::size_t bs) {
    std::vector<std::size_t> pos(bs);
    for (std::size_t p = 0; p < bs; ++p) pos[p] = block * bs + p;
    return pos;
}

Vec recover_y_with(std::span<const Elem> x, const KeyPair& pub, const Code& code) {
    const ParamSet& p = pub.params;
    const std::size_t bs = p.block();
    if (x.size() != p.n()) throw Error(ErrorKind::InvalidParams, "support length differs from n");
    std::set<Elem> seen(x.begin(), x.end());
    if (seen.size() != x.size()) throw Error(ErrorKind::DegenerateSupport, "support has repeated entries");
    std::vector<std::size_t> blk(x.size());
    for (std::size_t i = 0; i < blk.size(); ++i) blk[i] = i / bs;
    Rng rng(0x79);
    const auto y = block_multipliers(pub, code.generator(), x, blk, p.n0, rng);
    if (!y) throw Error(ErrorKind::NoValidMultiplier, "no block-constant multiplier with nonzero entries");
    Vec z(x.size());
    for (std::size_t i = 0; i < z.size(); ++i) z[i] = (*y)[i / bs];
    return z;
}

Vec complete_support_with(const BilinearSystem& sys, const KeyPair& pub, std::span<const Elem> px, const Code& code) {
    const ParamSet& p = sys.params;
    const Field& tower = *pub.tower;
    const std::size_t bs = p.block(), a0 = sys.a0, n0 = p.n0, tail = n0 - a0, r = p.r();
    if (px.size() != tail * bs) throw Error(ErrorKind::InvalidParams, "punctured support has the wrong length");

    // x = tau (x) 1 + 1 (x) g on every working block, with g linear in b
    Vec g(bs);
    for (std::size_t q = 0; q < bs; ++q) g[q] = px[q] ^ px[0];
    for (std::size_t q = 1; q < bs; ++q)
        if (g[q] != (g[q & (q - 1)] ^ g[q & ~(q - 1)]))
            throw Error(ErrorKind::InconsistentStructure, "block differences are not an orbit");
    for (std::size_t b = 1; b < tail; ++b)
        for (std::size_t q = 0; q < bs; ++q)
            if ((px[b * bs + q] ^ px[b * bs]) != g[q])
                throw Error(ErrorKind::InconsistentStructure, "block " + std::to_string(a0 + b + 1) +
                                                                  " does not repeat the orbit of block " +
                                                                  std::to_string(a0 + 1));

    Vec x(p.n(), 0);
    std::set<Elem> used;
    for (std::size_t b = 0; b < tail; ++b)
        for (std::size_t q = 0; q < bs; ++q) {
            x[sys.block_order[a0 + b] * bs + q] = px[b * bs + q];
            used.insert(px[b * bs + q]);
        }
    if (used.size() != px.size()) throw Error(ErrorKind::DegenerateSupport, "punctured support has repeated entries");
    if (a0 == 0) return x;

    std::vector<std::size_t> working_of(n0);
    for (std::size_t b = 0; b < n0; ++b) working_of[sys.block_order[b]] = b;
    Rng rng(0x5c);

    // multipliers on the tail, from the code shortened on every missing block
    std::vector<std::size_t> missing;
    for (std::size_t b = 0; b < a0; ++b)
        for (std::size_t q : block_positions(sys.block_order[b], bs)) missing.push_back(q);
    std::sort(missing.begin(), missing.end());
    const auto tail_pos = complement_positions(p.n(), missing);
    Vec xt;
    std::vector<std::size_t> bt;
    for (std::size_t i : tail_pos) {
        xt.push_back(x[i]);
        bt.push_back(working_of[i / bs] - a0);
    }
    const Code s_all = shorten(code, missing);
    const auto zt = block_multipliers(pub, s_all.generator(), xt, bt, tail, rng);
    if (!zt) throw Error(ErrorKind::InconsistentStructure, "punctured support admits no multiplier");
    Vec zpos(p.n(), 0);  // per key position, tail only
    for (std::size_t i = 0; i < p.n(); ++i)
        if (working_of[i / bs] >= a0) zpos[i] = (*zt)[working_of[i / bs] - a0];

    for (std::size_t m = 0; m < a0; ++m) {
        const std::size_t kb = sys.block_order[m];
        std::vector<std::size_t> others;
        for (std::size_t i : missing)
            if (i / bs != kb) others.push_back(i);
        const Code cm = shorten(code, others);
        const auto cols = complement_positions(p.n(), others);
        const std::size_t first = static_cast<std::size_t>(std::find(cols.begin(), cols.end(), kb * bs) - cols.begin());

        // right-hand sides sum over the tail of c_i z_i x_i^j and the block entries
        struct Probe {
            Vec c;    // block entries
            Vec rhs;  // j < r
        };
        std::vector<Probe> probes;
        for (int tries = 0; probes.size() < 2 && tries < 20; ++tries) {
            const Vec w = random_codeword(cm.generator(), rng);
            Probe pr{Vec(w.begin() + first, w.begin() + first + bs), Vec(r, 0)};
            if (std::all_of(pr.c.begin(), pr.c.end(), [](Elem e) { return e == 0; })) continue;
            for (std::size_t t = 0; t < cols.size(); ++t) {
                const std::size_t i = cols[t];
                if (!w[t] || i / bs == kb) continue;
                Elem pw = tower.mul(w[t], zpos[i]);
                for (std::size_t j = 0; j < r; ++j) {
                    pr.rhs[j] ^= pw;
                    pw = tower.mul(pw, x[i]);
                }
            }
            probes.push_back(std::move(pr));
        }
        if (probes.size() < 2) throw Error(ErrorKind::InconsistentStructure, "shortened code misses a block");

        bool placed = false;
        Vec pw(bs);
        for (std::uint32_t tau = 0; tau < tower.order() && !placed; ++tau) {
            bool free = true;
            for (std::size_t q = 0; q < bs && free; ++q) free = !used.count(static_cast<Elem>(tau ^ g[q]));
            if (!free) continue;
            Elem zm = 0;
            bool ok = true;
            for (const Probe& pr : probes) {
                for (std::size_t q = 0; q < bs; ++q) pw[q] = pr.c[q];
                for (std::size_t j = 0; j < r && ok; ++j) {
                    Elem s = 0;
                    for (std::size_t q = 0; q < bs; ++q) {
                        s ^= pw[q];
                        pw[q] = tower.mul(pw[q], static_cast<Elem>(tau ^ g[q]));
                    }
                    // s z_m = rhs_j with z_m shared by the probes and nonzero
                    if (!zm) {
                        if (s) {
                            zm = tower.div(pr.rhs[j], s);
                            ok = zm != 0;
                        } else {
                            ok = pr.rhs[j] == 0;
                        }
                    } else {
                        ok = tower.mul(s, zm) == pr.rhs[j];
                    }
                }
                if (!ok || !zm) break;
            }
            if (!ok || !zm) continue;
            for (std::size_t q = 0; q < bs; ++q) {
                x[kb * bs + q] = static_cast<Elem>(tau ^ g[q]);
                used.insert(x[kb * bs + q]);
            }
            placed = true;
        }
        if (!placed)
            throw Error(ErrorKind::InconsistentStructure, "no value of tau fits shortened block " + std::to_string(m + 1));
    }
    return x;
}

}  // namespace

bool finish_key(const BilinearSystem& sys, const KeyPair& pub, const Code& code, std::span<const Elem> solution, Vec& x,
                Vec& z, std::string& reason) {
    try {
        const Vec px = reconstruct_x(sys, pub, solution);
        x = complete_support_with(sys, pub, px, code);
        z = recover_y_with(x, pub, code);
    } catch (const Error& e) {
        switch (e.kind()) {
            case ErrorKind::DegenerateSupport:
            case ErrorKind::InconsistentStructure:
            case ErrorKind::NoValidMultiplier:
            case ErrorKind::DivisionByZero:
                reason = e.what();
                return false;
            default: throw;
        }
    }
    if (!key_equivalent(x, z, pub)) {
        reason = "recovered key defines a different code";
        return false;
    }
    return true;
}

namespace {

struct Attempt {
    int a0_delta = 0;
    int normalization = 0;
    int order = 0;  // index into the shuffled block orders
};

constexpr Attempt kLadder[] = {{0, 0, 0},  {0, 1, 0},  {0, 0, 1}, {0, 1, 1}, {-1, 0, 0},
                               {1, 0, 0},  {0, 2, 0},  {0, 0, 2}, {-1, 1, 0}, {1, 1, 0}};

}  // namespace

int default_a0(const ParamSet& p) {
    if (p.name == "DESK-A") return 3;
    if (p.name == "DAGS-5") return 0;
    if (p.name == "DAGS-1") return 18;
    if (p.name == "DAGS-3") return 8;
    const int top = p.k0 - p.c() - 1;
    for (int a0 = top; a0 > 0; --a0)
        if (count_system(p, a0).ratio() >= 1.5) return a0;
    return 0;
}

int default_dmax(const ParamSet& p) { return p.name == "DAGS-5" ? 3 : 4; }

Vec trace_lift(const Field& tower, std::span<const Elem> tr_x, std::span<const Elem> tr_wx) {
    if (tr_x.size() != tr_wx.size()) throw Error(ErrorKind::Structural, "trace vectors differ in length");
    const Elem w = tower.omega(), wq = tower.frobenius(w);
    const Elem kappa = tower.inv(wq ^ w);
    Vec x(tr_x.size());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = tower.mul(kappa, tower.mul(wq, tr_x[i]) ^ tr_wx[i]);
    return x;
}

Vec reconstruct_x(const BilinearSystem& sys, const KeyPair& pub, std::span<const Elem> solution) {
    const ParamSet& p = sys.params;
    const Field& f = *sys.field;
    const Field& tower = *pub.tower;
    const std::size_t tail = p.n0 - sys.a0, bs = p.block();
    const int gamma = p.gamma, c = p.c();
    const std::size_t d = static_cast<std::size_t>(p.k0 - c - sys.a0);

    const auto values = complete_assignment(sys, solution);
    const Mat u = u_matrix(sys, values);
    const Vec v1 = v_vector(sys, values);
    const Mat ker = kernel_basis(v_equations(sys, u));
    Vec ones(tail + gamma, 0);
    std::fill(ones.begin(), ones.begin() + tail, 1);
    if (!in_span(ker, ones) || !in_span(ker, v1))
        throw Error(ErrorKind::InconsistentStructure, "solution does not satisfy its own V equations");
    if (ker.rows() != 3)
        throw Error(ErrorKind::DegenerateSupport, "trace space has dimension " + std::to_string(ker.rows()) + ", not 3");
    Mat base(sys.field, 0, tail + gamma);
    base.append_row(ones);
    base.append_row(v1);
    if (rank(base) != 2) throw Error(ErrorKind::DegenerateSupport, "solution V is constant");
    Vec v2;
    for (std::size_t i = 0; i < ker.rows() && v2.empty(); ++i)
        if (!in_span(base, ker.row(i))) v2.assign(ker.row(i).begin(), ker.row(i).end());

    // x' = theta (e1 + mu e2); nr(x') lies in the same space as the traces,
    // which is linear in (tr mu, nr mu).
    const Vec e1 = expand_v(v1, tail, gamma), e2 = expand_v(v2, tail, gamma);
    Mat lhs(sys.field, 0, 2), rhs(sys.field, 0, 1);
    for (std::size_t i = 0; i < d; ++i) {
        Vec w(tail);
        for (std::size_t b = 0; b < tail; ++b) {
            Elem s = sys.g_sys(sys.a0 + i, sys.a0 + b);
            for (int l = 0; l < c; ++l) s ^= f.mul(u(i, l), sys.g_sys(sys.a0 + d + l, sys.a0 + b));
            w[b] = s;
        }
        for (std::size_t row = 0; row < sys.h_rows.rows(); ++row) {
            const auto h = sys.h_rows.row(row);
            Elem a = 0, bb = 0, cc = 0;
            for (std::size_t j = 0; j < tail * bs; ++j) {
                const Elem wh = f.mul(w[j / bs], h[j]);
                if (!wh) continue;
                a ^= f.mul(wh, f.mul(e1[j], e1[j]));
                bb ^= f.mul(wh, f.mul(e1[j], e2[j]));
                cc ^= f.mul(wh, f.mul(e2[j], e2[j]));
            }
            const Elem lr[2] = {bb, cc};
            lhs.append_row(lr);
            rhs.append_row(std::span<const Elem>(&a, 1));
        }
    }
    if (rank(lhs) != 2) throw Error(ErrorKind::DegenerateSupport, "norm relations do not fix the lift");
    const auto tn = solve_right(lhs, rhs);
    if (!tn) throw Error(ErrorKind::InconsistentStructure, "norm relations are inconsistent");
    const Elem t = (*tn)(0, 0), nrm = (*tn)(1, 0);
    Elem mu = 0;
    for (std::uint32_t m = f.order(); m < tower.order() && !mu; ++m) {
        const Elem e = static_cast<Elem>(m);
        if ((tower.mul(e, e) ^ tower.mul(t, e) ^ nrm) == 0) mu = e;
    }
    if (!mu) throw Error(ErrorKind::DegenerateSupport, "norm relations give a root in GF(q)");

    const Elem beta = tower.inv(tower.trace(tower.inv(mu)));
    const Elem theta = tower.div(beta, mu);
    const Elem w = tower.omega();
    const Elem c1 = tower.trace(tower.mul(w, theta)), c2 = tower.trace(tower.mul(w, beta));
    Vec trw(e1.size());
    for (std::size_t j = 0; j < trw.size(); ++j) trw[j] = f.mul(c1, e1[j]) ^ f.mul(c2, e2[j]);
    Vec x = trace_lift(tower, e1, trw);
    std::set<Elem> seen(x.begin(), x.end());
    if (seen.size() != x.size()) throw Error(ErrorKind::DegenerateSupport, "lifted support has repeated entries");
    return x;
}

Vec complete_support(const BilinearSystem& sys, const KeyPair& pub, std::span<const Elem> px) {
    return complete_support_with(sys, pub, px, public_code(pub));
}

Vec recover_y(std::span<const Elem> x, const KeyPair& pub) { return recover_y_with(x, pub, public_code(pub)); }

bool finish_key(const BilinearSystem& sys, const KeyPair& pub, std::span<const Elem> solution, Vec& x, Vec& z,
                std::string& reason) {
    return finish_key(sys, pub, public_code(pub), solution, x, z, reason);
}

AttackReport run_direct(const KeyPair& pub, const AttackConfig& cfg) {
    const ParamSet& p = pub.params;
    if (p.k0 <= p.c())
        throw Error(ErrorKind::NonexistentD, p.name + ": c = " + std::to_string(p.c()) + " >= k0, D does not exist");
    const int a0 = cfg.a0 < 0 ? default_a0(p) : cfg.a0;
    count_system(p, a0);  // range check

    AttackReport rep;
    rep.preset = p.name;
    rep.a0 = a0;
    const Code code = public_code(pub);
    SolveOptions so;
    so.dmax = cfg.dmax < 0 ? default_dmax(p) : cfg.dmax;
    so.mem_cap_mb = cfg.mem_cap_mb;
    so.parallel = cfg.parallel;

    const int limit = std::min<int>(cfg.max_attempts, static_cast<int>(std::size(kLadder)));
    for (int k = 0; k < limit; ++k) {
        const Attempt& at = kLadder[k];
        BuildOptions bo;
        bo.normalization = at.normalization;
        bo.order_seed = at.order == 0 ? 0 : cfg.seed * 7919 + static_cast<std::uint64_t>(at.order) * 1000;
        const int a = a0 + at.a0_delta;
        if (a < 0 || a > p.k0 - p.c() - 1 || at.normalization + 2 > p.gamma) continue;

        ++rep.attempts;
        rep.a0 = a;
        rep.normalization = at.normalization;
        rep.order_seed = bo.order_seed;
        auto t0 = Clock::now();
        auto c0 = cycle_count();
        BilinearSystem sys;
        try {
            sys = build_system(pub, a, bo);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::SystematicFormFailure) throw;
            rep.outcome = std::string(to_string(e.kind()));
            rep.reason = e.what();
            rep.linalg_seconds += since(t0);
            rep.linalg_cycles += cycle_count() - c0;
            continue;
        }
        rep.linalg_seconds += since(t0);
        rep.linalg_cycles += cycle_count() - c0;

        const SolveOutcome out = macaulay_solve(sys, so);
        rep.solve = out.stats;
        rep.groebner_seconds += out.stats.seconds;
        rep.groebner_cycles += out.stats.cycles;
        rep.outcome = to_string(out.status);
        rep.reason = out.certificate;
        if (out.status == SolveStatus::ResourceExceeded) return rep;
        if (out.status != SolveStatus::Solved) continue;

        t0 = Clock::now();
        c0 = cycle_count();
        std::vector<std::vector<Elem>> points;
        try {
            points = extract_solutions(out);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::SolutionSpaceTooLarge) throw;
            rep.outcome = std::string(to_string(e.kind()));
            rep.reason = e.what();
        }
        for (const auto& pt : points) {
            Vec x, z;
            std::string why;
            if (finish_key(sys, pub, code, pt, x, z, why)) {
                rep.success = rep.equivalent = true;
                rep.outcome = "success";
                rep.reason.clear();
                rep.x = std::move(x);
                rep.z = std::move(z);
                break;
            }
            rep.outcome = "ReconstructionFailed";
            rep.reason = why;
        }
        rep.linalg_seconds += since(t0);
        rep.linalg_cycles += cycle_count() - c0;
        if (rep.success) return rep;
    }
    return rep;
}

}  // namespace dyadic
