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

#include "dyadic/system.hpp"

#include <algorithm>
#include <numeric>

#include "dyadic/rng.hpp"

namespace dyadic {

std::vector<std::uint32_t> orbit_vector(int gamma) {
    if (gamma < 0 || gamma > 16) throw Error(ErrorKind::InvalidParams, "orbit size out of range");
    // orbit(B_1..B_i) = orbit(B_1..B_{i-1}) || (B_i + orbit(B_1..B_{i-1}))
    std::vector<std::uint32_t> orbit{0};
    for (int i = 0; i < gamma; ++i) {
        const std::size_t half = orbit.size();
        for (std::size_t p = 0; p < half; ++p) orbit.push_back(orbit[p] | (1u << i));
    }
    return orbit;
}

std::string orbit_entry(std::uint32_t mask) {
    if (mask == 0) return "0";
    std::string s;
    for (int k = 0; k < 32; ++k)
        if (mask >> k & 1) s += (s.empty() ? "B" : "+B") + std::to_string(k + 1);
    return s;
}

ShapeCounts count_system(const ParamSet& p, int a0) {
    p.validate();
    const int c = p.c();
    if (p.k0 <= c) throw Error(ErrorKind::NonexistentD, p.name + ": c = " + std::to_string(c) + " >= k0, D does not exist");
    if (a0 < 0 || a0 > p.k0 - c) throw Error(ErrorKind::InvalidParams, "a0 must lie in [0, k0 - c]");
    ShapeCounts s;
    s.c = c;
    s.dim_d = p.k0 - c - a0;
    s.n_u = s.dim_d * c;
    s.n_t = p.n0 - p.k0 + c - 1;
    s.n_b = p.gamma - 2;
    s.quads = s.dim_d * (p.n0 - p.k0 - 1);
    s.eliminations = s.dim_d;
    return s;
}

int BilinearSystem::var_id(const VarIndex& v) const {
    const auto it = std::find(vars.begin(), vars.end(), v);
    return it == vars.end() ? -1 : static_cast<int>(it - vars.begin());
}

namespace {

std::vector<std::size_t> block_order_for(std::size_t n0, std::uint64_t index) {
    std::vector<std::size_t> order(n0);
    std::iota(order.begin(), order.end(), std::size_t{0});
    if (index != 0) {
        Rng rng(index);
        rng.shuffle(order);
    }
    return order;
}

bool leading_identity(const Rref& r, std::size_t count) {
    if (r.rank() != count) return false;
    for (std::size_t i = 0; i < count; ++i)
        if (r.pivots[i] != i) return false;
    return true;
}

// Sums of a parity row over each block, and over the positions whose index has
// bit k set: the coefficients of T_b and B_{k+1} in <w * V, h>.
struct RowSums {
    std::vector<Elem> s;     // per block
    std::vector<Elem> beta;  // per block, gamma entries each
};

RowSums row_sums(std::span<const Elem> h, std::size_t blocks, int gamma) {
    const std::size_t bs = std::size_t{1} << gamma;
    RowSums rs{std::vector<Elem>(blocks), std::vector<Elem>(blocks * gamma)};
    for (std::size_t b = 0; b < blocks; ++b)
        for (std::size_t p = 0; p < bs; ++p) {
            const Elem v = h[b * bs + p];
            rs.s[b] ^= v;
            for (int k = 0; k < gamma; ++k)
                if (p >> k & 1) rs.beta[b * gamma + k] ^= v;
        }
    return rs;
}

Poly remap(const Poly& p, std::span<const int> new_id) {
    std::vector<Term> out;
    out.reserve(p.terms().size());
    int ids[Monomial::kMaxDegree];
    for (const Term& t : p.terms()) {
        for (int s = 0; s < t.mono.degree(); ++s) ids[s] = new_id[t.mono.id(s)];
        out.push_back({Monomial::from_ids(std::span<const int>(ids, t.mono.degree())), t.coeff});
    }
    return Poly::from_terms(std::move(out));
}

}  // namespace

BilinearSystem build_system(const KeyPair& pub, int a0, const BuildOptions& opt) {
    const ParamSet& p = pub.params;
    const ShapeCounts closed = count_system(p, a0);
    if (a0 > p.k0 - p.c() - 1) throw Error(ErrorKind::InvalidParams, "a0 must leave the shortened D nonzero");
    if (p.gamma < 2) throw Error(ErrorKind::InvalidParams, "the normalization needs gamma >= 2");
    const int level = opt.normalization;
    if (level < 0 || level + 2 > p.gamma)
        throw Error(ErrorKind::InvalidParams, "normalization level " + std::to_string(level) + " needs B_" +
                                                  std::to_string(level + 2));
    const int d = closed.dim_d, c = closed.c, gamma = p.gamma;
    const std::size_t n0 = p.n0, k0 = p.k0, m = n0 - k0, bs = p.block();
    if (static_cast<std::size_t>(d) > m)
        throw Error(ErrorKind::Structural, "dim D exceeds the number of parity blocks; no T elimination");

    const FieldPtr& fq = pub.base();
    const Field& f = *fq;
    const Mat g_comp = compressed_invariant(public_code(pub), bs);
    if (g_comp.rows() != k0)
        throw Error(ErrorKind::Structural, "invariant code has dimension " + std::to_string(g_comp.rows()) +
                                               ", expected " + std::to_string(k0));

    BilinearSystem sys;
    sys.field = fq;
    sys.params = p;
    sys.a0 = a0;
    sys.normalization = level;

    Rref rg, rh;
    bool found = false;
    for (int t = 0; t < opt.max_orders && !found; ++t) {
        sys.block_order = block_order_for(n0, opt.order_seed + static_cast<std::uint64_t>(t));
        rg = rref(g_comp.select_cols(sys.block_order));
        if (!leading_identity(rg, k0)) continue;
        std::vector<std::size_t> cols;
        for (std::size_t b = a0; b < n0; ++b)
            for (std::size_t q = 0; q < bs; ++q) cols.push_back(sys.block_order[b] * bs + q);
        rh = rref(pub.h_pub.select_cols(cols));
        found = leading_identity(rh, m * bs);
    }
    if (!found) throw Error(ErrorKind::SystematicFormFailure, "no block order puts G_inv and P_I(H) in systematic form");
    sys.g_sys = rg.m;

    // Variable ids: U row-major, free T by block, free B, then the eliminated T.
    const std::size_t tail = n0 - a0;  // blocks left after shortening
    std::vector<int> t_id(tail, -1);
    std::vector<int> b_id(gamma, -1);
    std::vector<Elem> b_const(gamma, 0);
    for (int i = 0; i < d; ++i)
        for (int l = 0; l < c; ++l) sys.vars.push_back({VarKind::U, i + 1, l + 1});
    for (std::size_t b = a0 + d; b + 1 < n0; ++b) {
        t_id[b - a0] = static_cast<int>(sys.vars.size());
        sys.vars.push_back({VarKind::T, static_cast<int>(b) + 1, 0});
    }
    for (int k = level + 2; k < gamma; ++k) {
        b_id[k] = static_cast<int>(sys.vars.size());
        sys.vars.push_back({VarKind::B, k + 1, 0});
    }
    b_const[level + 1] = 1;
    const int main_vars = static_cast<int>(sys.vars.size());
    for (int i = 0; i < d; ++i) t_id[i] = main_vars + i;

    sys.pinned.push_back({{VarKind::T, static_cast<int>(n0), 0}, 0});
    for (int k = 0; k <= level + 1; ++k) sys.pinned.push_back({{VarKind::B, k + 1, 0}, b_const[k]});

    std::vector<std::size_t> rows;
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t q = 0; q < (opt.dedupe ? 1 : bs); ++q) rows.push_back(j * bs + q);
    sys.h_rows = rh.m.select_rows(rows);

    auto equation = [&](int i, std::size_t row) {
        const RowSums rs = row_sums(sys.h_rows.row(row), tail, gamma);
        std::vector<Term> terms;
        for (std::size_t b = 0; b < tail; ++b) {
            // w_b = G[a0+i][b] + sum_l U_il G[a0+d+l][b]   (affine in U)
            // L_b = s_b T_b + sum_k beta_bk B_k               (affine in V)
            std::vector<std::pair<int, Elem>> w;  // (-1 = constant, var id)
            if (Elem g0 = sys.g_sys(a0 + i, a0 + b)) w.push_back({-1, g0});
            for (int l = 0; l < c; ++l)
                if (Elem gl = sys.g_sys(a0 + d + l, a0 + b)) w.push_back({i * c + l, gl});
            if (w.empty()) continue;
            std::vector<std::pair<int, Elem>> lv;
            if (rs.s[b] && b + 1 < tail) lv.push_back({t_id[b], rs.s[b]});
            for (int k = 0; k < gamma; ++k) {
                const Elem beta = rs.beta[b * gamma + k];
                if (!beta) continue;
                if (b_id[k] >= 0)
                    lv.push_back({b_id[k], beta});
                else if (b_const[k])
                    lv.push_back({-1, f.mul(beta, b_const[k])});
            }
            for (const auto& [wu, wc] : w)
                for (const auto& [lvv, lc] : lv) {
                    int ids[2];
                    int deg = 0;
                    if (wu >= 0) ids[deg++] = wu;
                    if (lvv >= 0) ids[deg++] = lvv;
                    terms.push_back({Monomial::from_ids(std::span<const int>(ids, deg)), f.mul(wc, lc)});
                }
        }
        return Poly::from_terms(std::move(terms));
    };

    if (!opt.dedupe) {
        for (int i = 0; i < d; ++i) sys.vars.push_back({VarKind::T, a0 + i + 1, 0});
        for (int i = 0; i < d; ++i)
            for (std::size_t r = 0; r < rows.size(); ++r) sys.polys.push_back(equation(i, r));
        sys.counts = closed;
        sys.counts.n_t += d;
        sys.counts.quads = static_cast<int>(sys.polys.size());
        sys.counts.eliminations = 0;
        return sys;
    }

    for (int i = 0; i < d; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            Poly e = equation(i, j);
            if (j != static_cast<std::size_t>(i)) {
                sys.polys.push_back(std::move(e));
                continue;
            }
            // e = s T_{a0+i} + rest with T_{a0+i} nowhere else
            const int tv = main_vars + i;
            const Elem s = e.coeff(Monomial::var(tv));
            if (!s) throw Error(ErrorKind::Structural, "identity block missing from its parity row");
            Poly rest = e.add(Poly::from_terms({Term{Monomial::var(tv), s}}));
            if (rest.contains(tv)) throw Error(ErrorKind::Structural, "eliminated T occurs nonlinearly");
            sys.eliminated.push_back({{VarKind::T, a0 + i + 1, 0}, rest.scaled(f, f.inv(s))});
        }
    for (const Poly& e : sys.polys)
        for (int i = 0; i < d; ++i)
            if (e.contains(main_vars + i)) throw Error(ErrorKind::Structural, "eliminated T occurs in a kept equation");

    sys.counts = closed;
    sys.counts.n_t = static_cast<int>(std::count_if(sys.vars.begin(), sys.vars.end(),
                                                    [](const VarIndex& v) { return v.kind == VarKind::T; }));
    sys.counts.n_b = static_cast<int>(std::count_if(sys.vars.begin(), sys.vars.end(),
                                                    [](const VarIndex& v) { return v.kind == VarKind::B; }));
    sys.counts.quads = static_cast<int>(sys.polys.size());
    sys.counts.eliminations = static_cast<int>(sys.eliminated.size());
    return sys;
}

BilinearSystem specialize(const BilinearSystem& sys, std::span<const std::pair<int, Elem>> assignment) {
    const Field& f = *sys.field;
    BilinearSystem out = sys;
    std::vector<bool> fixed(sys.vars.size(), false);
    for (const auto& [id, value] : assignment) {
        if (id < 0 || static_cast<std::size_t>(id) >= sys.vars.size())
            throw Error(ErrorKind::InvalidParams, "specialized variable id out of range");
        if (!f.contains(value)) throw Error(ErrorKind::InvalidParams, "specialized value outside GF(q)");
        fixed[id] = true;
        const Poly cst = Poly::constant(value);
        for (Poly& e : out.polys) e = e.substitute(f, id, cst);
        for (auto& [v, e] : out.eliminated) e = e.substitute(f, id, cst);
        out.pinned.push_back({sys.vars[id], value});
    }
    std::vector<int> new_id(sys.vars.size(), -1);
    out.vars.clear();
    for (std::size_t v = 0; v < sys.vars.size(); ++v)
        if (!fixed[v]) {
            new_id[v] = static_cast<int>(out.vars.size());
            out.vars.push_back(sys.vars[v]);
        }
    std::vector<Poly> kept;
    for (const Poly& e : out.polys)
        if (!e.is_zero()) kept.push_back(remap(e, new_id));
    out.polys = std::move(kept);
    for (auto& [v, e] : out.eliminated) e = remap(e, new_id);
    return out;
}

std::vector<std::pair<VarIndex, Elem>> complete_assignment(const BilinearSystem& sys, std::span<const Elem> values) {
    if (values.size() != sys.vars.size()) throw Error(ErrorKind::InvalidParams, "assignment length mismatch");
    std::vector<std::pair<VarIndex, Elem>> out;
    for (std::size_t v = 0; v < sys.vars.size(); ++v) out.push_back({sys.vars[v], values[v]});
    for (const auto& [v, e] : sys.eliminated) out.push_back({v, e.eval(*sys.field, values)});
    out.insert(out.end(), sys.pinned.begin(), sys.pinned.end());
    std::sort(out.begin(), out.end());
    return out;
}

Mat v_equations(const BilinearSystem& sys, const Mat& u) {
    const ParamSet& p = sys.params;
    const Field& f = *sys.field;
    const int c = p.c(), gamma = p.gamma;
    const std::size_t a0 = sys.a0, d = static_cast<std::size_t>(p.k0 - c) - a0, tail = p.n0 - a0;
    if (u.rows() != d || u.cols() != static_cast<std::size_t>(c)) throw Error(ErrorKind::InvalidParams, "U has the wrong shape");
    Mat eq(sys.field, d * sys.h_rows.rows(), tail + gamma);
    for (std::size_t i = 0; i < d; ++i) {
        std::vector<Elem> w(tail);
        for (std::size_t b = 0; b < tail; ++b) {
            Elem v = sys.g_sys(a0 + i, a0 + b);
            for (int l = 0; l < c; ++l) v ^= f.mul(u(i, l), sys.g_sys(a0 + d + l, a0 + b));
            w[b] = v;
        }
        for (std::size_t r = 0; r < sys.h_rows.rows(); ++r) {
            const RowSums rs = row_sums(sys.h_rows.row(r), tail, gamma);
            const std::size_t row = i * sys.h_rows.rows() + r;
            for (std::size_t b = 0; b < tail; ++b) {
                if (!w[b]) continue;
                eq(row, b) ^= f.mul(w[b], rs.s[b]);
                for (int k = 0; k < gamma; ++k) eq(row, tail + k) ^= f.mul(w[b], rs.beta[b * gamma + k]);
            }
        }
    }
    return eq;
}

}  // namespace dyadic
