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

#include "dyadic/selftest.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <numeric>
#include <sstream>

#include "dyadic/codes.hpp"
#include "dyadic/dags.hpp"
#include "dyadic/rng.hpp"
#include "dyadic/system.hpp"

namespace dyadic::selftest {

namespace {

Check timed(std::string name, const std::function<std::string()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Check c;
    c.name = std::move(name);
    try {
        c.detail = body();
        c.ok = c.detail.empty();
    } catch (const std::exception& e) {
        c.detail = std::string("exception: ") + e.what();
    }
    c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return c;
}

// Shift-and-add product modulo the defining polynomial; shares nothing with
// the tables it checks.
Elem reference_mul(Elem x, Elem y, const FieldSpec& spec) {
    std::uint32_t acc = 0, a = x;
    for (int i = 0; i < spec.s; ++i) {
        if (y >> i & 1) acc ^= a;
        a <<= 1;
        if (a >> spec.s & 1) a ^= spec.modulus;
    }
    return static_cast<Elem>(acc);
}

Vec distinct_support(const Field& f, std::size_t n, Rng& rng) {
    std::vector<Elem> all(f.order());
    std::iota(all.begin(), all.end(), Elem{0});
    rng.shuffle(all);
    return Vec(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(n));
}

Vec nonzero_vector(const Field& f, std::size_t n, Rng& rng) {
    Vec v(n);
    for (auto& e : v) e = static_cast<Elem>(1 + rng.below(f.order() - 1));
    return v;
}

std::string fmt_pair(Elem a, Elem b) { return "(" + to_hex(a) + ", " + to_hex(b) + ")"; }

}  // namespace

Check field_axioms(const SuiteOptions& opt) {
    return timed("field.axioms", [&]() -> std::string {
        Rng rng(opt.seed);
        for (int s = 1; s <= 8; ++s) {
            const FieldPtr f = Field::binary(s);
            const std::string tag = "GF(2^" + std::to_string(s) + ")";
            std::vector<Elem> exp = f->exp_table();
            const std::vector<std::uint32_t>& log = f->log_table();
            if (opt.fault == Fault::FieldTable && s == 8) exp[3] ^= 1;
            const std::uint32_t order = f->order();
            for (std::uint32_t x = 1; x < order; ++x)
                if (exp[log[x]] != x) return tag + ": exp(log(x)) != x at x = " + to_hex(x);
            auto tmul = [&](Elem x, Elem y) -> Elem {
                if (!x || !y) return 0;
                return exp[(log[x] + log[y]) % (order - 1)];
            };
            const bool all = order <= 64;
            const std::uint32_t trials = all ? order * order : 20000;
            for (std::uint32_t t = 0; t < trials; ++t) {
                const Elem x = static_cast<Elem>(all ? t / order : rng.below(order));
                const Elem y = static_cast<Elem>(all ? t % order : rng.below(order));
                if (tmul(x, y) != reference_mul(x, y, f->spec()))
                    return tag + ": table product differs from the reference at " + fmt_pair(x, y);
            }
        }
        for (int s = 1; s <= 8; ++s) {
            const FieldPtr f = Field::quadratic(Field::binary(s));
            const std::string tag = "GF(2^" + std::to_string(2 * s) + ") tower";
            const std::uint32_t q = f->base()->order();
            for (int t = 0; t < 2000; ++t) {
                const Elem x = static_cast<Elem>(rng.below(f->order()));
                const Elem y = static_cast<Elem>(rng.below(f->order()));
                const Elem z = static_cast<Elem>(rng.below(f->order()));
                if (f->mul(f->mul(x, y), z) != f->mul(x, f->mul(y, z))) return tag + ": product not associative";
                if (f->mul(x, y ^ z) != (f->mul(x, y) ^ f->mul(x, z))) return tag + ": product not distributive";
                if (x && f->mul(x, f->inv(x)) != 1) return tag + ": x * inv(x) != 1 at " + to_hex(x);
                if (f->frobenius(x) != f->pow(x, q)) return tag + ": frobenius differs from x^q";
                if (!f->in_base(f->trace(x)) || !f->in_base(f->norm(x))) return tag + ": trace or norm outside GF(q)";
            }
        }
        return {};
    });
}

Check orbit_examples() {
    return timed("system.orbit", []() -> std::string {
        auto render = [](int gamma) {
            std::string s;
            for (auto m : orbit_vector(gamma)) s += (s.empty() ? "" : ", ") + orbit_entry(m);
            return "(" + s + ")";
        };
        const std::string one = render(1), three = render(3);
        if (one != "(0, B1)") return "orbit(B1) = " + one;
        if (three != "(0, B1, B2, B1+B2, B3, B1+B3, B2+B3, B1+B2+B3)") return "orbit(B1,B2,B3) = " + three;
        return {};
    });
}

Check system_counts() {
    return timed("system.counts", []() -> std::string {
        struct Row {
            const char* preset;
            int dim;  // 0 = no shortening
            int vars, eqs;
        };
        const Row rows[] = {{"DAGS-1", 0, 119, 550},  {"DAGS-3", 0, 76, 252},   {"DAGS-5", 0, 45, 189},
                            {"DAGS-1", 2, 39, 50},    {"DAGS-1", 3, 43, 75},    {"DAGS-1", 4, 47, 100},
                            {"DAGS-1", 5, 51, 125},   {"DAGS-1.1", 0, 179, 450}, {"DAGS-5.1", 0, 232, 252}};
        for (const Row& r : rows) {
            const ParamSet p = preset(r.preset);
            const int a0 = r.dim ? p.k0 - p.c() - r.dim : 0;
            const ShapeCounts s = count_system(p, a0);
            if (s.vars() != r.vars || s.quads != r.eqs) {
                std::ostringstream os;
                os << r.preset << " a0=" << a0 << ": " << s.vars() << " vars / " << s.quads << " eqs, expected "
                   << r.vars << " / " << r.eqs;
                return os.str();
            }
        }
        try {
            count_system(preset("DAGS-3.1"), 0);
            return "DAGS-3.1 should have no code D";
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::NonexistentD) throw;
        }
        return {};
    });
}

Check affine_invariance(const SuiteOptions& opt) {
    return timed("grs.affine_invariance", [&]() -> std::string {
        Rng rng(opt.seed + 1);
        const FieldPtr f = Field::binary(5);
        for (int i = 0; i < opt.affine; ++i) {
            const std::size_t n = 4 + rng.below(20), t = 1 + rng.below(n);
            const Vec x = distinct_support(*f, n, rng), y = nonzero_vector(*f, n, rng);
            const Elem a = static_cast<Elem>(1 + rng.below(f->order() - 1)), b = static_cast<Elem>(rng.below(f->order()));
            Vec ax(n);
            for (std::size_t j = 0; j < n; ++j) ax[j] = f->mul(a, x[j]) ^ b;
            if (!(grs_code(f, ax, y, t) == grs_code(f, x, y, t)))
                return "GRS code changed under x -> " + to_hex(a) + " x + " + to_hex(b);
        }
        return {};
    });
}

Check dyadic_structure(const SuiteOptions& opt) {
    return timed("dyadic.structure", [&]() -> std::string {
        for (const char* name : {"DESK-A", "DESK-B"}) {
            const KeyPair key = keygen(preset(name), opt.seed);
            const DyadicSupport& s = *key.secret;
            const Vec g = group_elements(s.b);
            for (std::size_t i = 0; i < s.n(); ++i)
                if (s.x[i] != (s.tau[i / s.block()] ^ g[i % s.block()]))
                    return std::string(name) + ": x is not tau (x) 1 + 1 (x) g at position " + std::to_string(i);
            const Code c = public_code(key);
            for (Elem b : s.b) {
                const auto perm = induced_permutation(s, b);
                Mat moved(c.field(), c.dimension(), c.length());
                for (std::size_t r = 0; r < c.dimension(); ++r)
                    for (std::size_t j = 0; j < c.length(); ++j) moved(r, perm[j]) = c.generator()(r, j);
                if (!row_space_contains(c.generator(), moved))
                    return std::string(name) + ": public code not fixed by the translation by " + to_hex(b);
            }
        }
        return {};
    });
}

Check dual_multipliers(const SuiteOptions& opt) {
    return timed("grs.dual_multiplier", [&]() -> std::string {
        Rng rng(opt.seed + 2);
        const FieldPtr f = Field::binary(5);
        for (int i = 0; i < opt.dual; ++i) {
            const std::size_t n = 3 + rng.below(28), t = 1 + rng.below(n - 1);
            const Vec x = distinct_support(*f, n, rng), y = nonzero_vector(*f, n, rng);
            const Code dual(kernel_basis(grs_code(f, x, y, t).generator()));
            if (!(dual == grs_code(f, x, dual_multiplier(*f, x, y), n - t)))
                return "dual of GRS_" + std::to_string(t) + " differs from GRS_" + std::to_string(n - t) +
                       " with the dual multiplier (n = " + std::to_string(n) + ")";
        }
        return {};
    });
}

Check star_equality(const SuiteOptions& opt) {
    return timed("grs.star_equality", [&]() -> std::string {
        Rng rng(opt.seed + 3);
        const FieldPtr f = Field::binary(6);
        for (int i = 0; i < opt.star; ++i) {
            const std::size_t n = 4 + rng.below(37);
            const std::size_t a = 1 + rng.below(n / 2), b = 1 + rng.below(n - a);
            const Vec x = distinct_support(*f, n, rng), y = nonzero_vector(*f, n, rng), z = nonzero_vector(*f, n, rng);
            Vec yz(n);
            for (std::size_t j = 0; j < n; ++j) yz[j] = f->mul(y[j], z[j]);
            if (!(star_product(grs_code(f, x, y, a), grs_code(f, x, z, b)) == grs_code(f, x, yz, a + b - 1)))
                return "GRS_" + std::to_string(a) + " * GRS_" + std::to_string(b) + " != GRS_" +
                       std::to_string(a + b - 1) + " at n = " + std::to_string(n);
        }
        return {};
    });
}

Check star_inclusion(const SuiteOptions& opt) {
    return timed("alternant.star_inclusion", [&]() -> std::string {
        Rng rng(opt.seed + 4);
        int tested = 0;
        for (int i = 0; i < opt.inclusion; ++i) {
            const int s = 2 + static_cast<int>(rng.below(2));
            const FieldPtr tower = Field::quadratic(Field::binary(s));
            const std::size_t n = std::min<std::size_t>(tower->order(), 12 + rng.below(29));
            const std::size_t r = 1 + rng.below(n / 4), t = 1 + rng.below(n / 2);
            const Vec x = distinct_support(*tower, n, rng), y = nonzero_vector(*tower, n, rng);
            const Vec ones(n, 1);
            // RS_t(x) over GF(q): the dual of GRS_{n-t}(x, y') restricted to GF(q)
            const Code rs = alternant_code(tower, x, dual_multiplier(*tower, x, ones), n - t);
            const Code big = alternant_code(tower, x, y, r + t - 1);
            const Code small = alternant_code(tower, x, y, r);
            if (big.dimension() == 0 || rs.dimension() == 0) continue;
            ++tested;
            if (!small.contains(star_product(big, rs)))
                return "A_{r+t-1} * RS_t not inside A_r for r = " + std::to_string(r) + ", t = " + std::to_string(t) +
                       ", n = " + std::to_string(n);
        }
        if (2 * tested < opt.inclusion) return "only " + std::to_string(tested) + " instances had nonzero codes";
        return {};
    });
}

Check subfield_bounds(const SuiteOptions& opt) {
    return timed("trace.subfield_bounds", [&]() -> std::string {
        Rng rng(opt.seed + 5);
        const FieldPtr tower = Field::quadratic(Field::binary(3));
        const std::size_t q = tower->base()->order();
        for (int i = 0; i < opt.subfield; ++i) {
            const int gamma = 2;
            const std::size_t n0 = 4 + rng.below(13);
            DyadicSupport sup;
            while (true) {
                try {
                    const Vec b = nonzero_vector(*tower, gamma, rng);
                    const Vec g = group_elements(b);
                    Vec tau;
                    std::vector<bool> used(tower->order(), false);
                    for (Elem e : distinct_support(*tower, tower->order(), rng)) {
                        bool free = true;
                        for (Elem gp : g) free = free && !used[e ^ gp];
                        if (!free) continue;
                        for (Elem gp : g) used[e ^ gp] = true;
                        tau.push_back(e);
                        if (tau.size() == n0) break;
                    }
                    sup = dyadic_support(tower, b, tau, Vec(n0, 1), gamma);
                    break;
                } catch (const Error&) {
                }
            }
            const std::size_t n = sup.n();
            const Vec ones(n, 1);
            auto rs_over_q = [&](std::size_t t) {
                return alternant_code(tower, sup.x, dual_multiplier(*tower, sup.x, ones), n - t);
            };
            const Code rs1 = rs_over_q(q + 1), rs2 = rs_over_q(q + 2);
            if (rs1.dimension() < 3) return "dim RS_{q+1} over GF(q) = " + std::to_string(rs1.dimension());
            if (rs2.dimension() < 4) return "dim RS_{q+2} over GF(q) = " + std::to_string(rs2.dimension());
            const auto v = trace_norm_vectors(*tower, sup.x);
            for (int k = 0; k < 3; ++k)
                if (!rs1.contains(v[k])) return "trace vector " + std::to_string(k) + " outside RS_{q+1}";
            if (!rs2.contains(v[3])) return "norm vector outside RS_{q+2}";
        }
        return {};
    });
}

Check invariant_dimension(const SuiteOptions& opt) {
    return timed("invariant.dimension", [&]() -> std::string {
        const char* names[] = {"DESK-A", "DESK-B", "DESK-C"};
        for (int i = 0; i < opt.keys; ++i) {
            const ParamSet p = preset(names[i % 3]);
            const KeyPair key = keygen(p, opt.seed + static_cast<std::uint64_t>(i));
            const std::size_t dim = invariant_code(public_code(key), p.block()).dimension();
            if (dim != static_cast<std::size_t>(p.k0))
                return p.name + " seed " + std::to_string(key.seed) + ": invariant code has dimension " +
                       std::to_string(dim) + ", expected " + std::to_string(p.k0);
        }
        return {};
    });
}

std::vector<Check> run_all(const SuiteOptions& opt) {
    return {field_axioms(opt),      orbit_examples(),        system_counts(),       affine_invariance(opt),
            dyadic_structure(opt),  dual_multipliers(opt),   star_equality(opt),    star_inclusion(opt),
            subfield_bounds(opt),   invariant_dimension(opt)};
}

}  // namespace dyadic::selftest
