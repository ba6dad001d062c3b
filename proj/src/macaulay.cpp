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

#include "dyadic/macaulay.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <new>
#include <sstream>
#include <unordered_map>

#include <unistd.h>

#include "dyadic/kernels.hpp"

#if defined(__x86_64__) || defined(__i386__)
#include <x86intrin.h>
#endif

namespace dyadic {

std::string to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::Solved: return "solved";
        case SolveStatus::Infeasible: return "infeasible";
        case SolveStatus::DegreeExceeded: return "degree-exceeded";
        case SolveStatus::ResourceExceeded: return "resource-exceeded";
    }
    return "?";
}

std::string SolveStats::line(SolveStatus s) const {
    std::ostringstream os;
    os << "SOLVE maxdeg=" << max_degree << " rows=" << rows << " cols=" << cols << " outcome=" << to_string(s);
    return os.str();
}

std::uint64_t cycle_count() {
#if defined(__x86_64__) || defined(__i386__)
    return __rdtsc();
#else
    return static_cast<std::uint64_t>(std::chrono::steady_clock::now().time_since_epoch().count());
#endif
}

namespace {

std::size_t default_cap_bytes(std::size_t mb) {
    if (mb == 0) {
        // 8 GiB, or half the physical memory on smaller machines
        mb = 8192;
        const long pages = sysconf(_SC_PHYS_PAGES), page = sysconf(_SC_PAGE_SIZE);
        if (pages > 0 && page > 0) mb = std::min<std::size_t>(mb, static_cast<std::size_t>(pages) / 2 * page >> 20);
        if (const char* env = std::getenv("DYADIC_MEM_CAP_MB")) {
            char* end = nullptr;
            const unsigned long long v = std::strtoull(env, &end, 10);
            if (end != env && v > 0) mb = static_cast<std::size_t>(v);
        }
    }
    return mb << 20;
}

constexpr std::size_t kPointCap = 10000;

enum class PassResult { Linear, Grew, Nothing, Infeasible, Resource };

class Solver {
public:
    /// Variables flagged in `outside` are neither solved for nor reported free.
    Solver(const FieldPtr& field, std::size_t nvars, std::vector<Poly> polys, const SolveOptions& opt,
           std::vector<bool> outside = {})
        : f_(*field), bf_(*field), nvars_(nvars), opt_(opt), cap_(default_cap_bytes(opt.mem_cap_mb)),
          polys_(std::move(polys)), determined_(outside.empty() ? std::vector<bool>(nvars, false) : std::move(outside)) {
        if (f_.is_tower() || f_.order() > 256) throw Error(ErrorKind::Structural, "the solver works over GF(2^s), s <= 8");
        if (nvars > static_cast<std::size_t>(Monomial::kMaxVars)) throw Error(ErrorKind::Structural, "too many variables");
        if (opt.dmax < 2 || opt.dmax > Monomial::kMaxDegree)
            throw Error(ErrorKind::InvalidParams, "dmax must lie in [2, " + std::to_string(Monomial::kMaxDegree) + "]");
        out_.field = field;
        out_.nvars = nvars;
        out_.original = polys_;
    }

    SolveOutcome run() {
        const auto t0 = std::chrono::steady_clock::now();
        const std::uint64_t c0 = cycle_count();
        try {
            out_.status = loop();
        } catch (const std::bad_alloc&) {
            out_.status = SolveStatus::ResourceExceeded;
            out_.certificate = "allocation failed";
        }
        out_.stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        out_.stats.cycles = cycle_count() - c0;
        for (std::size_t v = 0; v < nvars_; ++v)
            if (!determined_[v]) out_.free_vars.push_back(static_cast<int>(v));
        return std::move(out_);
    }

private:
    SolveStatus loop() {
        while (true) {
            std::erase_if(polys_, [](const Poly& p) { return p.is_zero(); });
            int maxdeg = 0;
            bool has_linear = false;
            for (const Poly& p : polys_) {
                if (p.degree() == 0) {
                    out_.certificate = "nonzero constant among the equations";
                    return SolveStatus::Infeasible;
                }
                has_linear = has_linear || p.degree() == 1;
                maxdeg = std::max(maxdeg, p.degree());
            }
            if (has_linear) {
                if (!absorb_linear()) return SolveStatus::Infeasible;
                continue;
            }
            const std::vector<int> active = active_vars();
            if (static_cast<int>(active.size()) <= opt_.exhaustive_vars) return finish(active);
            out_.stats.max_degree = std::max(out_.stats.max_degree, 1);

            int deg = std::max(2, maxdeg);
            bool restart = false;
            while (!restart) {
                if (deg > opt_.dmax) {
                    if (opt_.branch_depth > 0 && static_cast<int>(active.size()) <= opt_.branch_vars) return branch(active);
                    return SolveStatus::DegreeExceeded;
                }
                switch (pass(deg, active)) {
                    case PassResult::Infeasible: return SolveStatus::Infeasible;
                    case PassResult::Resource: return SolveStatus::ResourceExceeded;
                    case PassResult::Linear:
                        restart = true;
                        closed_ = false;
                        break;
                    case PassResult::Grew:
                        deg = std::max(2, fall_ + 1);
                        closed_ = true;
                        break;
                    case PassResult::Nothing:
                        ++deg;
                        closed_ = false;
                        break;
                }
            }
        }
    }

    std::vector<int> active_vars() const {
        std::vector<bool> seen(nvars_, false);
        for (const Poly& p : polys_)
            for (const Term& t : p.terms())
                for (int s = 0; s < t.mono.degree(); ++s) seen[t.mono.id(s)] = true;
        std::vector<int> out;
        for (std::size_t v = 0; v < nvars_; ++v)
            if (seen[v]) out.push_back(static_cast<int>(v));
        return out;
    }

    // Solves the linear equations for their leading variables and substitutes
    // them everywhere. Returns false on an inconsistent linear system.
    bool absorb_linear() {
        std::vector<Poly> lin, rest;
        for (Poly& p : polys_) (p.degree() <= 1 ? lin : rest).push_back(std::move(p));
        Mat m(out_.field, lin.size(), nvars_ + 1);
        for (std::size_t r = 0; r < lin.size(); ++r)
            for (const Term& t : lin[r].terms()) m(r, t.mono.degree() ? t.mono.id(0) : nvars_) = t.coeff;
        const Rref red = rref(m);
        std::vector<std::pair<int, Poly>> fresh;
        for (std::size_t r = 0; r < red.rank(); ++r) {
            const std::size_t pv = red.pivots[r];
            if (pv == nvars_) {
                out_.certificate = "inconsistent linear equations";
                return false;
            }
            std::vector<Term> terms;
            for (std::size_t c = pv + 1; c <= nvars_; ++c)
                if (Elem v = red.m(r, c)) terms.push_back({c == nvars_ ? Monomial() : Monomial::var(static_cast<int>(c)), v});
            fresh.push_back({static_cast<int>(pv), Poly::from_terms(std::move(terms))});
        }
        for (const auto& [v, e] : fresh) {
            for (auto& [w, old] : out_.determined)
                if (old.contains(v)) old = old.substitute(f_, v, e);
            for (Poly& p : rest)
                if (p.contains(v)) p = p.substitute(f_, v, e);
            determined_[v] = true;
        }
        out_.determined.insert(out_.determined.end(), fresh.begin(), fresh.end());
        out_.stats.linear += static_cast<int>(fresh.size());
        polys_ = std::move(rest);
        return true;
    }

    SolveStatus finish(const std::vector<int>& active) {
        out_.residual = polys_;
        out_.residual_vars = active;
        const std::size_t k = active.size();
        std::vector<Elem> point(nvars_, 0), sub(k, 0);
        while (true) {
            for (std::size_t i = 0; i < k; ++i) point[active[i]] = sub[i];
            if (std::all_of(polys_.begin(), polys_.end(), [&](const Poly& p) { return p.eval(f_, point) == 0; }))
                out_.residual_points.push_back(sub);
            std::size_t i = 0;
            while (i < k && ++sub[i] == f_.order()) sub[i++] = 0;
            if (i == k) break;
        }
        if (out_.residual_points.empty()) {
            out_.certificate = "no GF(q) point on the remaining equations";
            return SolveStatus::Infeasible;
        }
        return SolveStatus::Solved;
    }

    // Splits on the variable occurring most often and solves every GF(q)
    // specialization; the union of the branch solutions is returned as points.
    SolveStatus branch(const std::vector<int>& active) {
        std::vector<std::size_t> uses(nvars_, 0);
        for (const Poly& p : polys_)
            for (const Term& t : p.terms())
                for (int s = 0; s < t.mono.degree(); ++s) ++uses[t.mono.id(s)];
        const int v = *std::max_element(active.begin(), active.end(), [&](int a, int b) { return uses[a] < uses[b]; });
        std::vector<bool> outside(nvars_, true);
        for (int a : active) outside[a] = false;
        outside[v] = true;
        SolveOptions sub = opt_;
        --sub.branch_depth;

        out_.branched = true;
        out_.branch_var = v;
        bool open = false;
        for (std::uint32_t val = 0; val < f_.order(); ++val) {
            const Poly value = Poly::constant(static_cast<Elem>(val));
            std::vector<Poly> ps;
            ps.reserve(polys_.size());
            for (const Poly& p : polys_) ps.push_back(p.substitute(f_, v, value));
            const SolveOutcome o = Solver(out_.field, nvars_, std::move(ps), sub, outside).run();
            out_.stats.max_degree = std::max(out_.stats.max_degree, o.stats.max_degree);
            if (o.stats.rows * o.stats.cols > out_.stats.rows * out_.stats.cols) {
                out_.stats.rows = o.stats.rows;
                out_.stats.cols = o.stats.cols;
            }
            out_.stats.passes += o.stats.passes;
            ++out_.stats.branches;
            if (o.status == SolveStatus::Solved) {
                for (std::vector<Elem>& pt : extract_solutions(o, kPointCap)) {
                    pt[v] = static_cast<Elem>(val);
                    for (const auto& [w, e] : out_.determined) pt[w] = e.eval(f_, pt);
                    out_.points.push_back(std::move(pt));
                }
                if (out_.points.size() > kPointCap)
                    throw Error(ErrorKind::SolutionSpaceTooLarge, "more than " + std::to_string(kPointCap) + " branch solutions");
            } else if (o.status != SolveStatus::Infeasible) {
                open = true;
            }
        }
        out_.partial = open;
        if (!out_.points.empty()) return SolveStatus::Solved;
        if (open) return SolveStatus::DegreeExceeded;
        out_.certificate = "every value of the branch variable is infeasible";
        return SolveStatus::Infeasible;
    }

    std::vector<std::vector<Monomial>> shifts(const std::vector<int>& active, int max_deg) const {
        std::vector<std::vector<Monomial>> by_deg(max_deg + 1);
        by_deg[0].push_back(Monomial());
        const std::uint32_t q = f_.order();
        std::vector<int> ids;
        // nondecreasing id sequences, each variable at most q-1 times
        auto rec = [&](auto&& self, std::size_t from, int run) -> void {
            if (!ids.empty()) by_deg[ids.size()].push_back(Monomial::from_ids(ids));
            if (static_cast<int>(ids.size()) == max_deg) return;
            for (std::size_t a = from; a < active.size(); ++a) {
                const int r = (!ids.empty() && ids.back() == active[a]) ? run + 1 : 1;
                if (static_cast<std::uint32_t>(r) >= q) continue;
                ids.push_back(active[a]);
                self(self, a, r);
                ids.pop_back();
            }
        };
        rec(rec, 0, 0);
        return by_deg;
    }

    PassResult pass(int deg, const std::vector<int>& active) {
        const std::uint32_t q = f_.order();
        // After a pass that only grew, the kept low-degree polynomials already
        // contain every product the previous matrix could form, so one more
        // variable is enough.
        const int reach = closed_ ? 1 : deg - 1;
        const auto sh = shifts(active, reach);

        // Rows in compressed sparse form over monomial keys, then over column
        // indices once the columns are known.
        std::vector<std::size_t> offs{0};
        std::vector<std::uint64_t> keys_of;
        std::vector<std::uint8_t> vals;
        for (const Poly& p : polys_)
            for (int k = 0; k <= std::min(reach, deg - p.degree()); ++k)
                for (const Monomial& s : sh[k]) {
                    for (const Term& t : p.terms()) {
                        keys_of.push_back(mul(t.mono, s, q).key());
                        vals.push_back(static_cast<std::uint8_t>(t.coeff));
                    }
                    offs.push_back(keys_of.size());
                }
        const std::size_t nrows = offs.size() - 1;

        std::vector<std::uint64_t> cols(keys_of);
        std::sort(cols.begin(), cols.end(), std::greater<>());
        cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
        const std::size_t ncols = cols.size();
        out_.stats.max_degree = std::max(out_.stats.max_degree, deg);
        if (nrows * ncols > out_.stats.rows * out_.stats.cols) {
            out_.stats.rows = nrows;
            out_.stats.cols = ncols;
        }

        std::vector<std::uint32_t> idx(keys_of.size());
        {
            std::unordered_map<std::uint64_t, std::uint32_t> col_of;
            col_of.reserve(ncols * 2);
            for (std::size_t c = 0; c < ncols; ++c) col_of.emplace(cols[c], static_cast<std::uint32_t>(c));
            for (std::size_t e = 0; e < keys_of.size(); ++e) idx[e] = col_of[keys_of[e]];
            std::vector<std::uint64_t>().swap(keys_of);
        }
        // A shift can merge two terms of a product into one column, and the
        // sum may vanish; sort each row and fold duplicates.
        {
            std::vector<std::pair<std::uint32_t, std::uint8_t>> buf;
            std::size_t w = 0;
            for (std::size_t r = 0; r < nrows; ++r) {
                buf.clear();
                for (std::size_t e = offs[r]; e < offs[r + 1]; ++e) buf.push_back({idx[e], vals[e]});
                std::sort(buf.begin(), buf.end());
                const std::size_t begin = w;
                for (std::size_t e = 0; e < buf.size(); ++e) {
                    if (w > begin && idx[w - 1] == buf[e].first) {
                        vals[w - 1] ^= buf[e].second;
                        if (vals[w - 1] == 0) --w;
                        continue;
                    }
                    idx[w] = buf[e].first;
                    vals[w] = buf[e].second;
                    ++w;
                }
                offs[r] = begin;
            }
            offs[nrows] = w;
            // offs[r] now holds the start of row r; its end is the start of the
            // next row.
        }

        // Pivot rows: for each leading column, the shortest row leading there.
        constexpr std::uint32_t kNone = ~std::uint32_t{0};
        std::vector<std::uint32_t> pivot_of(ncols, kNone);
        auto row_len = [&](std::size_t r) { return offs[r + 1] - offs[r]; };
        for (std::size_t r = 0; r < nrows; ++r) {
            if (row_len(r) == 0) continue;
            std::uint32_t& slot = pivot_of[idx[offs[r]]];
            if (slot == kNone || row_len(r) < row_len(slot)) slot = static_cast<std::uint32_t>(r);
        }
        std::vector<std::uint32_t> others;
        for (std::size_t r = 0; r < nrows; ++r)
            if (row_len(r) && pivot_of[idx[offs[r]]] != r) others.push_back(static_cast<std::uint32_t>(r));
        for (std::size_t c = 0; c < ncols; ++c)
            if (pivot_of[c] != kNone) {
                const std::size_t r = pivot_of[c];
                const std::uint8_t inv = bf_.inv(vals[offs[r]]);
                if (inv != 1)
                    for (std::size_t e = offs[r]; e < offs[r + 1]; ++e) vals[e] = bf_.mul(vals[e], inv);
            }
        std::vector<std::uint32_t> free_cols;  // columns without a pivot row
        for (std::size_t c = 0; c < ncols; ++c)
            if (pivot_of[c] == kNone) free_cols.push_back(static_cast<std::uint32_t>(c));

        const std::size_t sparse_bytes = idx.size() * 5 + ncols * 12;
        if (sparse_bytes + kernels::ByteMatrix::bytes_for(others.size(), free_cols.size()) > cap_)
            return PassResult::Resource;
        ++out_.stats.passes;

        // Reduce every non-pivot row by the pivot rows; what remains lives on
        // the free columns only.
        kernels::ByteMatrix rest(others.size(), free_cols.size());
        auto reduce = [&](std::size_t i, std::vector<std::uint8_t>& acc) {
            const std::size_t r = others[i];
            for (std::size_t e = offs[r]; e < offs[r + 1]; ++e) acc[idx[e]] = vals[e];
            for (std::size_t c = idx[offs[r]]; c < ncols; ++c) {
                const std::uint8_t a = acc[c];
                if (a == 0 || pivot_of[c] == kNone) continue;
                const std::size_t p = pivot_of[c];
                const std::uint8_t* mrow = bf_.mul_row(a);
                for (std::size_t e = offs[p]; e < offs[p + 1]; ++e) acc[idx[e]] ^= mrow[vals[e]];
            }
            std::uint8_t* out = rest.row(i);
            for (std::size_t k = 0; k < free_cols.size(); ++k) {
                out[k] = acc[free_cols[k]];
                acc[free_cols[k]] = 0;
            }
        };
        const auto n_others = static_cast<std::ptrdiff_t>(others.size());
        if (opt_.parallel) {
#pragma omp parallel num_threads(kernels::max_threads())
            {
                std::vector<std::uint8_t> acc(ncols, 0);
#pragma omp for schedule(dynamic, 16)
                for (std::ptrdiff_t i = 0; i < n_others; ++i) reduce(static_cast<std::size_t>(i), acc);
            }
        } else {
            std::vector<std::uint8_t> acc(ncols, 0);
            for (std::ptrdiff_t i = 0; i < n_others; ++i) reduce(static_cast<std::size_t>(i), acc);
        }
        const std::vector<std::size_t> piv = opt_.parallel ? kernels::echelonize(bf_, rest, kernels::Reduction::Echelon)
                                                           : kernels::echelonize_serial(bf_, rest, kernels::Reduction::Echelon);

        const std::size_t low = static_cast<std::size_t>(
            std::find_if(cols.begin(), cols.end(), [&](std::uint64_t k) { return Monomial::from_key(k).degree() < deg; }) -
            cols.begin());

        // Pivot rows and the reduced remainder have distinct leading columns,
        // so together they form an echelon basis of the row space.
        std::vector<Poly> harvested;
        for (std::size_t c = low; c < ncols; ++c) {
            if (pivot_of[c] == kNone) continue;
            const std::size_t r = pivot_of[c];
            std::vector<Term> terms;
            for (std::size_t e = offs[r]; e < offs[r + 1]; ++e) terms.push_back({Monomial::from_key(cols[idx[e]]), vals[e]});
            harvested.push_back(Poly::from_terms(std::move(terms)));
        }
        for (std::size_t i = 0; i < piv.size(); ++i) {
            if (free_cols[piv[i]] < low) continue;
            std::vector<Term> terms;
            const std::uint8_t* row = rest.row(i);
            for (std::size_t k = piv[i]; k < free_cols.size(); ++k)
                if (row[k]) terms.push_back({Monomial::from_key(cols[free_cols[k]]), row[k]});
            harvested.push_back(Poly::from_terms(std::move(terms)));
        }
        bool linear = false;
        for (const Poly& h : harvested) {
            if (h.degree() == 0) {
                out_.certificate = "constant in the degree-" + std::to_string(deg) + " Macaulay matrix (" +
                                   std::to_string(nrows) + " x " + std::to_string(ncols) + ")";
                return PassResult::Infeasible;
            }
            linear = linear || h.degree() == 1;
        }
        // Lowest degree e whose part of the row space grew; the next pass
        // multiplies the new polynomials from degree e + 1.
        bool grew = false;
        for (int e = 1; e < deg && !grew; ++e) {
            const auto upto = static_cast<std::size_t>(
                std::count_if(harvested.begin(), harvested.end(), [&](const Poly& h) { return h.degree() <= e; }));
            if (upto > low_rank(e + 1)) {
                grew = true;
                fall_ = e;
            }
        }
        if (opt_.trace) {
            std::size_t npiv = 0;
            for (std::uint32_t p : pivot_of) npiv += p != kNone;
            *opt_.trace << "pass D=" << deg << " " << nrows << "x" << ncols << " pivots=" << npiv
                        << " rest=" << others.size() << "x" << free_cols.size() << " rank=" << npiv + piv.size()
                        << " low=" << harvested.size() << (linear ? " linear" : "")
                        << (grew ? " fall=" + std::to_string(fall_) : std::string()) << "\n";
        }
        for (Poly& p : polys_)
            if (p.degree() >= deg) harvested.push_back(std::move(p));
        polys_ = std::move(harvested);
        if (linear) return PassResult::Linear;
        return grew ? PassResult::Grew : PassResult::Nothing;
    }

    // Dimension of the span of the current equations of degree below `deg`.
    std::size_t low_rank(int deg) const {
        std::vector<const Poly*> low;
        std::unordered_map<std::uint64_t, std::size_t> col;
        for (const Poly& p : polys_)
            if (p.degree() < deg) {
                low.push_back(&p);
                for (const Term& t : p.terms()) col.emplace(t.mono.key(), col.size());
            }
        if (low.empty()) return 0;
        Mat m(out_.field, low.size(), col.size());
        for (std::size_t r = 0; r < low.size(); ++r)
            for (const Term& t : low[r]->terms()) m(r, col[t.mono.key()]) = t.coeff;
        return rank(m);
    }

    const Field& f_;
    kernels::ByteField bf_;
    std::size_t nvars_;
    SolveOptions opt_;
    std::size_t cap_;
    std::vector<Poly> polys_;
    std::vector<bool> determined_;
    int fall_ = 0;
    bool closed_ = false;
    SolveOutcome out_;
};

}  // namespace

SolveOutcome macaulay_solve(const FieldPtr& field, std::size_t nvars, std::vector<Poly> polys, const SolveOptions& opt) {
    return Solver(field, nvars, std::move(polys), opt).run();
}

SolveOutcome macaulay_solve(const BilinearSystem& sys, const SolveOptions& opt) {
    return macaulay_solve(sys.field, sys.vars.size(), sys.polys, opt);
}

std::vector<std::vector<Elem>> extract_solutions(const SolveOutcome& out, std::size_t cap) {
    if (out.status != SolveStatus::Solved) throw Error(ErrorKind::InvalidParams, "no solution set to enumerate");
    const Field& f = *out.field;
    if (out.branched) {
        if (out.points.size() > cap)
            throw Error(ErrorKind::SolutionSpaceTooLarge, "solution set has " + std::to_string(out.points.size()) + " points");
        for (const auto& pt : out.points)
            for (const Poly& p : out.original)
                if (p.eval(f, pt) != 0) throw Error(ErrorKind::Structural, "solver returned a point off the variety");
        return out.points;
    }
    std::vector<int> loose;  // free and not constrained by the residual equations
    for (int v : out.free_vars)
        if (std::find(out.residual_vars.begin(), out.residual_vars.end(), v) == out.residual_vars.end()) loose.push_back(v);
    double count = static_cast<double>(out.residual_points.size());
    for (std::size_t i = 0; i < loose.size(); ++i) count *= f.order();
    if (count > static_cast<double>(cap))
        throw Error(ErrorKind::SolutionSpaceTooLarge, "solution set has " + std::to_string(count) + " points");

    std::vector<std::vector<Elem>> sols;
    for (const auto& rp : out.residual_points) {
        std::vector<Elem> sub(loose.size(), 0);
        while (true) {
            std::vector<Elem> pt(out.nvars, 0);
            for (std::size_t i = 0; i < out.residual_vars.size(); ++i) pt[out.residual_vars[i]] = rp[i];
            for (std::size_t i = 0; i < loose.size(); ++i) pt[loose[i]] = sub[i];
            for (const auto& [v, e] : out.determined) pt[v] = e.eval(f, pt);
            for (const Poly& p : out.original)
                if (p.eval(f, pt) != 0) throw Error(ErrorKind::Structural, "solver returned a point off the variety");
            sols.push_back(std::move(pt));
            std::size_t i = 0;
            while (i < loose.size() && ++sub[i] == f.order()) sub[i++] = 0;
            if (i == loose.size()) break;
        }
    }
    return sols;
}

}  // namespace dyadic
