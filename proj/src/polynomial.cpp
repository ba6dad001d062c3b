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

#include "dyadic/polynomial.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace dyadic {

std::string VarIndex::name() const {
    switch (kind) {
        case VarKind::U: return "U_" + std::to_string(i) + "_" + std::to_string(j);
        case VarKind::T: return "T_" + std::to_string(i);
        case VarKind::B: return "B_" + std::to_string(i);
    }
    return "?";
}

VarIndex parse_var(const std::string& name) {
    auto num = [&](std::size_t from, std::size_t to) {
        try {
            std::size_t used = 0;
            const int v = std::stoi(name.substr(from, to - from), &used);
            if (used != to - from) throw Error(ErrorKind::Parse, "bad variable name " + name);
            return v;
        } catch (const std::logic_error&) {
            throw Error(ErrorKind::Parse, "bad variable name " + name);
        }
    };
    if (name.size() < 3 || name[1] != '_') throw Error(ErrorKind::Parse, "bad variable name " + name);
    if (name[0] == 'T') return {VarKind::T, num(2, name.size()), 0};
    if (name[0] == 'B') return {VarKind::B, num(2, name.size()), 0};
    if (name[0] == 'U') {
        const auto us = name.find('_', 2);
        if (us == std::string::npos) throw Error(ErrorKind::Parse, "bad variable name " + name);
        return {VarKind::U, num(2, us), num(us + 1, name.size())};
    }
    throw Error(ErrorKind::Parse, "bad variable name " + name);
}

namespace {

Monomial pack_sorted(const int* ids, int n);

}  // namespace

Monomial Monomial::var(int id) { return from_ids(std::span<const int>(&id, 1)); }

Monomial Monomial::from_ids(std::span<const int> ids) {
    if (static_cast<int>(ids.size()) > kMaxDegree) throw Error(ErrorKind::Structural, "monomial degree too large");
    int buf[kMaxDegree];
    std::copy(ids.begin(), ids.end(), buf);
    std::sort(buf, buf + ids.size());
    return pack_sorted(buf, static_cast<int>(ids.size()));
}

bool Monomial::contains(int v) const {
    for (int s = 0; s < degree(); ++s)
        if (id(s) == v) return true;
    return false;
}

namespace {

Monomial pack_sorted(const int* ids, int n) {
    std::uint64_t key = static_cast<std::uint64_t>(n) << 60;
    for (int s = 0; s < n; ++s) {
        if (ids[s] < 0 || ids[s] >= Monomial::kMaxVars) throw Error(ErrorKind::Structural, "variable id out of range");
        key |= static_cast<std::uint64_t>(Monomial::kMaxVars - ids[s]) << (50 - 10 * s);
    }
    return Monomial::from_key(key);
}

}  // namespace

Monomial mul(Monomial a, Monomial b, std::uint32_t q) {
    int buf[2 * Monomial::kMaxDegree];
    const int da = a.degree(), db = b.degree();
    int n = 0, i = 0, j = 0;
    while (i < da || j < db) {
        if (j >= db || (i < da && a.id(i) <= b.id(j)))
            buf[n++] = a.id(i++);
        else
            buf[n++] = b.id(j++);
    }
    if (q > 1 && n >= static_cast<int>(q)) {
        // x^q = x: collapse every run of q equal ids to one
        int out = 0;
        for (int s = 0; s < n;) {
            int e = s;
            while (e < n && buf[e] == buf[s]) ++e;
            int run = e - s;
            while (run >= static_cast<int>(q)) run -= static_cast<int>(q) - 1;
            for (int t = 0; t < run; ++t) buf[out++] = buf[s];
            s = e;
        }
        n = out;
    }
    if (n > Monomial::kMaxDegree) throw Error(ErrorKind::Structural, "monomial degree too large");
    return pack_sorted(buf, n);
}

Poly Poly::from_terms(std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(), [](const Term& x, const Term& y) { return x.mono > y.mono; });
    Poly p;
    for (const Term& t : terms) {
        if (!p.terms_.empty() && p.terms_.back().mono == t.mono)
            p.terms_.back().coeff ^= t.coeff;
        else
            p.terms_.push_back(t);
        if (p.terms_.back().coeff == 0) p.terms_.pop_back();
    }
    return p;
}

Poly Poly::constant(Elem c) { return from_terms({Term{Monomial(), c}}); }

Poly Poly::var(int id) { return from_terms({Term{Monomial::var(id), 1}}); }

bool Poly::contains(int id) const {
    return std::any_of(terms_.begin(), terms_.end(), [&](const Term& t) { return t.mono.contains(id); });
}

Elem Poly::coeff(Monomial m) const {
    for (const Term& t : terms_)
        if (t.mono == m) return t.coeff;
    return 0;
}

Elem Poly::eval(const Field& f, std::span<const Elem> point) const {
    Elem acc = 0;
    for (const Term& t : terms_) {
        Elem v = t.coeff;
        for (int s = 0; s < t.mono.degree() && v; ++s) v = f.mul(v, point[t.mono.id(s)]);
        acc ^= v;
    }
    return acc;
}

Poly Poly::add(const Poly& other) const {
    std::vector<Term> all = terms_;
    all.insert(all.end(), other.terms_.begin(), other.terms_.end());
    return from_terms(std::move(all));
}

Poly Poly::scaled(const Field& f, Elem c) const {
    if (c == 0) return {};
    Poly p = *this;
    for (Term& t : p.terms_) t.coeff = f.mul(t.coeff, c);
    return p;
}

Poly Poly::times(const Field& f, Monomial m) const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const Term& t : terms_) out.push_back({mul(t.mono, m, f.order()), t.coeff});
    return from_terms(std::move(out));
}

Poly Poly::substitute(const Field& f, int id, const Poly& value) const {
    std::vector<Term> out;
    for (const Term& t : terms_) {
        if (!t.mono.contains(id)) {
            out.push_back(t);
            continue;
        }
        int rest[Monomial::kMaxDegree];
        int n = 0, e = 0;
        for (int s = 0; s < t.mono.degree(); ++s) {
            if (t.mono.id(s) == id)
                ++e;
            else
                rest[n++] = t.mono.id(s);
        }
        Poly acc = from_terms({Term{Monomial::from_ids(std::span<const int>(rest, n)), t.coeff}});
        for (int k = 0; k < e; ++k) {
            std::vector<Term> prod;
            for (const Term& a : acc.terms_)
                for (const Term& b : value.terms_) prod.push_back({mul(a.mono, b.mono, f.order()), f.mul(a.coeff, b.coeff)});
            acc = from_terms(std::move(prod));
        }
        out.insert(out.end(), acc.terms_.begin(), acc.terms_.end());
    }
    return from_terms(std::move(out));
}

bool operator==(const Poly& a, const Poly& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
        if (a.terms_[i].mono != b.terms_[i].mono || a.terms_[i].coeff != b.terms_[i].coeff) return false;
    return true;
}

void write_polys(std::ostream& os, std::span<const VarIndex> vars, std::span<const Poly> polys) {
    for (const Poly& p : polys) {
        os << "POLY";
        bool first = true;
        for (const Term& t : p.terms()) {
            os << (first ? " " : " + ") << to_hex(t.coeff);
            first = false;
            for (int s = 0; s < t.mono.degree();) {
                int e = s;
                while (e < t.mono.degree() && t.mono.id(e) == t.mono.id(s)) ++e;
                os << (s == 0 ? " " : " * ") << vars[t.mono.id(s)].name() << '^' << (e - s);
                s = e;
            }
        }
        if (first) os << " 0";
        os << '\n';
    }
}

std::vector<Poly> read_polys(std::istream& is, std::span<const VarIndex> vars) {
    std::map<std::string, int> ids;
    for (std::size_t v = 0; v < vars.size(); ++v) ids[vars[v].name()] = static_cast<int>(v);
    std::vector<Poly> out;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string tok;
        ls >> tok;
        if (tok != "POLY") throw Error(ErrorKind::Parse, "expected POLY line");
        std::vector<Term> terms;
        std::vector<int> mono;
        Elem coeff = 0;
        bool have = false;
        auto flush = [&] {
            if (have) terms.push_back({Monomial::from_ids(mono), coeff});
            mono.clear();
            have = false;
        };
        bool expect_coeff = true;
        while (ls >> tok) {
            if (tok == "+") {
                flush();
                expect_coeff = true;
            } else if (tok == "*") {
                continue;
            } else if (expect_coeff) {
                coeff = static_cast<Elem>(parse_hex(tok));
                have = true;
                expect_coeff = false;
            } else {
                const auto caret = tok.find('^');
                if (caret == std::string::npos) throw Error(ErrorKind::Parse, "expected <var>^<e>, got " + tok);
                const auto it = ids.find(tok.substr(0, caret));
                if (it == ids.end()) throw Error(ErrorKind::Parse, "unknown variable " + tok.substr(0, caret));
                const int e = std::stoi(tok.substr(caret + 1));
                for (int k = 0; k < e; ++k) mono.push_back(it->second);
            }
        }
        flush();
        out.push_back(Poly::from_terms(std::move(terms)));
    }
    return out;
}

}  // namespace dyadic
