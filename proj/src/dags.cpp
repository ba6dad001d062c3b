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

#include "dyadic/dags.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include "dyadic/rng.hpp"

namespace dyadic {

namespace {

struct PresetRow {
    const char* name;
    int s, gamma, n0, k0, r0;
};

// The first six rows are the published DAGS sets. The DESK rows are small sets
// of the same shape: DESK-A is the end-to-end target, DESK-B has c = 2 so one
// U row is only 256 guesses, DESK-C has c = 8 like DAGS-1.1.
constexpr PresetRow kPresets[] = {
    {"DAGS-1", 5, 4, 52, 26, 13},   {"DAGS-3", 6, 5, 38, 16, 11},   {"DAGS-5", 6, 6, 33, 11, 11},
    {"DAGS-1.1", 6, 4, 52, 26, 13}, {"DAGS-3.1", 8, 5, 38, 16, 11}, {"DAGS-5.1", 8, 5, 50, 28, 11},
    {"DESK-A", 4, 3, 30, 10, 10},   {"DESK-B", 4, 4, 15, 5, 5},     {"DESK-C", 5, 3, 44, 12, 16},
};

constexpr int kMaxSamplingFailures = 1000;

}  // namespace

void ParamSet::validate() const {
    auto fail = [&](const std::string& why) { throw Error(ErrorKind::InvalidParams, name + ": " + why); };
    if (m != 2) fail("only quadratic extensions (m = 2) are supported");
    if (s < 1 || s > 8) fail("q = 2^s needs 1 <= s <= 8");
    if (gamma < 1 || gamma - 1 > s) fail("c = q / 2^(gamma-1) must be a positive integer");
    if (n0 < 1 || r0 < 1) fail("n0 and r0 must be positive");
    if (k0 != n0 - 2 * r0) fail("k0 must equal n0 - 2 r0");
    if (k0 < 1) fail("k0 must be positive");
    if (n() > static_cast<std::size_t>(q()) * q()) fail("n exceeds q^2, the support cannot be distinct");
}

ParamSet preset(std::string_view name) {
    for (const auto& row : kPresets)
        if (name == row.name) {
            ParamSet p{row.name, row.s, 2, row.gamma, row.n0, row.k0, row.r0};
            p.validate();
            return p;
        }
    throw Error(ErrorKind::UnknownPreset, std::string(name));
}

std::vector<std::string> preset_names() {
    std::vector<std::string> out;
    for (const auto& row : kPresets) out.emplace_back(row.name);
    return out;
}

ParamSet custom_params(int s, int gamma, int n0, int r0, std::string name) {
    ParamSet p{std::move(name), s, 2, gamma, n0, n0 - 2 * r0, r0};
    p.validate();
    return p;
}

KeyPair keygen(const ParamSet& p, std::uint64_t seed) {
    p.validate();
    Rng rng(seed);
    FieldPtr tower = Field::quadratic(Field::binary(p.s));
    const std::uint32_t order = tower->order();
    const std::size_t n0 = static_cast<std::size_t>(p.n0);
    int failures = 0;
    auto fail = [&](const char* why) {
        if (++failures > kMaxSamplingFailures) throw Error(ErrorKind::SamplingExhausted, why);
    };

    while (true) {
        // b: gamma elements independent over GF(2)
        Vec b;
        while (true) {
            b.clear();
            for (int i = 0; i < p.gamma; ++i) b.push_back(static_cast<Elem>(1 + rng.below(order - 1)));
            const Vec g = group_elements(b);
            if (std::unordered_set<Elem>(g.begin(), g.end()).size() == g.size()) break;
            fail("could not draw an independent b");
        }
        const Vec g = group_elements(b);
        // tau: pairwise disjoint cosets
        Vec tau;
        std::unordered_set<Elem> used;
        while (tau.size() < n0) {
            const auto t = static_cast<Elem>(rng.below(order));
            bool clash = false;
            for (Elem gp : g) clash = clash || used.count(t ^ gp);
            if (clash) {
                fail("could not draw disjoint cosets");
                continue;
            }
            for (Elem gp : g) used.insert(t ^ gp);
            tau.push_back(t);
        }
        Vec y;
        for (std::size_t i = 0; i < n0; ++i) y.push_back(static_cast<Elem>(1 + rng.below(order - 1)));

        // reorder blocks until the parity check is systematic on its leading columns
        std::vector<std::size_t> order_blocks(n0);
        for (std::size_t i = 0; i < n0; ++i) order_blocks[i] = i;
        for (int attempt = 0; attempt < 50; ++attempt) {
            Vec t2, y2;
            for (auto i : order_blocks) {
                t2.push_back(tau[i]);
                y2.push_back(y[i]);
            }
            DyadicSupport sup = dyadic_support(tower, b, t2, y2, p.gamma);
            const Mat parity = alternant_parity(*tower, sup.x, sup.z, p.r());
            auto r = rref(parity);
            if (r.rank() != p.n() - p.k()) break;  // dimension above k: redraw the key
            bool systematic = true;
            for (std::size_t i = 0; i < r.rank(); ++i) systematic = systematic && r.pivots[i] == i;
            if (systematic) {
                KeyPair key;
                key.params = p;
                key.seed = seed;
                key.tower = tower;
                key.secret = std::move(sup);
                key.h_pub = r.m.row_range(0, r.rank());
                return key;
            }
            rng.shuffle(order_blocks);
        }
        fail("no systematic block order");
    }
}

Code public_code(const KeyPair& key) { return Code(kernel_basis(key.h_pub)); }

bool key_equivalent(std::span<const Elem> x, std::span<const Elem> z, const KeyPair& key) {
    const ParamSet& p = key.params;
    if (x.size() != p.n() || z.size() != p.n()) return false;
    try {
        check_support(*key.tower, x, z);
    } catch (const Error&) {
        return false;
    }
    const Code a = alternant_code(key.tower, x, z, p.r());
    const std::size_t k_pub = p.n() - rank(key.h_pub);
    if (a.dimension() != k_pub) return false;
    return (key.h_pub * a.generator().transpose()).is_zero();
}

namespace {

void write_list(std::ostream& os, const char* tag, const Vec& v) {
    os << tag;
    for (Elem e : v) os << ' ' << to_hex(e);
    os << '\n';
}

std::map<std::string, std::string> parse_kv(std::istringstream& line) {
    std::map<std::string, std::string> kv;
    std::string tok;
    while (line >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) throw Error(ErrorKind::Parse, "expected key=value, got '" + tok + "'");
        kv[tok.substr(0, eq)] = tok.substr(eq + 1);
    }
    return kv;
}

Vec read_list(std::istringstream& line) {
    Vec v;
    std::string tok;
    while (line >> tok) v.push_back(static_cast<Elem>(parse_hex(tok)));
    return v;
}

}  // namespace

void write_key(std::ostream& os, const KeyPair& key, bool include_secret) {
    const ParamSet& p = key.params;
    os << "PARAMS name=" << p.name << " s=" << p.s << " gamma=" << p.gamma << " n0=" << p.n0 << " r0=" << p.r0 << '\n';
    os << "SEED " << to_hex(key.seed) << '\n';
    os << key.tower->header() << '\n';
    if (include_secret && key.secret) {
        write_list(os, "B", key.secret->b);
        write_list(os, "TAU", key.secret->tau);
        write_list(os, "Y", key.secret->y);
    }
    os << "PARITY n=" << p.n() << " rows=" << key.h_pub.rows() << " field=" << to_hex(key.base()->spec().modulus) << '\n';
    write_mat(os, key.h_pub);
}

KeyPair read_key(std::istream& is) {
    KeyPair key;
    std::optional<FieldSpec> base;
    std::optional<Vec> b, tau, y;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "PARAMS") {
            auto kv = parse_kv(ls);
            try {
                key.params = custom_params(std::stoi(kv.at("s")), std::stoi(kv.at("gamma")), std::stoi(kv.at("n0")),
                                           std::stoi(kv.at("r0")), kv.count("name") ? kv["name"] : "CUSTOM");
            } catch (const std::out_of_range&) {
                throw Error(ErrorKind::Parse, "PARAMS line incomplete");
            }
        } else if (tag == "SEED") {
            std::string h;
            ls >> h;
            key.seed = parse_hex(h);
        } else if (tag == "GF2E") {
            auto kv = parse_kv(ls);
            base = FieldSpec{std::stoi(kv.at("s")), static_cast<std::uint32_t>(parse_hex(kv.at("mod")))};
        } else if (tag == "TOWER") {
            auto kv = parse_kv(ls);
            if (!base) throw Error(ErrorKind::Parse, "TOWER before GF2E");
            key.tower = Field::tower({*base, static_cast<Elem>(parse_hex(kv.at("a"))),
                                      static_cast<Elem>(parse_hex(kv.at("b")))});
        } else if (tag == "B") {
            b = read_list(ls);
        } else if (tag == "TAU") {
            tau = read_list(ls);
        } else if (tag == "Y") {
            y = read_list(ls);
        } else if (tag == "PARITY") {
            if (!key.tower) throw Error(ErrorKind::Parse, "PARITY before field header");
            auto kv = parse_kv(ls);
            if (parse_hex(kv.at("field")) != key.base()->spec().modulus)
                throw Error(ErrorKind::Parse, "PARITY field modulus mismatch");
            key.h_pub = read_mat(is, key.base());
            if (key.h_pub.cols() != std::stoul(kv.at("n")) || key.h_pub.rows() != std::stoul(kv.at("rows")))
                throw Error(ErrorKind::Parse, "PARITY shape mismatch");
            break;
        } else {
            throw Error(ErrorKind::Parse, "unknown key line '" + tag + "'");
        }
    }
    if (!key.tower || key.h_pub.empty()) throw Error(ErrorKind::Parse, "key file lacks field header or public code");
    if (key.params.s != key.tower->base()->spec().s) throw Error(ErrorKind::Parse, "PARAMS s disagrees with field");
    if (key.h_pub.cols() != key.params.n()) throw Error(ErrorKind::Parse, "public code length disagrees with PARAMS");
    if (b && tau && y) key.secret = dyadic_support(key.tower, *b, *tau, *y, key.params.gamma);
    return key;
}

}  // namespace dyadic
