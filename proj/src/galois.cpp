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

#include "dyadic/galois.hpp"

#include <bit>
#include <cstdio>
#include <stdexcept>

namespace dyadic {

namespace {

int degree_of(std::uint32_t p) { return p == 0 ? -1 : 31 - std::countl_zero(p); }

std::uint32_t gf2_mod(std::uint32_t a, std::uint32_t m) {
    const int dm = degree_of(m);
    for (int d = degree_of(a); d >= dm; d = degree_of(a)) a ^= m << (d - dm);
    return a;
}

Elem flat_slow_mul(const Field& f, Elem x, Elem y) {
    std::uint32_t acc = 0;
    for (int i = 0; i < 16; ++i)
        if ((y >> i) & 1u) acc ^= static_cast<std::uint32_t>(x) << i;
    return static_cast<Elem>(gf2_mod(acc, f.spec().modulus));
}

Elem tower_slow_mul(const Field& f, Elem x, Elem y) {
    const Field& k = *f.base();
    const Elem x0 = f.coord0(x), x1 = f.coord1(x), y0 = f.coord0(y), y1 = f.coord1(y);
    const Elem hi = k.mul(x1, y1);
    // w^2 = a w + b
    const Elem c0 = k.mul(x0, y0) ^ k.mul(hi, f.poly_b());
    const Elem c1 = k.mul(x0, y1) ^ k.mul(x1, y0) ^ k.mul(hi, f.poly_a());
    return f.from_coords(c0, c1);
}

std::vector<std::uint32_t> prime_factors(std::uint32_t n) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        out.push_back(p);
        while (n % p == 0) n /= p;
    }
    if (n > 1) out.push_back(n);
    return out;
}

}  // namespace

bool is_irreducible_gf2(std::uint32_t poly) {
    const int d = degree_of(poly);
    if (d < 1) return false;
    if (d == 1) return true;
    for (std::uint32_t g = 2; degree_of(g) <= d / 2; ++g)
        if (gf2_mod(poly, g) == 0) return false;
    return true;
}

std::uint32_t least_irreducible(int s) {
    if (s < 1 || s > 16) throw Error(ErrorKind::InvalidParams, "extension degree out of range");
    for (std::uint32_t p = 1u << s; p < (2u << s); ++p)
        if (is_irreducible_gf2(p)) return p;
    throw Error(ErrorKind::InvalidParams, "no irreducible polynomial");  // unreachable
}

void Field::build_tables(Elem (*slow_mul)(const Field&, Elem, Elem)) {
    const std::uint32_t n = order_ - 1;
    const auto factors = prime_factors(n);
    auto slow_pow = [&](Elem x, std::uint32_t e) {
        Elem r = 1;
        while (e) {
            if (e & 1u) r = slow_mul(*this, r, x);
            x = slow_mul(*this, x, x);
            e >>= 1;
        }
        return r;
    };
    Elem gen = 0;
    for (std::uint32_t g = 2; g < order_ && gen == 0; ++g) {
        bool primitive = true;
        for (auto p : factors)
            if (slow_pow(static_cast<Elem>(g), n / p) == 1) primitive = false;
        if (primitive) gen = static_cast<Elem>(g);
    }
    if (order_ == 2) gen = 1;
    exp_.assign(2 * static_cast<std::size_t>(n), 0);
    log_.assign(order_, 0);
    Elem x = 1;
    for (std::uint32_t i = 0; i < n; ++i) {
        exp_[i] = exp_[i + n] = x;
        log_[x] = i;
        x = slow_mul(*this, x, gen);
    }
}

FieldPtr Field::binary(int s, std::uint32_t modulus) {
    if (s < 1 || s > 16) throw Error(ErrorKind::InvalidParams, "GF(2^s) needs 1 <= s <= 16");
    if (modulus == 0) modulus = least_irreducible(s);
    if (degree_of(modulus) != s) throw Error(ErrorKind::InvalidParams, "modulus degree differs from s");
    if (!is_irreducible_gf2(modulus)) throw Error(ErrorKind::InvalidParams, "modulus " + to_hex(modulus) + " is reducible");
    std::shared_ptr<Field> f(new Field());
    f->spec_ = {s, modulus};
    f->order_ = 1u << s;
    f->bits_ = s;
    f->tag_ = modulus;
    f->build_tables(&flat_slow_mul);
    return f;
}

FieldPtr Field::quadratic(FieldPtr base, Elem a, Elem b) {
    if (!base || base->is_tower()) throw Error(ErrorKind::InvalidParams, "tower base must be a flat field");
    if (base->bits() > 8) throw Error(ErrorKind::InvalidParams, "tower base limited to GF(2^8)");
    const std::uint32_t q = base->order();
    auto has_root = [&](Elem pa, Elem pb) {
        for (std::uint32_t t = 0; t < q; ++t) {
            const Elem v = static_cast<Elem>(base->mul(static_cast<Elem>(t), static_cast<Elem>(t)) ^
                                             base->mul(pa, static_cast<Elem>(t)) ^ pb);
            if (v == 0) return true;
        }
        return false;
    };
    if (a == 0 && b == 0) {
        bool found = false;
        for (std::uint32_t ta = 1; ta < q && !found; ++ta)
            for (std::uint32_t tb = 0; tb < q && !found; ++tb)
                if (!has_root(static_cast<Elem>(ta), static_cast<Elem>(tb))) {
                    a = static_cast<Elem>(ta);
                    b = static_cast<Elem>(tb);
                    found = true;
                }
    }
    if (a >= q || b >= q) throw Error(ErrorKind::InvalidParams, "tower coefficients outside base field");
    if (has_root(a, b)) throw Error(ErrorKind::InvalidParams, "w^2 + a w + b is reducible over the base");
    std::shared_ptr<Field> f(new Field());
    f->spec_ = base->spec();
    f->base_ = std::move(base);
    f->a_ = a;
    f->b_ = b;
    f->bits_ = 2 * f->spec_.s;
    f->order_ = 1u << f->bits_;
    f->tag_ = (1ull << 63) | (static_cast<std::uint64_t>(f->spec_.modulus) << 32) |
              (static_cast<std::uint64_t>(a) << 16) | b;
    f->build_tables(&tower_slow_mul);
    return f;
}

FieldPtr Field::tower(const TowerSpec& spec) { return quadratic(binary(spec.base), spec.a, spec.b); }

TowerSpec Field::tower_spec() const {
    if (!is_tower()) throw Error(ErrorKind::Structural, "not a tower field");
    return {spec_, a_, b_};
}

std::uint32_t Field::base_order() const {
    if (!is_tower()) throw Error(ErrorKind::Structural, "not a tower field");
    return base_->order();
}

int Field::base_bits() const {
    if (!is_tower()) throw Error(ErrorKind::Structural, "not a tower field");
    return base_->bits();
}

Elem Field::pow(Elem x, std::uint64_t e) const {
    if (e == 0) return 1;
    if (x == 0) return 0;
    return exp_[(static_cast<std::uint64_t>(log_[x]) * (e % (order_ - 1))) % (order_ - 1)];
}

Elem Field::omega() const { return static_cast<Elem>(1u << base_bits()); }

Elem Field::frobenius(Elem x) const {
    // w^q is the other root of w^2 + a w + b, namely w + a.
    const Elem c1 = coord1(x);
    return from_coords(static_cast<Elem>(coord0(x) ^ base_->mul(c1, a_)), c1);
}

Elem Field::trace(Elem x) const { return base_->mul(a_, coord1(x)); }

Elem Field::norm(Elem x) const {
    const Field& k = *base_;
    const Elem c0 = coord0(x), c1 = coord1(x);
    return static_cast<Elem>(k.sqr(c0) ^ k.mul(a_, k.mul(c0, c1)) ^ k.mul(b_, k.sqr(c1)));
}

std::string Field::header() const {
    std::string h = "GF2E s=" + std::to_string(spec_.s) + " mod=" + to_hex(spec_.modulus);
    if (is_tower()) h += "\nTOWER a=" + to_hex(a_) + " b=" + to_hex(b_);
    return h;
}

Element::Element(const Field& f, Elem v) : field_(&f), v_(v) {
    if (!f.contains(v)) throw Error(ErrorKind::Structural, "value outside field");
}

static void check_same(const Element& x, const Element& y) {
    if (!x.field().same_as(y.field())) throw Error(ErrorKind::Structural, "field mismatch");
}

Element operator+(const Element& x, const Element& y) {
    check_same(x, y);
    return Element(x.field(), Field::add(x.value(), y.value()));
}

Element operator*(const Element& x, const Element& y) {
    check_same(x, y);
    return Element(x.field(), x.field().mul(x.value(), y.value()));
}

bool operator==(const Element& x, const Element& y) {
    return x.field().same_as(y.field()) && x.value() == y.value();
}

Element Element::inv() const { return Element(*field_, field_->inv(v_)); }

Element mul(const Element& x, const Element& y) { return x * y; }
Element inv(const Element& x) { return x.inv(); }

Element trace_q2_to_q(const Element& x) {
    if (!x.field().is_tower()) throw Error(ErrorKind::Structural, "trace needs a tower element");
    return Element(*x.field().base(), x.field().trace(x.value()));
}

Element norm_q2_to_q(const Element& x) {
    if (!x.field().is_tower()) throw Error(ErrorKind::Structural, "norm needs a tower element");
    return Element(*x.field().base(), x.field().norm(x.value()));
}

std::string to_hex(std::uint64_t v) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "%llx", static_cast<unsigned long long>(v));
    return buf;
}

std::uint64_t parse_hex(const std::string& s) {
    if (s.empty()) throw Error(ErrorKind::Parse, "empty hex field");
    std::size_t pos = 0;
    std::uint64_t v = 0;
    try {
        v = std::stoull(s, &pos, 16);
    } catch (const std::exception&) {
        throw Error(ErrorKind::Parse, "bad hex '" + s + "'");
    }
    if (pos != s.size()) throw Error(ErrorKind::Parse, "bad hex '" + s + "'");
    return v;
}

}  // namespace dyadic
