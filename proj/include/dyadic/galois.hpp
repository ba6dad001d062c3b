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

#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "dyadic/error.hpp"

namespace dyadic {

/// Raw field element: bit-packed coefficient vector. For GF(2^s) bit i is the
/// coefficient of alpha^i; for a tower GF(q^2) = GF(q)[w] the low s bits hold the
/// coefficient of 1 and the next s bits the coefficient of w.
using Elem = std::uint16_t;

/// GF(2^s) given by an irreducible polynomial, encoded as an (s+1)-bit mask.
struct FieldSpec {
    int s = 0;
    std::uint32_t modulus = 0;

    bool operator==(const FieldSpec&) const = default;
};

/// GF(q^2) built as base[w]/(w^2 + a w + b).
struct TowerSpec {
    FieldSpec base;
    Elem a = 0;
    Elem b = 0;

    bool operator==(const TowerSpec&) const = default;
};

bool is_irreducible_gf2(std::uint32_t poly);

/// Lexicographically least irreducible polynomial of degree s over GF(2).
std::uint32_t least_irreducible(int s);

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// A finite field of characteristic 2 with at most 2^16 elements.
///
/// Flat fields GF(2^s) are stored in polynomial basis; the quadratic extension
/// of a base GF(q), q <= 2^8, is always a tower over that base so that trace
/// and norm to GF(q) are a couple of base-field operations. Multiplication goes
/// through exp/log tables in both cases. Instances are immutable.
class Field {
public:
    static FieldPtr binary(int s, std::uint32_t modulus = 0);
    static FieldPtr binary(const FieldSpec& spec) { return binary(spec.s, spec.modulus); }
    static FieldPtr quadratic(FieldPtr base, Elem a = 0, Elem b = 0);
    static FieldPtr tower(const TowerSpec& spec);

    std::uint32_t order() const { return order_; }
    int bits() const { return bits_; }
    bool is_tower() const { return base_ != nullptr; }
    const FieldPtr& base() const { return base_; }
    FieldSpec spec() const { return spec_; }
    TowerSpec tower_spec() const;
    std::uint64_t tag() const { return tag_; }
    bool same_as(const Field& other) const { return tag_ == other.tag_; }

    bool contains(Elem x) const { return x < order_; }

    static Elem add(Elem x, Elem y) { return x ^ y; }

    Elem mul(Elem x, Elem y) const {
        if (x == 0 || y == 0) return 0;
        return exp_[log_[x] + log_[y]];
    }

    Elem inv(Elem x) const {
        if (x == 0) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
        return exp_[(order_ - 1 - log_[x]) % (order_ - 1)];
    }

    Elem div(Elem x, Elem y) const { return mul(x, inv(y)); }
    Elem sqr(Elem x) const { return mul(x, x); }
    Elem pow(Elem x, std::uint64_t e) const;

    /// Discrete log with respect to the table generator; x must be nonzero.
    std::uint32_t log(Elem x) const { return log_[x]; }
    Elem exp(std::uint64_t e) const { return exp_[e % (order_ - 1)]; }
    Elem generator() const { return exp_[1]; }

    const std::vector<Elem>& exp_table() const { return exp_; }
    const std::vector<std::uint32_t>& log_table() const { return log_; }

    // Tower-only accessors. Base elements embed as the values below base().order().
    Elem omega() const;
    Elem poly_a() const { return a_; }
    Elem poly_b() const { return b_; }
    bool in_base(Elem x) const { return x < base_order(); }
    Elem coord0(Elem x) const { return static_cast<Elem>(x & (base_order() - 1)); }
    Elem coord1(Elem x) const { return static_cast<Elem>(x >> base_bits()); }
    Elem from_coords(Elem c0, Elem c1) const { return static_cast<Elem>(c0 | (c1 << base_bits())); }
    Elem frobenius(Elem x) const;  // x^q
    Elem trace(Elem x) const;      // x + x^q
    Elem norm(Elem x) const;       // x^(q+1)

    /// `GF2E s=<s> mod=<hex>` and, for towers, a second line `TOWER a=<hex> b=<hex>`.
    std::string header() const;

private:
    Field() = default;
    std::uint32_t base_order() const;
    int base_bits() const;
    void build_tables(Elem (*slow_mul)(const Field&, Elem, Elem));

    FieldSpec spec_;
    FieldPtr base_;
    Elem a_ = 0, b_ = 0;
    std::uint32_t order_ = 0;
    int bits_ = 0;
    std::uint64_t tag_ = 0;
    std::vector<Elem> exp_;
    std::vector<std::uint32_t> log_;
};

/// Field element carrying its field, for the checked public API. Mixing
/// elements of different fields throws a structural error.
class Element {
public:
    Element(const Field& f, Elem v);

    const Field& field() const { return *field_; }
    Elem value() const { return v_; }
    bool is_zero() const { return v_ == 0; }

    friend Element operator+(const Element& x, const Element& y);
    friend Element operator*(const Element& x, const Element& y);
    friend bool operator==(const Element& x, const Element& y);
    Element inv() const;

private:
    const Field* field_;
    Elem v_;
};

Element mul(const Element& x, const Element& y);
Element inv(const Element& x);
/// Trace GF(q^2) -> GF(q); the result is tagged with the base field.
Element trace_q2_to_q(const Element& x);
Element norm_q2_to_q(const Element& x);

std::string to_hex(std::uint64_t v);
std::uint64_t parse_hex(const std::string& s);

}  // namespace dyadic
