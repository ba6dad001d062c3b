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
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "dyadic/galois.hpp"

namespace dyadic {

enum class VarKind : std::uint8_t { U = 0, T = 1, B = 2 };

/// Names one unknown of the key-recovery system: U(i,j), T(i) or B(i), with
/// 1-based indices as they appear in dumps (`U_i_j`, `T_i`, `B_i`).
struct VarIndex {
    VarKind kind = VarKind::U;
    int i = 0;
    int j = 0;

    std::string name() const;
    auto operator<=>(const VarIndex&) const = default;
};

VarIndex parse_var(const std::string& name);

/// A monomial of total degree at most Monomial::kMaxDegree in variables with
/// ids below kMaxVars. The packed key orders monomials by degree first, then
/// lexicographically with variable 0 largest, so comparing keys as integers
/// is the graded order used by the solver.
class Monomial {
public:
    static constexpr int kMaxDegree = 6;
    static constexpr int kMaxVars = 1023;

    Monomial() = default;
    static Monomial var(int id);
    static Monomial from_ids(std::span<const int> ids);  // any order, repeats allowed
    static Monomial from_key(std::uint64_t key) { return Monomial(key); }

    int degree() const { return static_cast<int>(key_ >> 60); }
    int id(int slot) const { return kMaxVars - static_cast<int>((key_ >> (50 - 10 * slot)) & 1023); }
    std::uint64_t key() const { return key_; }
    bool contains(int id) const;

    /// Product; exponents are reduced with x^q = x when q > 0.
    friend Monomial mul(Monomial a, Monomial b, std::uint32_t q);

    auto operator<=>(const Monomial&) const = default;

private:
    explicit Monomial(std::uint64_t key) : key_(key) {}
    std::uint64_t key_ = 0;
};

struct Term {
    Monomial mono;
    Elem coeff = 0;
};

/// Polynomial over a flat field GF(q): terms sorted by decreasing monomial,
/// no zero coefficients, no repeated monomials.
class Poly {
public:
    Poly() = default;
    /// Collects arbitrary terms, summing duplicates and dropping zeros.
    static Poly from_terms(std::vector<Term> terms);
    static Poly constant(Elem c);
    static Poly var(int id);

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int degree() const { return terms_.empty() ? -1 : terms_.front().mono.degree(); }
    const Term& leading() const { return terms_.front(); }
    bool contains(int id) const;
    /// Coefficient of the monomial, zero when absent.
    Elem coeff(Monomial m) const;

    Elem eval(const Field& f, std::span<const Elem> point) const;
    Poly add(const Poly& other) const;
    Poly scaled(const Field& f, Elem c) const;
    Poly times(const Field& f, Monomial m) const;
    /// Replaces variable `id` by the polynomial `value`.
    Poly substitute(const Field& f, int id, const Poly& value) const;

    friend bool operator==(const Poly& a, const Poly& b);

private:
    std::vector<Term> terms_;
};

/// One polynomial per line: `POLY <coeff> <var>^<e> * <var>^<e> + <coeff> ...`
/// with hexadecimal coefficients; a constant term is a bare coefficient.
void write_polys(std::ostream& os, std::span<const VarIndex> vars, std::span<const Poly> polys);
std::vector<Poly> read_polys(std::istream& is, std::span<const VarIndex> vars);

}  // namespace dyadic
