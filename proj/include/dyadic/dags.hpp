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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dyadic/codes.hpp"

namespace dyadic {

/// Quasi-dyadic alternant parameters: q = 2^s, extension degree m = 2,
/// blocks of 2^gamma positions, n = 2^gamma n0, k = 2^gamma k0, r = 2^gamma r0.
struct ParamSet {
    std::string name;
    int s = 0;
    int m = 2;
    int gamma = 0;
    int n0 = 0, k0 = 0, r0 = 0;

    std::uint32_t q() const { return 1u << s; }
    std::size_t block() const { return std::size_t{1} << gamma; }
    std::size_t n() const { return block() * static_cast<std::size_t>(n0); }
    std::size_t k() const { return block() * static_cast<std::size_t>(k0); }
    std::size_t r() const { return block() * static_cast<std::size_t>(r0); }
    /// c = m q^{m-1} / 2^gamma = q / 2^{gamma-1}.
    int c() const { return static_cast<int>(q() >> (gamma - 1)); }
    /// Dimension of the code D the attack looks for; may be <= 0.
    int dimD() const { return k0 - c(); }

    /// Throws InvalidParams when an invariant fails.
    void validate() const;
};

ParamSet preset(std::string_view name);
std::vector<std::string> preset_names();
/// Parameters from `s,gamma,n0,r0`.
ParamSet custom_params(int s, int gamma, int n0, int r0, std::string name = "CUSTOM");

struct KeyPair {
    ParamSet params;
    std::uint64_t seed = 0;
    FieldPtr tower;                         // GF(q^2) over GF(q)
    std::optional<DyadicSupport> secret;    // absent in public-only key files
    Mat h_pub;                              // (n-k) x n over GF(q), systematic

    const FieldPtr& base() const { return tower->base(); }
};

/// Deterministic given (params, seed). Block order is reshuffled until the
/// parity-check matrix has the identity on its leading n-k columns.
KeyPair keygen(const ParamSet& p, std::uint64_t seed);

/// Generator of the public code A_r (the right kernel of H_pub).
Code public_code(const KeyPair& key);

/// True when the alternant code defined by (x, z) equals the public code.
bool key_equivalent(std::span<const Elem> x, std::span<const Elem> z, const KeyPair& key);

void write_key(std::ostream& os, const KeyPair& key, bool include_secret = true);
KeyPair read_key(std::istream& is);

}  // namespace dyadic
