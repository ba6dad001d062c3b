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
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dyadic/dags.hpp"
#include "dyadic/polynomial.hpp"

namespace dyadic {

/// orbit(B_1, ..., B_gamma) as bit masks: entry p holds B_{k+1} exactly when
/// bit k of p is set, so entry 0 is the empty sum.
std::vector<std::uint32_t> orbit_vector(int gamma);
std::string orbit_entry(std::uint32_t mask);  // "0", "B1", "B1+B3", ...

struct ShapeCounts {
    int dim_d = 0;         // dim of the shortened D
    int c = 0;
    int n_u = 0, n_t = 0, n_b = 0;
    int quads = 0;         // bilinear equations kept
    int eliminations = 0;  // equations solved for a T variable

    int n_v() const { return n_t + n_b; }
    int vars() const { return n_u + n_v(); }
    double ratio() const { return vars() ? static_cast<double>(quads) / vars() : 0.0; }
    bool operator==(const ShapeCounts&) const = default;
};

/// Closed-form shape for a0 shortened blocks; NonexistentD when k0 <= c,
/// InvalidParams when a0 lies outside [0, k0 - c].
ShapeCounts count_system(const ParamSet& p, int a0);

struct BuildOptions {
    /// 0 pins B_1 = 0, B_2 = 1; level L pins B_1..B_{L+1} = 0 and B_{L+2} = 1.
    int normalization = 0;
    /// Keep one parity row per dyadic block and eliminate the T variables of
    /// the identity part of D. When false every row of the parity check is
    /// used and no variable is eliminated.
    bool dedupe = true;
    /// Block orders are tried starting from this index: order 0 is the key's
    /// own block order, later ones are seeded shuffles.
    std::uint64_t order_seed = 0;
    int max_orders = 50;
};

struct BilinearSystem {
    FieldPtr field;  // GF(q)
    ParamSet params;
    int a0 = 0;
    int normalization = 0;
    ShapeCounts counts;

    std::vector<VarIndex> vars;
    std::vector<Poly> polys;
    /// T variables of the identity part, each equal to a polynomial in vars.
    std::vector<std::pair<VarIndex, Poly>> eliminated;
    /// Variables pinned by normalization or specialization.
    std::vector<std::pair<VarIndex, Elem>> pinned;

    /// Working block order: working block b is block block_order[b] of the key.
    std::vector<std::size_t> block_order;
    /// Compressed invariant code, systematic on its first k0 blocks (k0 x n0).
    Mat g_sys;
    /// Shortened parity check rows used to build the equations, restricted to
    /// the blocks a0..n0-1 (working order).
    Mat h_rows;

    int var_id(const VarIndex& v) const;  // -1 when absent
};

BilinearSystem build_system(const KeyPair& pub, int a0, const BuildOptions& opt = {});

/// Substitutes the assignment (variable ids of sys) and drops those variables.
BilinearSystem specialize(const BilinearSystem& sys, std::span<const std::pair<int, Elem>> assignment);

/// Values of every variable named in the system (vars, eliminated, pinned)
/// for an assignment of sys.vars.
std::vector<std::pair<VarIndex, Elem>> complete_assignment(const BilinearSystem& sys, std::span<const Elem> values);

/// Linear equations on the unnormalized V = (T for blocks a0..n0-1, B_1..B_gamma)
/// once the d x c matrix U is fixed; the kernel of the returned matrix contains
/// the trace-type vectors.
Mat v_equations(const BilinearSystem& sys, const Mat& u);

}  // namespace dyadic
