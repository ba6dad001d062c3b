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
#include <map>
#include <span>
#include <string>
#include <vector>

#include "dyadic/dags.hpp"
#include "dyadic/macaulay.hpp"
#include "dyadic/system.hpp"

namespace dyadic {

struct AttackConfig {
    int a0 = -1;  // shortened blocks; -1 picks default_a0
    int dmax = -1;  // -1 picks default_dmax
    bool hybrid = false;
    int guess_width = 0;  // U variables enumerated by the hybrid attack
    std::uint64_t seed = 0;
    int jobs = 1;
    /// Pipeline attempts on the retry ladder, the first one included.
    int max_attempts = 10;
    /// Hybrid only: stop after this many branches (0 = the whole space).
    std::uint64_t max_guesses = 0;
    std::size_t mem_cap_mb = 0;
    bool parallel = true;
};

/// Shortening used when none is given: the measured best for the presets,
/// otherwise the largest a0 whose system keeps 1.5 equations per variable.
int default_a0(const ParamSet& p);

/// Degree cap when none is given: 3 for DAGS-5, whose stalls at degree 3 are
/// cheaper to branch on than to lift, 4 otherwise.
int default_dmax(const ParamSet& p);

struct AttackReport {
    std::string preset;
    bool success = false;
    std::string outcome;  // "success" or the error kind that ended the run
    std::string reason;
    int a0 = 0;
    int normalization = 0;
    std::uint64_t order_seed = 0;
    int attempts = 0;
    SolveStats solve;
    std::uint64_t groebner_cycles = 0, linalg_cycles = 0;
    double groebner_seconds = 0, linalg_seconds = 0;
    std::uint64_t guesses_tried = 0;
    std::map<std::string, std::uint64_t> histogram;  // hybrid branch outcomes
    bool equivalent = false;
    Vec x, z;  // recovered support and multipliers (empty on failure)

    /// One `key=value` per line.
    std::string to_text() const;
};

std::ostream& operator<<(std::ostream& os, const AttackReport& r);
AttackReport parse_report(std::istream& is);

AttackReport run_direct(const KeyPair& pub, const AttackConfig& cfg = {});

/// Enumerates the first cfg.guess_width U variables over GF(q) in a seeded
/// order and solves each specialized system; Infeasible prunes the branch.
/// A width of 0 is run_direct.
AttackReport hybrid_attack(const KeyPair& pub, const AttackConfig& cfg);

/// x = (w^q - w)^{-1} (w^q tr(x) - tr(w x)) over the tower field.
Vec trace_lift(const Field& tower, std::span<const Elem> tr_x, std::span<const Elem> tr_wx);

/// Support of the punctured code on the working blocks a0..n0-1, up to an
/// affine map, from a solution of the system (values of sys.vars). The trace
/// vectors come from the V-kernel for the solved U; the missing GF(q^2)
/// coordinate is fixed by the norm vector, which must also pass the equations.
Vec reconstruct_x(const BilinearSystem& sys, const KeyPair& pub, std::span<const Elem> solution);

/// Full support in key position order from the punctured one: checks the
/// block structure, then finds tau for each shortened block.
Vec complete_support(const BilinearSystem& sys, const KeyPair& pub, std::span<const Elem> px);

/// Multipliers z (one per position, constant on blocks) with the public code
/// inside A_r(x, z).
Vec recover_y(std::span<const Elem> x, const KeyPair& pub);

/// Steps after the solver for one solution: reconstruct, complete, recover
/// and compare codes. Returns false (with a reason) instead of throwing for
/// the contingencies that signal a wrong branch.
bool finish_key(const BilinearSystem& sys, const KeyPair& pub, std::span<const Elem> solution, Vec& x, Vec& z,
                std::string& reason);
/// Same, with the public code computed once by the caller.
bool finish_key(const BilinearSystem& sys, const KeyPair& pub, const Code& code, std::span<const Elem> solution, Vec& x,
                Vec& z, std::string& reason);

}  // namespace dyadic
