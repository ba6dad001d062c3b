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

#include <cstddef>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "dyadic/polynomial.hpp"
#include "dyadic/system.hpp"

namespace dyadic {

enum class SolveStatus { Solved, Infeasible, DegreeExceeded, ResourceExceeded };
std::string to_string(SolveStatus s);

struct SolveOptions {
    int dmax = 4;
    /// Cap on a single Macaulay matrix, in MiB; 0 reads DYADIC_MEM_CAP_MB and
    /// falls back to 8 GiB.
    std::size_t mem_cap_mb = 0;
    /// Finish by enumeration once the remaining equations involve at most
    /// this many variables.
    int exhaustive_vars = 2;
    /// When elimination stalls past dmax with at most branch_vars variables
    /// left, split on one variable over GF(q), up to branch_depth levels.
    int branch_vars = 8;
    int branch_depth = 1;
    /// false selects the serial reference kernels.
    bool parallel = true;
    /// One line per reduced matrix when set.
    std::ostream* trace = nullptr;
};

struct SolveStats {
    int max_degree = 0;              // highest Macaulay degree built
    std::size_t rows = 0, cols = 0;  // largest matrix
    int passes = 0;                  // Macaulay matrices reduced
    int linear = 0;                  // linear equations harvested
    int branches = 0;                // specializations solved after a stall
    double seconds = 0;
    std::uint64_t cycles = 0;

    /// `SOLVE maxdeg=<d> rows=<r> cols=<c> outcome=<...>`
    std::string line(SolveStatus s) const;
};

struct SolveOutcome {
    SolveStatus status = SolveStatus::DegreeExceeded;
    SolveStats stats;
    FieldPtr field;
    std::size_t nvars = 0;
    std::vector<Poly> original;
    /// Determined variables, each an affine polynomial in free variables.
    std::vector<std::pair<int, Poly>> determined;
    std::vector<int> free_vars;
    /// Equations left over the free variables (at most exhaustive_vars of them
    /// occur), with the points of those variables that satisfy them.
    std::vector<Poly> residual;
    std::vector<int> residual_vars;
    std::vector<std::vector<Elem>> residual_points;
    /// Set when the solver split on branch_var: the solutions are listed in
    /// `points` instead. `partial` means some branch stayed unresolved.
    bool branched = false;
    int branch_var = -1;
    bool partial = false;
    std::vector<std::vector<Elem>> points;
    /// For Infeasible: where the nonzero constant appeared.
    std::string certificate;
};

SolveOutcome macaulay_solve(const FieldPtr& field, std::size_t nvars, std::vector<Poly> polys,
                            const SolveOptions& opt = {});
SolveOutcome macaulay_solve(const BilinearSystem& sys, const SolveOptions& opt = {});

/// Every GF(q) point of a Solved outcome, each re-checked against the
/// original equations; SolutionSpaceTooLarge beyond `cap` points.
std::vector<std::vector<Elem>> extract_solutions(const SolveOutcome& out, std::size_t cap = 10000);

/// Cycle counter used for the phase timings.
std::uint64_t cycle_count();

}  // namespace dyadic
