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

#include <span>
#include <string>

#include "dyadic/dags.hpp"

namespace dyadic {

/// Shape of the system left after guessing `guessed` U variables, taken row by
/// row. A fully guessed row turns its equations into linear ones in V.
struct HybridShape {
    int dim_d = 0;
    int guessed = 0;
    int vars = 0;
    int linear = 0;
    int bilinear = 0;
};

HybridShape hybrid_shape(const ParamSet& p, int dim_d, int guessed);

struct WorkFactor {
    int guessed = 0;      // U variables enumerated
    double log2_ops = 0;  // log2 of the total count
};

/// Guess enough U rows that the linear equations in V outnumber its unknowns,
/// then solve one linear system of size n_V per guess: q^guessed * n_V^3.
WorkFactor estimate_linear_only(const ParamSet& p);

/// (q^guessed - 1) wrong branches at 2^log2_false each plus one true branch at
/// 2^log2_true. With nothing guessed this is the direct solve, 2^log2_true.
WorkFactor estimate_hybrid(const ParamSet& p, int guessed, double log2_false, double log2_true);

/// log2(2^a + 2^b) without overflow.
double log2_sum(double a, double b);

/// Measured Magma costs for DAGS-1.1 with one U row (8 variables) guessed,
/// used as estimator inputs.
struct HybridReference {
    int dim_d;
    int vars, linear, bilinear;
    double log2_false, log2_true, log2_total;
};

std::span<const HybridReference> dags11_hybrid_reference();

}  // namespace dyadic
