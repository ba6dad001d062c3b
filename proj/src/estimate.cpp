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

#include "dyadic/estimate.hpp"

#include <cmath>

#include "dyadic/system.hpp"

namespace dyadic {

namespace {

constexpr HybridReference kDags11[] = {
    {2, 43, 25, 25, 35, 36, 83},
    {3, 51, 25, 50, 35, 36, 83},
    {4, 59, 25, 75, 38, 39, 86},
    {5, 67, 25, 100, 40, 40, 88},
};

}  // namespace

HybridShape hybrid_shape(const ParamSet& p, int dim_d, int guessed) {
    p.validate();
    const int c = p.c();
    if (dim_d < 1 || dim_d > p.k0 - c) throw Error(ErrorKind::InvalidParams, "dim D out of range");
    if (guessed < 0 || guessed > dim_d * c) throw Error(ErrorKind::InvalidParams, "more guesses than U variables");
    const ShapeCounts s = count_system(p, p.k0 - c - dim_d);
    const int per_row = p.n0 - p.k0 - 1;
    const int rows = guessed / c;
    return {dim_d, guessed, s.vars() - guessed, rows * per_row, (dim_d - rows) * per_row};
}

double log2_sum(double a, double b) {
    const double hi = std::max(a, b), lo = std::min(a, b);
    return hi + std::log2(1.0 + std::exp2(lo - hi));
}

WorkFactor estimate_linear_only(const ParamSet& p) {
    p.validate();
    const int c = p.c();
    const int n_v = (p.n0 - p.k0 + c - 1) + (p.gamma - 2);
    const int per_row = p.n0 - p.k0 - 1;
    const int rows = (n_v + per_row - 1) / per_row;
    WorkFactor w;
    w.guessed = rows * c;
    w.log2_ops = w.guessed * p.s + 3 * std::log2(static_cast<double>(n_v));
    return w;
}

WorkFactor estimate_hybrid(const ParamSet& p, int guessed, double log2_false, double log2_true) {
    if (guessed < 0) throw Error(ErrorKind::InvalidParams, "negative guess count");
    WorkFactor w;
    w.guessed = guessed;
    if (guessed == 0) {
        w.log2_ops = log2_true;
        return w;
    }
    // log2(q^g - 1) = g s + log2(1 - q^-g)
    const double bits = static_cast<double>(guessed) * p.s;
    const double wrong = bits + std::log2(-std::expm1(-bits * std::log(2.0)));
    w.log2_ops = log2_sum(wrong + log2_false, log2_true);
    return w;
}

std::span<const HybridReference> dags11_hybrid_reference() { return kDags11; }

}  // namespace dyadic
