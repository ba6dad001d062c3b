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

#include "doctest.h"

#include <cmath>

#include "dyadic/estimate.hpp"

using namespace dyadic;

TEST_SUITE("estimate") {

TEST_CASE("linear-only work factor for DAGS-1.1") {
    const WorkFactor w = estimate_linear_only(preset("DAGS-1.1"));
    CHECK(w.guessed == 16);
    CHECK(w.log2_ops == doctest::Approx(111.39).epsilon(0.0001));
}

TEST_CASE("hybrid work factor from the measured costs") {
    const ParamSet p = preset("DAGS-1.1");
    for (const HybridReference& r : dags11_hybrid_reference()) {
        CAPTURE(r.dim_d);
        const WorkFactor w = estimate_hybrid(p, 8, r.log2_false, r.log2_true);
        CHECK(std::abs(w.log2_ops - r.log2_total) < 0.5);
    }
    CHECK(estimate_hybrid(p, 8, 35, 36).log2_ops == doctest::Approx(83.0).epsilon(0.0001));
    CHECK(estimate_hybrid(p, 0, 35, 36).log2_ops == 36.0);
}

TEST_CASE("hybrid shapes match the reference table") {
    const ParamSet p = preset("DAGS-1.1");
    for (const HybridReference& r : dags11_hybrid_reference()) {
        const HybridShape s = hybrid_shape(p, r.dim_d, 8);
        CAPTURE(r.dim_d);
        CHECK(s.vars == r.vars);
        CHECK(s.linear == r.linear);
        CHECK(s.bilinear == r.bilinear);
    }
}

TEST_CASE("log2_sum") {
    CHECK(log2_sum(3, 3) == doctest::Approx(4));
    CHECK(log2_sum(0, 1) == doctest::Approx(std::log2(3.0)));
    CHECK(log2_sum(2000, 1) == doctest::Approx(2000));
}

}  // TEST_SUITE
