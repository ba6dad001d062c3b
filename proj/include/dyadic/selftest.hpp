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
#include <string>
#include <vector>

namespace dyadic::selftest {

struct Check {
    std::string name;
    bool ok = false;
    std::string detail;
    double seconds = 0;
};

enum class Fault {
    None,
    FieldTable,  // one entry of a copied exp table is flipped before the field checks
};

struct SuiteOptions {
    int keys = 100;       // desk keys for the invariant-code dimension
    int star = 50;        // GRS star products
    int inclusion = 50;   // alternant star inclusions
    int dual = 25;        // dual multipliers
    int subfield = 25;    // dyadic supports for the trace/norm subcode bounds
    int affine = 100;     // (a, b) pairs for affine invariance
    std::uint64_t seed = 1;
    Fault fault = Fault::None;
};

/// Every check in a fixed order; deterministic for fixed options.
std::vector<Check> run_all(const SuiteOptions& opt = {});

/// Individual suites, for callers that need only some of them.
Check field_axioms(const SuiteOptions& opt);
Check orbit_examples();
Check system_counts();
Check affine_invariance(const SuiteOptions& opt);
Check dyadic_structure(const SuiteOptions& opt);
Check dual_multipliers(const SuiteOptions& opt);
Check star_equality(const SuiteOptions& opt);
Check star_inclusion(const SuiteOptions& opt);
Check subfield_bounds(const SuiteOptions& opt);
Check invariant_dimension(const SuiteOptions& opt);

}  // namespace dyadic::selftest
