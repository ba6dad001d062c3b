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

#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include "dyadic/attack.hpp"

namespace dyadic {

namespace {

std::string hex_list(const Vec& v) {
    std::string s;
    for (Elem e : v) {
        if (!s.empty()) s += ',';
        s += to_hex(e);
    }
    return s;
}

Vec parse_list(const std::string& s) {
    Vec v;
    std::istringstream is(s);
    std::string tok;
    while (std::getline(is, tok, ','))
        if (!tok.empty()) v.push_back(static_cast<Elem>(parse_hex(tok)));
    return v;
}

}  // namespace

std::string AttackReport::to_text() const {
    std::ostringstream os;
    os << std::setprecision(6);
    os << "preset=" << preset << '\n'
       << "outcome=" << outcome << '\n';
    if (!reason.empty()) os << "reason=" << reason << '\n';
    os << "a0=" << a0 << '\n'
       << "normalization=" << normalization << '\n'
       << "order_seed=" << order_seed << '\n'
       << "attempts=" << attempts << '\n'
       << "maxdeg=" << solve.max_degree << '\n'
       << "rows=" << solve.rows << '\n'
       << "cols=" << solve.cols << '\n'
       << "passes=" << solve.passes << '\n'
       << "linear=" << solve.linear << '\n'
       << "branches=" << solve.branches << '\n'
       << "groebner_cycles=" << groebner_cycles << '\n'
       << "groebner_seconds=" << groebner_seconds << '\n'
       << "linalg_cycles=" << linalg_cycles << '\n'
       << "linalg_seconds=" << linalg_seconds << '\n'
       << "guesses_tried=" << guesses_tried << '\n';
    for (const auto& [k, n] : histogram) os << "branch." << k << '=' << n << '\n';
    os << "equivalent=" << (equivalent ? "true" : "false") << '\n';
    if (!x.empty()) os << "x=" << hex_list(x) << '\n';
    if (!z.empty()) os << "z=" << hex_list(z) << '\n';
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const AttackReport& r) { return os << r.to_text(); }

AttackReport parse_report(std::istream& is) {
    AttackReport r;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw Error(ErrorKind::Parse, "report line without '=': " + line);
        const std::string k = line.substr(0, eq), v = line.substr(eq + 1);
        try {
            if (k == "preset") r.preset = v;
            else if (k == "outcome") r.outcome = v;
            else if (k == "reason") r.reason = v;
            else if (k == "a0") r.a0 = std::stoi(v);
            else if (k == "normalization") r.normalization = std::stoi(v);
            else if (k == "order_seed") r.order_seed = std::stoull(v);
            else if (k == "attempts") r.attempts = std::stoi(v);
            else if (k == "maxdeg") r.solve.max_degree = std::stoi(v);
            else if (k == "rows") r.solve.rows = std::stoull(v);
            else if (k == "cols") r.solve.cols = std::stoull(v);
            else if (k == "passes") r.solve.passes = std::stoi(v);
            else if (k == "linear") r.solve.linear = std::stoi(v);
            else if (k == "branches") r.solve.branches = std::stoi(v);
            else if (k == "groebner_cycles") r.groebner_cycles = std::stoull(v);
            else if (k == "groebner_seconds") r.groebner_seconds = std::stod(v);
            else if (k == "linalg_cycles") r.linalg_cycles = std::stoull(v);
            else if (k == "linalg_seconds") r.linalg_seconds = std::stod(v);
            else if (k == "guesses_tried") r.guesses_tried = std::stoull(v);
            else if (k.rfind("branch.", 0) == 0) r.histogram[k.substr(7)] = std::stoull(v);
            else if (k == "equivalent") r.equivalent = v == "true";
            else if (k == "x") r.x = parse_list(v);
            else if (k == "z") r.z = parse_list(v);
            else throw Error(ErrorKind::Parse, "unknown report key " + k);
        } catch (const std::logic_error&) {
            throw Error(ErrorKind::Parse, "bad value for " + k + ": " + v);
        }
    }
    r.success = r.outcome == "success";
    return r;
}

}  // namespace dyadic
