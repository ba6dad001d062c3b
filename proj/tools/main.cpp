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

// dyadic: key generation, attacks, system statistics, work-factor estimates,
// benchmark harness and self test.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <new>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "dyadic/attack.hpp"
#include "dyadic/estimate.hpp"
#include "dyadic/kernels.hpp"
#include "dyadic/selftest.hpp"
#include "dyadic/system.hpp"

using namespace dyadic;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitFailure = 3;
constexpr int kExitResource = 4;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct KeyArgs {
    std::string preset;
    std::string params;
    std::string seed;
    std::string key_path;
    bool have_time = false;
};

void add_param_options(CLI::App* cmd, KeyArgs& a) {
    cmd->add_option("--preset", a.preset, "parameter set (" + [] {
        std::string s;
        for (const auto& n : preset_names()) s += (s.empty() ? "" : ", ") + n;
        return s;
    }() + ")");
    cmd->add_option("--params", a.params, "custom parameters s,gamma,n0,r0");
}

void add_key_options(CLI::App* cmd, KeyArgs& a, bool from_file) {
    add_param_options(cmd, a);
    cmd->add_option("--seed", a.seed, "key seed, hexadecimal; random and printed when absent");
    if (from_file) {
        cmd->add_option("--key", a.key_path, "key file written by keygen");
        cmd->add_flag("--i-have-time", a.have_time, "allow DAGS-scale parameters");
    }
}

ParamSet resolve_params(const KeyArgs& a) {
    if (!a.preset.empty() && !a.params.empty()) throw UsageError("give either --preset or --params");
    if (!a.preset.empty()) return preset(a.preset);
    if (a.params.empty()) throw UsageError("one of --preset or --params is required");
    std::vector<int> v;
    std::stringstream ss(a.params);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            v.push_back(std::stoi(tok));
        } catch (const std::logic_error&) {
            throw UsageError("--params expects integers s,gamma,n0,r0");
        }
    }
    if (v.size() != 4) throw UsageError("--params expects s,gamma,n0,r0");
    return custom_params(v[0], v[1], v[2], v[3]);
}

std::uint64_t resolve_seed(const std::string& hex) {
    if (!hex.empty()) {
        try {
            return parse_hex(hex);
        } catch (const Error&) {
            throw UsageError("--seed expects a hexadecimal number");
        }
    }
    std::random_device rd;
    const std::uint64_t s = (std::uint64_t{rd()} << 32) ^ rd();
    std::cerr << "seed=0x" << to_hex(s) << '\n';
    return s;
}

bool dags_scale(const ParamSet& p) { return p.name.rfind("DAGS", 0) == 0 || p.n() > 512; }

KeyPair load_key(const KeyArgs& a) {
    KeyPair key;
    if (!a.key_path.empty()) {
        if (!a.preset.empty() || !a.params.empty()) throw UsageError("--key excludes --preset and --params");
        std::ifstream in(a.key_path);
        if (!in) throw UsageError("cannot open " + a.key_path);
        key = read_key(in);
    } else {
        key = keygen(resolve_params(a), resolve_seed(a.seed));
    }
    if (dags_scale(key.params) && !a.have_time)
        throw UsageError(key.params.name + " is DAGS-scale; pass --i-have-time to run it");
    return key;
}

// Writes to `path`, or stdout when it is empty.
template <class F>
void emit(const std::string& path, F&& write) {
    if (path.empty()) {
        write(std::cout);
        return;
    }
    std::ofstream out(path);
    if (!out) throw UsageError("cannot write " + path);
    write(out);
}

int exit_for(const AttackReport& r) {
    if (r.success) return kExitOk;
    return r.outcome == to_string(SolveStatus::ResourceExceeded) ? kExitResource : kExitFailure;
}

struct AttackArgs {
    KeyArgs key;
    int a0 = -1;
    int dmax = -1;
    int jobs = 1;
    int guess_width = 0;
    std::uint64_t max_guesses = 0;
    bool serial = false;
    std::string out;
};

void add_attack_options(CLI::App* cmd, AttackArgs& a) {
    add_key_options(cmd, a.key, true);
    cmd->add_option("--a0", a.a0, "shortened blocks (default: per preset)");
    cmd->add_option("--dmax", a.dmax, "highest Macaulay degree (default: per preset)")->check(CLI::Range(2, 6));
    cmd->add_option("--jobs", a.jobs, "worker threads")->check(CLI::PositiveNumber);
    cmd->add_flag("--serial", a.serial, "use the serial reference kernels");
    cmd->add_option("--out", a.out, "report file");
}

AttackConfig config_from(const AttackArgs& a, std::uint64_t seed) {
    AttackConfig cfg;
    cfg.a0 = a.a0;
    cfg.dmax = a.dmax;
    cfg.jobs = a.jobs;
    cfg.seed = seed;
    cfg.guess_width = a.guess_width;
    cfg.max_guesses = a.max_guesses;
    cfg.parallel = !a.serial;
    return cfg;
}

int cmd_attack(const AttackArgs& a, bool hybrid) {
    const KeyPair key = load_key(a.key);
    kernels::set_max_threads(a.jobs);
    const AttackConfig cfg = config_from(a, key.seed);
    const AttackReport r = hybrid ? hybrid_attack(key, cfg) : run_direct(key, cfg);
    emit(a.out, [&](std::ostream& os) { os << r; });
    if (!a.out.empty()) std::cout << "outcome=" << r.outcome << '\n';
    return exit_for(r);
}

int cmd_keygen(const KeyArgs& a, const std::string& out, bool public_only) {
    const KeyPair key = keygen(resolve_params(a), resolve_seed(a.seed));
    emit(out, [&](std::ostream& os) { write_key(os, key, !public_only); });
    return kExitOk;
}

int cmd_stats(const KeyArgs& a, const std::string& a0_arg, const std::string& csv) {
    const ParamSet p = resolve_params(a);
    const int top = p.k0 - p.c();
    if (top <= 0) {
        std::cout << p.name << ": NonexistentD: c = " << p.c() << " >= k0 = " << p.k0 << ", the code D does not exist\n";
        return kExitOk;
    }
    std::vector<int> a0s;
    if (a0_arg == "all") {
        for (int v = 0; v <= top; ++v) a0s.push_back(v);
    } else if (a0_arg == "max") {
        a0s.push_back(top);
    } else {
        try {
            a0s.push_back(std::stoi(a0_arg));
        } catch (const std::logic_error&) {
            throw UsageError("--a0 expects N, max or all");
        }
    }
    std::ostringstream csv_out;
    csv_out << "preset,a0,dim_d,vars,eqs,ratio,note\n";
    std::cout << p.name << "  q=" << p.q() << " block=" << p.block() << " n0=" << p.n0 << " k0=" << p.k0
              << " c=" << p.c() << '\n';
    std::cout << std::setw(4) << "a0" << std::setw(7) << "dimD" << std::setw(7) << "Var" << std::setw(7) << "Eq"
              << std::setw(8) << "Ratio" << '\n';
    for (int v : a0s) {
        const ShapeCounts s = count_system(p, v);
        const std::string note = s.ratio() < 1.0 ? "underdetermined" : "";
        std::cout << std::setw(4) << v << std::setw(7) << s.dim_d << std::setw(7) << s.vars() << std::setw(7)
                  << s.quads << std::setw(8) << std::fixed << std::setprecision(1) << s.ratio()
                  << (note.empty() ? "" : "  " + note) << '\n';
        csv_out << p.name << ',' << v << ',' << s.dim_d << ',' << s.vars() << ',' << s.quads << ','
                << std::setprecision(3) << s.ratio() << ',' << note << '\n';
    }
    if (!csv.empty()) emit(csv, [&](std::ostream& os) { os << csv_out.str(); });
    return kExitOk;
}

struct EstimateArgs {
    KeyArgs key;
    int guess_width = -1;
    double log2_false = NAN, log2_true = NAN;
    bool measure = false;
    std::string csv;
};

int cmd_estimate(EstimateArgs a) {
    if (a.key.preset.empty() && a.key.params.empty()) a.key.preset = "DAGS-1.1";
    const ParamSet p = resolve_params(a.key);
    std::ostringstream csv;
    csv << "preset,strategy,dim_d,guessed,vars,linear,bilinear,log2_false,log2_true,log2_total\n";
    std::cout << std::fixed << std::setprecision(2);

    const WorkFactor lin = estimate_linear_only(p);
    std::cout << p.name << " linear-only: " << lin.guessed << " U variables guessed, 2^" << lin.log2_ops
              << " operations\n";
    csv << p.name << ",linear-only,," << lin.guessed << ",,,,,," << lin.log2_ops << '\n';

    const int width = a.guess_width >= 0 ? a.guess_width : p.c();
    if (a.measure) {
        if (dags_scale(p) && !a.key.have_time) throw UsageError("measuring on DAGS-scale keys needs --i-have-time");
        const KeyPair key = keygen(p, resolve_seed(a.key.seed));
        AttackConfig cfg;
        cfg.guess_width = width;
        cfg.seed = key.seed;
        const AttackReport r = hybrid_attack(key, cfg);
        if (!r.success || r.guesses_tried == 0) {
            std::cout << "measurement failed: " << r.outcome << '\n';
            return kExitFailure;
        }
        a.log2_true = std::log2(static_cast<double>(std::max<std::uint64_t>(r.solve.cycles, 1)));
        const std::uint64_t wrong = r.guesses_tried - 1;
        a.log2_false = wrong ? std::log2(static_cast<double>(r.groebner_cycles - r.solve.cycles) / wrong) : 0.0;
        std::cout << "measured on seed 0x" << to_hex(key.seed) << ": " << wrong << " wrong branches, False=2^"
                  << a.log2_false << " True=2^" << a.log2_true << " cycles\n";
    }
    if (!std::isnan(a.log2_false) && !std::isnan(a.log2_true)) {
        const WorkFactor h = estimate_hybrid(p, width, a.log2_false, a.log2_true);
        std::cout << p.name << " hybrid: " << width << " guessed, False=2^" << a.log2_false << " True=2^"
                  << a.log2_true << " -> 2^" << h.log2_ops << '\n';
        csv << p.name << ",hybrid,," << width << ",,,," << a.log2_false << ',' << a.log2_true << ',' << h.log2_ops
            << '\n';
    } else if (p.name == "DAGS-1.1") {
        std::cout << "hybrid with one U row guessed (Magma branch costs as inputs):\n"
                  << std::setw(5) << "dimD" << std::setw(6) << "Var" << std::setw(6) << "Lin" << std::setw(6) << "Bil"
                  << std::setw(7) << "False" << std::setw(7) << "True" << std::setw(9) << "Total" << '\n';
        for (const HybridReference& ref : dags11_hybrid_reference()) {
            const HybridShape sh = hybrid_shape(p, ref.dim_d, p.c());
            const WorkFactor h = estimate_hybrid(p, p.c(), ref.log2_false, ref.log2_true);
            std::cout << std::setw(5) << ref.dim_d << std::setw(6) << sh.vars << std::setw(6) << sh.linear
                      << std::setw(6) << sh.bilinear << std::setw(7) << std::setprecision(0) << ref.log2_false
                      << std::setw(7) << ref.log2_true << std::setw(9) << std::setprecision(2) << h.log2_ops << '\n';
            csv << p.name << ",hybrid," << ref.dim_d << ',' << p.c() << ',' << sh.vars << ',' << sh.linear << ','
                << sh.bilinear << ',' << ref.log2_false << ',' << ref.log2_true << ',' << h.log2_ops << '\n';
        }
    }
    if (!a.csv.empty()) emit(a.csv, [&](std::ostream& os) { os << csv.str(); });
    return kExitOk;
}

struct BenchArgs {
    std::vector<std::string> presets;
    int runs = 10;
    std::string seed;
    std::string out_dir;
    std::string csv;
    int a0 = -1;
    int dmax = -1;
    int jobs = 1;
    bool have_time = false;
    double min_rate = 0.95;
};

double median(std::vector<double> v) {
    if (v.empty()) return 0;
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : (v[m - 1] + v[m]) / 2;
}

int cmd_bench(const BenchArgs& a) {
    if (a.presets.empty()) throw UsageError("bench needs at least one --preset");
    const std::uint64_t base = resolve_seed(a.seed);
    kernels::set_max_threads(a.jobs);
    if (!a.out_dir.empty()) std::filesystem::create_directories(a.out_dir);
    std::ostringstream csv;
    csv << "preset,runs,success,rate,median_maxdeg,median_groebner_cycles,median_linalg_cycles,median_seconds,"
           "max_seconds\n";
    struct Row {
        std::string preset;
        int runs = 0, ok = 0;
        double maxdeg = 0, gc = 0, lc = 0, sec = 0, worst = 0;
    };
    std::vector<Row> rows;
    bool below = false;
    for (const std::string& name : a.presets) {
        const ParamSet p = preset(name);
        if (dags_scale(p) && !a.have_time) throw UsageError(name + " is DAGS-scale; pass --i-have-time to run it");
        Row row{name};
        std::vector<double> deg, gc, lc, sec;
        for (int i = 0; i < a.runs; ++i) {
            const std::uint64_t seed = base + static_cast<std::uint64_t>(i);
            const KeyPair key = keygen(p, seed);
            AttackConfig cfg;
            cfg.a0 = a.a0;
            cfg.dmax = a.dmax;
            cfg.jobs = a.jobs;
            cfg.seed = seed;
            const auto t0 = std::chrono::steady_clock::now();
            const AttackReport r = run_direct(key, cfg);
            const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            ++row.runs;
            row.ok += r.success;
            deg.push_back(r.solve.max_degree);
            gc.push_back(static_cast<double>(r.groebner_cycles));
            lc.push_back(static_cast<double>(r.linalg_cycles));
            sec.push_back(s);
            row.worst = std::max(row.worst, s);
            std::cout << name << " seed=0x" << to_hex(seed) << " outcome=" << r.outcome << " maxdeg=" << r.solve.max_degree
                      << " attempts=" << r.attempts << " seconds=" << std::fixed << std::setprecision(2) << s << '\n'
                      << std::flush;
            if (!a.out_dir.empty()) {
                std::ofstream f(std::filesystem::path(a.out_dir) / (name + "-" + to_hex(seed) + ".report"));
                f << r;
            }
        }
        row.maxdeg = median(deg);
        row.gc = median(gc);
        row.lc = median(lc);
        row.sec = median(sec);
        below = below || row.ok < a.min_rate * row.runs;
        rows.push_back(row);
    }
    std::cout << '\n'
              << std::left << std::setw(10) << "preset" << std::right << std::setw(6) << "runs" << std::setw(8) << "ok"
              << std::setw(8) << "rate" << std::setw(8) << "maxdeg" << std::setw(14) << "Groebner" << std::setw(14)
              << "LinAlg" << std::setw(10) << "median s" << std::setw(10) << "max s" << '\n';
    for (const Row& r : rows) {
        const double rate = r.runs ? static_cast<double>(r.ok) / r.runs : 0;
        std::cout << std::left << std::setw(10) << r.preset << std::right << std::setw(6) << r.runs << std::setw(8)
                  << r.ok << std::setw(7) << std::setprecision(1) << 100 * rate << '%' << std::setw(8)
                  << std::setprecision(1) << r.maxdeg << std::setw(14) << std::scientific << std::setprecision(3)
                  << r.gc << std::setw(14) << r.lc << std::fixed << std::setw(10) << std::setprecision(2) << r.sec
                  << std::setw(10) << r.worst << '\n';
        csv << r.preset << ',' << r.runs << ',' << r.ok << ',' << rate << ',' << r.maxdeg << ',' << r.gc << ','
            << r.lc << ',' << r.sec << ',' << r.worst << '\n';
    }
    if (!a.csv.empty()) emit(a.csv, [&](std::ostream& os) { os << csv.str(); });
    return below ? kExitFailure : kExitOk;
}

int cmd_selftest(const std::string& fault, const std::string& seed) {
    selftest::SuiteOptions opt;
    if (fault == "field-table")
        opt.fault = selftest::Fault::FieldTable;
    else if (fault != "none")
        throw UsageError("--fault expects none or field-table");
    if (!seed.empty()) opt.seed = resolve_seed(seed);
    bool ok = true;
    for (const auto& c : selftest::run_all(opt)) {
        std::cout << (c.ok ? "PASS " : "FAIL ") << c.name << std::fixed << std::setprecision(2) << " (" << c.seconds
                  << " s)" << (c.ok ? "" : ": " + c.detail) << '\n';
        ok = ok && c.ok;
    }
    return ok ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Algebraic key recovery for quasi-dyadic alternant codes"};
    app.require_subcommand(1);

    KeyArgs keygen_args;
    std::string keygen_out;
    bool public_only = false;
    auto* keygen_cmd = app.add_subcommand("keygen", "generate a key pair");
    add_key_options(keygen_cmd, keygen_args, false);
    keygen_cmd->add_option("--out", keygen_out, "key file (default stdout)");
    keygen_cmd->add_flag("--public-only", public_only, "omit the secret support");

    AttackArgs attack_args;
    auto* attack_cmd = app.add_subcommand("attack", "direct attack on one key");
    add_attack_options(attack_cmd, attack_args);

    AttackArgs hybrid_args;
    auto* hybrid_cmd = app.add_subcommand("hybrid", "exhaustive search on U variables plus solving");
    add_attack_options(hybrid_cmd, hybrid_args);
    hybrid_cmd->add_option("--guess-width", hybrid_args.guess_width, "U variables to enumerate")->required();
    hybrid_cmd->add_option("--max-guesses", hybrid_args.max_guesses, "stop after this many branches");

    KeyArgs stats_args;
    std::string stats_a0 = "all", stats_csv;
    auto* stats_cmd = app.add_subcommand("stats", "shape of the bilinear system");
    add_param_options(stats_cmd, stats_args);
    stats_cmd->add_option("--a0", stats_a0, "N, max or all");
    stats_cmd->add_option("--csv", stats_csv, "also write a CSV table");

    EstimateArgs est_args;
    auto* est_cmd = app.add_subcommand("estimate", "work factor of the linear-only and hybrid strategies");
    add_key_options(est_cmd, est_args.key, true);
    est_cmd->add_option("--guess-width", est_args.guess_width, "U variables guessed (default c)");
    est_cmd->add_option("--false", est_args.log2_false, "log2 cost of a wrong branch");
    est_cmd->add_option("--true", est_args.log2_true, "log2 cost of the right branch");
    est_cmd->add_flag("--measure", est_args.measure, "measure both costs with a hybrid run on a generated key");
    est_cmd->add_option("--csv", est_args.csv, "also write a CSV table");

    BenchArgs bench_args;
    auto* bench_cmd = app.add_subcommand("bench", "direct attack on a series of seeded keys");
    bench_cmd->add_option("--preset", bench_args.presets, "parameter sets (repeat or separate by commas)")
        ->delimiter(',');
    bench_cmd->add_option("--runs", bench_args.runs, "keys per preset")->check(CLI::PositiveNumber);
    bench_cmd->add_option("--seed", bench_args.seed, "first key seed, hexadecimal");
    bench_cmd->add_option("--out", bench_args.out_dir, "directory for per-run reports");
    bench_cmd->add_option("--csv", bench_args.csv, "also write the aggregate as CSV");
    bench_cmd->add_option("--a0", bench_args.a0, "shortened blocks (default: per preset)");
    bench_cmd->add_option("--dmax", bench_args.dmax, "highest Macaulay degree (default: per preset)")->check(CLI::Range(2, 6));
    bench_cmd->add_option("--jobs", bench_args.jobs, "worker threads")->check(CLI::PositiveNumber);
    bench_cmd->add_option("--min-rate", bench_args.min_rate, "exit with 3 below this success rate");
    bench_cmd->add_flag("--i-have-time", bench_args.have_time, "allow DAGS-scale parameters");

    std::string fault = "none", selftest_seed;
    auto* selftest_cmd = app.add_subcommand("selftest", "run the embedded property checks");
    selftest_cmd->add_option("--fault", fault, "inject a fault: none or field-table");
    selftest_cmd->add_option("--seed", selftest_seed, "instance seed, hexadecimal");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*keygen_cmd) return cmd_keygen(keygen_args, keygen_out, public_only);
        if (*attack_cmd) return cmd_attack(attack_args, false);
        if (*hybrid_cmd) return cmd_attack(hybrid_args, true);
        if (*stats_cmd) return cmd_stats(stats_args, stats_a0, stats_csv);
        if (*est_cmd) return cmd_estimate(est_args);
        if (*bench_cmd) return cmd_bench(bench_args);
        if (*selftest_cmd) return cmd_selftest(fault, selftest_seed);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << e.what() << '\n';
        switch (e.kind()) {
            case ErrorKind::UnknownPreset:
            case ErrorKind::InvalidParams:
            case ErrorKind::Parse: return kExitUsage;
            default: return kExitFailure;
        }
    } catch (const std::bad_alloc&) {
        std::cerr << "out of memory\n";
        return kExitResource;
    }
    return kExitUsage;
}
