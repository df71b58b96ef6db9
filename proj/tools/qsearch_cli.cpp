// Copyright 2026 The qsearch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// qsearch: optimize, simulate and tabulate partial-diffusion search schedules.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "qsearch/cost_model.hpp"
#include "qsearch/critical_ratio.hpp"
#include "qsearch/errors.hpp"
#include "qsearch/optimizer.hpp"
#include "qsearch/parallel_planner.hpp"
#include "qsearch/sequence.hpp"
#include "qsearch/statevector.hpp"
#include "qsearch/subspace.hpp"
#include "qsearch/verify.hpp"
#include "report.hpp"

namespace {

using namespace qsearch;
using report::Json;
using report::Kind;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitVerify = 3;

/// Input the user can fix by changing flags.
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct Range {
    int lo = 4;
    int hi = 10;
};

/// "7" or "4..10".
Range parse_range(const std::string& text) {
    Range r;
    const auto dots = text.find("..");
    try {
        std::size_t used = 0;
        if (dots == std::string::npos) {
            r.lo = r.hi = std::stoi(text, &used);
            if (used != text.size()) throw UsageError("");
        } else {
            r.lo = std::stoi(text.substr(0, dots), &used);
            if (used != dots) throw UsageError("");
            const std::string tail = text.substr(dots + 2);
            r.hi = std::stoi(tail, &used);
            if (used != tail.size()) throw UsageError("");
        }
    } catch (const std::exception&) {
        throw UsageError("invalid n range '" + text + "' (want N or LO..HI)");
    }
    if (r.lo > r.hi) throw UsageError("empty n range '" + text + "'");
    return r;
}

struct Common {
    std::string toffoli_path;
    bool extend_table = false;
    std::string format = "md";
};

GateDepthTable load_table(const Common& common, int n_max) {
    std::string path = common.toffoli_path;
    if (path.empty()) {
        if (const char* env = std::getenv("QSEARCH_TOFFOLI_TABLE")) path = env;
    }
    GateDepthTable table = path.empty() ? GateDepthTable::linear() : GateDepthTable::from_file(path);
    if (common.extend_table) table = table.with_linear_tail(n_max);
    if (!table.covers(n_max)) {
        throw UsageError("n=" + std::to_string(n_max) + " exceeds the Toffoli depth table (max width " +
                         std::to_string(table.max_width()) + "); pass --extend-table or a wider table");
    }
    return table;
}

void emit(const std::vector<report::Table>& tables, const Common& common) {
    std::cout << report::render(tables, report::parse_format(common.format));
}

std::string describe(const OptResult& r) {
    std::string s = format_paper_notation(r.sequence);
    if (r.plan) s += " + " + format_paper_notation(r.plan->stage2());
    return s;
}

// ---- tables ---------------------------------------------------------------

struct TablesArgs {
    std::string range = "4..10";
    double alpha = 1.0;
    std::vector<std::string> only;
    std::string fig2_out;
};

int run_tables(const TablesArgs& args, const Common& common) {
    const Range range = parse_range(args.range);
    if (range.lo < 4) throw UsageError("tables need n >= 4");
    const GateDepthTable table = load_table(common, range.hi);
    auto wanted = [&](const std::string& name) {
        return args.only.empty() || std::find(args.only.begin(), args.only.end(), name) != args.only.end();
    };
    const bool need_meds = wanted("table1") || wanted("table2") || wanted("table3") || wanted("fig2");
    std::vector<OptResult> grover, one, two;
    std::vector<CriticalResult> c1, c2;
    for (int n = range.lo; n <= range.hi; ++n) {
        const DepthParams params(args.alpha, table, n);
        if (need_meds) {
            grover.push_back(optimize_grover(n, params));
            one.push_back(optimize_one_stage(n, params, EnumerationBounds::one_stage(n, args.alpha)));
            two.push_back(optimize_two_stage(n, params, EnumerationBounds::standard(n, args.alpha)));
        }
        if (wanted("table4")) {
            c1.push_back(critical_alpha(n, CriticalMode::one_stage, table));
            c2.push_back(critical_alpha(n, CriticalMode::two_stage, table));
        }
    }
    const std::string at = " (alpha = " + report::fixed(args.alpha, 2) + ")";
    std::vector<report::Table> out;
    if (wanted("table1")) out.push_back(report::single_stage_table("Table 1: Grover MED" + at, grover));
    if (wanted("table2")) out.push_back(report::single_stage_table("Table 2: one-stage MED" + at, one));
    if (wanted("table3")) out.push_back(report::two_stage_table("Table 3: two-stage MED" + at, two));
    if (wanted("table4")) out.push_back(report::critical_table("Table 4: critical ratios", c1, c2));
    report::Table fig = report::figure_table("Fig. 2 data" + at, grover, one, two);
    if (wanted("fig2")) out.push_back(fig);
    emit(out, common);
    if (!args.fig2_out.empty()) {
        std::ofstream file(args.fig2_out, std::ios::binary);
        if (!file) throw UsageError("cannot write '" + args.fig2_out + "'");
        file << report::to_csv(fig);
    }
    return kExitOk;
}

// ---- optimize -------------------------------------------------------------

struct OptimizeArgs {
    int n = 0;
    double alpha = 1.0;
    std::string mode = "one-stage";
    std::optional<int> max_blocks;
};

int run_optimize(const OptimizeArgs& args, const Common& common) {
    const GateDepthTable table = load_table(common, args.n);
    const DepthParams params(args.alpha, table, args.n);
    const std::string at = "n = " + std::to_string(args.n) + ", alpha = " + report::fixed(args.alpha, 2);
    if (args.mode == "grover") {
        emit({report::single_stage_table("Grover MED, " + at, {optimize_grover(args.n, params)})}, common);
    } else if (args.mode == "one-stage") {
        const auto bounds = EnumerationBounds::one_stage(args.n, args.alpha, args.max_blocks);
        emit({report::single_stage_table("One-stage MED, " + at, {optimize_one_stage(args.n, params, bounds)})},
             common);
    } else if (args.mode == "two-stage") {
        const auto bounds = EnumerationBounds::standard(args.n, args.alpha, args.max_blocks);
        emit({report::two_stage_table("Two-stage MED, " + at, {optimize_two_stage(args.n, params, bounds)})},
             common);
    } else {
        throw UsageError("unknown mode '" + args.mode + "'");
    }
    return kExitOk;
}

// ---- simulate -------------------------------------------------------------

struct SimulateArgs {
    std::string sequence;
    std::string backend = "reduced";
    std::string target;
    double alpha = 1.0;
    std::optional<int> block_width;
};

struct StageReport {
    double probability = 0.0;
    std::optional<double> block_probability;
};

StageReport simulate_stage(const SequenceSpec& seq, std::optional<int> block_width, bool full, const TargetSpec& target) {
    StageReport r;
    const std::optional<int> m = seq.m() ? seq.m() : block_width;
    if (full) {
        const StateVector state = run_sequence_full(seq, target);
        r.probability = target_probability(state, target);
        if (m) r.block_probability = block_marginal(state, target, *m);
    } else {
        r.probability = success_probability(seq);
        if (m) r.block_probability = block_success_probability(seq, *m);
    }
    return r;
}

Json stage_row(const std::string& label, const SequenceSpec& seq, const StageReport& s, const DepthParams& params,
               double success) {
    const DepthBreakdown d = sequence_depth(seq, params);
    Json row;
    row["stage"] = label;
    row["sequence"] = report::sequence_json(seq);
    row["probability"] = s.probability;
    row["block_probability"] = s.block_probability ? Json(*s.block_probability) : Json();
    row["oracle_calls"] = d.oracle_calls;
    row["global_diffusions"] = d.global_diffusions;
    row["local_diffusions"] = d.local_diffusions;
    row["fixed_depth"] = d.fixed_depth;
    row["oracle_depth"] = d.total_depth - static_cast<double>(d.fixed_depth);
    row["depth"] = d.total_depth;
    row["expected_depth"] = success > 0.0 ? Json(d.total_depth / success) : Json();
    return row;
}

int run_simulate(const SimulateArgs& args, const Common& common) {
    if (args.backend != "reduced" && args.backend != "full") throw UsageError("unknown backend '" + args.backend + "'");
    const bool full = args.backend == "full";
    std::optional<TwoStagePlan> plan;
    SequenceSpec seq;
    if (const auto plus = args.sequence.find('+'); plus != std::string::npos) {
        SequenceSpec s1 = parse_paper_notation(args.sequence.substr(0, plus));
        SequenceSpec s2 = parse_paper_notation(args.sequence.substr(plus + 1));
        plan.emplace(s1.n(), s2.n(), s1, s2);
        seq = s1;
    } else {
        seq = parse_paper_notation(args.sequence);
    }
    const int n = seq.n();
    const GateDepthTable table = load_table(common, n);
    const DepthParams params(args.alpha, table, n);
    const TargetSpec target = args.target.empty() ? TargetSpec::zeros(n) : TargetSpec::from_bits(args.target);
    if (target.n() != n) {
        throw UsageError("target '" + args.target + "' has " + std::to_string(target.n()) + " bits, sequence acts on " +
                         std::to_string(n));
    }
    if (full && n > 24) throw UsageError("full backend limited to n <= 24");

    report::Table t{"Simulation (" + args.backend + " backend, alpha = " + report::fixed(args.alpha, 2) + ")",
                    {{"stage", "Stage", Kind::text},
                     {"sequence", "Sequence", Kind::text},
                     {"probability", "Success probability", Kind::probability},
                     {"block_probability", "Block probability", Kind::probability},
                     {"oracle_calls", "Oracle calls", Kind::integer},
                     {"global_diffusions", "Global", Kind::integer},
                     {"local_diffusions", "Local", Kind::integer},
                     {"fixed_depth", "Diffusion depth", Kind::depth},
                     {"oracle_depth", "Oracle depth", Kind::depth},
                     {"depth", "Depth", Kind::depth},
                     {"expected_depth", "Expected depth", Kind::med}},
                    {}};
    if (!plan) {
        const StageReport s = simulate_stage(seq, args.block_width, full, target);
        t.rows.push_back(stage_row("single", seq, s, params, s.probability));
    } else {
        const int m2 = plan->m2();
        StageReport s1 = simulate_stage(plan->stage1(), m2 < n ? std::optional<int>(m2) : std::nullopt, full, target);
        const std::uint64_t low = target.index() & ((std::uint64_t{1} << m2) - 1);
        const StageReport s2 = simulate_stage(plan->stage2(), std::nullopt, full, TargetSpec(m2, low));
        const double p1 = s1.block_probability.value_or(1.0);
        const double total = p1 * s2.probability;
        Json r1 = stage_row("stage1", plan->stage1(), s1, params, 0.0);
        Json r2 = stage_row("stage2", plan->stage2(), s2, params, 0.0);
        const DepthBreakdown d = sequence_depth(plan->stage1(), params) + sequence_depth(plan->stage2(), params);
        Json sum;
        sum["stage"] = "total";
        sum["sequence"] = args.sequence;
        sum["probability"] = total;
        sum["block_probability"] = p1;
        sum["oracle_calls"] = d.oracle_calls;
        sum["global_diffusions"] = d.global_diffusions;
        sum["local_diffusions"] = d.local_diffusions;
        sum["fixed_depth"] = d.fixed_depth;
        sum["oracle_depth"] = d.total_depth - static_cast<double>(d.fixed_depth);
        sum["depth"] = d.total_depth;
        sum["expected_depth"] = total > 0.0 ? Json(d.total_depth / total) : Json();
        t.rows = {r1, r2, sum};
    }
    emit({t}, common);
    return kExitOk;
}

// ---- critical -------------------------------------------------------------

struct CriticalArgs {
    int n = 0;
    std::string mode = "one-stage";
    double tol = 1e-3;
    std::string method = "auto";
};

int run_critical(const CriticalArgs& args, const Common& common) {
    CriticalOptions opts;
    opts.tol = args.tol;
    if (args.method == "auto") {
        opts.method = SearchMethod::automatic;
    } else if (args.method == "exhaustive") {
        opts.method = SearchMethod::exhaustive;
    } else if (args.method == "structured") {
        opts.method = SearchMethod::structured;
    } else {
        throw UsageError("unknown method '" + args.method + "'");
    }
    CriticalMode mode;
    if (args.mode == "one-stage") {
        mode = CriticalMode::one_stage;
    } else if (args.mode == "two-stage") {
        mode = CriticalMode::two_stage;
    } else {
        throw UsageError("unknown mode '" + args.mode + "'");
    }
    const GateDepthTable table = load_table(common, args.n);
    const CriticalResult r = critical_alpha(args.n, mode, table, opts);
    report::Table t{"Critical ratio",
                    {{"n", "n", Kind::integer},
                     {"mode", "Mode", Kind::text},
                     {"method", "Method", Kind::text},
                     {"alpha_c", "alpha_c", Kind::ratio},
                     {"witness", "Witness", Kind::text},
                     {"witness_med", "Witness MED", Kind::med},
                     {"grover_med", "Grover MED", Kind::med}},
                    {}};
    Json row;
    row["n"] = r.n;
    row["mode"] = to_string(r.mode);
    row["method"] = to_string(r.method);
    row["alpha_c"] = report::optional_number(r.alpha_c);
    row["witness"] = r.witness ? Json(describe(*r.witness)) : Json();
    row["witness_med"] = r.witness ? Json(r.witness->expected_depth) : Json();
    row["grover_med"] = r.alpha_c ? Json(r.grover_med) : Json();
    t.rows.push_back(std::move(row));
    emit({t}, common);
    return kExitOk;
}

// ---- parallel -------------------------------------------------------------

struct ParallelArgs {
    int n = 0;
    double alpha = 1.0;
    int machines = 1;
    std::string strategy = "replicated";
    std::optional<double> threshold;
    int guess_bits = 1;
};

int run_parallel(const ParallelArgs& args, const Common& common) {
    const GateDepthTable table = load_table(common, args.n);
    const DepthParams params(args.alpha, table, args.n);
    ParallelPlan plan;
    if (args.strategy == "replicated") {
        plan = plan_replicated(args.n, params, args.machines, args.threshold.value_or(1.0));
    } else if (args.strategy == "guess") {
        plan = plan_random_guess(args.n, params, args.machines, args.guess_bits);
    } else if (args.strategy == "partition") {
        plan = plan_multistage_partition(args.n, params, args.machines, args.threshold);
    } else {
        throw UsageError("unknown strategy '" + args.strategy + "'");
    }
    for (const std::string& w : plan.warnings()) std::cerr << "warning: " << w << "\n";
    report::Table t{"Parallel plan (" + to_string(plan.strategy) + ")",
                    {{"n", "n", Kind::integer},
                     {"machines", "Machines", Kind::integer},
                     {"sequence", "Per-machine sequence", Kind::text},
                     {"machine_probability", "Machine probability", Kind::probability},
                     {"success_per_round", "Round success", Kind::probability},
                     {"expected_rounds", "Expected rounds", Kind::med},
                     {"round_depth", "Round depth", Kind::depth},
                     {"expected_depth", "Expected depth", Kind::med},
                     {"warnings", "Warnings", Kind::text}},
                    {}};
    Json row;
    row["n"] = plan.n;
    row["machines"] = plan.machines;
    row["sequence"] = plan.per_machine.empty() ? Json() : report::sequence_json(plan.per_machine.front());
    row["machine_probability"] = plan.machine_probability;
    row["success_per_round"] = plan.success_per_round;
    row["expected_rounds"] = plan.expected_rounds;
    row["round_depth"] = plan.round_depth;
    row["expected_depth"] = plan.expected_depth();
    std::string warnings;
    for (const std::string& w : plan.warnings()) warnings += (warnings.empty() ? "" : "; ") + w;
    row["warnings"] = warnings;
    t.rows.push_back(std::move(row));
    emit({t}, common);
    return kExitOk;
}

// ---- verify ---------------------------------------------------------------

struct VerifyArgs {
    std::string range = "4..10";
    bool extended = false;
    bool skip_critical = false;
    int samples = 25;
    std::uint64_t seed = VerifyOptions{}.seed;
};

int run_verify(const VerifyArgs& args, const Common& common) {
    const Range range = parse_range(args.range);
    VerifyOptions opts;
    opts.n_lo = range.lo;
    opts.n_hi = range.hi;
    opts.extended = args.extended;
    opts.golden_critical = !args.skip_critical;
    opts.samples = args.samples;
    opts.seed = args.seed;
    const GateDepthTable table = load_table(common, std::min(range.hi, 10));
    const std::vector<CheckResult> results = run_verification(table, opts);
    report::Table t{"Verification",
                    {{"status", "Status", Kind::text},
                     {"group", "Group", Kind::text},
                     {"check", "Check", Kind::text},
                     {"detail", "Detail", Kind::text}},
                    {}};
    for (const CheckResult& r : results) {
        Json row;
        row["status"] = r.passed ? "PASS" : "FAIL";
        row["group"] = r.group;
        row["check"] = r.name;
        row["detail"] = r.detail;
        t.rows.push_back(std::move(row));
    }
    emit({t}, common);
    const bool ok = all_passed(results);
    std::cerr << (ok ? "all checks passed\n" : "verification FAILED\n");
    return ok ? kExitOk : kExitVerify;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Depth-optimized quantum search with partial diffusion operators"};
    app.require_subcommand(1);
    Common common;
    app.add_option("--toffoli-table", common.toffoli_path,
                   "Toffoli depth table, one 'w,depth' record per line (env QSEARCH_TOFFOLI_TABLE)");
    app.add_flag("--extend-table", common.extend_table, "Extend the depth table linearly to the requested n");
    auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", common.format, "Output format")->check(CLI::IsMember({"md", "csv", "json"}));
    };

    TablesArgs tables;
    auto* tables_cmd = app.add_subcommand("tables", "Reproduce the MED and critical-ratio tables");
    tables_cmd->add_option("--n", tables.range, "n or LO..HI");
    tables_cmd->add_option("--alpha", tables.alpha, "Oracle depth over d(D_n)")->check(CLI::PositiveNumber);
    tables_cmd->add_option("--only", tables.only, "Subset of tables")
        ->check(CLI::IsMember({"table1", "table2", "table3", "table4", "fig2"}));
    tables_cmd->add_option("--fig2-out", tables.fig2_out, "Also write the figure data as CSV to this path");
    add_format(tables_cmd);

    OptimizeArgs optimize;
    auto* optimize_cmd = app.add_subcommand("optimize", "Find the minimal-expected-depth schedule");
    optimize_cmd->add_option("--n", optimize.n, "Database qubits")->required()->check(CLI::Range(2, 62));
    optimize_cmd->add_option("--alpha", optimize.alpha, "Oracle depth over d(D_n)")->check(CLI::PositiveNumber);
    optimize_cmd->add_option("--mode", optimize.mode)->check(CLI::IsMember({"grover", "one-stage", "two-stage"}));
    optimize_cmd->add_option("--max-blocks", optimize.max_blocks, "Block cap (default 2n)")->check(CLI::PositiveNumber);
    add_format(optimize_cmd);

    SimulateArgs simulate;
    auto* simulate_cmd = app.add_subcommand("simulate", "Evaluate a sequence such as S_{6,4}(1,1,2)");
    simulate_cmd->add_option("--sequence", simulate.sequence, "Sequence, or 'STAGE1 + STAGE2'")->required();
    simulate_cmd->add_option("--backend", simulate.backend)->check(CLI::IsMember({"reduced", "full"}));
    simulate_cmd->add_option("--target", simulate.target, "Target bit string, most significant first");
    simulate_cmd->add_option("--alpha", simulate.alpha, "Oracle depth over d(D_n)")->check(CLI::PositiveNumber);
    simulate_cmd->add_option("--block-width", simulate.block_width, "Block width for the block probability");
    add_format(simulate_cmd);

    CriticalArgs critical;
    auto* critical_cmd = app.add_subcommand("critical", "Largest alpha where partial diffusion beats Grover");
    critical_cmd->add_option("--n", critical.n, "Database qubits")->required()->check(CLI::Range(3, 62));
    critical_cmd->add_option("--mode", critical.mode)->check(CLI::IsMember({"one-stage", "two-stage"}));
    critical_cmd->add_option("--tol", critical.tol, "Bisection tolerance")->check(CLI::PositiveNumber);
    critical_cmd->add_option("--method", critical.method)->check(CLI::IsMember({"auto", "exhaustive", "structured"}));
    add_format(critical_cmd);

    ParallelArgs parallel;
    auto* parallel_cmd = app.add_subcommand("parallel", "Plan a search across several machines");
    parallel_cmd->add_option("--n", parallel.n, "Database qubits")->required()->check(CLI::Range(2, 62));
    parallel_cmd->add_option("--alpha", parallel.alpha, "Oracle depth over d(D_n)")->check(CLI::PositiveNumber);
    parallel_cmd->add_option("--machines", parallel.machines)->check(CLI::PositiveNumber);
    parallel_cmd->add_option("--strategy", parallel.strategy)
        ->check(CLI::IsMember({"replicated", "guess", "partition"}));
    parallel_cmd->add_option("--threshold", parallel.threshold,
                             "Probability cap (replicated, default 1) or floor (partition, default 1 - 2^{-n/2})");
    parallel_cmd->add_option("--guess-bits", parallel.guess_bits)->check(CLI::PositiveNumber);
    add_format(parallel_cmd);

    VerifyArgs verify;
    auto* verify_cmd = app.add_subcommand("verify", "Run golden, oracle-equivalence and theorem checks");
    verify_cmd->add_option("--n", verify.range, "n or LO..HI for the golden and equivalence checks");
    verify_cmd->add_flag("--extended", verify.extended, "Add critical-ratio scaling checks up to n = 14");
    verify_cmd->add_flag("--skip-critical", verify.skip_critical, "Skip the critical-ratio golden rows");
    verify_cmd->add_option("--samples", verify.samples, "Random sequences per (n, m)")->check(CLI::PositiveNumber);
    verify_cmd->add_option("--seed", verify.seed);
    add_format(verify_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*tables_cmd) return run_tables(tables, common);
        if (*optimize_cmd) return run_optimize(optimize, common);
        if (*simulate_cmd) return run_simulate(simulate, common);
        if (*critical_cmd) return run_critical(critical, common);
        if (*parallel_cmd) return run_parallel(parallel, common);
        if (*verify_cmd) return run_verify(verify, common);
    } catch (const InfeasibleError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    } catch (const ConvergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitUsage;
}
