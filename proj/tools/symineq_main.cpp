// symineq: command line front end for the experiment runner and the individual checks.
// Exit codes: 0 all checks pass, 1 some check fails (or only a lower bound was reached), 2 usage or input error.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <sstream>

#include "symineq/detsup/constants.hpp"
#include "symineq/funcsup/serialize.hpp"
#include "symineq/geomcore/error.hpp"
#include "symineq/labcli/plot.hpp"
#include "symineq/labcli/suite.hpp"
#include "symineq/matinq/constants_db.hpp"
#include "symineq/matinq/experiments.hpp"
#include "symineq/rearrange/export.hpp"
#include "symineq/rearrange/round_to_ball.hpp"

using namespace symineq;

namespace
{
std::vector<std::string> split_list(const std::string& s)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty())
            out.push_back(item);
    return out;
}

void emit(const Json& j, const std::string& out)
{
    if (out.empty())
        std::cout << j.dump(2) << "\n";
    else
        write_text_atomic(out, j.dump(2) + "\n");
}

int outcome_code(Outcome o)
{
    return o == Outcome::Pass ? 0 : 1;
}

int cmd_run(const std::string& config, const std::string& out, const std::string& plot_kind, const std::string& svg,
            const std::string& db)
{
    ExperimentConfig c = load_config(config);
    Report r = run_scenario(c);
    Json j = to_json(r);
    emit(j, out);
    if (!svg.empty())
        write_text_atomic(svg, emit_plot(j, plot_kind_from_name(plot_kind)));
    if (!db.empty())
    {
        ConstantsDb d(db);
        for (const ConstantRecord& rec : r.records)
            d.append(rec);
    }
    std::cerr << r.scenario << ": " << outcome_name(r.outcome) << "\n";
    return outcome_code(r.outcome);
}

int cmd_suite(const std::string& dir, const std::string& out, std::string csv, std::string db,
              const std::string& reports)
{
    SuiteSummary s = run_suite(load_config_dir(dir));
    const std::filesystem::path outp(out);
    if (csv.empty())
        csv = std::filesystem::path(outp).replace_extension(".csv").string();
    if (db.empty())
        db = (outp.parent_path() / "constants.jsonl").string();
    write_text_atomic(out, to_json(s).dump(2) + "\n");
    write_text_atomic(csv, constants_csv(s));
    ConstantsDb d(db);
    for (const Report& r : s.reports)
        for (const ConstantRecord& rec : r.records)
            d.append(rec);
    if (!reports.empty())
    {
        std::filesystem::create_directories(reports);
        for (std::size_t i = 0; i < s.rows.size(); ++i)
            if (s.rows[i].error.empty())
            {
                std::string stem = std::filesystem::path(s.rows[i].source).stem().string();
                write_report((std::filesystem::path(reports) / (stem + ".report.json")).string(), s.reports[i]);
            }
    }
    for (const SuiteRow& r : s.rows)
        std::cerr << r.scenario << ": " << outcome_name(r.outcome) << (r.error.empty() ? "" : " (" + r.error + ")")
                  << "\n";
    std::cerr << s.passed << "/" << s.rows.size() << " pass\n";
    return s.all_pass() ? 0 : 1;
}

int cmd_symmetrize(const std::string& set, const std::string& scheme, int iters, double tol, double cell,
                   uint64_t seed, const std::string& out, const std::string& csv, const std::string& svg)
{
    Region e = region_from_json(read_json_file(set));
    RoundOptions opt;
    opt.scheme = parse_scheme(scheme);
    opt.max_iters = iters;
    opt.tol = tol;
    opt.snapshot_every = svg.empty() ? 0 : 1;
    if (cell > 0)
    {
        // polytopes and shells are rasterized at the requested cell; grids keep their own lattice
        if (!std::holds_alternative<GridSet>(e))
        {
            Vector lo, hi;
            region_bounds(e, lo, hi);
            GridFrame f = GridFrame::covering(lo, hi, cell);
            e = std::visit([&](const auto& b) -> Region {
                if constexpr (std::is_same_v<std::decay_t<decltype(b)>, GridSet>)
                    return b;
                else
                    return rasterize(b, f);
            }, e);
        }
    }
    SymmetrisationTrace tr = round_to_ball(e, opt);
    Json j = trace_to_json(tr);
    j["seed"] = seed;
    emit(j, out);
    if (!csv.empty())
        write_text_atomic(csv, trace_csv(tr));
    if (!svg.empty())
        write_text_atomic(svg, snapshots_svg(tr));
    return tr.converged ? 0 : 1;
}

int cmd_supdet(const std::string& mode, const std::string& sets, const std::string& coeffs, uint64_t seed,
               int restarts)
{
    std::vector<Region> e;
    for (const std::string& f : split_list(sets))
        e.push_back(region_from_json(read_json_file(f)));
    if (e.empty())
        throw PreconditionError("supdet: --sets lists no files");
    SupOptions opt;
    opt.seed = seed;
    opt.restarts = restarts;
    const int n = region_dim(e[0]);
    DetSupResult r;
    if (mode == "origin" || mode == "simplex")
    {
        const std::size_t arity = mode == "origin" ? n : n + 1;
        // a single file stands for E_1 = … = E_arity
        if (e.size() == 1)
            e.assign(arity, e[0]);
        r = mode == "origin" ? sup_det_origin(e, opt) : sup_det_simplex(e, opt);
    }
    else if (mode == "linear")
    {
        if (coeffs.empty())
            throw PreconditionError("supdet: --mode linear needs --coeffs");
        r = sup_det_linear(e, CoefficientMatrix(matrix_from_json(read_json_file(coeffs))), opt);
    }
    else
        throw PreconditionError("supdet: --mode must be origin, simplex or linear");
    emit(to_json(r), "");
    return 0;
}

int cmd_funcsup(const std::string& problem, uint64_t samples, uint64_t seed)
{
    Json r = evaluate_problem(read_json_file(problem), samples, seed);
    emit(r, "");
    if (r.contains("pass") && r.at("pass").is_boolean())
        return r.at("pass").get<bool>() ? 0 : 1;
    return 0;
}

int cmd_matrix(const std::string& op, const std::string& set, double big_n, double delta, uint64_t seed,
               uint64_t trials, int restarts, const std::string& db)
{
    MatSupOptions mo;
    mo.seed = seed;
    mo.restarts = restarts;
    std::vector<MatrixSet> sets;
    for (const std::string& f : split_list(set))
        sets.push_back(matrix_set_from_json(read_json_file(f)));
    auto need_set = [&]() -> const MatrixSet& {
        if (sets.empty())
            throw PreconditionError("matrix --op " + op + " needs --set");
        return sets[0];
    };
    std::vector<ConstantRecord> records;
    auto record = [&](const Json& instance, double ratio, bool cert) {
        records.push_back(ConstantRecord{"matrix/" + op, instance_hash(instance), ratio, cert, seed});
    };
    Json out;
    bool pass = true;
    if (op == "sup")
    {
        const MatrixSet& e = need_set();
        RatioReport r = corollary_b_ratio(e, mo);
        out = to_json(r.search);
        out["corollary_b"] = to_json(r);
        record(to_json(e), r.infinite ? INFINITY : r.ratio, r.certificate);
    }
    else if (op == "sum")
    {
        need_set();
        if (sets.size() == 1)
            sets.assign(sets[0].n(), sets[0]);
        Json inst = Json::array();
        for (const MatrixSet& e : sets)
            inst.push_back(to_json(e));
        if (static_cast<int>(sets.size()) == sets[0].n())
        {
            RatioReport r = theorem31_ratio(sets, mo);
            out = to_json(r.search);
            out["theorem31"] = to_json(r);
            record(inst, r.infinite ? INFINITY : r.ratio, r.certificate);
        }
        else
            out = to_json(mat_sup_det_sum(sets, mo));
    }
    else if (op == "counterexample")
    {
        CounterexampleOptions opt;
        opt.seed = seed;
        CounterexampleReport r = nonconvex_counterexample(big_n, opt);
        out = to_json(r);
        pass = r.pass;
        record(Json{{"N", big_n}}, r.ratio, false);
    }
    else if (op == "perturb")
    {
        PerturbedBallReport r = perturbed_ball_experiment(delta, 200, 20000, seed);
        out = to_json(r);
        pass = r.pass;
    }
    else if (op == "witness")
    {
        const MatrixSet& e = need_set();
        Lemma132Witness w = lemma132_witness(e, mo);
        out = to_json(w);
        pass = w.members;
        record(to_json(e), w.ratio, false);
    }
    else if (op == "hadamard")
    {
        HadamardReport r = hadamard_simplex_bound(need_set(), trials, seed, mo);
        out = to_json(r);
        pass = r.pass;
    }
    else if (op == "slice")
    {
        SliceChain c = slicing_decomposition(need_set());
        out = to_json(c);
        pass = c.holds;
    }
    else
        throw PreconditionError("matrix: --op must be sup, sum, counterexample, perturb, witness, hadamard or slice");
    emit(out, "");
    if (!db.empty())
    {
        ConstantsDb d(db);
        for (const ConstantRecord& r : records)
            d.append(r);
    }
    return pass ? 0 : 1;
}

int cmd_constants(int n, bool verify)
{
    if (!verify)
    {
        emit(to_json(sharp_constants(n)), "");
        return 0;
    }
    ConstantsCheck c = verify_sharp_constants(n);
    emit(to_json(c), "");
    return c.pass ? 0 : 1;
}

int cmd_plot(const std::string& in, const std::string& kind, const std::string& out)
{
    std::string svg = emit_plot(read_json_file(in), plot_kind_from_name(kind));
    if (out.empty())
        std::cout << svg;
    else
        write_text_atomic(out, svg);
    return 0;
}
}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"symineq: symmetrisation and determinant inequality experiments"};
    app.require_subcommand(1);

    std::string config, out, plot_kind = "convergence", svg, db;
    auto* run = app.add_subcommand("run", "run one scenario config");
    run->add_option("--config", config, "experiment config JSON")->required();
    run->add_option("--out", out, "write the report here instead of stdout");
    run->add_option("--plot", plot_kind, "plot kind for --svg")->capture_default_str();
    run->add_option("--svg", svg, "also write a plot of the report");
    run->add_option("--db", db, "append realized constants to this JSON-lines file");

    std::string dir, summary, csv, suite_db, reports;
    auto* suite = app.add_subcommand("suite", "run every config in a directory");
    suite->add_option("--dir", dir, "directory of config JSON files")->required();
    suite->add_option("--out", summary, "summary JSON path")->required();
    suite->add_option("--csv", csv, "realized constants CSV (default: next to --out)");
    suite->add_option("--db", suite_db, "constants database (default: constants.jsonl next to --out)");
    suite->add_option("--reports", reports, "directory for per-scenario reports");

    std::string set, scheme = "greedy", sym_out, sym_csv, sym_svg;
    int iters = 50;
    double tol = 0.01, cell = 0;
    uint64_t seed = 0;
    auto* sym = app.add_subcommand("symmetrize", "iterated Steiner symmetrisation towards the ball");
    sym->add_option("--set", set, "set JSON (polytope, gridset or ball)")->required();
    sym->add_option("--scheme", scheme, "greedy or irrational")->capture_default_str();
    sym->add_option("--iters", iters, "iteration cap")->capture_default_str()->check(CLI::PositiveNumber);
    sym->add_option("--tol", tol, "stop at symmetric difference tol·|E|")->capture_default_str();
    sym->add_option("--cell", cell, "rasterize non-grid inputs at this cell (0 keeps the exact polygon route)");
    sym->add_option("--seed", seed, "recorded in the output")->capture_default_str();
    sym->add_option("--out", sym_out, "trace JSON path (default stdout)");
    sym->add_option("--csv", sym_csv, "trace CSV path");
    sym->add_option("--svg", sym_svg, "snapshot overlay SVG path (planar inputs)");

    std::string mode, sets, coeffs;
    int restarts = 64;
    auto* supdet = app.add_subcommand("supdet", "supremum of the determinant functionals");
    supdet->add_option("--mode", mode, "origin, simplex or linear")
        ->required()
        ->check(CLI::IsMember({"origin", "simplex", "linear"}));
    supdet->add_option("--sets", sets, "comma separated set files")->required();
    supdet->add_option("--coeffs", coeffs, "coefficient matrix JSON (linear mode)");
    supdet->add_option("--seed", seed, "multistart seed")->capture_default_str();
    supdet->add_option("--restarts", restarts, "multistart restarts")->capture_default_str();

    std::string problem;
    uint64_t samples = 100000;
    auto* funcsup = app.add_subcommand("funcsup", "functional suprema and integral comparisons");
    funcsup->add_option("--problem", problem, "problem JSON")->required();
    funcsup->add_option("--samples", samples, "Monte Carlo samples")->capture_default_str();
    funcsup->add_option("--seed", seed, "Monte Carlo seed")->capture_default_str();

    std::string op, mset, mdb = "constants.jsonl";
    double big_n = 10, delta = 0.03;
    uint64_t trials = 10000;
    auto* matrix = app.add_subcommand("matrix", "matrix-set determinant experiments");
    matrix->add_option("--op", op, "sup, sum, counterexample, perturb, witness, hadamard or slice")
        ->required()
        ->check(CLI::IsMember({"sup", "sum", "counterexample", "perturb", "witness", "hadamard", "slice"}));
    matrix->add_option("--set", mset, "matrix set JSON (comma separated for sum)");
    matrix->add_option("--N", big_n, "counterexample parameter")->capture_default_str();
    matrix->add_option("--delta", delta, "perturbation parameter")->capture_default_str();
    matrix->add_option("--seed", seed, "search seed")->capture_default_str();
    matrix->add_option("--trials", trials, "hadamard trials")->capture_default_str();
    matrix->add_option("--restarts", restarts, "search restarts")->capture_default_str();
    matrix->add_option("--db", mdb, "constants database (empty to skip)")->capture_default_str();

    int n = 2;
    bool verify = false;
    auto* constants = app.add_subcommand("constants", "sharp constants A_n, B_n");
    constants->add_option("--n", n, "dimension 1..4")->required();
    constants->add_flag("--verify", verify, "also run the numeric cross-check");

    std::string plot_in, kind = "convergence", plot_out;
    auto* plot = app.add_subcommand("plot", "SVG from a report or trace");
    plot->add_option("--in", plot_in, "report or trace JSON")->required();
    plot->add_option("--kind", kind, "convergence, body-2d or ratio-sweep")
        ->capture_default_str()
        ->check(CLI::IsMember({"convergence", "body-2d", "ratio-sweep"}));
    plot->add_option("--out", plot_out, "SVG path (default stdout)");

    auto* list = app.add_subcommand("list", "list registered scenarios");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try
    {
        if (*run)
            return cmd_run(config, out, plot_kind, svg, db);
        if (*suite)
            return cmd_suite(dir, summary, csv, suite_db, reports);
        if (*sym)
            return cmd_symmetrize(set, scheme, iters, tol, cell, seed, sym_out, sym_csv, sym_svg);
        if (*supdet)
            return cmd_supdet(mode, sets, coeffs, seed, restarts);
        if (*funcsup)
            return cmd_funcsup(problem, samples, seed);
        if (*matrix)
            return cmd_matrix(op, mset, big_n, delta, seed, trials, restarts, mdb);
        if (*constants)
            return cmd_constants(n, verify);
        if (*plot)
            return cmd_plot(plot_in, kind, plot_out);
        if (*list)
        {
            for (const ScenarioInfo& s : scenario_registry())
                std::cout << s.id << "\t" << s.module << "\t" << s.summary << "\n";
            return 0;
        }
    }
    catch (const PreconditionError& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    catch (const FormatError& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    catch (const UnsupportedError& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    catch (const DegenerateError& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    catch (const nlohmann::json::exception& e)
    {
        std::cerr << "error: malformed input: " << e.what() << "\n";
        return 2;
    }
    catch (const std::exception& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
