#include "volterra/cli.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "volterra/errors.hpp"
#include "volterra/experiment.hpp"
#include "volterra/kernel.hpp"

namespace volterra::cli {
namespace {

constexpr double kDefaultNoisyHorizon = 0.0292;

std::string root_kind(const KernelRoot &root)
{
    return root.kind == RootKind::SignChange ? "sign-change" : "numerical-zero";
}

std::string describe(double value) { return format_number(value); }

int order_or(const RunConfig &config, int fallback) { return config.order.value_or(fallback); }

double horizon_or(const RunConfig &config, double fallback) { return config.horizon.value_or(fallback); }

Benchmark benchmark_or_phi1(const RunConfig &config)
{
    return config.benchmark ? parse_benchmark(*config.benchmark) : Benchmark::Phi1;
}

Report make_report(const RunConfig &config)
{
    Report report;
    report.command = std::string(to_string(config.command));
    return report;
}

Report kernel_info(const RunConfig &config)
{
    const KernelSpec spec(order_or(config, 10));
    const KernelRoot root = find_first_root(spec);
    Report report = make_report(config);
    report.config = {{"N", std::to_string(spec.order())}};
    report.columns = {"N", "kernel_at_zero", "t_star", "root_kind", "root_residual", "integral_to_t_star",
                      "integral_to_10"};
    report.rows.push_back({static_cast<long long>(spec.order()), kernel_at_zero(spec), root.t_star, root_kind(root),
                           root.residual,
                           kernel_antiderivative(spec, root.t_star), kernel_antiderivative(spec, 10.0)});
    report.summary = {{"kernel_at_zero", kernel_at_zero(spec)}, {"t_star", root.t_star}};
    return report;
}

// Even orders first ("line 1"), then odd orders ("line 2").
Report roots(const RunConfig &config)
{
    Report report = make_report(config);
    report.config = {{"n_min", std::to_string(config.order_min)}, {"n_max", std::to_string(config.order_max)}};
    report.columns = {"series", "N", "t_star", "root_kind", "kernel_at_zero", "integral_to_t_star"};
    for (int parity : {0, 1}) {
        for (int order = config.order_min; order <= config.order_max; ++order) {
            if (order % 2 != parity) {
                continue;
            }
            const KernelSpec spec(order);
            const KernelRoot root = find_first_root(spec);
            report.rows.push_back({std::string(parity == 0 ? "even" : "odd"), static_cast<long long>(order),
                                   root.t_star, root_kind(root), kernel_at_zero(spec),
                                   kernel_antiderivative(spec, root.t_star)});
        }
    }
    return report;
}

Report solve_command(const RunConfig &config)
{
    const KernelSpec spec(order_or(config, 2));
    Report report = make_report(config);

    GridFunction<double> y = [&] {
        if (config.input_path) {
            return read_rhs_csv_file(*config.input_path);
        }
        const double horizon = horizon_or(config, 1.0);
        const Mesh mesh = config.steps ? Mesh(horizon, *config.steps) : Mesh::with_step(horizon, *config.step);
        return sample_rhs(spec, benchmark_or_phi1(config), mesh);
    }();

    Vector<double> phi;
    double min_denominator = 0.0;
    if (config.precision == Precision::Single) {
        const auto result = solve(spec, config.scheme, y.cast<float>());
        phi = result.phi.values.cast<double>();
        min_denominator = result.min_abs_denominator;
    } else {
        auto result = solve(spec, config.scheme, y);
        phi = std::move(result.phi.values);
        min_denominator = result.min_abs_denominator;
    }

    const Mesh &mesh = y.mesh;
    report.config = {{"N", std::to_string(spec.order())},
                     {"scheme", std::string(to_string(config.scheme))},
                     {"source", config.input_path ? *config.input_path : std::string(to_string(benchmark_or_phi1(config)))},
                     {"T", describe(mesh.horizon())},
                     {"n", std::to_string(mesh.size())},
                     {"precision", config.precision == Precision::Single ? "single" : "double"}};

    const bool has_truth = !config.input_path;
    report.columns = {"i", "t", "phi"};
    if (has_truth) {
        report.columns.insert(report.columns.end(), {"exact", "abs_error"});
    }
    double max_error = 0.0;
    for (int i = 1; i <= mesh.size(); ++i) {
        const double t = mesh.midpoint(i);
        std::vector<Cell> row{static_cast<long long>(i), t, phi(i - 1)};
        if (has_truth) {
            const double exact = benchmark_value(benchmark_or_phi1(config), t);
            const double error = std::abs(exact - phi(i - 1));
            max_error = std::max(max_error, error);
            row.insert(row.end(), {exact, error});
        }
        report.rows.push_back(std::move(row));
    }
    report.summary = {{"h", mesh.step()}, {"n", static_cast<double>(mesh.size())}, {"min_abs_denominator", min_denominator}};
    if (has_truth) {
        report.summary.emplace_back("max_error", max_error);
    }
    return report;
}

Report convergence(const RunConfig &config)
{
    const KernelSpec spec(order_or(config, 2));
    const Benchmark f = benchmark_or_phi1(config);
    std::vector<double> steps;
    if (config.convergence_sizes.empty()) {
        steps = default_convergence_steps();
    } else {
        for (int n : config.convergence_sizes) {
            steps.push_back(1.0 / n);
        }
    }
    const ConvergenceReport table = convergence_table(spec, f, steps);

    Report report = make_report(config);
    std::string sizes;
    for (const auto &row : table.rows) {
        sizes += (sizes.empty() ? "" : " ") + std::to_string(row.n);
    }
    report.config = {{"N", std::to_string(spec.order())}, {"benchmark", std::string(to_string(f))}, {"T", "1"},
                     {"steps", sizes}};
    report.columns = {"h", "n", "error_midpoint", "error_product", "ratio_midpoint", "ratio_product"};
    for (std::size_t k = 0; k < table.rows.size(); ++k) {
        const auto &row = table.rows[k];
        Cell ratio_midpoint = std::string();
        Cell ratio_product = std::string();
        if (k > 0) {
            ratio_midpoint = table.rows[k - 1].error_midpoint / row.error_midpoint;
            ratio_product = table.rows[k - 1].error_product / row.error_product;
        }
        report.rows.push_back({row.h, static_cast<long long>(row.n), row.error_midpoint, row.error_product,
                               ratio_midpoint, ratio_product});
    }
    report.summary = {{"order_midpoint", table.order_midpoint}, {"order_product", table.order_product}};
    return report;
}

void add_optimization_rows(Report &report, const std::vector<OptimizationResult> &results)
{
    report.columns = {"delta", "h_opt", "n_opt", "error_at_opt", "iterations", "h_lo", "h_hi"};
    for (const auto &r : results) {
        report.rows.push_back({r.delta, r.h_opt, static_cast<long long>(r.n_opt), r.error_at_opt,
                               static_cast<long long>(r.iterations), r.interval.lower, r.interval.upper});
    }
}

StepInterval interval_for(const RunConfig &config, double horizon)
{
    StepInterval interval = default_step_interval(horizon);
    interval.lower = config.h_lo.value_or(interval.lower);
    interval.upper = config.h_hi.value_or(interval.upper);
    return interval;
}

void echo_noisy_config(Report &report, const RunConfig &config, const KernelSpec &spec, Benchmark f, double horizon,
                       StepInterval interval)
{
    report.config = {{"N", std::to_string(spec.order())},
                     {"scheme", std::string(to_string(config.scheme))},
                     {"benchmark", std::string(to_string(f))},
                     {"T", describe(horizon)},
                     {"h_lo", describe(interval.lower)},
                     {"h_hi", describe(interval.upper)},
                     {"step_rounding", "n = round(T/h), h = T/n"}};
}

Report optimize(const RunConfig &config)
{
    const KernelSpec spec(order_or(config, 4));
    const Benchmark f = benchmark_or_phi1(config);
    const double horizon = horizon_or(config, kDefaultNoisyHorizon);
    const StepInterval interval = interval_for(config, horizon);
    const OptimizationResult result = fibonacci_optimize_h(spec, f, config.scheme, *config.delta, horizon, interval);

    Report report = make_report(config);
    echo_noisy_config(report, config, spec, f, horizon, interval);
    report.config.emplace_back("delta", describe(*config.delta));
    add_optimization_rows(report, {result});
    report.summary = {{"h_opt", result.h_opt}, {"error_at_opt", result.error_at_opt}};
    const BracketCheck check = check_bracket(spec, f, config.scheme, *config.delta, horizon, interval);
    if (!check.lower_ok || !check.upper_ok) {
        report.notes.push_back(std::string("bracket check failed at the ") +
                               (!check.lower_ok && !check.upper_ok ? "both ends" : !check.lower_ok ? "lower end" : "upper end"));
    }
    return report;
}

Report scaling(const RunConfig &config)
{
    const KernelSpec spec(order_or(config, 4));
    const Benchmark f = benchmark_or_phi1(config);
    const double horizon = horizon_or(config, kDefaultNoisyHorizon);
    const StepInterval interval = interval_for(config, horizon);
    const std::vector<double> deltas = config.deltas.empty() ? default_deltas() : config.deltas;
    const StepStudy study = optimal_step_study(spec, f, config.scheme, horizon, deltas, interval);

    Report report = make_report(config);
    echo_noisy_config(report, config, spec, f, horizon, interval);
    std::string listed;
    for (double d : deltas) {
        listed += (listed.empty() ? "" : " ") + describe(d);
    }
    report.config.emplace_back("deltas", listed);
    add_optimization_rows(report, study.results);
    report.summary = {{"slope_h", study.fit.slope_h}, {"slope_error", study.fit.slope_error}};
    report.notes = study.notes;
    return report;
}

std::string utc_timestamp()
{
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream out;
    out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return out.str();
}

void write_report(std::ostream &out, const RunConfig &config, const Report &report)
{
    const std::optional<std::string> stamp = config.stamp ? std::optional(utc_timestamp()) : std::nullopt;
    if (config.format == Format::Json) {
        write_json(out, report, stamp);
    } else {
        write_csv(out, report, stamp);
    }
}

void write_summary(std::ostream &out, const Report &report)
{
    for (const auto &[key, value] : report.summary) {
        out << key << " = " << format_number(value) << '\n';
    }
    for (const auto &note : report.notes) {
        out << "note: " << note << '\n';
    }
}

} // namespace

std::string_view to_string(Command command)
{
    switch (command) {
    case Command::KernelInfo:
        return "kernel-info";
    case Command::Roots:
        return "roots";
    case Command::Solve:
        return "solve";
    case Command::Convergence:
        return "convergence";
    case Command::Optimize:
        return "optimize";
    case Command::Scaling:
        return "scaling";
    }
    return "unknown";
}

void validate(const RunConfig &config)
{
    if (config.order && *config.order < 1) {
        throw ConfigError("--N must be >= 1");
    }
    if (config.horizon && !(*config.horizon > 0.0)) {
        throw ConfigError("--T must be positive");
    }
    if (config.benchmark) {
        try {
            parse_benchmark(*config.benchmark);
        } catch (const UnsupportedFunction &e) {
            throw ConfigError(e.what());
        }
    }
    const bool noisy = config.command == Command::Optimize || config.command == Command::Scaling;
    if (!noisy && (config.delta || !config.deltas.empty())) {
        throw ConfigError("delta is only meaningful for optimize and scaling");
    }
    switch (config.command) {
    case Command::KernelInfo:
        break;
    case Command::Roots:
        if (config.order_min < 2 || config.order_max < config.order_min) {
            throw ConfigError("roots needs 2 <= --n-min <= --n-max");
        }
        break;
    case Command::Solve:
        if (config.input_path && config.benchmark) {
            throw ConfigError("give either --benchmark or --input, not both");
        }
        if (config.input_path && (config.step || config.steps || config.horizon)) {
            throw ConfigError("--input fixes the mesh; drop --T, --h and --n");
        }
        if (!config.input_path && config.step.has_value() == config.steps.has_value()) {
            throw ConfigError("give exactly one of --h and --n");
        }
        if (config.steps && *config.steps < 1) {
            throw ConfigError("--n must be >= 1");
        }
        if (config.step && !(*config.step > 0.0)) {
            throw ConfigError("--h must be positive");
        }
        break;
    case Command::Convergence:
        for (int n : config.convergence_sizes) {
            if (n < 1) {
                throw ConfigError("--steps entries must be >= 1");
            }
        }
        break;
    case Command::Optimize:
        if (!config.delta) {
            throw ConfigError("optimize needs --delta");
        }
        [[fallthrough]];
    case Command::Scaling: {
        if (config.delta && *config.delta < 0.0) {
            throw ConfigError("--delta must be >= 0");
        }
        for (double d : config.deltas) {
            if (!(d > 0.0)) {
                throw ConfigError("--deltas entries must be positive");
            }
        }
        const double horizon = config.horizon.value_or(kDefaultNoisyHorizon);
        const StepInterval interval = interval_for(config, horizon);
        if (!(interval.lower > 0.0) || !(interval.lower < interval.upper) || interval.upper > horizon) {
            throw ConfigError("step interval must satisfy 0 < --h-lo < --h-hi <= T");
        }
        break;
    }
    }
}

Report execute(const RunConfig &config)
{
    validate(config);
    switch (config.command) {
    case Command::KernelInfo:
        return kernel_info(config);
    case Command::Roots:
        return roots(config);
    case Command::Solve:
        return solve_command(config);
    case Command::Convergence:
        return convergence(config);
    case Command::Optimize:
        return optimize(config);
    case Command::Scaling:
        return scaling(config);
    }
    throw ConfigError("unknown command");
}

int run(const RunConfig &config, std::ostream &out, std::ostream &err)
{
    try {
        const Report report = execute(config);
        if (config.output_path) {
            std::ofstream file(*config.output_path, std::ios::binary);
            if (!file) {
                throw IoError("cannot open output file '" + *config.output_path + "'");
            }
            write_report(file, config, report);
            file.flush();
            if (!file) {
                throw IoError("failed writing '" + *config.output_path + "'");
            }
            write_summary(out, report);
        } else {
            write_report(out, config, report);
            write_summary(err, report);
        }
        return kExitSuccess;
    } catch (const IoError &e) {
        err << "io error: " << e.what() << '\n';
        return kExitIo;
    } catch (const NumericError &e) {
        err << "numeric error: " << e.what() << '\n';
        return kExitNumeric;
    } catch (const std::invalid_argument &e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    }
}

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Direct quadrature solvers for the truncated heat-kernel Volterra equation"};
    app.require_subcommand(1);

    RunConfig config;
    std::string scheme = "midpoint";
    std::string format = "csv";
    std::string precision = "double";

    const auto add_output = [&](CLI::App *sub) {
        sub->add_option("-o,--output", config.output_path, "Report file (default: stdout)");
        sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        sub->add_flag("--stamp", config.stamp, "Add a generation timestamp to the report");
    };
    const auto add_order = [&](CLI::App *sub) { sub->add_option("--N", config.order, "Kernel truncation order"); };
    const auto add_scheme = [&](CLI::App *sub) {
        sub->add_option("--scheme", scheme, "midpoint or product")
            ->check(CLI::IsMember({"midpoint", "product", "product-integration"}));
    };
    const auto add_noisy = [&](CLI::App *sub) {
        add_order(sub);
        add_scheme(sub);
        sub->add_option("--benchmark", config.benchmark, "phi1 or phi2");
        sub->add_option("--T", config.horizon, "Horizon (default 0.0292)");
        sub->add_option("--h-lo", config.h_lo, "Lower end of the step search interval");
        sub->add_option("--h-hi", config.h_hi, "Upper end of the step search interval");
        add_output(sub);
    };

    auto *info = app.add_subcommand("kernel-info", "K_N(0), first root and integral identities");
    add_order(info);
    add_output(info);

    auto *roots_cmd = app.add_subcommand("roots", "First kernel roots for a range of N, split by parity");
    roots_cmd->add_option("--n-min", config.order_min, "Smallest N");
    roots_cmd->add_option("--n-max", config.order_max, "Largest N");
    add_output(roots_cmd);

    auto *solve_cmd = app.add_subcommand("solve", "Reconstruct phi from benchmark or CSV data");
    solve_cmd->set_help_flag("--help", "Print this help message and exit");
    add_order(solve_cmd);
    add_scheme(solve_cmd);
    solve_cmd->add_option("--benchmark", config.benchmark, "phi1 or phi2");
    solve_cmd->add_option("--input", config.input_path, "Two-column CSV of (t_i, y_i)");
    solve_cmd->add_option("--T", config.horizon, "Horizon (default 1)");
    solve_cmd->add_option("--h", config.step, "Step size");
    solve_cmd->add_option("--n", config.steps, "Number of steps");
    solve_cmd->add_option("--precision", precision, "double or single")->check(CLI::IsMember({"double", "single"}));
    add_output(solve_cmd);

    auto *conv = app.add_subcommand("convergence", "Errors of both schemes on exact data over T = 1");
    add_order(conv);
    conv->add_option("--benchmark", config.benchmark, "phi1 or phi2");
    conv->add_option("--steps", config.convergence_sizes, "Step counts n (h = 1/n)");
    add_output(conv);

    auto *opt = app.add_subcommand("optimize", "Fibonacci search for the best step under sawtooth noise");
    add_noisy(opt);
    opt->add_option("--delta", config.delta, "Noise amplitude")->required();

    auto *scale = app.add_subcommand("scaling", "Optimal step and error against noise amplitude");
    add_noisy(scale);
    scale->add_option("--deltas", config.deltas, "Noise amplitudes (default 1e-1 1e-2 1e-4 1e-5)");

    std::vector<std::string> storage{"volterra"};
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<char *> argv;
    for (auto &arg : storage) {
        argv.push_back(arg.data());
    }

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp &e) {
        out << app.help();
        return kExitSuccess;
    } catch (const CLI::ParseError &e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    }

    const std::pair<CLI::App *, Command> commands[] = {
        {info, Command::KernelInfo}, {roots_cmd, Command::Roots},  {solve_cmd, Command::Solve},
        {conv, Command::Convergence}, {opt, Command::Optimize}, {scale, Command::Scaling},
    };
    for (const auto &[sub, command] : commands) {
        if (sub->parsed()) {
            config.command = command;
            if (sub->count("--help")) {
                out << sub->help();
                return kExitSuccess;
            }
        }
    }
    config.scheme = parse_scheme(scheme);
    config.format = format == "json" ? Format::Json : Format::Csv;
    config.precision = precision == "single" ? Precision::Single : Precision::Double;
    return run(config, out, err);
}

} // namespace volterra::cli
