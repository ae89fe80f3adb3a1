#include "fdml/cli.hpp"

#include "fdml/csv.hpp"
#include "fdml/equilibrium.hpp"
#include "fdml/experiments.hpp"
#include "fdml/stability.hpp"
#include "fdml/svg.hpp"
#include "fdml/validation.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <array>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

namespace fdml::cli {

namespace {

constexpr std::array<std::string_view, 7> commands{"simulate", "equilibria", "stability", "beta-star",
                                                   "sweep",    "hopf-curve", "validate"};

bool is_command(const std::string& name) {
    return std::find(commands.begin(), commands.end(), name) != commands.end();
}

}  // namespace

Coupling RunConfig::coupling() const {
    switch (model) {
        case Model::DimerLinear: return linear;
        case Model::DimerSigmoid: return sigmoid;
        case Model::Single: break;
    }
    return NoCoupling{};
}

nlohmann::json to_json(const RunConfig& c) {
    nlohmann::json j;
    j["command"] = c.command;
    j["model"] = std::string(to_string(c.model));
    j["I"] = c.params.I;
    j["A"] = c.params.A;
    j["alpha"] = c.params.alpha;
    j["gamma"] = c.params.gamma;
    j["beta"] = c.beta;
    j["theta"] = c.linear.theta;
    j["sigma"] = c.sigmoid.sigma;
    j["vs"] = c.sigmoid.v_s;
    j["lambda"] = c.sigmoid.lambda;
    j["q"] = c.sigmoid.q;
    j["t_start"] = c.t_start;
    j["t_end"] = c.t_end;
    j["h"] = c.h;
    j["corrector_iterations"] = c.corrector_iterations;
    j["fft"] = c.fft;
    j["y0"] = c.y0 ? nlohmann::json(*c.y0) : nlohmann::json(nullptr);
    j["discard"] = c.discard;
    j["tail"] = c.tail;
    j["beta_from"] = c.beta_from;
    j["beta_to"] = c.beta_to;
    j["beta_step"] = c.beta_step;
    j["I_from"] = c.I_from;
    j["I_to"] = c.I_to;
    j["I_points"] = c.I_points;
    j["out"] = c.out;
    j["svg"] = c.svg;
    return j;
}

RunConfig from_json(const nlohmann::json& j) {
    if (!j.is_object()) {
        throw InvalidArgument("configuration must be a JSON object");
    }
    RunConfig c;
    const std::map<std::string, std::function<void(const nlohmann::json&)>> fields{
        {"command", [&](const auto& v) { c.command = v.template get<std::string>(); }},
        {"model", [&](const auto& v) { c.model = parse_model(v.template get<std::string>()); }},
        {"I", [&](const auto& v) { c.params.I = v.template get<double>(); }},
        {"A", [&](const auto& v) { c.params.A = v.template get<double>(); }},
        {"alpha", [&](const auto& v) { c.params.alpha = v.template get<double>(); }},
        {"gamma", [&](const auto& v) { c.params.gamma = v.template get<double>(); }},
        {"beta", [&](const auto& v) { c.beta = v.template get<double>(); }},
        {"theta", [&](const auto& v) { c.linear.theta = v.template get<double>(); }},
        {"sigma", [&](const auto& v) { c.sigmoid.sigma = v.template get<double>(); }},
        {"vs", [&](const auto& v) { c.sigmoid.v_s = v.template get<double>(); }},
        {"lambda", [&](const auto& v) { c.sigmoid.lambda = v.template get<double>(); }},
        {"q", [&](const auto& v) { c.sigmoid.q = v.template get<double>(); }},
        {"t_start", [&](const auto& v) { c.t_start = v.template get<double>(); }},
        {"t_end", [&](const auto& v) { c.t_end = v.template get<double>(); }},
        {"h", [&](const auto& v) { c.h = v.template get<double>(); }},
        {"corrector_iterations", [&](const auto& v) { c.corrector_iterations = v.template get<int>(); }},
        {"fft", [&](const auto& v) { c.fft = v.template get<bool>(); }},
        {"y0",
         [&](const auto& v) {
             if (v.is_null()) {
                 c.y0.reset();
             } else {
                 c.y0 = v.template get<std::vector<double>>();
             }
         }},
        {"discard", [&](const auto& v) { c.discard = v.template get<std::size_t>(); }},
        {"tail", [&](const auto& v) { c.tail = v.template get<std::size_t>(); }},
        {"beta_from", [&](const auto& v) { c.beta_from = v.template get<double>(); }},
        {"beta_to", [&](const auto& v) { c.beta_to = v.template get<double>(); }},
        {"beta_step", [&](const auto& v) { c.beta_step = v.template get<double>(); }},
        {"I_from", [&](const auto& v) { c.I_from = v.template get<double>(); }},
        {"I_to", [&](const auto& v) { c.I_to = v.template get<double>(); }},
        {"I_points", [&](const auto& v) { c.I_points = v.template get<std::size_t>(); }},
        {"out", [&](const auto& v) { c.out = v.template get<std::string>(); }},
        {"svg", [&](const auto& v) { c.svg = v.template get<bool>(); }},
    };
    for (const auto& [key, value] : j.items()) {
        const auto it = fields.find(key);
        if (it == fields.end()) {
            throw InvalidArgument("unknown configuration key '" + key + "'");
        }
        try {
            it->second(value);
        } catch (const nlohmann::json::exception& e) {
            throw InvalidArgument("configuration key '" + key + "': " + e.what());
        }
    }
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw InvalidArgument("cannot open configuration file '" + path + "'");
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument("configuration file '" + path + "' is not valid JSON: " + e.what());
    }
    return from_json(j);
}

namespace {

SolverConfig solver_config(const RunConfig& c) {
    SolverConfig s;
    s.t_start = c.t_start;
    s.t_end = c.t_end;
    s.h = c.h;
    s.corrector_iterations = c.corrector_iterations;
    s.use_fft = c.fft;
    s.validate();
    return s;
}

std::vector<double> initial_state(const RunConfig& c) {
    const auto coupling = c.coupling();
    auto y0 = c.y0 ? *c.y0 : default_initial_state(coupling);
    if (y0.size() != state_dimension(coupling)) {
        std::ostringstream os;
        os << "--y0 needs " << state_dimension(coupling) << " values for model " << to_string(c.model);
        throw InvalidArgument(os.str());
    }
    return y0;
}

void validate(const RunConfig& c) {
    if (!is_command(c.command)) {
        throw InvalidArgument("unknown command '" + c.command + "'");
    }
    c.params.validate();
    validate_coupling(c.coupling());
    if (c.command == "simulate" || c.command == "stability") {
        (void)FractionalOrder(c.beta);
    }
    if (c.command == "simulate" || c.command == "sweep") {
        (void)solver_config(c);
        (void)initial_state(c);
        if (c.tail == 0) {
            throw InvalidArgument("--tail must be positive");
        }
    }
    if (c.command == "sweep") {
        SweepOptions so;
        so.beta_high = c.beta_from;
        so.beta_low = c.beta_to;
        so.beta_step = c.beta_step;
        (void)sweep_orders(so);
    }
    if (c.command == "hopf-curve" && (c.I_points == 0 || !(c.I_to >= c.I_from))) {
        throw InvalidArgument("hopf-curve needs --I-points > 0 and --I-from <= --I-to");
    }
    if (c.svg) {
        if (c.out.empty()) {
            throw InvalidArgument("--svg requires --out");
        }
        if (c.command != "simulate" && c.command != "sweep" && c.command != "hopf-curve") {
            throw InvalidArgument("--svg is available for simulate, sweep and hopf-curve");
        }
    }
}

// Writes CSV content either to the --out file or to the output stream.
void emit(const RunConfig& c, std::ostream& out, const std::function<void(std::ostream&)>& writer,
          const std::string& path_override = {}) {
    const std::string path = path_override.empty() ? c.out : path_override;
    if (path.empty()) {
        writer(out);
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw InvalidArgument("cannot write '" + path + "'");
    }
    writer(file);
}

std::string svg_path(const RunConfig& c) {
    return std::filesystem::path(c.out).replace_extension(".svg").string();
}

void write_svg(const std::string& path, const svg::Plot& plot) {
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw InvalidArgument("cannot write '" + path + "'");
    }
    svg::write(file, plot);
}

std::string join(std::span<const double> values) {
    std::string s;
    for (std::size_t i = 0; i < values.size(); ++i) {
        s += (i ? "," : "") + csv::format_number(values[i]);
    }
    return s;
}

int cmd_simulate(const RunConfig& c, std::ostream& out, std::ostream& err) {
    const auto coupling = c.coupling();
    const auto y0 = initial_state(c);
    ExperimentOptions options;
    options.discard = c.discard;
    options.tail = c.tail;
    SimulationSummary summary;
    try {
        summary = run_experiment(c.params, coupling, FractionalOrder(c.beta), y0, solver_config(c), options);
    } catch (const NonFiniteState& e) {
        const std::string partial = c.out.empty() ? std::string("fdml-partial.csv") : c.out + ".partial";
        emit(c, out, [&](std::ostream& os) { csv::write_trajectory(os, e.partial()); }, partial);
        err << "error: " << e.what() << "\npartial trajectory (" << e.partial().size() << " nodes) written to "
            << partial << '\n';
        return exit_numerical;
    }
    emit(c, out, [&](std::ostream& os) { csv::write_trajectory(os, summary.trajectory); });
    if (!c.out.empty()) {
        out << "rows = " << summary.trajectory.size() << '\n'
            << "tail_amplitude_x = " << csv::format_number(summary.tail_amplitude_x) << '\n'
            << "converged = " << (summary.converged ? "true" : "false") << '\n'
            << "final_state = " << join(summary.final_state) << '\n';
    }
    if (!summary.synapse_excitatory) {
        err << "warning: a voltage reached v_s; the synapse is not excitatory throughout\n";
    }
    if (c.svg) {
        svg::Plot plot;
        plot.title = std::string(to_string(c.model)) + " time series, beta = " + csv::format_number(c.beta);
        plot.x_label = "t";
        plot.y_label = "x";
        const auto& traj = summary.trajectory;
        const std::size_t stride = std::max<std::size_t>(1, traj.size() / 5000);
        const std::array<const char*, 2> colors{"green", "black"};
        std::size_t n = 0;
        for (const auto comp : voltage_components(coupling)) {
            svg::Series s;
            s.color = colors[n++ % colors.size()];
            for (std::size_t k = 0; k < traj.size(); k += stride) {
                s.x.push_back(traj.time(k));
                s.y.push_back(traj.at(k, comp));
            }
            plot.series.push_back(std::move(s));
        }
        write_svg(svg_path(c), plot);
    }
    return exit_ok;
}

int cmd_equilibria(const RunConfig& c, std::ostream& out) {
    const auto set = find_symmetric_equilibria(c.params, c.coupling());
    emit(c, out, [&](std::ostream& os) { csv::write_equilibria(os, c.params.I, set); });
    return exit_ok;
}

std::vector<csv::StabilityRow> stability_rows(const RunConfig& c, double beta) {
    const auto coupling = c.coupling();
    const auto set = find_symmetric_equilibria(c.params, coupling);
    std::vector<csv::StabilityRow> rows;
    for (const auto& point : set.points) {
        rows.push_back({point.x_star, analyze(point.x_star, c.params, coupling, FractionalOrder(beta))});
    }
    return rows;
}

int cmd_stability(const RunConfig& c, std::ostream& out) {
    const auto rows = stability_rows(c, c.beta);
    emit(c, out, [&](std::ostream& os) { csv::write_stability(os, rows); });
    return exit_ok;
}

int cmd_beta_star(const RunConfig& c, std::ostream& out) {
    // The classification column uses beta = 1 unless a valid order was given.
    const double beta = (c.beta > 0.0 && c.beta <= 1.0) ? c.beta : 1.0;
    const auto rows = stability_rows(c, beta);
    out << "model = " << to_string(c.model) << '\n' << "I = " << csv::format_number(c.params.I) << '\n';
    for (const auto& row : rows) {
        const auto& report = row.report;
        out << "x_star = " << csv::format_number(row.x_star) << '\n'
            << "tau_plus = " << csv::format_number(report.indicators.tau_plus) << '\n'
            << "delta_plus = " << csv::format_number(report.indicators.delta_plus) << '\n';
        if (report.indicators.tau_minus) {
            out << "tau_minus = " << csv::format_number(*report.indicators.tau_minus) << '\n'
                << "delta_minus = " << csv::format_number(*report.indicators.delta_minus) << '\n';
        }
        out << "beta_star = " << (report.beta_star ? report.beta_star->describe() : std::string("undefined"))
            << '\n';
    }
    if (!c.out.empty()) {
        emit(c, out, [&](std::ostream& os) { csv::write_stability(os, rows); });
    }
    return exit_ok;
}

int cmd_sweep(const RunConfig& c, std::ostream& out, std::ostream& err) {
    SweepOptions options;
    options.beta_high = c.beta_from;
    options.beta_low = c.beta_to;
    options.beta_step = c.beta_step;
    options.tail = c.tail;
    const auto coupling = c.coupling();
    const auto scan = bifurcation_sweep(c.params, coupling, initial_state(c), solver_config(c), options);
    emit(c, out, [&](std::ostream& os) { csv::write_sweep(os, scan); });

    int failures = 0;
    for (const auto& column : scan.columns) {
        if (column.error) {
            ++failures;
            err << "beta = " << csv::format_number(column.beta) << " failed: " << *column.error << '\n';
        }
    }
    if (!c.out.empty()) {
        const auto onset = oscillation_onset(scan);
        out << "columns = " << scan.columns.size() << '\n'
            << "oscillation_onset = " << (onset ? csv::format_number(*onset) : std::string("none")) << '\n';
    }
    if (c.svg) {
        svg::Plot plot;
        plot.title = "bifurcation diagram, I = " + csv::format_number(c.params.I);
        plot.x_label = "beta";
        plot.y_label = "x";
        const std::array<const char*, 2> colors{"green", "black"};
        for (std::size_t neuron = 0; neuron < voltage_components(coupling).size(); ++neuron) {
            svg::Series s;
            s.scatter = true;
            s.color = colors[neuron % colors.size()];
            for (const auto& column : scan.columns) {
                if (column.error) continue;
                for (const double x : column.tails[neuron]) {
                    s.x.push_back(column.beta);
                    s.y.push_back(x);
                }
            }
            plot.series.push_back(std::move(s));
        }
        try {
            const auto set = find_symmetric_equilibria(c.params, coupling);
            if (set.branch == Branch::Unique) {
                const auto bs = beta_star(set.points.front().x_star, c.params, coupling);
                if (bs.is_threshold()) plot.vertical_markers.push_back(bs.value);
            }
        } catch (const NumericalError&) {
        }
        write_svg(svg_path(c), plot);
    }
    return failures == 0 ? exit_ok : exit_numerical;
}

int cmd_hopf_curve(const RunConfig& c, std::ostream& out, std::ostream& err) {
    const auto curve = hopf_curve(c.params, c.coupling(), c.I_from, c.I_to, c.I_points);
    emit(c, out, [&](std::ostream& os) { csv::write_hopf_curve(os, curve); });
    for (const auto& note : curve.omitted) {
        err << "omitted " << note << '\n';
    }
    if (c.svg) {
        svg::Plot plot;
        plot.title = "Hopf curve (" + curve.coupling_label + ")";
        plot.x_label = "I";
        plot.y_label = "beta*";
        svg::Series s;
        for (const auto& p : curve.points) {
            s.x.push_back(p.I);
            s.y.push_back(p.beta_star);
        }
        plot.series.push_back(std::move(s));
        write_svg(svg_path(c), plot);
    }
    return exit_ok;
}

int cmd_validate(const RunConfig& c, std::ostream& out) {
    const auto report = run_oracle_suite(c.fft);
    for (const auto& v : report.cases) {
        out << "beta = " << v.beta << ":";
        for (std::size_t i = 0; i < v.steps.size(); ++i) {
            out << " err(h=" << v.steps[i] << ") = " << v.errors[i];
        }
        out << "; observed orders";
        for (const double o : v.observed_orders) {
            out << ' ' << o;
        }
        out << " (required >= " << v.required_order << ") " << (v.pass ? "PASS" : "FAIL") << '\n';
    }
    out.precision(9);
    out << "beta = 1: x(1) = " << report.classical.computed << " vs exp(-1) = " << report.classical.expected << ' '
        << (report.classical.pass ? "PASS" : "FAIL") << '\n';
    return report.pass() ? exit_ok : exit_numerical;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Fractional-order denatured Morris-Lecar neuron toolkit", "fdml"};
    // --h is the step size, so help is reachable through --help only.
    app.set_help_flag("--help", "print this help and exit");
    RunConfig flags;
    std::string config_path;
    std::string model_name = "single";
    std::vector<double> y0;

    app.add_option("command", flags.command, "simulate | equilibria | stability | beta-star | sweep | hopf-curve | validate");
    app.add_option("--config", config_path, "JSON configuration file; flags override its values");
    auto* o_model = app.add_option("--model", model_name, "single | dimer-linear | dimer-sigmoid");
    std::vector<std::pair<CLI::Option*, std::function<void(RunConfig&)>>> overlay;
    auto real = [&](const char* name, double& target, auto setter, const char* help) {
        overlay.emplace_back(app.add_option(name, target, help), setter);
    };
    real("--I", flags.params.I, [&](RunConfig& r) { r.params.I = flags.params.I; }, "external current");
    real("--A", flags.params.A, [&](RunConfig& r) { r.params.A = flags.params.A; }, "recovery amplitude");
    real("--alpha", flags.params.alpha, [&](RunConfig& r) { r.params.alpha = flags.params.alpha; }, "exponential rate");
    real("--gamma", flags.params.gamma, [&](RunConfig& r) { r.params.gamma = flags.params.gamma; }, "recovery decay");
    real("--beta", flags.beta, [&](RunConfig& r) { r.beta = flags.beta; }, "fractional order in (0, 1]");
    real("--h", flags.h, [&](RunConfig& r) { r.h = flags.h; }, "step size");
    real("--t-start", flags.t_start, [&](RunConfig& r) { r.t_start = flags.t_start; }, "initial time");
    real("--t-end", flags.t_end, [&](RunConfig& r) { r.t_end = flags.t_end; }, "final time");
    real("--beta-from", flags.beta_from, [&](RunConfig& r) { r.beta_from = flags.beta_from; }, "sweep start (largest order)");
    real("--beta-to", flags.beta_to, [&](RunConfig& r) { r.beta_to = flags.beta_to; }, "sweep end (smallest order)");
    real("--beta-step", flags.beta_step, [&](RunConfig& r) { r.beta_step = flags.beta_step; }, "sweep step");
    real("--I-from", flags.I_from, [&](RunConfig& r) { r.I_from = flags.I_from; }, "Hopf curve current range start");
    real("--I-to", flags.I_to, [&](RunConfig& r) { r.I_to = flags.I_to; }, "Hopf curve current range end");

    auto* o_theta = app.add_option("--theta", flags.linear.theta, "linear coupling strength");
    auto* o_sigma = app.add_option("--sigma", flags.sigmoid.sigma, "sigmoid coupling strength");
    auto* o_vs = app.add_option("--vs", flags.sigmoid.v_s, "reversal potential");
    auto* o_lambda = app.add_option("--lambda", flags.sigmoid.lambda, "sigmoid slope");
    auto* o_q = app.add_option("--q", flags.sigmoid.q, "synaptic threshold");
    overlay.emplace_back(o_theta, [&](RunConfig& r) { r.linear.theta = flags.linear.theta; });
    overlay.emplace_back(o_sigma, [&](RunConfig& r) { r.sigmoid.sigma = flags.sigmoid.sigma; });
    overlay.emplace_back(o_vs, [&](RunConfig& r) { r.sigmoid.v_s = flags.sigmoid.v_s; });
    overlay.emplace_back(o_lambda, [&](RunConfig& r) { r.sigmoid.lambda = flags.sigmoid.lambda; });
    overlay.emplace_back(o_q, [&](RunConfig& r) { r.sigmoid.q = flags.sigmoid.q; });

    overlay.emplace_back(app.add_option("--discard", flags.discard, "leading samples dropped from phase portraits"),
                         [&](RunConfig& r) { r.discard = flags.discard; });
    overlay.emplace_back(app.add_option("--tail", flags.tail, "trailing samples kept per run"),
                         [&](RunConfig& r) { r.tail = flags.tail; });
    overlay.emplace_back(app.add_option("--I-points", flags.I_points, "Hopf curve samples"),
                         [&](RunConfig& r) { r.I_points = flags.I_points; });
    overlay.emplace_back(app.add_option("--corrector-iterations", flags.corrector_iterations, "corrector passes per step"),
                         [&](RunConfig& r) { r.corrector_iterations = flags.corrector_iterations; });
    overlay.emplace_back(app.add_option("--y0", y0, "initial state, comma separated")->delimiter(','),
                         [&](RunConfig& r) { r.y0 = y0; });
    overlay.emplace_back(app.add_option("--out", flags.out, "output CSV path (stdout when omitted)"),
                         [&](RunConfig& r) { r.out = flags.out; });
    overlay.emplace_back(app.add_flag("--svg", flags.svg, "also write an SVG plot next to --out"),
                         [&](RunConfig& r) { r.svg = flags.svg; });
    overlay.emplace_back(app.add_flag("--fft", flags.fft, "FFT-accelerated history sums"),
                         [&](RunConfig& r) { r.fft = flags.fft; });

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return exit_config;
    }

    RunConfig config;
    try {
        if (!config_path.empty()) {
            config = load_config(config_path);
        }
        if (!flags.command.empty()) {
            config.command = flags.command;
        }
        if (o_model->count() > 0) {
            config.model = parse_model(model_name);
        }
        for (const auto& [option, apply] : overlay) {
            if (option->count() > 0) {
                apply(config);
            }
        }
        if (o_theta->count() > 0 && config.model != Model::DimerLinear) {
            throw InvalidArgument("--theta applies to --model dimer-linear only");
        }
        for (const auto* o : {o_sigma, o_vs, o_lambda, o_q}) {
            if (o->count() > 0 && config.model != Model::DimerSigmoid) {
                throw InvalidArgument(o->get_name() + " applies to --model dimer-sigmoid only");
            }
        }
        if (config.command.empty()) {
            throw InvalidArgument("no command given");
        }
        validate(config);
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << '\n';
        return exit_config;
    }

    try {
        const auto& cmd = config.command;
        if (cmd == "simulate") return cmd_simulate(config, out, err);
        if (cmd == "equilibria") return cmd_equilibria(config, out);
        if (cmd == "stability") return cmd_stability(config, out);
        if (cmd == "beta-star") return cmd_beta_star(config, out);
        if (cmd == "sweep") return cmd_sweep(config, out, err);
        if (cmd == "hopf-curve") return cmd_hopf_curve(config, out, err);
        return cmd_validate(config, out);
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << '\n';
        return exit_config;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_numerical;
    }
}

}  // namespace fdml::cli
