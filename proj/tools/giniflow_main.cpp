#include "giniflow/report.hpp"

#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"

namespace {

struct CommandFlags {
    CLI::App* app = nullptr;
    std::string format = "text";
    std::string mode = "faithful";
    std::string input;
    std::string out;
    double tau = 0.0;
    CLI::Option* tau_opt = nullptr;
    double slope = 0.0;
    CLI::Option* slope_opt = nullptr;
    std::string steps;
    CLI::Option* steps_opt = nullptr;
    std::string span;
    CLI::Option* span_opt = nullptr;
    double step = 0.0;
    CLI::Option* step_opt = nullptr;
    double eval_t = 0.0;
    CLI::Option* eval_t_opt = nullptr;
    bool from_model = false;
};

void add_common(CLI::App* cmd, CommandFlags& flags) {
    flags.app = cmd;
    cmd->add_option("--format", flags.format, "report format")
        ->check(CLI::IsMember({"text", "csv", "json"}));
    cmd->add_option("--mode", flags.mode, "faithful | reproduce")
        ->check(CLI::IsMember({"faithful", "reproduce"}));
    cmd->add_option("--input", flags.input, "input file path");
    cmd->add_option("--out", flags.out, "write the report to this file instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"giniflow: inequality-dynamics model evaluation and table reproduction"};
    app.require_subcommand(1);

    std::map<std::string, CommandFlags> flags;

    add_common(app.add_subcommand("table1", "render the 16-indicator curvature table"),
               flags["table1"]);

    {
        auto& f = flags["wfunc"];
        add_common(app.add_subcommand("wfunc", "evaluate the entropy-style W functional"), f);
        f.tau_opt = f.app->add_option("--tau", f.tau, "time scale (faithful mode)");
    }
    {
        auto& f = flags["gini-rate"];
        add_common(app.add_subcommand("gini-rate", "evaluate the Gini rate equation"), f);
        f.eval_t_opt = f.app->add_option("--t", f.eval_t, "evaluation time (faithful mode)");
    }
    {
        auto& f = flags["sensitivity"];
        add_common(app.add_subcommand("sensitivity", "adoption-increase sensitivity table"), f);
        f.slope_opt = f.app->add_option("--slope", f.slope, "change per percent increase");
        f.steps_opt = f.app->add_option("--steps", f.steps, "increase grid A:B:S (default 5:35:5)");
        f.app->add_flag("--from-model", f.from_model, "re-evaluate the rate equation per increase");
        f.eval_t_opt = f.app->add_option("--t", f.eval_t, "evaluation time (faithful mode)");
    }
    {
        auto& f = flags["simulate"];
        add_common(app.add_subcommand("simulate", "integrate the Gini trajectory from a scenario"), f);
        f.span_opt = f.app->add_option("--span", f.span, "integration span A:B (overrides scenario)");
        f.step_opt = f.app->add_option("--step", f.step, "integration step (overrides scenario)");
    }
    add_common(app.add_subcommand("calibrate", "per-indicator regression against a GDP panel"),
               flags["calibrate"]);
    add_common(app.add_subcommand("preset-export", "write the bundled georgia-2023 dataset"),
               flags["preset-export"]);
    add_common(app.add_subcommand("validate", "run dataset validation checks"), flags["validate"]);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    const auto& f = flags.at(app.get_subcommands().front()->get_name());
    giniflow::CommandConfig cfg;
    cfg.command = f.app->get_name();
    cfg.input_path = f.input;
    cfg.out_path = f.out;
    cfg.format = f.format == "text"  ? giniflow::OutputFormat::text
                 : f.format == "csv" ? giniflow::OutputFormat::csv
                                     : giniflow::OutputFormat::json;
    cfg.mode = f.mode == "reproduce" ? giniflow::RunMode::reproduce : giniflow::RunMode::faithful;
    if (f.tau_opt && f.tau_opt->count()) cfg.tau = f.tau;
    if (f.slope_opt && f.slope_opt->count()) cfg.slope = f.slope;
    if (f.steps_opt && f.steps_opt->count()) cfg.steps = f.steps;
    if (f.span_opt && f.span_opt->count()) cfg.span = f.span;
    if (f.step_opt && f.step_opt->count()) cfg.step = f.step;
    if (f.eval_t_opt && f.eval_t_opt->count()) cfg.eval_t = f.eval_t;
    cfg.from_model = f.from_model;

    return giniflow::run(cfg, std::cout, std::cerr);
}
