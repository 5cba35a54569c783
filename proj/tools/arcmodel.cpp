#include <iostream>

#include "CLI11.hpp"
#include "arcmodel/cli.hpp"

int main(int argc, char** argv)
{
    arcmodel::RunConfig cfg;
    CLI::App app{"Finite formal models of arcs and checks of their equivalence with arc deformations"};
    app.require_subcommand(1);

    auto add_input = [&](CLI::App* sub) { sub->add_option("input", cfg.input, "problem file")->required(); };
    auto add_ring = [&](CLI::App* sub, bool required) {
        auto* opt = sub->add_option("--ring", cfg.ring, "test ring, e.g. F2[e]/e^2 or Q[e1,e2]/(e1,e2)^2");
        if (required) opt->required();
    };
    auto add_precision = [&](CLI::App* sub) {
        sub->add_option("--precision", cfg.precision, "reporting precision N");
        sub->add_option("--extra-precision", cfg.extra_precision, "extra working precision");
    };

    auto* check = app.add_subcommand("check", "validate a problem file and print the defect");
    add_input(check);

    auto* defect = app.add_subcommand("defect", "print the defect d");
    add_input(defect);

    auto* model = app.add_subcommand("model", "emit the finite model");
    add_input(model);
    model->add_option("--r", cfg.r, "r >= 1")->capture_default_str();
    model->add_option("--format", cfg.format, "json or ideal")->capture_default_str();
    model->add_option("--output,-o", cfg.output, "write to a file instead of stdout");

    auto* lift = app.add_subcommand("lift", "lift a random deformation level by level and print the trace");
    add_input(lift);
    add_ring(lift, true);
    lift->add_option("--r", cfg.r)->capture_default_str();
    lift->add_option("--seed", cfg.seed)->capture_default_str();
    add_precision(lift);

    auto* roundtrip = app.add_subcommand("roundtrip", "seeded roundtrip trials of the forward and inverse maps");
    add_input(roundtrip);
    add_ring(roundtrip, true);
    roundtrip->add_option("--r", cfg.r)->capture_default_str();
    roundtrip->add_option("--seed", cfg.seed)->capture_default_str();
    roundtrip->add_option("--trials", cfg.trials)->capture_default_str();
    roundtrip->add_option("--threads", cfg.threads, "0 = hardware concurrency")->capture_default_str();
    add_precision(roundtrip);

    auto* oracle = app.add_subcommand("oracle", "enumerate both sides over a finite ring and compare");
    add_input(oracle);
    add_ring(oracle, true);
    oracle->add_option("--precision", cfg.precision, "truncation N")->required();
    oracle->add_option("--r", cfg.r)->capture_default_str();
    oracle->add_option("--extra-precision", cfg.extra_precision);
    oracle->add_flag("--dump", cfg.dump, "print both sets in canonical form");
    oracle->add_option("--output,-o", cfg.output, "write the dump to a file");

    auto* prepare = app.add_subcommand("prepare", "Weierstrass preparation of one series");
    add_ring(prepare, true);
    prepare->add_option("--series", cfg.series, "coefficients [c0, c1, ...]")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : arcmodel::exit_status::input_error;
    }
    cfg.command = app.get_subcommands().front()->get_name();
    return arcmodel::run(cfg, std::cout, std::cerr);
}
