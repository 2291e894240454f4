// Command-line front end: headless experiments, log replay, and the live
// drawing service.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "colorist/calibration.hpp"
#include "colorist/server.hpp"
#include "colorist/session.hpp"
#include "colorist/sim.hpp"

int main(int argc, char** argv) {
    using namespace colorist;

    CLI::App app{"Adaptive drawing canvas: bandit color proposals, simulations and live sessions"};
    app.require_subcommand(1);

    // simulate
    auto* simulate = app.add_subcommand("simulate", "Run simulated-user sessions and write logs and metrics");
    std::string mode = "adaptive", policy = "hue:7", scheme = "cone", out_dir = "sim_out";
    int iterations = 500, reps = 20, window = 100;
    std::uint64_t seed = 1;
    double epsilon = 0.2, stay = 0.05;
    bool no_baseline = false, serial = false;
    simulate->add_option("--mode", mode, "adaptive|random")->check(CLI::IsMember({"adaptive", "random"}));
    simulate->add_option("--policy", policy, "hue:T[:TOL] | brightest | contrast | random");
    simulate->add_option("--iterations", iterations)->check(CLI::PositiveNumber);
    simulate->add_option("--reps", reps)->check(CLI::PositiveNumber);
    simulate->add_option("--seed", seed);
    simulate->add_option("--epsilon", epsilon)->check(CLI::Range(0.0, 1.0));
    simulate->add_option("--reward-scheme", scheme)->check(CLI::IsMember({"cone", "moved-onto"}));
    simulate->add_option("--stay-prob", stay, "simulated user's dwell probability")->check(CLI::Range(0.0, 1.0));
    simulate->add_option("--window", window, "trailing window for the adaptation metric")->check(CLI::PositiveNumber);
    simulate->add_option("--out", out_dir);
    simulate->add_flag("--no-baseline", no_baseline, "skip the random-mode comparison runs");
    simulate->add_flag("--serial", serial, "use the single-threaded runner");

    // replay
    auto* replay_cmd = app.add_subcommand("replay", "Verify a session log and print its final grid");
    std::string log_path;
    replay_cmd->add_option("log", log_path, "session .jsonl")->required();

    // serve
    auto* serve = app.add_subcommand("serve", "Host live drawing sessions over WebSocket");
    int port = 8080;
    std::string address = "0.0.0.0", calibration_path;
    std::int64_t dwell_ms = 2000;
    double serve_epsilon = 0.2;
    serve->add_option("--port", port)->check(CLI::Range(0, 65535));
    serve->add_option("--address", address);
    serve->add_option("--dwell-ms", dwell_ms)->check(CLI::NonNegativeNumber);
    serve->add_option("--epsilon", serve_epsilon)->check(CLI::Range(0.0, 1.0));
    serve->add_option("--calibration", calibration_path, "stored calibration file; skips calibration");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*simulate) {
            sim::ExperimentSpec spec;
            spec.session.mode = parse_mode(mode);
            spec.session.seed = seed;
            spec.session.iterations = iterations;
            spec.session.epsilon = epsilon;
            spec.session.reward_scheme = parse_reward_scheme(scheme);
            spec.policy = sim::PolicySpec::parse(policy);
            spec.policy.stay_probability = stay;
            spec.repetitions = reps;
            spec.metrics.window = window;
            spec.compare_random = !no_baseline && spec.session.mode == Mode::Adaptive;

            const auto result = serial ? sim::run_experiment_serial(spec) : sim::run_experiment(spec);
            sim::write_experiment(result, spec, out_dir);
            const auto& r = result.report;
            std::cout << "sessions: " << result.sessions.size() << " (" << mode << ", " << spec.policy.to_string()
                      << ")\nmodal-group share, last " << window << " steps: " << r.mean_window_share << '\n';
            if (r.random_window_share) {
                std::cout << "random baseline: " << *r.random_window_share << "\ndelta: " << *r.window_share_delta
                          << '\n';
            }
            std::cout << "inked panels: " << r.inked_count << "\noutput: " << out_dir << '\n';
        } else if (*replay_cmd) {
            std::ifstream in(log_path);
            if (!in) throw std::runtime_error("cannot open " + log_path);
            const SessionLog log = read_log(in);
            const ReplayResult result = replay(log.config, log);
            std::cout << result.canvas.export_csv();
            std::cerr << "replayed " << log.events.size() << " events: ok\n";
        } else if (*serve) {
            service::ServiceOptions options;
            options.defaults.dwell_ms = dwell_ms;
            options.defaults.epsilon = serve_epsilon;
            if (!calibration_path.empty()) options.calibration = Calibration::load(calibration_path);
            service::SessionService svc(options);
            service::Server server(svc, address, static_cast<std::uint16_t>(port));
            std::cerr << "listening on " << address << ':' << server.port() << " (ws://, GET /health)\n";
            server.run();
        }
    } catch (const IntegrityError& e) {
        std::cerr << "integrity error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
