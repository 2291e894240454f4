#include <omp.h>

#include <algorithm>
#include <exception>
#include <fstream>
#include <sstream>

#include "colorist/serialization.hpp"
#include "colorist/sim.hpp"

namespace colorist::sim {

int MetricOptions::group_count() const {
    return groups.empty() ? 0 : *std::max_element(groups.begin(), groups.end()) + 1;
}

namespace {

GroupShare modal_share(const std::vector<std::int64_t>& per_group) {
    GroupShare out;
    for (std::int64_t c : per_group) out.total += c;
    const auto it = std::max_element(per_group.begin(), per_group.end());
    out.group = static_cast<int>(it - per_group.begin());
    out.share = out.total > 0 ? static_cast<double>(*it) / static_cast<double>(out.total) : 0.0;
    return out;
}

}  // namespace

AdaptationMetrics adaptation_metric(const std::vector<SessionEvent>& events, int palette_size,
                                    const MetricOptions& options) {
    if (events.empty()) throw DomainError("adaptation metric needs a non-empty log");
    if (static_cast<int>(options.groups.size()) != palette_size) {
        throw DomainError("color groups must assign every arm");
    }
    if (options.window < 1 || options.curve_block < 1) throw DomainError("window lengths must be positive");
    const int groups = options.group_count();
    auto group_of = [&](int arm) {
        if (arm < 0 || arm >= palette_size) throw DomainError("arm out of palette range in log");
        return options.groups[static_cast<std::size_t>(arm)];
    };

    AdaptationMetrics m;
    m.inked_histogram.assign(static_cast<std::size_t>(palette_size), 0);
    std::vector<std::int64_t> all(groups, 0), window(groups, 0), inked(groups, 0), block(groups, 0);
    const int n = static_cast<int>(events.size());
    const int window_start = std::max(0, n - options.window);

    for (int i = 0; i < n; ++i) {
        const SessionEvent& e = events[static_cast<std::size_t>(i)];
        for (const auto& arm : e.proposal.ring) {
            if (!arm) continue;
            const int g = group_of(*arm);
            ++all[g];
            ++block[g];
            if (i >= window_start) ++window[g];
        }
        if (e.inked) {
            // The inked paint is the proposal shown on that cell in the previous step.
            const auto& prev = events[static_cast<std::size_t>(i - 1)];
            const Offset o{e.inked->col - prev.center.col, e.inked->row - prev.center.row};
            const int arm = *prev.proposal.ring[static_cast<std::size_t>(*moore_index(o))];
            ++m.inked_histogram[static_cast<std::size_t>(arm)];
            ++inked[group_of(arm)];
            ++m.inked_count;
        }
        if ((i + 1) % options.curve_block == 0 || i + 1 == n) {
            m.concentration_curve.push_back(modal_share(block).share);
            std::fill(block.begin(), block.end(), 0);
        }
    }
    m.proposals = modal_share(all);
    m.window_proposals = modal_share(window);
    m.inked = modal_share(inked);
    return m;
}

void ExperimentSpec::validate() const {
    session.validate();
    if (repetitions < 1) throw DomainError("repetitions must be at least 1");
    if (static_cast<int>(metrics.groups.size()) != session.palette_size) {
        throw DomainError("color groups must assign every arm");
    }
}

std::uint64_t session_seed(std::uint64_t base_seed, int rep) {
    return derive_seed(base_seed, static_cast<std::uint64_t>(rep));
}

std::uint64_t policy_seed(std::uint64_t seed) { return derive_seed(seed, 1000); }

namespace {

SessionResult run_one(const ExperimentSpec& spec, Mode mode, int rep) {
    SessionConfig config = spec.session;
    config.mode = mode;
    config.seed = session_seed(spec.session.seed, rep);
    const Session session = run_session(config, spec.policy, policy_seed(config.seed), spec.timing);

    SessionResult r;
    r.rep = rep;
    r.mode = mode;
    r.seed = config.seed;
    r.log = write_log(session);
    r.grid_csv = session.canvas().export_csv();
    r.snapshots = session.agent().snapshots();
    r.metrics = adaptation_metric(session.events(), config.palette_size, spec.metrics);
    return r;
}

struct Job {
    Mode mode;
    int rep;
};

std::vector<Job> jobs_for(const ExperimentSpec& spec) {
    std::vector<Job> jobs;
    for (int rep = 0; rep < spec.repetitions; ++rep) jobs.push_back({spec.session.mode, rep});
    if (spec.compare_random) {
        for (int rep = 0; rep < spec.repetitions; ++rep) jobs.push_back({Mode::Random, rep});
    }
    return jobs;
}

AdaptationReport aggregate(const ExperimentSpec& spec, const std::vector<SessionResult>& sessions,
                           const std::vector<SessionResult>& baseline) {
    AdaptationReport report;
    report.inked_histogram.assign(static_cast<std::size_t>(spec.session.palette_size), 0);
    const double reps = static_cast<double>(sessions.size());
    for (const auto& s : sessions) {
        for (std::size_t a = 0; a < s.metrics.inked_histogram.size(); ++a) {
            report.inked_histogram[a] += s.metrics.inked_histogram[a];
        }
        report.inked_count += s.metrics.inked_count;
        report.mean_proposal_share += s.metrics.proposals.share / reps;
        report.mean_window_share += s.metrics.window_proposals.share / reps;
        report.mean_inked_share += s.metrics.inked.share / reps;
        if (report.mean_concentration_curve.size() < s.metrics.concentration_curve.size()) {
            report.mean_concentration_curve.resize(s.metrics.concentration_curve.size(), 0.0);
        }
        for (std::size_t b = 0; b < s.metrics.concentration_curve.size(); ++b) {
            report.mean_concentration_curve[b] += s.metrics.concentration_curve[b] / reps;
        }
    }
    if (!baseline.empty()) {
        double random_share = 0.0;
        for (const auto& s : baseline) random_share += s.metrics.window_proposals.share / static_cast<double>(baseline.size());
        report.random_window_share = random_share;
        report.window_share_delta = report.mean_window_share - random_share;
    }
    return report;
}

ExperimentResult assemble(const ExperimentSpec& spec, std::vector<SessionResult> results) {
    ExperimentResult out;
    const auto reps = static_cast<std::ptrdiff_t>(spec.repetitions);
    out.sessions.assign(std::make_move_iterator(results.begin()), std::make_move_iterator(results.begin() + reps));
    out.baseline.assign(std::make_move_iterator(results.begin() + reps), std::make_move_iterator(results.end()));
    out.report = aggregate(spec, out.sessions, out.baseline);
    return out;
}

}  // namespace

ExperimentResult run_experiment_serial(const ExperimentSpec& spec) {
    spec.validate();
    const auto jobs = jobs_for(spec);
    std::vector<SessionResult> results;
    results.reserve(jobs.size());
    for (const Job& job : jobs) results.push_back(run_one(spec, job.mode, job.rep));
    return assemble(spec, std::move(results));
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
    spec.validate();
    const auto jobs = jobs_for(spec);
    const auto count = static_cast<std::int64_t>(jobs.size());
    std::vector<SessionResult> results(jobs.size());
    std::exception_ptr failure;

#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < count; ++i) {
        try {
            const Job& job = jobs[static_cast<std::size_t>(i)];
            results[static_cast<std::size_t>(i)] = run_one(spec, job.mode, job.rep);
        } catch (...) {
#pragma omp critical(colorist_experiment_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return assemble(spec, std::move(results));
}

std::string metrics_csv(const ExperimentResult& result) {
    std::ostringstream out;
    out << "rep,mode,seed,proposal_group,proposal_share,window_group,window_share,inked_count,inked_group,inked_share\n";
    auto row = [&](const SessionResult& s) {
        const auto& m = s.metrics;
        out << s.rep << ',' << to_string(s.mode) << ',' << s.seed << ',' << m.proposals.group << ','
            << m.proposals.share << ',' << m.window_proposals.group << ',' << m.window_proposals.share << ','
            << m.inked_count << ',' << m.inked.group << ',' << m.inked.share << '\n';
    };
    for (const auto& s : result.sessions) row(s);
    for (const auto& s : result.baseline) row(s);
    return out.str();
}

std::string report_json(const ExperimentResult& result, const ExperimentSpec& spec) {
    const auto& r = result.report;
    nlohmann::json j{{"config", spec.session},
                     {"policy", spec.policy.to_string()},
                     {"repetitions", spec.repetitions},
                     {"window", spec.metrics.window},
                     {"groups", spec.metrics.groups},
                     {"inked_histogram", r.inked_histogram},
                     {"inked_count", r.inked_count},
                     {"mean_proposal_share", r.mean_proposal_share},
                     {"mean_window_share", r.mean_window_share},
                     {"mean_inked_share", r.mean_inked_share},
                     {"mean_concentration_curve", r.mean_concentration_curve}};
    if (r.random_window_share) {
        j["random_window_share"] = *r.random_window_share;
        j["window_share_delta"] = *r.window_share_delta;
    }
    return j.dump(2) + "\n";
}

void write_experiment(const ExperimentResult& result, const ExperimentSpec& spec, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    auto write_file = [](const std::filesystem::path& path, const std::string& text) {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + path.string());
        out << text;
        if (!out) throw std::runtime_error("failed writing " + path.string());
    };
    auto numbered = [](std::string_view prefix, int rep, std::string_view ext) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.*s%03d%.*s", static_cast<int>(prefix.size()), prefix.data(), rep,
                      static_cast<int>(ext.size()), ext.data());
        return std::string(buf);
    };
    for (const auto& s : result.sessions) {
        write_file(dir / numbered("session_", s.rep, ".jsonl"), s.log);
        write_file(dir / numbered("grid_", s.rep, ".csv"), s.grid_csv);
    }
    for (const auto& s : result.baseline) {
        write_file(dir / numbered("random_session_", s.rep, ".jsonl"), s.log);
        write_file(dir / numbered("random_grid_", s.rep, ".csv"), s.grid_csv);
    }
    write_file(dir / "metrics.csv", metrics_csv(result));
    write_file(dir / "report.json", report_json(result, spec));
}

}  // namespace colorist::sim
