#include "colorist/serialization.hpp"

namespace colorist {

using nlohmann::json;

void to_json(json& j, const Cell& c) { j = json::array({c.col, c.row}); }

void from_json(const json& j, Cell& c) {
    c.col = j.at(0).get<int>();
    c.row = j.at(1).get<int>();
}

void to_json(json& j, const PanelPaint& p) { j = json{{"arm", p.arm}, {"opacity", p.opacity}}; }

void from_json(const json& j, PanelPaint& p) {
    p.arm = j.at("arm").get<int>();
    p.opacity = j.at("opacity").get<int>();
}

void to_json(json& j, const SessionConfig& c) {
    j = json{{"mode", to_string(c.mode)},
             {"seed", c.seed},
             {"iterations", c.iterations},
             {"width", c.dims.width},
             {"height", c.dims.height},
             {"dwell_ms", c.dwell_ms},
             {"palette_size", c.palette_size},
             {"epsilon", c.epsilon},
             {"reward_scheme", to_string(c.reward_scheme)}};
}

void from_json(const json& j, SessionConfig& c) {
    // Missing keys keep their defaults so clients can send partial configs.
    SessionConfig out;
    if (j.contains("mode")) out.mode = parse_mode(j["mode"].get<std::string>());
    if (j.contains("seed")) out.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("iterations")) out.iterations = j["iterations"].get<int>();
    if (j.contains("width")) out.dims.width = j["width"].get<int>();
    if (j.contains("height")) out.dims.height = j["height"].get<int>();
    if (j.contains("dwell_ms")) out.dwell_ms = j["dwell_ms"].get<std::int64_t>();
    if (j.contains("palette_size")) out.palette_size = j["palette_size"].get<int>();
    if (j.contains("epsilon")) out.epsilon = j["epsilon"].get<double>();
    if (j.contains("reward_scheme")) out.reward_scheme = parse_reward_scheme(j["reward_scheme"].get<std::string>());
    c = out;
}

void to_json(json& j, const SessionEvent& e) {
    json ring = json::array();
    for (int slot = 0; slot < kMooreSize; ++slot) {
        if (e.proposal.ring[slot]) ring.push_back({slot, *e.proposal.ring[slot]});
    }
    json rewards = json::array();
    for (const Reward& r : e.rewards) rewards.push_back({r.slot, r.arm, r.value});

    j = json{{"step", e.step},
             {"t_ms", e.t_ms},
             {"center", e.center},
             {"opacity", e.opacity},
             {"proposals", ring},
             {"center_arm", e.proposal.center_arm},
             {"rewards", rewards},
             {"inked", e.inked ? json(*e.inked) : json(nullptr)}};
    if (e.movement) {
        j["movement"] = {{"dir", to_string(e.movement->direction)},
                         {"dc", e.movement->raw.dc},
                         {"dr", e.movement->raw.dr}};
    } else {
        j["movement"] = nullptr;
    }
}

void from_json(const json& j, SessionEvent& e) {
    e = SessionEvent{};
    e.step = j.at("step").get<int>();
    e.t_ms = j.at("t_ms").get<std::int64_t>();
    e.center = j.at("center").get<Cell>();
    e.opacity = j.at("opacity").get<int>();
    for (const auto& entry : j.at("proposals")) {
        const int slot = entry.at(0).get<int>();
        if (slot < 0 || slot >= kMooreSize) throw DomainError("proposal slot out of range");
        e.proposal.ring[static_cast<std::size_t>(slot)] = entry.at(1).get<int>();
    }
    e.proposal.center_arm = j.at("center_arm").get<int>();
    for (const auto& entry : j.at("rewards")) {
        e.rewards.push_back({entry.at(0).get<int>(), entry.at(1).get<int>(), entry.at(2).get<double>()});
    }
    if (!j.at("inked").is_null()) e.inked = j["inked"].get<Cell>();
    if (const auto& m = j.at("movement"); !m.is_null()) {
        e.movement = Movement{parse_direction(m.at("dir").get<std::string>()),
                              {m.at("dc").get<int>(), m.at("dr").get<int>()}};
    }
}

}  // namespace colorist
