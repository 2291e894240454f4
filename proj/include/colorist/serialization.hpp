#pragma once

// nlohmann::json adapters for the session types shared by the event log and
// the wire protocol.

#include "json.hpp"

#include "colorist/session.hpp"

namespace colorist {

void to_json(nlohmann::json& j, const Cell& c);
void from_json(const nlohmann::json& j, Cell& c);

void to_json(nlohmann::json& j, const PanelPaint& p);
void from_json(const nlohmann::json& j, PanelPaint& p);

void to_json(nlohmann::json& j, const SessionConfig& c);
void from_json(const nlohmann::json& j, SessionConfig& c);

void to_json(nlohmann::json& j, const SessionEvent& e);
void from_json(const nlohmann::json& j, SessionEvent& e);

}  // namespace colorist
