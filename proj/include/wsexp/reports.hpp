#pragma once

#include <string>

#include "json.hpp"
#include "wsexp/bounds.hpp"
#include "wsexp/expansion.hpp"
#include "wsexp/testbeds.hpp"

namespace wsexp {

std::string family_kind_name(FamilyKind kind);
std::string expansion_mode_name(ExpansionMode mode);

nlohmann::json to_json(const Precondition& p);
nlohmann::json to_json(const BoundReport& r);
nlohmann::json to_json(const ExpansionEstimate& e);
nlohmann::json to_json(const HeuristicResult& h);
nlohmann::json to_json(const VerificationReport& r);

// Plain-text table rendering of an audit report. Pure: consumes only the
// JSON document, no recomputation.
std::string render_audit_tables(const nlohmann::json& audit);

std::string render_verification(const nlohmann::json& verification);

}  // namespace wsexp
