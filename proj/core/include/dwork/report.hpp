#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dwork/acceptance.hpp"
#include "dwork/zeta.hpp"

namespace dwork {

/// JSON encodings with a fixed field set per type (see docs/json.md).
nlohmann::json field_json(const FieldCtx& F);
nlohmann::json to_json(const CountResult& r);
nlohmann::json to_json(const HyperShape& h);
nlohmann::json to_json(const ClassRecord& c);
nlohmann::json to_json(const IdentityReport& r);
nlohmann::json to_json(const DecompositionReport& r);
nlohmann::json to_json(const ZetaSeries& z);
nlohmann::json to_json(const CriterionResult& r);
nlohmann::json error_json(const std::string& error, const std::string& message);

/// CSV tables: one header line, then one line per row.
std::string classes_csv(const std::vector<ClassRecord>& classes);
std::string decomposition_csv(const DecompositionReport& r);
std::string count_csv(const CountResult& r);
std::string identity_csv(const IdentityReport& r);
std::string zeta_csv(const ZetaSeries& z);

std::string residues_string(const Residues& r);

}  // namespace dwork
