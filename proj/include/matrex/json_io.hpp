#pragma once

#include <string>

#include "json.hpp"
#include "matrex/certificate.hpp"
#include "matrex/conjectures.hpp"
#include "matrex/fiber.hpp"
#include "matrex/saturation.hpp"
#include "matrex/sbo.hpp"

namespace matrex {

// Matroid definitions are JSON objects dispatched on "type": uniform,
// graphic, linear, transversal, explicit, dual, direct_sum, minor and
// polymatroid (the lifted matroid of a discrete polymatroid). Errors carry
// the JSON path of the offending value.
MatroidPtr parse_matroid(const nlohmann::json& doc);
MatroidPtr parse_matroid_text(const std::string& text);
MatroidPtr load_matroid_file(const std::string& path);

DiscretePolymatroid parse_polymatroid(const nlohmann::json& doc);

Basis parse_basis(const nlohmann::json& doc, int ground_size,
                  const std::string& path = "$");
Monomial parse_monomial(const nlohmann::json& doc, int ground_size,
                        const std::string& path = "$");
Certificate parse_certificate(const nlohmann::json& doc, int ground_size);
Certificate load_certificate_file(const std::string& path, int ground_size);
TEReport parse_te_report(const nlohmann::json& doc);

nlohmann::json to_json(const Basis& b);
nlohmann::json to_json(const Monomial& m);
nlohmann::json to_json(const Multidegree& d);
nlohmann::json to_json(const SwapMove& mv);
nlohmann::json to_json(const Certificate& c);
nlohmann::json to_json(const AxiomCheck& c);
nlohmann::json to_json(const ExchangeBijection& b);
nlohmann::json to_json(const SboCheck& c);
nlohmann::json to_json(const FiberReport& r);
nlohmann::json to_json(const TEReport& r);
nlohmann::json to_json(const HarnessReport& r);
nlohmann::json to_json(const BalanceResult& r);
nlohmann::json to_json(const SaturationWitness& w);
nlohmann::json to_json(const ReplayResult& r);

std::string verdict_name(Verdict v);

}  // namespace matrex
