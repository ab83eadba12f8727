#pragma once

#include <string>

#include <json.hpp>

#include "mixcert/construct.hpp"

namespace mixcert::cli {

using Json = nlohmann::ordered_json;

struct Sidecar {
    VertexSet s, t;
    PlantedFamily family = PlantedFamily::Expander;
    std::uint64_t seed = 0;
};

Json claim_json(const ClaimResult& c);
Json claims_json(const ClaimsReport& r);
Json inner_json(const InnerCertificate& c);

// {S, T, params, claims}
Json sidecar_json(const PlantedInstance& inst);
void save_sidecar(const std::string& path, const PlantedInstance& inst);
// Validates ids against the graph order n.
Sidecar load_sidecar(const std::string& path, std::size_t n);

} // namespace mixcert::cli
