#include "sidecar.hpp"

#include <fstream>

namespace mixcert::cli {

Json claim_json(const ClaimResult& c) {
    Json j;
    j["applicable"] = c.applicable;
    if (!c.applicable)
        return j;
    j["holds"] = c.holds;
    j["grade"] = std::string(to_string(c.grade));
    j["measured"] = c.measured;
    j["threshold"] = c.threshold;
    j["probes"] = c.probes;
    j["spectral_bound"] = c.spectral_bound ? Json(*c.spectral_bound) : Json(nullptr);
    j["note"] = c.note;
    return j;
}

Json claims_json(const ClaimsReport& r) {
    Json j;
    j["density"] = claim_json(r.density);
    j["conductance"] = claim_json(r.conductance);
    j["vertex_expansion"] = claim_json(r.vertex_expansion);
    j["all_hold"] = r.all_hold();
    return j;
}

Json inner_json(const InnerCertificate& c) {
    Json j;
    j["lambda2"] = c.lambda2;
    j["lambda"] = c.lambda;
    j["cheeger_lower"] = c.cheeger_lower;
    j["expansion_cap"] = c.expansion_cap;
    j["tanner_at_cap"] = c.tanner_at_cap;
    j["certified"] = c.certified;
    j["grade"] = "spectral";
    return j;
}

Json sidecar_json(const PlantedInstance& inst) {
    Json j;
    j["S"] = inst.s.members();
    j["T"] = inst.t.members();
    Json params;
    params["family"] = std::string(to_string(inst.family));
    params["n"] = inst.n;
    params["d"] = inst.d;
    params["seed"] = inst.seed;
    j["params"] = params;
    j["inner"] = inner_json(inst.inner);
    j["claims"] = inst.claims ? claims_json(*inst.claims) : Json(nullptr);
    return j;
}

void save_sidecar(const std::string& path, const PlantedInstance& inst) {
    std::ofstream out(path);
    if (!out)
        throw Error("cannot write '" + path + "'");
    out << sidecar_json(inst).dump(2) << '\n';
}

namespace {

VertexSet read_ids(const Json& j, const char* key, std::size_t n) {
    if (!j.contains(key) || !j[key].is_array())
        throw InvalidArgument(std::string("sidecar lacks an array '") + key + "'");
    VertexSet s(n);
    for (const auto& x : j[key]) {
        if (!x.is_number_unsigned() || x.get<std::uint64_t>() >= n)
            throw InvalidArgument(std::string("sidecar '") + key + "' holds an invalid vertex id");
        s.insert(x.get<Vertex>());
    }
    return s;
}

} // namespace

Sidecar load_sidecar(const std::string& path, std::size_t n) {
    std::ifstream in(path);
    if (!in)
        throw InvalidArgument("cannot open sidecar '" + path + "'");
    Json j;
    try {
        j = Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(std::string("sidecar is not valid JSON: ") + e.what());
    }
    Sidecar sc;
    sc.s = read_ids(j, "S", n);
    sc.t = read_ids(j, "T", n);
    if (j.contains("params")) {
        const auto& p = j["params"];
        if (p.contains("family"))
            sc.family = planted_family_from_string(p["family"].get<std::string>());
        if (p.contains("seed"))
            sc.seed = p["seed"].get<std::uint64_t>();
        if (p.contains("n") && p["n"].get<std::size_t>() != n)
            throw InvalidArgument("sidecar n does not match the graph");
    }
    return sc;
}

} // namespace mixcert::cli
