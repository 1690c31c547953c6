#include <json.hpp>

#include "finsleroid/core.hpp"
#include "finsleroid/errors.hpp"

namespace finsleroid {

RawParams raw_params_from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw DomainError(std::string("params JSON does not parse: ") + e.what());
    }
    if (!doc.is_object()) throw DomainError("params JSON must be an object");

    static const char* known[] = {"H", "T", "Chat", "C1", "C2check", "C17", "C39", "C11", "Cstar"};
    for (const auto& item : doc.items()) {
        bool ok = false;
        for (const char* k : known) ok = ok || item.key() == k;
        if (!ok) throw DomainError("unknown params key \"" + item.key() + "\"");
        if (!item.value().is_number())
            throw DomainError("params key \"" + item.key() + "\" must be a number");
    }

    RawParams r;
    auto take = [&](const char* key, double& slot) {
        if (doc.contains(key)) slot = doc[key].get<double>();
    };
    take("H", r.H);
    take("T", r.T);
    take("Chat", r.Chat);
    take("C1", r.C1);
    take("C2check", r.C2check);
    take("C17", r.C17);
    take("C39", r.C39);
    take("C11", r.C11);
    take("Cstar", r.Cstar);
    return r;
}

std::string params_to_json(const Params& p) {
    nlohmann::ordered_json doc = {
        {"H", p.H},   {"T", p.T},     {"Chat", p.Chat}, {"C1", p.C1},       {"C2check", p.C2check},
        {"C17", p.C17}, {"C39", p.C39}, {"C11", p.C11}, {"Cstar", p.Cstar},
        {"derived", {{"P", p.P}, {"C", p.C}, {"C7", p.C7}, {"H1", p.H1}, {"S1", p.S1},
                     {"Lhat1", p.Lhat1}, {"N", p.N}, {"A", p.A}, {"Tstar", p.Tstar}}}};
    return doc.dump(2);
}

}  // namespace finsleroid
