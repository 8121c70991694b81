#include "qfloer/complex_json.hpp"

#include <stdexcept>

namespace qfloer::complexes {

using nlohmann::json;

json to_json(const GradedFilteredComplex& complex) {
    json basis = json::array();
    for (const auto& e : complex.basis()) {
        basis.push_back({{"label", e.label},
                         {"degree", e.degree},
                         {"filtration", e.filtration},
                         {"action", qfloer::to_string(e.action)}});
    }
    json differential = json::array();
    for (const auto& entry : complex.entries()) {
        differential.push_back(json::array({entry.from, entry.to, qfloer::to_string(entry.coefficient)}));
    }
    return json{{"basis", std::move(basis)}, {"differential", std::move(differential)}};
}

GradedFilteredComplex complex_from_json(const json& document) {
    try {
        std::vector<BasisElement> basis;
        for (const auto& e : document.at("basis")) {
            basis.push_back({e.at("label").get<std::string>(), e.at("degree").get<int>(),
                             e.at("filtration").get<int>(), parse_rational(e.at("action").get<std::string>())});
        }
        std::vector<DifferentialEntry> entries;
        for (const auto& triple : document.at("differential")) {
            if (!triple.is_array() || triple.size() != 3) {
                throw std::invalid_argument("differential entries must be [from, to, \"num/den\"]");
            }
            entries.push_back({triple[0].get<std::size_t>(), triple[1].get<std::size_t>(),
                               parse_rational(triple[2].get<std::string>())});
        }
        return GradedFilteredComplex(std::move(basis), entries);
    } catch (const json::exception& ex) {
        throw std::invalid_argument(std::string("malformed complex document: ") + ex.what());
    }
}

std::string serialize(const GradedFilteredComplex& complex) { return to_json(complex).dump(); }

GradedFilteredComplex deserialize(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& ex) {
        throw std::invalid_argument(std::string("complex document is not JSON: ") + ex.what());
    }
    return complex_from_json(doc);
}

json chain_to_json(const GradedFilteredComplex& complex, const Chain& chain) {
    json out = json::object();
    for (const auto& [i, c] : chain) out[complex.element(i).label] = qfloer::to_string(c);
    return out;
}

}  // namespace qfloer::complexes
