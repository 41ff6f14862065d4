#include "gpl/serialize.hpp"

#include <sstream>
#include <stdexcept>

namespace gpl {

nlohmann::ordered_json field_to_json(const FiniteField& f) {
    nlohmann::ordered_json j;
    j["p"] = f.p();
    j["d"] = f.d();
    j["modulus"] = f.modulus();
    j["generator"] = f.generator();
    return j;
}

FieldPtr field_from_json(const nlohmann::ordered_json& j) {
    auto f = FiniteField::make(j.at("p").get<std::int64_t>(), j.at("d").get<int>());
    // The constructor is deterministic; reject descriptors that disagree.
    if (j.contains("modulus") &&
        j.at("modulus").get<std::vector<std::int64_t>>() != f->modulus())
        throw std::invalid_argument("modulus does not match the canonical choice");
    if (j.contains("generator") && j.at("generator").get<Fe>() != f->generator())
        throw std::invalid_argument("generator does not match the canonical choice");
    return f;
}

nlohmann::ordered_json graph_to_json(const Graph& g) {
    nlohmann::ordered_json j;
    j["n"] = g.n();
    auto edges = nlohmann::ordered_json::array();
    for (int i = 0; i < g.n(); ++i)
        for (int k = i + 1; k < g.n(); ++k)
            if (g.adjacent(i, k)) edges.push_back({i, k});
    j["edges"] = std::move(edges);
    switch (g.labeling()) {
        case Labeling::none: j["labeling"] = "none"; break;
        case Labeling::field:
            j["labeling"] = "field";
            j["field"] = field_to_json(*g.field());
            break;
        case Labeling::cyclic: j["labeling"] = "cyclic"; break;
    }
    return j;
}

Graph graph_from_json(const nlohmann::ordered_json& j) {
    Graph g(j.at("n").get<int>());
    for (const auto& e : j.at("edges"))
        g.add_edge(e.at(0).get<int>(), e.at(1).get<int>());
    const std::string lab = j.value("labeling", "none");
    if (lab == "field") g.set_field_labeling(field_from_json(j.at("field")));
    else if (lab == "cyclic") g.set_cyclic_labeling();
    return g;
}

std::string graph_to_dimacs(const Graph& g) {
    std::ostringstream out;
    out << "p edge " << g.n() << ' ' << g.edge_count() << '\n';
    for (int i = 0; i < g.n(); ++i)
        for (int k = i + 1; k < g.n(); ++k)
            if (g.adjacent(i, k)) out << "e " << i + 1 << ' ' << k + 1 << '\n';
    return out.str();
}

Graph graph_from_dimacs(const std::string& text) {
    std::istringstream in(text);
    std::string tok;
    Graph g;
    bool have_header = false;
    while (in >> tok) {
        if (tok == "c") {
            std::string line;
            std::getline(in, line);
        } else if (tok == "p") {
            std::string kind;
            int n = 0;
            std::int64_t m = 0;
            in >> kind >> n >> m;
            if (kind != "edge") throw std::invalid_argument("unsupported problem line");
            g = Graph(n);
            have_header = true;
        } else if (tok == "e") {
            if (!have_header) throw std::invalid_argument("edge before header");
            int i = 0, k = 0;
            in >> i >> k;
            g.add_edge(i - 1, k - 1);
        } else {
            throw std::invalid_argument("unrecognized DIMACS token: " + tok);
        }
    }
    if (!have_header) throw std::invalid_argument("missing DIMACS header");
    return g;
}

nlohmann::ordered_json cc_to_json(const CoherentConfiguration& cc) {
    nlohmann::ordered_json j;
    j["n"] = cc.n;
    j["num_relations"] = cc.num_relations;
    j["colors"] = cc.color;
    ensure_tensor(cc);
    auto tensor = nlohmann::ordered_json::array();
    for (const auto& [key, value] : cc.tensor)
        tensor.push_back({key[0], key[1], key[2], value});
    j["tensor"] = std::move(tensor);
    return j;
}

nlohmann::ordered_json permutation_to_json(const Permutation& p) {
    return nlohmann::ordered_json(p.images());
}

nlohmann::ordered_json group_to_json(const PermGroup& g) {
    nlohmann::ordered_json j;
    j["n"] = g.degree();
    auto gens = nlohmann::ordered_json::array();
    for (const auto& p : g.generators()) gens.push_back(permutation_to_json(p));
    j["generators"] = std::move(gens);
    j["order"] = g.order_string();
    j["base"] = g.base();
    return j;
}

}  // namespace gpl
