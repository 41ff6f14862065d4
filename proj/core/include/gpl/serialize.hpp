// serialize.hpp
// Wire formats: field descriptors and graphs as JSON, graphs as
// DIMACS-like text, coherent configurations, permutations and groups.
// Key order is fixed so identical inputs serialize byte-identically.

#pragma once

#include <string>

#include <json.hpp>

#include "gpl/cohconf.hpp"
#include "gpl/ffield.hpp"
#include "gpl/graph.hpp"
#include "gpl/permgrp.hpp"

namespace gpl {

// {p, d, modulus: [c_0..c_d], generator} - coefficients low to high.
nlohmann::ordered_json field_to_json(const FiniteField& f);
FieldPtr field_from_json(const nlohmann::ordered_json& j);

// {n, edges: [[i,j],...], labeling: "none"|"field"|"cyclic", field?}
nlohmann::ordered_json graph_to_json(const Graph& g);
Graph graph_from_json(const nlohmann::ordered_json& j);

// "p edge n m" header plus "e i j" lines, 1-based endpoints.
std::string graph_to_dimacs(const Graph& g);
Graph graph_from_dimacs(const std::string& text);

// {n, colors: row-major, tensor: [[r,s,t,c],...]}
nlohmann::ordered_json cc_to_json(const CoherentConfiguration& cc);

// image array
nlohmann::ordered_json permutation_to_json(const Permutation& p);

// {n, generators, order, base}
nlohmann::ordered_json group_to_json(const PermGroup& g);

}  // namespace gpl
