// cohconf.hpp
// Coherent configurations: 2-dim Weisfeiler-Leman closure, axiom
// verification with intersection-number tensors, point extensions,
// fiber restriction, and 2-WL equivalence of graphs.
//
// Colors are canonical: at every refinement round the distinct pair
// signatures are sorted and renumbered in order, so two runs over the
// same (or jointly refined) inputs produce comparable color indices.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "gpl/graph.hpp"
#include "gpl/report.hpp"

namespace gpl {

struct CoherentConfiguration {
    int n = 0;
    std::uint32_t num_relations = 0;
    std::vector<std::uint32_t> color;  // row-major n*n relation indices

    std::uint32_t at(int i, int j) const {
        return color[static_cast<size_t>(i) * static_cast<size_t>(n) +
                     static_cast<size_t>(j)];
    }
    std::uint32_t& at(int i, int j) {
        return color[static_cast<size_t>(i) * static_cast<size_t>(n) +
                     static_cast<size_t>(j)];
    }

    // Intersection numbers c_{rs}^t, populated by verify_axioms (or
    // ensure_tensor); sparse, keyed by (r,s,t).
    mutable std::map<std::array<std::uint32_t, 3>, std::int64_t> tensor;
    mutable bool tensor_built = false;
};

// A binary relation as a list of ordered pairs.
using Relation = std::vector<std::pair<int, int>>;

// Smallest coherent configuration in which every input relation is a
// union of classes; computed by 2-dim WL refinement to a fixed point.
CoherentConfiguration wl_closure(int n, const std::vector<Relation>& relations);

// Closure of the edge relation of a graph.
CoherentConfiguration wl_closure(const Graph& g);

// Exhaustive check of axioms C1-C3. On pass the intersection tensor is
// populated; on fail the report carries a violating witness.
VerificationReport verify_axioms(const CoherentConfiguration& cc);

// Populate cc.tensor (requires cc to be coherent; throws otherwise).
void ensure_tensor(const CoherentConfiguration& cc);

// WL closure of S(cc) together with the singleton diagonal relations at
// the given (distinct) points; the result refines cc.
CoherentConfiguration point_extension(const CoherentConfiguration& cc,
                                      const std::vector<int>& points);

// Minimal fibers: vertex classes of the diagonal colors, ordered by
// smallest member.
std::vector<std::vector<int>> fibers(const CoherentConfiguration& cc);

bool is_discrete(const CoherentConfiguration& cc);

// Restriction to a union of fibers; relations intersected with
// delta x delta and reindexed. Throws if delta is not fiber-closed.
CoherentConfiguration restrict_cc(const CoherentConfiguration& cc,
                                  const std::vector<int>& delta);

// c_{rs}^t (requires coherence).
std::int64_t intersection_number(const CoherentConfiguration& cc,
                                 std::uint32_t r, std::uint32_t s, std::uint32_t t);

// 2-dim WL equivalence: closures computed with a shared color namespace;
// true iff per-color class sizes and intersection tensors agree.
bool twl_equivalent(const Graph& g1, const Graph& g2);

// --- internals exposed for the joint-naming machinery and tests ---

// One refinement space: a square color matrix. Joint refinement shares
// the signature dictionary across spaces so colors stay comparable.
struct WlSpace {
    int n = 0;
    std::vector<std::uint32_t> color;
};

// Refine all spaces to the joint fixed point; returns the common number
// of colors.
std::uint32_t wl_refine_joint(std::vector<WlSpace>& spaces);

// Canonical initial coloring of a list of graphs (diagonal, edge,
// non-edge) over one shared namespace.
std::vector<WlSpace> wl_initial_joint(const std::vector<const Graph*>& graphs);

}  // namespace gpl
