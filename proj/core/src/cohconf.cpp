#include "gpl/cohconf.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace gpl {

namespace {

using Sig = std::vector<std::uint64_t>;

// Assign canonical ids to per-pair signatures across all spaces: distinct
// signatures are sorted lexicographically and numbered in order.
struct SigDict {
    std::map<Sig, std::uint32_t> ids;  // provisional ids, in insertion order

    std::uint32_t intern(Sig&& s) {
        auto it = ids.find(s);
        if (it != ids.end()) return it->second;
        std::uint32_t id = static_cast<std::uint32_t>(ids.size());
        ids.emplace(std::move(s), id);
        return id;
    }

    // std::map iterates in lexicographic key order, which is the canonical
    // order; provisional -> canonical renumbering.
    std::vector<std::uint32_t> canonical_map() const {
        std::vector<std::uint32_t> remap(ids.size());
        std::uint32_t next = 0;
        for (const auto& [sig, prov] : ids) remap[prov] = next++;
        return remap;
    }
};

std::uint64_t pack(std::uint32_t a, std::uint32_t b) {
    return (static_cast<std::uint64_t>(a) << 32) | b;
}

}  // namespace

std::uint32_t wl_refine_joint(std::vector<WlSpace>& spaces) {
    auto count_colors = [&spaces]() {
        std::uint32_t mx = 0;
        for (const auto& sp : spaces)
            for (std::uint32_t c : sp.color) mx = std::max(mx, c + 1);
        return mx;
    };
    std::uint32_t num = count_colors();

    for (;;) {
        SigDict dict;
        std::vector<std::vector<std::uint32_t>> prov(spaces.size());
        for (size_t si = 0; si < spaces.size(); ++si) {
            const auto& sp = spaces[si];
            const int n = sp.n;
            prov[si].resize(sp.color.size());
            Sig sig;
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j) {
                    sig.clear();
                    sig.reserve(static_cast<size_t>(n) + 1);
                    sig.push_back(sp.color[static_cast<size_t>(i) * n + j]);
                    for (int m = 0; m < n; ++m)
                        sig.push_back(pack(sp.color[static_cast<size_t>(i) * n + m],
                                           sp.color[static_cast<size_t>(m) * n + j]));
                    std::sort(sig.begin() + 1, sig.end());
                    prov[si][static_cast<size_t>(i) * n + j] = dict.intern(Sig(sig));
                }
            }
        }
        const std::uint32_t next_num = static_cast<std::uint32_t>(dict.ids.size());
        if (next_num == num) return num;  // refinement only splits; equal count
                                          // means the partition is stable
        auto remap = dict.canonical_map();
        for (size_t si = 0; si < spaces.size(); ++si)
            for (size_t idx = 0; idx < prov[si].size(); ++idx)
                spaces[si].color[idx] = remap[prov[si][idx]];
        num = next_num;
    }
}

std::vector<WlSpace> wl_initial_joint(const std::vector<const Graph*>& graphs) {
    SigDict dict;
    std::vector<std::vector<std::uint32_t>> prov(graphs.size());
    for (size_t si = 0; si < graphs.size(); ++si) {
        const Graph& g = *graphs[si];
        prov[si].resize(static_cast<size_t>(g.n()) * g.n());
        for (int i = 0; i < g.n(); ++i)
            for (int j = 0; j < g.n(); ++j)
                prov[si][static_cast<size_t>(i) * g.n() + j] =
                    dict.intern({i == j ? 1u : 0u, g.adjacent(i, j) ? 1u : 0u});
    }
    auto remap = dict.canonical_map();
    std::vector<WlSpace> spaces(graphs.size());
    for (size_t si = 0; si < graphs.size(); ++si) {
        spaces[si].n = graphs[si]->n();
        spaces[si].color.resize(prov[si].size());
        for (size_t idx = 0; idx < prov[si].size(); ++idx)
            spaces[si].color[idx] = remap[prov[si][idx]];
    }
    return spaces;
}

CoherentConfiguration wl_closure(int n, const std::vector<Relation>& relations) {
    if (n < 1) throw std::invalid_argument("point count must be positive");
    // Membership masks per relation and its converse.
    std::vector<std::vector<std::uint8_t>> memb(relations.size());
    for (size_t r = 0; r < relations.size(); ++r) {
        memb[r].assign(static_cast<size_t>(n) * n, 0);
        for (auto [i, j] : relations[r]) {
            if (i < 0 || j < 0 || i >= n || j >= n)
                throw std::invalid_argument("relation pair out of range");
            memb[r][static_cast<size_t>(i) * n + j] = 1;
        }
    }
    SigDict dict;
    WlSpace sp;
    sp.n = n;
    sp.color.resize(static_cast<size_t>(n) * n);
    std::vector<std::uint32_t> prov(sp.color.size());
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            Sig sig;
            sig.push_back(i == j ? 1u : 0u);
            for (size_t r = 0; r < relations.size(); ++r) {
                sig.push_back(memb[r][static_cast<size_t>(i) * n + j]);
                sig.push_back(memb[r][static_cast<size_t>(j) * n + i]);
            }
            prov[static_cast<size_t>(i) * n + j] = dict.intern(std::move(sig));
        }
    }
    auto remap = dict.canonical_map();
    for (size_t idx = 0; idx < prov.size(); ++idx) sp.color[idx] = remap[prov[idx]];

    std::vector<WlSpace> spaces{std::move(sp)};
    std::uint32_t num = wl_refine_joint(spaces);

    CoherentConfiguration cc;
    cc.n = n;
    cc.num_relations = num;
    cc.color = std::move(spaces[0].color);
    return cc;
}

CoherentConfiguration wl_closure(const Graph& g) {
    Relation edges;
    for (int i = 0; i < g.n(); ++i)
        for (int j = 0; j < g.n(); ++j)
            if (g.adjacent(i, j)) edges.emplace_back(i, j);
    return wl_closure(g.n(), {edges});
}

namespace {

// Counts (r,s) -> |{m : color(a,m)=r, color(m,b)=s}| for the pair (a,b).
std::map<std::pair<std::uint32_t, std::uint32_t>, std::int64_t>
pair_profile(const CoherentConfiguration& cc, int a, int b) {
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::int64_t> prof;
    for (int m = 0; m < cc.n; ++m) ++prof[{cc.at(a, m), cc.at(m, b)}];
    return prof;
}

}  // namespace

VerificationReport verify_axioms(const CoherentConfiguration& cc) {
    VerificationReport rep;
    rep.claim = "coherence-axioms";
    rep.params["n"] = cc.n;
    rep.params["num_relations"] = cc.num_relations;
    rep.hard = true;

    const int n = cc.n;
    // C1: diagonal colors never occur off the diagonal.
    std::vector<char> on_diag(cc.num_relations, 0), off_diag(cc.num_relations, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            (i == j ? on_diag : off_diag)[cc.at(i, j)] = 1;
    for (std::uint32_t c = 0; c < cc.num_relations; ++c) {
        if (on_diag[c] && off_diag[c]) {
            rep.pass = false;
            rep.witnesses.push_back({{"axiom", "C1"}, {"color", c}});
            return rep;
        }
    }
    // C2: the converse of each class is a class.
    std::vector<std::int64_t> conv(cc.num_relations, -1);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            std::uint32_t c = cc.at(i, j), cstar = cc.at(j, i);
            if (conv[c] == -1) conv[c] = cstar;
            else if (conv[c] != cstar) {
                rep.pass = false;
                rep.witnesses.push_back(
                    {{"axiom", "C2"}, {"color", c}, {"pair", {i, j}}});
                return rep;
            }
        }
    }
    // C3: pair profiles constant on each class; record the tensor.
    std::vector<std::optional<std::map<std::pair<std::uint32_t, std::uint32_t>,
                                       std::int64_t>>>
        profile(cc.num_relations);
    std::vector<std::pair<int, int>> rep_pair(cc.num_relations, {-1, -1});
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            std::uint32_t t = cc.at(a, b);
            auto prof = pair_profile(cc, a, b);
            if (!profile[t]) {
                profile[t] = std::move(prof);
                rep_pair[t] = {a, b};
            } else if (*profile[t] != prof) {
                rep.pass = false;
                rep.witnesses.push_back({{"axiom", "C3"},
                                         {"class", t},
                                         {"pair1", {rep_pair[t].first, rep_pair[t].second}},
                                         {"pair2", {a, b}}});
                return rep;
            }
        }
    }
    cc.tensor.clear();
    for (std::uint32_t t = 0; t < cc.num_relations; ++t) {
        if (!profile[t]) continue;
        for (const auto& [rs, cnt] : *profile[t])
            cc.tensor[{rs.first, rs.second, t}] = cnt;
    }
    cc.tensor_built = true;
    rep.pass = true;
    return rep;
}

void ensure_tensor(const CoherentConfiguration& cc) {
    if (cc.tensor_built) return;
    auto rep = verify_axioms(cc);
    if (!rep.pass)
        throw std::invalid_argument("configuration violates coherence axioms");
}

CoherentConfiguration point_extension(const CoherentConfiguration& cc,
                                      const std::vector<int>& points) {
    for (size_t i = 0; i < points.size(); ++i) {
        if (points[i] < 0 || points[i] >= cc.n)
            throw std::invalid_argument("extension point out of range");
        for (size_t j = i + 1; j < points.size(); ++j)
            if (points[i] == points[j])
                throw std::invalid_argument("extension points must be distinct");
    }
    if (points.empty()) {
        CoherentConfiguration copy = cc;
        return copy;
    }
    // Initial partition: old classes split by membership in each singleton
    // relation {(p,p)}.
    SigDict dict;
    const int n = cc.n;
    std::vector<std::uint32_t> prov(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            Sig sig{cc.at(i, j)};
            for (int p : points) sig.push_back(i == p && j == p ? 1u : 0u);
            prov[static_cast<size_t>(i) * n + j] = dict.intern(std::move(sig));
        }
    }
    auto remap = dict.canonical_map();
    WlSpace sp;
    sp.n = n;
    sp.color.resize(prov.size());
    for (size_t idx = 0; idx < prov.size(); ++idx) sp.color[idx] = remap[prov[idx]];

    std::vector<WlSpace> spaces{std::move(sp)};
    std::uint32_t num = wl_refine_joint(spaces);

    CoherentConfiguration out;
    out.n = n;
    out.num_relations = num;
    out.color = std::move(spaces[0].color);
    return out;
}

std::vector<std::vector<int>> fibers(const CoherentConfiguration& cc) {
    std::map<std::uint32_t, std::vector<int>> by_color;
    for (int i = 0; i < cc.n; ++i) by_color[cc.at(i, i)].push_back(i);
    std::vector<std::vector<int>> out;
    out.reserve(by_color.size());
    for (auto& [c, verts] : by_color) out.push_back(std::move(verts));
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return out;
}

bool is_discrete(const CoherentConfiguration& cc) {
    std::vector<char> seen(cc.num_relations, 0);
    for (int i = 0; i < cc.n; ++i) {
        std::uint32_t c = cc.at(i, i);
        if (seen[c]) return false;  // two points share a diagonal color
        seen[c] = 1;
    }
    return true;
}

CoherentConfiguration restrict_cc(const CoherentConfiguration& cc,
                                  const std::vector<int>& delta) {
    std::vector<char> in_delta(static_cast<size_t>(cc.n), 0);
    for (int v : delta) {
        if (v < 0 || v >= cc.n) throw std::invalid_argument("delta point out of range");
        in_delta[static_cast<size_t>(v)] = 1;
    }
    // Fiber-closedness: each diagonal color lies entirely inside or
    // entirely outside delta.
    for (int i = 0; i < cc.n; ++i)
        for (int j = 0; j < cc.n; ++j)
            if (cc.at(i, i) == cc.at(j, j) && in_delta[i] != in_delta[j])
                throw std::invalid_argument("delta is not a union of fibers");

    std::vector<int> verts;
    for (int v = 0; v < cc.n; ++v)
        if (in_delta[v]) verts.push_back(v);

    const int m = static_cast<int>(verts.size());
    std::map<std::uint32_t, std::uint32_t> reindex;
    CoherentConfiguration out;
    out.n = m;
    out.color.resize(static_cast<size_t>(m) * m);
    for (int a = 0; a < m; ++a) {
        for (int b = 0; b < m; ++b) {
            std::uint32_t c = cc.at(verts[a], verts[b]);
            auto it = reindex.find(c);
            if (it == reindex.end())
                it = reindex.emplace(c, static_cast<std::uint32_t>(reindex.size())).first;
            out.color[static_cast<size_t>(a) * m + b] = it->second;
        }
    }
    out.num_relations = static_cast<std::uint32_t>(reindex.size());
    return out;
}

std::int64_t intersection_number(const CoherentConfiguration& cc,
                                 std::uint32_t r, std::uint32_t s, std::uint32_t t) {
    ensure_tensor(cc);
    auto it = cc.tensor.find({r, s, t});
    return it == cc.tensor.end() ? 0 : it->second;
}

bool twl_equivalent(const Graph& g1, const Graph& g2) {
    if (g1.n() != g2.n()) return false;
    std::vector<int> d1, d2;
    for (int i = 0; i < g1.n(); ++i) d1.push_back(g1.degree(i));
    for (int i = 0; i < g2.n(); ++i) d2.push_back(g2.degree(i));
    std::sort(d1.begin(), d1.end());
    std::sort(d2.begin(), d2.end());
    if (d1 != d2) return false;

    auto spaces = wl_initial_joint({&g1, &g2});
    std::uint32_t num = wl_refine_joint(spaces);

    // Class sizes per shared color must agree.
    std::vector<std::int64_t> cnt1(num, 0), cnt2(num, 0);
    for (std::uint32_t c : spaces[0].color) ++cnt1[c];
    for (std::uint32_t c : spaces[1].color) ++cnt2[c];
    if (cnt1 != cnt2) return false;

    CoherentConfiguration cc1{g1.n(), num, std::move(spaces[0].color)};
    CoherentConfiguration cc2{g2.n(), num, std::move(spaces[1].color)};
    ensure_tensor(cc1);
    ensure_tensor(cc2);
    return cc1.tensor == cc2.tensor;
}

}  // namespace gpl
