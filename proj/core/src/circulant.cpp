#include "gpl/circulant.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace gpl {

namespace {

bool translation_invariant(const Graph& g) {
    const int n = g.n();
    for (int c = 1; c < n; ++c) {
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                if (g.adjacent(i, j) != g.adjacent((i + c) % n, (j + c) % n))
                    return false;
            }
        }
    }
    return true;
}

std::vector<int> connection_set(const Graph& g) {
    std::vector<int> s;
    for (int j = 1; j < g.n(); ++j)
        if (g.adjacent(0, j)) s.push_back(j);
    return s;
}

}  // namespace

CayleyScheme cayley_scheme(const Graph& g) {
    if (g.labeling() != Labeling::cyclic)
        throw std::invalid_argument("graph must carry a Z_n labeling");
    if (!translation_invariant(g))
        throw std::invalid_argument("graph is not translation-invariant");

    CayleyScheme s;
    s.n = g.n();
    s.cc = wl_closure(g);

    if (fibers(s.cc).size() != 1)
        throw std::logic_error("closure of a circulant graph must be homogeneous");

    // Basic sets: 0s for each relation s, i.e. split Z_n by the color of
    // the pair (0, x).
    std::map<std::uint32_t, std::vector<int>> by_color;
    for (int x = 0; x < s.n; ++x) by_color[s.cc.at(0, x)].push_back(x);
    for (auto& [c, set] : by_color) s.basic_sets.push_back(std::move(set));
    std::sort(s.basic_sets.begin(), s.basic_sets.end(),
              [](const std::vector<int>& a, const std::vector<int>& b) {
                  return a.front() < b.front();
              });
    return s;
}

bool is_normal_circulant(const Graph& g, const AutOptions& opt) {
    if (g.labeling() != Labeling::cyclic)
        throw std::invalid_argument("graph must carry a Z_n labeling");
    const int n = g.n();
    auto conn = connection_set(g);
    std::vector<char> in_conn(static_cast<size_t>(n), 0);
    for (int c : conn) in_conn[static_cast<size_t>(c)] = 1;

    // Multiplier maps x -> mx fixing the connection set are exactly the
    // automorphisms of the form the normality definition allows in the
    // stabilizer of 0; |Aut| = n * #multipliers iff Aut <= Z_n x Aut(Z_n).
    std::int64_t multipliers = 0;
    for (int m = 1; m < std::max(n, 2); ++m) {
        if (n > 1 && std::gcd(m, n) != 1) continue;
        bool preserves = true;
        for (int c = 1; c < n && preserves; ++c)
            if (in_conn[static_cast<size_t>(c)] !=
                in_conn[static_cast<size_t>((static_cast<std::int64_t>(m) * c) % n)])
                preserves = false;
        if (preserves) ++multipliers;
    }
    if (n == 1) multipliers = 1;

    PermGroup aut = graph_automorphisms(g, opt);
    return aut.order128() ==
           static_cast<unsigned __int128>(n) * static_cast<unsigned __int128>(multipliers);
}

namespace {

bool fix_in_range(std::uint32_t fix, int n) {
    // n/2 <= fix <= 2n/3 without rounding: 2*fix >= n and 3*fix <= 2n.
    return 2 * static_cast<std::int64_t>(fix) >= n &&
           3 * static_cast<std::int64_t>(fix) <= 2 * static_cast<std::int64_t>(n);
}

bool is_graph_automorphism(const Graph& g, const Permutation& p) {
    const int n = g.n();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (g.adjacent(i, j) !=
                g.adjacent(static_cast<int>(p[static_cast<std::uint32_t>(i)]),
                           static_cast<int>(p[static_cast<std::uint32_t>(j)])))
                return false;
    return true;
}

// Coset-translation candidates: U = <n/u> of order u, L <= U of order l;
// shift the elements of the last floor(m/2) U-cosets by a nonzero element
// of L, fix the rest. Verified directly against the graph.
std::optional<Permutation> coset_translation_witness(const Graph& g) {
    const int n = g.n();
    for (int u = 2; u < n; ++u) {
        if (n % u != 0) continue;
        const int m = n / u;       // number of cosets
        if (m < 2) continue;
        const int keep = (m + 1) / 2;  // cosets fixed pointwise
        for (int l = 2; l <= u; ++l) {
            if (u % l != 0) continue;
            const int step = n / l;  // generator of L
            std::vector<std::uint32_t> img(static_cast<size_t>(n));
            for (int x = 0; x < n; ++x) {
                int coset = x % m;
                img[static_cast<size_t>(x)] =
                    coset < keep ? static_cast<std::uint32_t>(x)
                                 : static_cast<std::uint32_t>((x + step) % n);
            }
            Permutation p(std::move(img));
            if (fix_in_range(p.num_fixed(), n) && is_graph_automorphism(g, p))
                return p;
        }
    }
    return std::nullopt;
}

// Block-permutation candidates via the CRT splitting Z_n = Z_m x Z_{n/m}
// with coprime factors (m = n covers the symmetric-group case): permute
// the Z_m coordinate leaving ceil(m/2) residues fixed.
std::optional<Permutation> block_permutation_witness(const Graph& g) {
    const int n = g.n();
    for (int m = n; m >= 4; --m) {
        if (n % m != 0) continue;
        const int rest = n / m;
        if (std::gcd(m, rest) != 1) continue;
        const int keep = (m + 1) / 2;
        // sigma1: fix residues 0..keep-1, cycle keep..m-1
        auto sigma1 = [&](int r) {
            if (r < keep) return r;
            return r + 1 < m ? r + 1 : keep;
        };
        std::vector<std::uint32_t> img(static_cast<size_t>(n));
        for (int x = 0; x < n; ++x) {
            int r = sigma1(x % m);
            // CRT: find y with y = r (mod m), y = x (mod rest)
            int y = -1;
            for (int c = 0; c < n; ++c)
                if (c % m == r && c % rest == x % rest) { y = c; break; }
            img[static_cast<size_t>(x)] = static_cast<std::uint32_t>(y);
        }
        Permutation p(std::move(img));
        if (fix_in_range(p.num_fixed(), n) && is_graph_automorphism(g, p))
            return p;
    }
    return std::nullopt;
}

}  // namespace

std::optional<Permutation> midrange_fix_witness(const Graph& g, const AutOptions& opt) {
    if (is_normal_circulant(g, opt))
        throw std::invalid_argument("graph is a normal circulant");
    const int n = g.n();
    PermGroup aut = graph_automorphisms(g, opt);

    for (const auto& p : aut.generators())
        if (fix_in_range(p.num_fixed(), n)) return p;

    if (aut.order128() <= 1000000) {
        std::optional<Permutation> found;
        aut.for_each_element([&](const Permutation& p) {
            if (!p.is_identity() && fix_in_range(p.num_fixed(), n)) {
                found = p;
                return false;
            }
            return true;
        });
        if (found) return found;
        return std::nullopt;  // group exhausted: genuine counterexample
    }

    if (auto p = coset_translation_witness(g)) return p;
    if (auto p = block_permutation_witness(g)) return p;

    // Bounded word search as a last resort.
    std::vector<Permutation> frontier{Permutation::identity(static_cast<std::uint32_t>(n))};
    std::set<std::vector<std::uint32_t>> seen{frontier[0].images()};
    for (int depth = 0; depth < 6 && seen.size() < 100000; ++depth) {
        std::vector<Permutation> next;
        for (const auto& w : frontier) {
            for (const auto& gen : aut.generators()) {
                Permutation p = gen.compose(w);
                if (!seen.insert(p.images()).second) continue;
                if (!p.is_identity() && fix_in_range(p.num_fixed(), n)) return p;
                next.push_back(std::move(p));
            }
        }
        frontier = std::move(next);
    }
    return std::nullopt;
}

std::optional<std::pair<int, int>> two_point_discrete_witness(const CayleyScheme& s) {
    // Homogeneity lets us pin alpha = 0: any pair is a translate of one
    // with first coordinate 0.
    for (int beta = 1; beta < s.n; ++beta) {
        auto ext = point_extension(s.cc, {0, beta});
        if (is_discrete(ext)) return std::make_pair(0, beta);
    }
    if (s.n == 1) return std::make_pair(0, 0);
    return std::nullopt;
}

std::vector<std::vector<int>> circulant_catalog(int n) {
    if (n < 2) throw std::invalid_argument("order must be at least 2");
    const int half = n / 2;
    std::vector<int> units;
    for (int m = 1; m < n; ++m)
        if (std::gcd(m, n) == 1) units.push_back(m);

    auto mask_of = [&](const std::vector<int>& s) {
        std::uint64_t mask = 0;
        for (int c : s) mask |= std::uint64_t{1} << c;
        return mask;
    };

    std::set<std::uint64_t> canon_seen;
    std::vector<std::vector<int>> out;
    const std::uint64_t subsets = std::uint64_t{1} << half;
    for (std::uint64_t choice = 0; choice < subsets; ++choice) {
        std::vector<int> s;
        for (int j = 1; j <= half; ++j) {
            if (!(choice & (std::uint64_t{1} << (j - 1)))) continue;
            s.push_back(j);
            if (j != n - j) s.push_back(n - j);
        }
        std::sort(s.begin(), s.end());
        // canonical form: the lexicographically smallest bitmask over mS
        std::uint64_t canon = ~std::uint64_t{0};
        for (int m : units) {
            std::vector<int> ms;
            ms.reserve(s.size());
            for (int c : s) ms.push_back(static_cast<int>((static_cast<std::int64_t>(m) * c) % n));
            std::sort(ms.begin(), ms.end());
            canon = std::min(canon, mask_of(ms));
        }
        if (canon_seen.insert(canon).second) {
            // store the canonical representative itself
            std::vector<int> rep;
            for (int c = 1; c < n; ++c)
                if (canon & (std::uint64_t{1} << c)) rep.push_back(c);
            out.push_back(std::move(rep));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

CirculantRecord analyze_circulant(int n, const std::vector<int>& connection,
                                  const AutOptions& opt) {
    CirculantRecord rec;
    rec.n = n;
    rec.connection = connection;
    Graph g = build_circulant(n, connection);
    rec.normal = is_normal_circulant(g, opt);
    if (rec.normal) {
        rec.two_point_witness = two_point_discrete_witness(cayley_scheme(g));
    } else {
        rec.fix_witness = midrange_fix_witness(g, opt);
    }
    return rec;
}

}  // namespace gpl
