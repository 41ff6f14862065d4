#include "gpl/graph.hpp"

#include <bit>
#include <cmath>
#include <queue>
#include <stdexcept>

namespace gpl {

void Graph::add_edge(int i, int j) {
    if (i < 0 || j < 0 || i >= n_ || j >= n_)
        throw std::invalid_argument("edge endpoint out of range");
    if (i == j) throw std::invalid_argument("loops are not allowed");
    adj_.set(i, j);
    adj_.set(j, i);
}

int Graph::degree(int i) const {
    int deg = 0;
    const std::uint64_t* r = adj_.row(i);
    for (size_t w = 0; w < adj_.words_per_row(); ++w) deg += std::popcount(r[w]);
    return deg;
}

std::int64_t Graph::edge_count() const {
    std::int64_t total = 0;
    for (int i = 0; i < n_; ++i) total += degree(i);
    return total / 2;
}

void Graph::set_field_labeling(FieldPtr f) {
    if (!f || f->q() != n_)
        throw std::invalid_argument("field order must equal vertex count");
    field_ = std::move(f);
    labeling_ = Labeling::field;
}

std::vector<int> Graph::neighbors(int i) const {
    std::vector<int> out;
    for (int j = 0; j < n_; ++j)
        if (adjacent(i, j)) out.push_back(j);
    return out;
}

Graph build_gpaley(FieldPtr field, std::int64_t k) {
    if (!field) throw std::invalid_argument("null field");
    const std::int64_t q = field->q();
    if (k < 2) throw std::invalid_argument("k must be >= 2");
    if ((q - 1) % k != 0) throw std::invalid_argument("k must divide q-1");
    const std::int64_t degree = (q - 1) / k;
    if (q % 2 == 1 && degree % 2 != 0)
        throw std::invalid_argument(
            "generalized Paley graph requires (q-1)/k even when q is odd");
    if (q > 10000)
        throw std::invalid_argument("graph order cap (10^4 vertices) exceeded");

    auto ind = field->residue_indicator(k);
    Graph g(static_cast<int>(q));
    for (std::int64_t x = 0; x < q; ++x) {
        for (std::int64_t y = x + 1; y < q; ++y) {
            if (ind[static_cast<size_t>(field->sub(y, x))]) g.add_edge((int)x, (int)y);
        }
    }
    g.set_field_labeling(std::move(field));
    return g;
}

std::int64_t order_mod(std::int64_t e, std::int64_t p) {
    std::int64_t x = ((e % p) + p) % p;
    if (x == 0) throw std::invalid_argument("e divisible by p");
    std::int64_t cur = x, ord = 1;
    while (cur != 1) {
        cur = (cur * x) % p;
        ++ord;
        if (ord > p) throw std::logic_error("order computation ran away");
    }
    return ord;
}

Graph build_vls(std::int64_t p, std::int64_t e, int t) {
    if (!is_prime(p) || !is_prime(e))
        throw std::invalid_argument("p and e must both be prime");
    if (e == 2) throw std::invalid_argument("e = 2 is excluded");
    if (e == p) throw std::invalid_argument("e and p must be distinct");
    if (t < 1) throw std::invalid_argument("t must be positive");
    // p must be a primitive root modulo e; this makes the index-e
    // cyclotomic classes semiprimitive, so the construction is strongly
    // regular, and matches the exponent d = (e-1)t = ord_e(p) * t.
    if (order_mod(p, e) != e - 1)
        throw std::invalid_argument("p must be a primitive root modulo e");
    long double qd = 1;
    for (std::int64_t i = 0; i < (e - 1) * t; ++i) qd *= (long double)p;
    if (qd > (long double)FiniteField::kMaxQ)
        throw std::invalid_argument("p^((e-1)t) exceeds the field-size cap");
    auto field = FiniteField::make(p, static_cast<int>((e - 1) * t));
    return build_gpaley(field, e);
}

Graph build_circulant(int n, const std::vector<int>& connection) {
    if (n < 1) throw std::invalid_argument("order must be positive");
    std::vector<std::uint8_t> in(static_cast<size_t>(n), 0);
    for (int c : connection) {
        if (c <= 0 || c >= n)
            throw std::invalid_argument("connection elements must lie in 1..n-1");
        in[static_cast<size_t>(c)] = 1;
    }
    for (int c = 1; c < n; ++c)
        if (in[c] != in[(n - c) % n])
            throw std::invalid_argument("connection set must be closed under negation");
    Graph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (in[static_cast<size_t>((j - i) % n)]) g.add_edge(i, j);
    g.set_cyclic_labeling();
    return g;
}

bool is_connected(const Graph& g) {
    if (g.n() == 0) return true;
    std::vector<char> seen(static_cast<size_t>(g.n()), 0);
    std::queue<int> bfs;
    bfs.push(0);
    seen[0] = 1;
    int reached = 1;
    while (!bfs.empty()) {
        int v = bfs.front();
        bfs.pop();
        for (int w = 0; w < g.n(); ++w) {
            if (!seen[w] && g.adjacent(v, w)) {
                seen[w] = 1;
                ++reached;
                bfs.push(w);
            }
        }
    }
    return reached == g.n();
}

namespace {

int common_neighbors(const Graph& g, int i, int j) {
    const std::uint64_t* a = g.adjacency().row(i);
    const std::uint64_t* b = g.adjacency().row(j);
    int c = 0;
    for (size_t w = 0; w < g.adjacency().words_per_row(); ++w)
        c += std::popcount(a[w] & b[w]);
    return c;
}

}  // namespace

std::optional<SRGParams> srg_params(const Graph& g) {
    const int n = g.n();
    if (n < 2) return std::nullopt;
    const int deg = g.degree(0);
    for (int i = 1; i < n; ++i)
        if (g.degree(i) != deg) return std::nullopt;
    if (deg == 0 || deg == n - 1) return std::nullopt;  // empty or complete

    int lambda = -1, mu = -1;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            int c = common_neighbors(g, i, j);
            if (g.adjacent(i, j)) {
                if (lambda < 0) lambda = c;
                else if (lambda != c) return std::nullopt;
            } else {
                if (mu < 0) mu = c;
                else if (mu != c) return std::nullopt;
            }
        }
    }
    SRGParams p{n, deg, lambda, mu};
    // Feasibility identity deg(deg-lambda-1) = (n-deg-1)mu holds for every
    // actual SRG; it is a sanity check on the counting above.
    if (static_cast<long long>(deg) * (deg - p.lambda - 1) !=
        static_cast<long long>(n - deg - 1) * p.mu)
        throw std::logic_error("SRG feasibility identity violated");
    return p;
}

LsNlClass classify_ls_nl(const SRGParams& params) {
    LsNlClass out;
    const std::int64_t N = params.n;
    std::int64_t side = static_cast<std::int64_t>(std::llround(std::sqrt((double)N)));
    if (side * side != N || side < 1) return out;

    // LS_m(n): degree m(n-1), lambda n-2+(m-1)(m-2), mu m(m-1)
    if (side > 1 && params.deg % (side - 1) == 0) {
        std::int64_t m = params.deg / (side - 1);
        if (m >= 1 && params.lambda == side - 2 + (m - 1) * (m - 2) &&
            params.mu == m * (m - 1)) {
            out.kind = LsNlClass::Kind::LS;
            out.m = m;
            out.n = side;
            return out;
        }
    }
    // NL_m(n): degree m(n+1), lambda (m+1)(m+2)-n-2, mu m(m+1)
    if (params.deg % (side + 1) == 0) {
        std::int64_t m = params.deg / (side + 1);
        if (m >= 1 && params.lambda == (m + 1) * (m + 2) - side - 2 &&
            params.mu == m * (m + 1)) {
            out.kind = LsNlClass::Kind::NL;
            out.m = m;
            out.n = side;
            return out;
        }
    }
    return out;
}

Graph rook_graph(int m) {
    Graph g(m * m);
    for (int a = 0; a < m * m; ++a) {
        for (int b = a + 1; b < m * m; ++b) {
            if (a / m == b / m || a % m == b % m) g.add_edge(a, b);
        }
    }
    return g;
}

Graph shrikhande_graph() {
    // Cayley graph of Z_4 x Z_4 with connection {+-(1,0), +-(0,1), +-(1,1)}.
    static const int conn[6][2] = {{1, 0}, {3, 0}, {0, 1}, {0, 3}, {1, 1}, {3, 3}};
    Graph g(16);
    for (int a = 0; a < 16; ++a) {
        for (int b = 0; b < 16; ++b) {
            if (a == b) continue;
            int dx = ((a / 4) - (b / 4) + 4) % 4;
            int dy = ((a % 4) - (b % 4) + 4) % 4;
            for (auto& c : conn)
                if (dx == c[0] && dy == c[1] && a < b) g.add_edge(a, b);
        }
    }
    return g;
}

Graph path_graph(int n) {
    Graph g(n);
    for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    return g;
}

Graph cycle_graph(int n) {
    Graph g(n);
    for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
    return g;
}

Graph complete_graph(int n) {
    Graph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
    return g;
}

}  // namespace gpl
