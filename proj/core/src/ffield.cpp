#include "gpl/ffield.hpp"

#include <algorithm>
#include <stdexcept>

namespace gpl {

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0) return false;
    for (std::int64_t f = 3; f * f <= n; f += 2)
        if (n % f == 0) return false;
    return true;
}

std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) {
    std::vector<std::pair<std::int64_t, int>> out;
    for (std::int64_t f = 2; f * f <= n; f += (f == 2 ? 1 : 2)) {
        if (n % f) continue;
        int m = 0;
        while (n % f == 0) { n /= f; ++m; }
        out.emplace_back(f, m);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

namespace {

// Polynomials over GF(p) as coefficient vectors, low degree first,
// trailing zeros trimmed.
using Poly = std::vector<std::int64_t>;

int deg(const Poly& f) { return static_cast<int>(f.size()) - 1; }

void trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

// f mod g, g monic.
Poly poly_mod(Poly f, const Poly& g, std::int64_t p) {
    trim(f);
    while (deg(f) >= deg(g)) {
        std::int64_t c = f.back();
        int shift = deg(f) - deg(g);
        for (int i = 0; i <= deg(g); ++i) {
            auto& x = f[i + shift];
            x = ((x - c * g[i]) % p + p) % p;
        }
        trim(f);
    }
    return f;
}

Poly poly_mul(const Poly& a, const Poly& b, std::int64_t p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    trim(r);
    return r;
}

// Does the monic polynomial div divide f exactly?
bool poly_divides(const Poly& div, const Poly& f, std::int64_t p) {
    return poly_mod(f, div, p).empty();
}

// Irreducibility over GF(p) by trial division with every monic polynomial
// of degree 1..deg(f)/2. Feasible since q = p^d <= 2^31 keeps p^(d/2)
// within ~2^16 candidates.
bool poly_irreducible(const Poly& f, std::int64_t p) {
    int n = deg(f);
    if (n <= 0) return false;
    if (n == 1) return true;
    for (int m = 1; 2 * m <= n; ++m) {
        // enumerate monic degree-m candidates by base-p index of (c_0..c_{m-1})
        std::int64_t count = 1;
        for (int i = 0; i < m; ++i) count *= p;
        Poly cand(m + 1, 0);
        cand[m] = 1;
        for (std::int64_t idx = 0; idx < count; ++idx) {
            std::int64_t v = idx;
            for (int i = 0; i < m; ++i) { cand[i] = v % p; v /= p; }
            if (poly_divides(cand, f, p)) return false;
        }
    }
    return true;
}

}  // namespace

std::vector<std::int64_t> FiniteField::to_poly(Fe a) const {
    std::vector<std::int64_t> c(d_, 0);
    for (int i = 0; i < d_ && a; ++i) { c[i] = a % p_; a /= p_; }
    return c;
}

Fe FiniteField::from_poly(const std::vector<std::int64_t>& c) const {
    Fe a = 0;
    for (int i = d_ - 1; i >= 0; --i)
        a = a * p_ + (i < static_cast<int>(c.size()) ? c[i] : 0);
    return a;
}

void FiniteField::check_element(Fe a) const {
    if (!valid_element(a))
        throw std::invalid_argument("element index out of range for this field");
}

Fe FiniteField::add(Fe a, Fe b) const {
    check_element(a);
    check_element(b);
    Fe r = 0, place = 1;
    for (int i = 0; i < d_; ++i) {
        std::int64_t s = (a % p_ + b % p_) % p_;
        r += s * place;
        place *= p_;
        a /= p_;
        b /= p_;
    }
    return r;
}

Fe FiniteField::neg(Fe a) const {
    check_element(a);
    Fe r = 0, place = 1;
    for (int i = 0; i < d_; ++i) {
        std::int64_t s = (p_ - a % p_) % p_;
        r += s * place;
        place *= p_;
        a /= p_;
    }
    return r;
}

Fe FiniteField::sub(Fe a, Fe b) const { return add(a, neg(b)); }

Fe FiniteField::mul_poly(Fe a, Fe b) const {
    Poly r = poly_mod(poly_mul(to_poly(a), to_poly(b), p_), modulus_, p_);
    return from_poly(r);
}

Fe FiniteField::mul(Fe a, Fe b) const {
    check_element(a);
    check_element(b);
    if (a == 0 || b == 0) return 0;
    if (has_tables()) {
        std::int64_t e = (std::int64_t)log_[a] + log_[b];
        if (e >= q_ - 1) e -= q_ - 1;
        return antilog_[e];
    }
    return mul_poly(a, b);
}

Fe FiniteField::inv(Fe a) const {
    check_element(a);
    if (a == 0) throw std::invalid_argument("inversion of zero");
    if (has_tables()) {
        std::int64_t e = (q_ - 1 - log_[a]) % (q_ - 1);
        return antilog_[e];
    }
    return pow_generic(a, static_cast<std::uint64_t>(q_ - 2));
}

Fe FiniteField::pow_generic(Fe a, std::uint64_t e) const {
    Fe r = 1, base = a;
    while (e) {
        if (e & 1) r = mul_poly(r, base);
        base = mul_poly(base, base);
        e >>= 1;
    }
    return r;
}

Fe FiniteField::pow(Fe a, std::uint64_t e) const {
    check_element(a);
    if (a == 0) {
        if (e == 0) throw std::invalid_argument("0^0 is undefined here");
        return 0;
    }
    std::uint64_t er = e % static_cast<std::uint64_t>(q_ - 1);
    if (has_tables()) {
        std::uint64_t l = static_cast<std::uint64_t>(log_[a]);
        return antilog_[(l * er) % static_cast<std::uint64_t>(q_ - 1)];
    }
    return pow_generic(a, er);
}

Fe FiniteField::frobenius(Fe a, int j) const {
    if (j < 0 || j >= d_) throw std::invalid_argument("frobenius power out of range");
    check_element(a);
    if (a == 0) return 0;
    std::uint64_t e = 1;
    for (int i = 0; i < j; ++i) e *= static_cast<std::uint64_t>(p_);
    return pow(a, e);
}

std::vector<Fe> FiniteField::residue_subgroup(std::int64_t k) const {
    if (k < 1 || (q_ - 1) % k != 0)
        throw std::invalid_argument("k must divide q-1");
    std::vector<Fe> m;
    m.reserve(static_cast<size_t>((q_ - 1) / k));
    // M = { g^(k*j) }, walked by repeated multiplication with g^k.
    Fe gk = pow(generator_, static_cast<std::uint64_t>(k));
    Fe cur = 1;
    for (std::int64_t j = 0; j < (q_ - 1) / k; ++j) {
        m.push_back(cur);
        cur = mul(cur, gk);
    }
    std::sort(m.begin(), m.end());
    return m;
}

std::vector<std::uint8_t> FiniteField::residue_indicator(std::int64_t k) const {
    std::vector<std::uint8_t> ind(static_cast<size_t>(q_), 0);
    for (Fe x : residue_subgroup(k)) ind[static_cast<size_t>(x)] = 1;
    return ind;
}

void FiniteField::build_tables() {
    log_.assign(static_cast<size_t>(q_), -1);
    antilog_.assign(static_cast<size_t>(q_ - 1), 0);
    Fe cur = 1;
    for (std::int64_t i = 0; i < q_ - 1; ++i) {
        antilog_[i] = static_cast<std::int32_t>(cur);
        log_[cur] = static_cast<std::int32_t>(i);
        cur = mul_poly(cur, generator_);
    }
    if (cur != 1)
        throw std::logic_error("generator order verification failed");
}

std::shared_ptr<const FiniteField> FiniteField::make(std::int64_t p, int d) {
    if (!is_prime(p)) throw std::invalid_argument("p must be prime");
    if (d < 1) throw std::invalid_argument("d must be >= 1");
    long double qd = 1;
    for (int i = 0; i < d; ++i) qd *= static_cast<long double>(p);
    if (qd > static_cast<long double>(kMaxQ))
        throw std::invalid_argument("p^d exceeds the 2^31 field-size cap");

    auto f = std::shared_ptr<FiniteField>(new FiniteField());
    f->p_ = p;
    f->d_ = d;
    f->q_ = 1;
    for (int i = 0; i < d; ++i) f->q_ *= p;

    // Smallest monic irreducible of degree d, coefficient vectors ordered
    // by their base-p index (same encoding as elements).
    bool found = false;
    for (std::int64_t idx = 0; idx < f->q_ && !found; ++idx) {
        Poly cand(d + 1, 0);
        cand[d] = 1;
        std::int64_t v = idx;
        for (int i = 0; i < d; ++i) { cand[i] = v % p; v /= p; }
        if (poly_irreducible(cand, p)) {
            f->modulus_ = cand;
            found = true;
        }
    }
    if (!found) throw std::logic_error("no irreducible modulus found");

    // Lowest-index primitive element.
    auto fac = factorize(f->q_ - 1);
    for (Fe cand = 1; cand < f->q_; ++cand) {
        bool primitive = (f->q_ == 2) ? (cand == 1) : true;
        for (auto [r, mult] : fac) {
            (void)mult;
            if (f->pow_generic(cand, static_cast<std::uint64_t>((f->q_ - 1) / r)) == 1) {
                primitive = false;
                break;
            }
        }
        if (primitive) {
            f->generator_ = cand;
            break;
        }
    }
    if (f->generator_ == 0 && f->q_ > 2)
        throw std::logic_error("no primitive element found");
    if (f->q_ == 2) f->generator_ = 1;

    if (f->q_ <= kTableThreshold) f->build_tables();

    // Verify the generator order exactly: g^(q-1) = 1 and g^((q-1)/r) != 1.
    if (f->pow(f->generator_, static_cast<std::uint64_t>(f->q_ - 1)) != 1)
        throw std::logic_error("generator verification failed");
    return f;
}

}  // namespace gpl
