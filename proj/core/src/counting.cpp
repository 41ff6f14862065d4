#include "gpl/counting.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace gpl {

void PowerSystem::validate() const {
    if (!field) throw std::invalid_argument("null field");
    if (k < 2 || (field->q() - 1) % k != 0)
        throw std::invalid_argument("k must be >= 2 and divide q-1");
    std::set<Fe> seen;
    for (Fe a : equalities) {
        if (!field->valid_element(a)) throw std::invalid_argument("alpha out of range");
        if (!seen.insert(a).second)
            throw std::invalid_argument("alphas must be pairwise distinct");
    }
    for (Fe a : inequalities) {
        if (!field->valid_element(a)) throw std::invalid_argument("alpha out of range");
        if (!seen.insert(a).second)
            throw std::invalid_argument("alphas must be pairwise distinct");
    }
}

std::int64_t count_solutions(const PowerSystem& sys) {
    sys.validate();
    const auto& f = *sys.field;
    const std::int64_t q = f.q();
    const auto ind = f.residue_indicator(sys.k);
    std::int64_t count = 0;
    for (Fe x = 0; x < q; ++x) {
        bool ok = true;
        for (Fe a : sys.equalities) {
            if (!ind[static_cast<size_t>(f.add(a, x))]) { ok = false; break; }
        }
        if (!ok) continue;
        for (Fe a : sys.inequalities) {
            if (ind[static_cast<size_t>(f.add(a, x))]) { ok = false; break; }
        }
        if (ok) ++count;
    }
    return count;
}

namespace {

nlohmann::ordered_json alpha_array(const std::vector<Fe>& v) {
    return nlohmann::ordered_json(v);
}

}  // namespace

VerificationReport verify_theorem_bound(const FieldPtr& field, std::int64_t k,
                                        const std::vector<Fe>& alphas) {
    const size_t t = alphas.size();
    if (t < 2) throw std::invalid_argument("at least two alphas required");
    PowerSystem sys{field, k, alphas, {}};
    const std::int64_t N = count_solutions(sys);
    const double q = static_cast<double>(field->q());
    const double main = q / std::pow(static_cast<double>(k), static_cast<double>(t));
    const double err = static_cast<double>(t) * std::sqrt(q);
    const double lower = main - err, upper = main + err;

    VerificationReport r;
    r.claim = "power-system-count-bound";
    r.params["q"] = field->q();
    r.params["k"] = k;
    r.params["t"] = t;
    r.params["alphas"] = alpha_array(alphas);
    r.pass = (static_cast<double>(N) >= lower && static_cast<double>(N) <= upper);
    r.hard = true;  // the bound carries no size hypothesis
    r.margins["N"] = N;
    r.margins["lower"] = lower;
    r.margins["upper"] = upper;
    r.margins["margin"] = std::min(static_cast<double>(N) - lower,
                                   upper - static_cast<double>(N));
    if (!r.pass) r.witnesses.push_back({{"N", N}, {"alphas", alpha_array(alphas)}});
    return r;
}

VerificationReport verify_mixed_bound(const PowerSystem& sys) {
    sys.validate();
    const size_t t = sys.equalities.size();
    const size_t n = t + sys.inequalities.size();
    if (n < 2) throw std::invalid_argument("at least two alphas required");
    if (t < 2 || t > n) throw std::invalid_argument("need 2 <= #equalities <= n");

    const std::int64_t N = count_solutions(sys);
    const double q = static_cast<double>(sys.field->q());
    const double kk = static_cast<double>(sys.k);
    const double s = static_cast<double>(n - t);
    const double main = q * std::pow(1.0 / kk, static_cast<double>(t)) *
                        std::pow(1.0 - 1.0 / kk, s);
    const double err = static_cast<double>(n) * std::pow(2.0, s * s) * std::sqrt(q);

    VerificationReport r;
    r.claim = "mixed-system-count-bound";
    r.params["q"] = sys.field->q();
    r.params["k"] = sys.k;
    r.params["t"] = t;
    r.params["n"] = n;
    r.params["equalities"] = alpha_array(sys.equalities);
    r.params["inequalities"] = alpha_array(sys.inequalities);
    r.pass = std::abs(static_cast<double>(N) - main) <= err;
    r.hard = true;
    r.margins["N"] = N;
    r.margins["main"] = main;
    r.margins["error_bound"] = err;
    r.margins["margin"] = err - std::abs(static_cast<double>(N) - main);
    if (t == n) r.notes["degenerate"] = "no inequalities; equalities-only bound applies";
    if (!r.pass)
        r.witnesses.push_back({{"N", N},
                               {"equalities", alpha_array(sys.equalities)},
                               {"inequalities", alpha_array(sys.inequalities)}});
    return r;
}

VerificationReport inclusion_exclusion_check(const FieldPtr& field, std::int64_t k,
                                             const std::vector<Fe>& alphas,
                                             const std::vector<int>& T) {
    if (T.empty()) throw std::invalid_argument("T must be nonempty");
    const int n = static_cast<int>(alphas.size());
    std::vector<char> inT(alphas.size(), 0);
    for (int i : T) {
        if (i < 0 || i >= n) throw std::invalid_argument("T index out of range");
        if (inT[static_cast<size_t>(i)]) throw std::invalid_argument("duplicate T index");
        inT[static_cast<size_t>(i)] = 1;
    }
    std::vector<int> comp;
    for (int i = 0; i < n; ++i)
        if (!inT[static_cast<size_t>(i)]) comp.push_back(i);

    std::vector<Fe> t_alphas;
    for (int i : T) t_alphas.push_back(alphas[static_cast<size_t>(i)]);
    const std::int64_t n0 = count_solutions(PowerSystem{field, k, t_alphas, {}});

    std::int64_t total = 0;
    const size_t subsets = size_t{1} << comp.size();
    for (size_t mask = 0; mask < subsets; ++mask) {
        PowerSystem sys{field, k, t_alphas, {}};
        for (size_t b = 0; b < comp.size(); ++b) {
            Fe a = alphas[static_cast<size_t>(comp[b])];
            if (mask & (size_t{1} << b)) sys.equalities.push_back(a);
            else sys.inequalities.push_back(a);
        }
        total += count_solutions(sys);
    }

    VerificationReport r;
    r.claim = "inclusion-exclusion-identity";
    r.params["q"] = field->q();
    r.params["k"] = k;
    r.params["alphas"] = alpha_array(alphas);
    r.params["T"] = T;
    r.pass = (n0 == total);
    r.hard = true;  // exact partition identity, zero tolerance
    r.margins["N0"] = n0;
    r.margins["sum"] = total;
    if (!r.pass) r.witnesses.push_back({{"N0", n0}, {"sum", total}});
    return r;
}

}  // namespace gpl
