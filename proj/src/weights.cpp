#include "crgeo/weights.hpp"

#include <algorithm>

#include "crgeo/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace crgeo {

std::string Weight::str() const {
    std::string s = "(";
    for (int i = 0; i < n(); ++i) {
        if (i) s += ", ";
        s += entries[i].str();
    }
    return s + ")";
}

int lex_compare(const Weight& a, const Weight& b) {
    if (a.n() != b.n()) throw precondition_error("lex_compare: length mismatch");
    for (int i = 0; i < a.n(); ++i) {
        if (a.entries[i] < b.entries[i]) return -1;
        if (b.entries[i] < a.entries[i]) return 1;
    }
    return 0;
}

namespace {

// Search integers a_1..a_k with sum a_j / lambda_j == 1 for the finite prefix
// lambda_1..lambda_k. Positions contribute at most 1 each, so every a_j is
// bounded by lambda_j and the search is finite.
bool certificate_for_level(const std::vector<QExt>& lambda, int k, bool strict,
                           std::vector<long>& out) {
    std::vector<long> a(static_cast<size_t>(k), 0);
    // Solve the last position exactly; DFS over the first k-1.
    auto rec = [&](auto&& self, int j, mpq_class remaining) -> bool {
        if (j == k - 1) {
            // a_k / lambda_k == remaining, a_k integer >= 1.
            mpq_class cand = remaining * lambda[static_cast<size_t>(j)].value();
            if (cand.get_den() != 1 || cand < 1) return false;
            if (!cand.get_num().fits_slong_p()) return false;
            a[static_cast<size_t>(j)] = cand.get_num().get_si();
            return true;
        }
        const mpq_class& lj = lambda[static_cast<size_t>(j)].value();
        long lo = strict ? 1 : 0;
        for (long v = lo;; ++v) {
            mpq_class used = mpq_class(v) / lj;
            if (used > remaining) return false;
            a[static_cast<size_t>(j)] = v;
            if (self(self, j + 1, remaining - used)) return true;
        }
    };
    if (!rec(rec, 0, mpq_class(1))) return false;
    out = a;
    return true;
}

} // namespace

AdmissibilityCert is_admissible_weight(const Weight& w, bool strict_positive) {
    AdmissibilityCert cert;
    cert.certs.resize(static_cast<size_t>(w.n()));
    for (int i = 0; i < w.n(); ++i) {
        const QExt& e = w.entries[i];
        if (e.is_finite() && e.value() < 1) {
            cert.failing_k = i + 1;
            return cert;
        }
        if (i > 0 && e < w.entries[i - 1]) {
            cert.failing_k = i + 1;
            return cert;
        }
    }
    for (int k = 1; k <= w.n(); ++k) {
        if (w.entries[k - 1].is_inf()) continue;
        std::vector<long> a;
        if (!certificate_for_level(w.entries, k, strict_positive, a)) {
            cert.failing_k = k;
            return cert;
        }
        cert.certs[static_cast<size_t>(k) - 1] = std::move(a);
    }
    cert.ok = true;
    return cert;
}

namespace {

// Weighted degree sum (alpha_i + beta_i) / lambda_i; infinite entries
// contribute zero.
mpq_class weighted_degree(const Monomial& m, const Weight& w) {
    mpq_class s(0);
    for (int i = 0; i < w.n(); ++i) {
        int d = m.alpha[i] + m.beta[i];
        if (d == 0 || w.entries[i].is_inf()) continue;
        s += mpq_class(d) / w.entries[i].value();
    }
    return s;
}

} // namespace

DistinguishedCheck is_distinguished(const Polynomial& r, const Weight& w) {
    if (w.n() != r.n()) throw precondition_error("is_distinguished: dimension mismatch");
    DistinguishedCheck out;
    for (const auto& [m, c] : r.terms()) {
        if (weighted_degree(m, w) < 1) {
            out.witness = m;
            return out;
        }
    }
    out.ok = true;
    return out;
}

namespace {

struct LatticeSearch {
    const Polynomial& r;
    std::vector<QExt> values; // candidate entry values, descending, infinity first
    int n;

    // Sound pruning: a term supported in the first k variables (or whose
    // best-case completion stays below 1) kills every extension of the prefix.
    bool prefix_viable(const std::vector<QExt>& prefix) const {
        const int k = static_cast<int>(prefix.size());
        const QExt& last = prefix.back();
        for (const auto& [m, c] : r.terms()) {
            mpq_class s(0);
            int rest = 0;
            for (int i = 0; i < n; ++i) {
                const int d = m.alpha[i] + m.beta[i];
                if (d == 0) continue;
                if (i < k) {
                    if (prefix[static_cast<size_t>(i)].is_finite())
                        s += mpq_class(d) / prefix[static_cast<size_t>(i)].value();
                } else {
                    rest += d;
                }
            }
            mpq_class upper = s;
            if (rest > 0 && last.is_finite()) upper += mpq_class(rest) / last.value();
            if (upper < 1) return false;
        }
        return true;
    }

    bool level_admissible(const std::vector<QExt>& prefix) const {
        const int k = static_cast<int>(prefix.size());
        if (prefix.back().is_inf()) return true;
        std::vector<long> a;
        return certificate_for_level(prefix, k, /*strict=*/false, a);
    }

    // Descending DFS; the first fully valid completion is the lex-largest.
    bool dfs(std::vector<QExt>& prefix, Weight& out) const {
        if (static_cast<int>(prefix.size()) == n) {
            Weight w{prefix};
            if (!is_distinguished(r, w).ok) return false;
            out = w;
            return true;
        }
        const bool forced_inf = !prefix.empty() && prefix.back().is_inf();
        for (const QExt& v : values) {
            if (forced_inf && v.is_finite()) break; // nondecreasing forces infinity
            if (!prefix.empty() && v < prefix.back()) break;
            prefix.push_back(v);
            if (level_admissible(prefix) && prefix_viable(prefix)) {
                if (dfs(prefix, out)) {
                    prefix.pop_back();
                    return true;
                }
            }
            prefix.pop_back();
        }
        return false;
    }
};

} // namespace

Weight multitype_lower_bound(const Polynomial& r, const QExt& entry_cap, Exec mode) {
    if (!r.is_real_valued())
        throw precondition_error("multitype_lower_bound: defining function must be real-valued");
    if (!r.eval(std::vector<Scalar>(static_cast<size_t>(r.n()), Scalar(0))).is_zero())
        throw precondition_error("multitype_lower_bound: r(0) must vanish");
    if (entry_cap.is_finite() && entry_cap.value() < 1)
        throw precondition_error("multitype_lower_bound: entry_cap must be >= 1");
    const int deg = std::max(1, r.degree());
    const QExt cap = entry_cap.is_finite() ? entry_cap : QExt(static_cast<long>(deg));

    // Candidate entry values: rationals a/b in [1, cap] with b <= deg(r),
    // descending, with infinity ahead of everything.
    std::vector<QExt> values;
    values.push_back(QExt::infinity());
    std::vector<mpq_class> finite;
    for (int den = 1; den <= deg; ++den) {
        mpq_class top = cap.value() * den;
        long hi = static_cast<long>(mpz_class(top.get_num() / top.get_den()).get_si());
        for (long num = den; num <= hi; ++num) {
            mpq_class v(num, den);
            v.canonicalize();
            if (v >= 1 && v <= cap.value()) finite.push_back(v);
        }
    }
    std::sort(finite.begin(), finite.end(), [](const mpq_class& a, const mpq_class& b) { return a > b; });
    finite.erase(std::unique(finite.begin(), finite.end()), finite.end());
    for (auto& v : finite) values.push_back(QExt(std::move(v)));

    LatticeSearch search{r, values, r.n()};

    if (mode == Exec::serial) {
        std::vector<QExt> prefix;
        Weight out;
        if (!search.dfs(prefix, out))
            throw precondition_error("multitype_lower_bound: no distinguished weight found");
        return out;
    }

    // Parallel path: partition by the first entry, keep the best branch.
    const int nb = static_cast<int>(values.size());
    std::vector<Weight> branch(static_cast<size_t>(nb));
    std::vector<char> found(static_cast<size_t>(nb), 0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int i = 0; i < nb; ++i) {
        std::vector<QExt> prefix{values[static_cast<size_t>(i)]};
        if (!search.level_admissible(prefix) || !search.prefix_viable(prefix)) continue;
        Weight out;
        if (search.dfs(prefix, out)) {
            branch[static_cast<size_t>(i)] = out;
            found[static_cast<size_t>(i)] = 1;
        }
    }
    for (int i = 0; i < nb; ++i) {
        // Values descend, so the first branch with a result is the lex max.
        if (found[static_cast<size_t>(i)]) return branch[static_cast<size_t>(i)];
    }
    throw precondition_error("multitype_lower_bound: no distinguished weight found");
}

} // namespace crgeo
