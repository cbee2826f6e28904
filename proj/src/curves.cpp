#include "crgeo/curves.hpp"

#include <algorithm>
#include <set>

#include "crgeo/errors.hpp"
#include "crgeo/linalg.hpp"
#include "crgeo/qext.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace crgeo {

CurveJet CurveJet::at_point(int m, std::vector<Scalar> basepoint) {
    CurveJet c;
    c.m = m;
    c.comps.assign(static_cast<size_t>(m), {Scalar(0)});
    c.basepoint = std::move(basepoint);
    return c;
}

bool CurveJet::is_constant() const {
    for (const auto& comp : comps)
        for (size_t k = 1; k < comp.size(); ++k)
            if (!comp[k].is_zero()) return false;
    return true;
}

QExt CurveJet::ord0() const {
    QExt best = QExt::infinity();
    for (const auto& comp : comps) {
        for (size_t k = 1; k < comp.size(); ++k) {
            if (!comp[k].is_zero()) {
                QExt o(static_cast<long>(k));
                if (o < best) best = o;
                break;
            }
        }
    }
    return best;
}

std::string CurveJet::str() const {
    std::string out = "(";
    for (int j = 0; j < m; ++j) {
        if (j) out += ", ";
        std::string comp;
        for (size_t k = 1; k < comps[j].size(); ++k) {
            const Scalar& c = comps[j][k];
            if (c.is_zero()) continue;
            std::string term;
            if (c == Scalar(1))
                term = "";
            else
                term = "(" + c.str() + ")*";
            term += "t";
            if (k > 1) term += "^" + std::to_string(k);
            comp += (comp.empty() ? "" : " + ") + term;
        }
        out += comp.empty() ? "0" : comp;
    }
    return out + ")";
}

Polynomial pullback(const Polynomial& r, const CurveJet& phi) {
    if (phi.m != r.n()) throw precondition_error("pullback: curve dimension mismatch");
    const int n = r.n();
    // Substitution targets in one variable; t is the single variable z_1.
    std::vector<Polynomial> u, ubar;
    u.reserve(n);
    for (int j = 0; j < n; ++j) {
        Polynomial p(1);
        if (!phi.basepoint[j].is_zero()) p += Polynomial::constant(1, phi.basepoint[j]);
        for (size_t k = 1; k < phi.comps[j].size(); ++k) {
            if (phi.comps[j][k].is_zero()) continue;
            Monomial m{{static_cast<int>(k)}, {0}};
            p.add_term(m, phi.comps[j][k]);
        }
        u.push_back(p);
    }
    for (int j = 0; j < n; ++j) ubar.push_back(u[j].conjugated());
    // Cache powers per variable up to the maximum exponent appearing in r.
    std::vector<int> max_a(n, 0), max_b(n, 0);
    for (const auto& [m, c] : r.terms()) {
        for (int j = 0; j < n; ++j) {
            max_a[j] = std::max(max_a[j], m.alpha[j]);
            max_b[j] = std::max(max_b[j], m.beta[j]);
        }
    }
    std::vector<std::vector<Polynomial>> pow_u(n), pow_ub(n);
    for (int j = 0; j < n; ++j) {
        pow_u[j].push_back(Polynomial::constant(1, Scalar(1)));
        for (int e = 1; e <= max_a[j]; ++e) pow_u[j].push_back(pow_u[j].back() * u[j]);
        pow_ub[j].push_back(Polynomial::constant(1, Scalar(1)));
        for (int e = 1; e <= max_b[j]; ++e) pow_ub[j].push_back(pow_ub[j].back() * ubar[j]);
    }
    Polynomial out(1);
    for (const auto& [m, c] : r.terms()) {
        Polynomial term = Polynomial::constant(1, c);
        for (int j = 0; j < n; ++j) {
            if (m.alpha[j] > 0) term = term * pow_u[j][m.alpha[j]];
            if (m.beta[j] > 0) term = term * pow_ub[j][m.beta[j]];
        }
        out += term;
    }
    return out;
}

QExt contact_ratio(const Polynomial& r, const CurveJet& phi) {
    if (phi.is_constant()) throw precondition_error("contact_ratio: constant curve");
    const Polynomial pb = pullback(r, phi);
    if (pb.is_zero()) return QExt::infinity();
    const long num = pb.vanishing_order0().integer();
    const long den = phi.ord0().integer();
    mpq_class q(num, den);
    q.canonicalize();
    return QExt(q);
}

std::vector<Scalar> SearchBudget::default_coeff_set() {
    return {Scalar(1), Scalar(-1), Scalar::i(), -Scalar::i()};
}

namespace {

// One choice of support and coefficients for a single curve component:
// pairs (exponent, index into the coefficient set).
struct CompOption {
    std::vector<std::pair<int, int>> terms;
};

std::vector<CompOption> component_options(int degree_bound, int support_bound, int ncoeffs) {
    std::vector<CompOption> options;
    options.push_back(CompOption{}); // the zero component
    std::vector<int> exps;
    auto assign_coeffs = [&](const std::vector<int>& chosen) {
        const int k = static_cast<int>(chosen.size());
        std::vector<int> idx(static_cast<size_t>(k), 0);
        while (true) {
            CompOption opt;
            for (int t = 0; t < k; ++t) opt.terms.emplace_back(chosen[t], idx[t]);
            options.push_back(std::move(opt));
            int pos = k - 1;
            while (pos >= 0 && ++idx[pos] == ncoeffs) idx[pos--] = 0;
            if (pos < 0) break;
        }
    };
    auto rec = [&](auto&& self, int start, int size) -> void {
        if (static_cast<int>(exps.size()) == size) {
            assign_coeffs(exps);
            return;
        }
        for (int e = start; e <= degree_bound; ++e) {
            exps.push_back(e);
            self(self, e + 1, size);
            exps.pop_back();
        }
    };
    for (int size = 1; size <= support_bound; ++size) rec(rec, 1, size);
    return options;
}

CurveJet decode_curve(std::uint64_t idx, const std::vector<CompOption>& options, int m,
                      const std::vector<Scalar>& coeffs, const std::vector<Scalar>& point) {
    const std::uint64_t radix = options.size();
    CurveJet phi = CurveJet::at_point(m, point);
    for (int j = m - 1; j >= 0; --j) {
        const CompOption& opt = options[idx % radix];
        idx /= radix;
        int maxe = 0;
        for (auto [e, ci] : opt.terms) maxe = std::max(maxe, e);
        phi.comps[j].assign(static_cast<size_t>(maxe) + 1, Scalar(0));
        for (auto [e, ci] : opt.terms) phi.comps[j][e] = coeffs[ci];
    }
    return phi;
}

struct Candidate {
    QExt value;
    std::uint64_t index = 0;
    bool valid = false;
};

void consider(Candidate& best, const QExt& value, std::uint64_t index) {
    if (!best.valid || value > best.value) {
        best.value = value;
        best.index = index;
        best.valid = true;
    }
}

} // namespace

TypeSearchResult one_type_search(const Polynomial& r, const std::vector<Scalar>& point,
                                 const SearchBudget& budget) {
    if (!r.eval(point).is_zero())
        throw precondition_error("one_type_search: point does not lie on the hypersurface r = 0");
    std::vector<Scalar> coeffs;
    for (const Scalar& c : budget.coeff_set)
        if (!c.is_zero() && std::find(coeffs.begin(), coeffs.end(), c) == coeffs.end())
            coeffs.push_back(c);
    if (coeffs.empty() || budget.degree_bound < 1 || budget.support_bound < 1)
        throw precondition_error("one_type_search: empty search budget");
    const int m = r.n();
    const std::vector<CompOption> options =
        component_options(budget.degree_bound, budget.support_bound, static_cast<int>(coeffs.size()));
    const std::uint64_t radix = options.size();
    std::uint64_t total = 1;
    for (int j = 0; j < m; ++j) {
        if (total > 200000000ULL / radix)
            throw precondition_error("one_type_search: search space too large for the given budget");
        total *= radix;
    }

    auto evaluate = [&](std::uint64_t idx) -> QExt {
        const CurveJet phi = decode_curve(idx, options, m, coeffs, point);
        return contact_ratio(r, phi);
    };

    Candidate best;
    if (budget.mode == Exec::serial) {
        for (std::uint64_t idx = 1; idx < total; ++idx) {
            consider(best, evaluate(idx), idx);
            if (best.value.is_inf()) break; // nothing can beat a flat pullback
        }
    } else {
        // Rounds of contiguous index blocks; a flat pullback found in one
        // round stops the scan, and merging per-thread winners in ascending
        // block order reproduces the serial result bit for bit.
#ifdef _OPENMP
        const int nthreads = omp_get_max_threads();
#else
        const int nthreads = 1;
#endif
        std::uint64_t round = 64ULL * static_cast<std::uint64_t>(nthreads);
        const std::uint64_t round_max = 8192ULL * static_cast<std::uint64_t>(nthreads);
        for (std::uint64_t start = 1; start < total && !best.value.is_inf(); start += round) {
            if (start > round) round = std::min(round * 2, round_max);
            const std::uint64_t end = std::min(total, start + round);
            std::vector<Candidate> partial(static_cast<size_t>(nthreads));
#ifdef _OPENMP
#pragma omp parallel num_threads(nthreads)
            {
                const int tid = omp_get_thread_num();
#pragma omp for schedule(static)
                for (long long sidx = static_cast<long long>(start);
                     sidx < static_cast<long long>(end); ++sidx) {
                    const std::uint64_t idx = static_cast<std::uint64_t>(sidx);
                    consider(partial[static_cast<size_t>(tid)], evaluate(idx), idx);
                }
            }
#else
            for (std::uint64_t idx = start; idx < end; ++idx) consider(partial[0], evaluate(idx), idx);
#endif
            for (const Candidate& c : partial) {
                if (!c.valid) continue;
                if (!best.valid || c.value > best.value ||
                    (c.value == best.value && c.index < best.index)) {
                    best.value = c.value;
                    best.index = c.index;
                    best.valid = true;
                }
            }
        }
    }

    TypeSearchResult out;
    out.curves_tried = total - 1;
    if (!best.valid) throw precondition_error("one_type_search: empty search space");
    out.bound = best.value;
    out.witness = decode_curve(best.index, options, m, coeffs, point);
    return out;
}

bool LinearEmbedding::full_column_rank() const {
    return matrix_rank(matrix) == cols();
}

std::string LinearEmbedding::str() const {
    std::string s = "[";
    for (int i = 0; i < rows(); ++i) {
        if (i) s += "; ";
        for (int j = 0; j < cols(); ++j) {
            if (j) s += ", ";
            s += matrix[i][j].str();
        }
    }
    return s + "]";
}

Polynomial pullback_linear(const Polynomial& r, const LinearEmbedding& emb,
                           const std::vector<Scalar>& point) {
    const int n = r.n();
    if (emb.rows() != n) throw precondition_error("pullback_linear: embedding dimension mismatch");
    const int m = emb.cols();
    std::vector<Polynomial> u, ubar;
    for (int i = 0; i < n; ++i) {
        Polynomial p(m);
        if (!point[i].is_zero()) p += Polynomial::constant(m, point[i]);
        for (int j = 0; j < m; ++j)
            if (!emb.matrix[i][j].is_zero()) p += Polynomial::variable(m, j + 1) * emb.matrix[i][j];
        u.push_back(p);
    }
    for (int i = 0; i < n; ++i) ubar.push_back(u[i].conjugated());
    Polynomial out(m);
    for (const auto& [mono, c] : r.terms()) {
        Polynomial term = Polynomial::constant(m, c);
        for (int i = 0; i < n; ++i) {
            if (mono.alpha[i] > 0) term = term * u[i].pow(mono.alpha[i]);
            if (mono.beta[i] > 0) term = term * ubar[i].pow(mono.beta[i]);
        }
        out += term;
    }
    return out;
}

QTypeResult q_type_estimate(const Polynomial& r, int q, const std::vector<Scalar>& point,
                            int trials, std::uint64_t seed, const SearchBudget& budget) {
    const int n = r.n();
    if (q < 1 || q > n - 1) throw precondition_error("q_type_estimate: q must satisfy 1 <= q <= n-1");
    if (trials < 1) throw precondition_error("q_type_estimate: trials must be positive");
    const int m = n - q + 1;
    Lcg rng(seed);
    QTypeResult out;
    out.estimate = QExt::infinity();
    for (int trial = 0; trial < trials; ++trial) {
        LinearEmbedding emb;
        int attempts = 0;
        do {
            if (++attempts > 1000)
                throw precondition_error("q_type_estimate: could not draw a full-rank embedding");
            emb.matrix.assign(static_cast<size_t>(n), std::vector<Scalar>(static_cast<size_t>(m)));
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < m; ++j) {
                    mpq_class re(rng.below(5) - 2);
                    mpq_class im(rng.below(5) - 2);
                    emb.matrix[i][j] = Scalar(re, im);
                }
        } while (!emb.full_column_rank());

        const Polynomial pulled = pullback_linear(r, emb, point);
        const std::vector<Scalar> origin(static_cast<size_t>(m), Scalar(0));
        TypeSearchResult res = one_type_search(pulled, origin, budget);

        // Probe the linear-algebra witness directions explicitly: for every
        // (m-1)-subset of rows, the generalized cross product spans the
        // common kernel, and a line in that direction maximizes the contact
        // ratio on the model families. This keeps the searched coefficient
        // set small while making the estimator exact there.
        std::vector<int> rows_idx(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) rows_idx[static_cast<size_t>(i)] = i;
        std::vector<int> chosen;
        auto probe_direction = [&](const std::vector<Scalar>& v) {
            bool zero = true;
            for (const Scalar& s : v)
                if (!s.is_zero()) zero = false;
            if (zero) return;
            CurveJet line = CurveJet::at_point(m, origin);
            for (int j = 0; j < m; ++j) line.comps[static_cast<size_t>(j)] = {Scalar(0), v[static_cast<size_t>(j)]};
            const QExt ratio = contact_ratio(pulled, line);
            if (ratio > res.bound) {
                res.bound = ratio;
                res.witness = line;
            }
        };
        auto rec = [&](auto&& self, int start) -> void {
            if (static_cast<int>(chosen.size()) == m - 1) {
                // v_k = (-1)^k det of the chosen rows with column k removed.
                std::vector<Scalar> v(static_cast<size_t>(m));
                for (int k = 0; k < m; ++k) {
                    std::vector<std::vector<Scalar>> minor;
                    for (int ri : chosen) {
                        std::vector<Scalar> row;
                        for (int c = 0; c < m; ++c)
                            if (c != k) row.push_back(emb.matrix[static_cast<size_t>(ri)][static_cast<size_t>(c)]);
                        minor.push_back(std::move(row));
                    }
                    const Scalar d = (m == 1) ? Scalar(1) : matrix_det(minor);
                    v[static_cast<size_t>(k)] = (k % 2 == 0) ? d : -d;
                }
                probe_direction(v);
                return;
            }
            for (int i = start; i < n; ++i) {
                chosen.push_back(i);
                self(self, i + 1);
                chosen.pop_back();
            }
        };
        if (m >= 2) rec(rec, 0);

        if (res.bound < out.estimate) out.estimate = res.bound;
        out.trials.push_back(QTypeTrial{std::move(emb), res.bound, std::move(res.witness)});
    }
    return out;
}

} // namespace crgeo
