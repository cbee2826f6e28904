#include "crgeo/verify.hpp"

#include "crgeo/errors.hpp"
#include "crgeo/forms.hpp"
#include "crgeo/vector_field.hpp"

namespace crgeo {

namespace {

QExt bound_from_t(const QExt& t, int n, int q) {
    if (t.is_inf()) return QExt::infinity();
    const mpz_class up = ceil_int(t.value());
    mpz_class base = up - 2;
    mpz_class b(1);
    for (int i = 0; i < n - q; ++i) b *= base;
    return QExt(mpq_class(b));
}

std::string verdict_of(const QExt& order, const QExt& bound) {
    return order <= bound ? "holds" : "fails";
}

} // namespace

BoundReport main_bound_check(const Polynomial& r, int q, const std::vector<Scalar>& point,
                             TSource source, const QExt& t_value, const SearchBudget& budget,
                             int trials, std::uint64_t seed) {
    const int n = r.n();
    if (q < 1 || q > n - 1) throw precondition_error("main_bound_check: q must satisfy 1 <= q <= n-1");
    BoundReport rep;
    rep.n = n;
    rep.q = q;
    rep.source = source;
    if (source == TSource::searched) {
        if (q == 1)
            rep.t = one_type_search(r, point, budget).bound;
        else
            rep.t = q_type_estimate(r, q, point, trials, seed, budget).estimate;
    } else {
        rep.t = t_value;
    }
    rep.certification = (source == TSource::searched) ? "consistent" : "verified";
    rep.levi_order = levi_vanishing_order(r, q, point);
    if (rep.t.is_inf()) {
        rep.roundup = QExt::infinity();
        rep.bound = QExt::infinity();
        rep.verdict = "inapplicable";
        return rep;
    }
    rep.roundup = QExt(mpq_class(ceil_int(rep.t.value())));
    rep.bound = bound_from_t(rep.t, n, q);
    rep.verdict = verdict_of(rep.levi_order, rep.bound);
    return rep;
}

TruncationReport truncation_invariance_check(const Polynomial& r, int q,
                                             const std::vector<Scalar>& point, const QExt& t,
                                             const SearchBudget& budget) {
    const int n = r.n();
    TruncationReport rep;
    const Polynomial rs = r.shift_origin(point);
    const std::vector<Scalar> origin(static_cast<size_t>(n), Scalar(0));
    rep.baseline_type = one_type_search(rs, origin, budget).bound;
    rep.baseline_order = levi_vanishing_order(rs, q, origin);
    rep.mode = t.is_inf() ? "informational" : "assert";
    const int deg = rs.degree();
    int k_from;
    if (t.is_inf()) {
        k_from = 3; // report the drift over all jets that can carry Levi data
    } else {
        k_from = static_cast<int>(ceil_int(t.value()).get_si());
        rep.baseline_verdict = verdict_of(rep.baseline_order, bound_from_t(t, n, q));
    }
    for (int k = k_from; k <= deg; ++k) {
        TruncationEntry e;
        e.k = k;
        const Polynomial rk = rs.truncate_degree(k);
        e.searched_type = one_type_search(rk, origin, budget).bound;
        e.levi_order = levi_vanishing_order(rk, q, origin);
        if (t.is_finite()) {
            e.verdict = verdict_of(e.levi_order, bound_from_t(t, n, q));
            if (e.searched_type != rep.baseline_type || e.verdict != rep.baseline_verdict)
                rep.pass = false;
        }
        rep.entries.push_back(std::move(e));
    }
    return rep;
}

ChoiceIndependenceReport choice_independence_check(const Polynomial& r, int q,
                                                   const std::vector<Scalar>& point, int trials,
                                                   std::uint64_t seed) {
    if (trials < 1) throw precondition_error("choice_independence_check: trials must be positive");
    ChoiceIndependenceReport rep;
    for (int tr = 0; tr < trials; ++tr) {
        MultitypeOptions opts;
        opts.q = q;
        opts.randomize = true;
        opts.seed = seed + static_cast<std::uint64_t>(tr);
        const MultitypeResult res = commutator_multitype(r, point, opts);
        if (tr == 0) {
            rep.common = res.prefix;
            rep.status = res.status;
            rep.pass = true;
        } else if (!(res.prefix == rep.common) || res.status != rep.status) {
            rep.pass = false;
        }
        rep.runs.push_back(res.prefix);
    }
    return rep;
}

ScanReport lowest_stratum_scan(const Polynomial& r, int q, int samples, std::uint64_t seed,
                               const MultitypeOptions& opts) {
    const int n = r.n();
    std::string why;
    if (!is_rigid_graph_form(r, &why)) throw precondition_error("lowest_stratum_scan: " + why);
    ScanReport rep;
    rep.samples = samples;
    rep.seed = seed;
    {
        MultitypeOptions base = opts;
        base.q = q;
        rep.base_ctype = commutator_multitype(r, std::vector<Scalar>(static_cast<size_t>(n), Scalar(0)),
                                              base)
                             .prefix;
    }
    const Polynomial p_part = graph_part(r);
    Lcg rng(seed);
    for (int s = 0; s < samples; ++s) {
        ScanSample sample;
        // Rational draw of z_2..z_n from the grid {-2..2}/2; redraw when all
        // coordinates vanish (that would be the base point itself).
        std::vector<Scalar> pt(static_cast<size_t>(n), Scalar(0));
        bool nonzero = false;
        int guard = 0;
        while (!nonzero) {
            if (++guard > 100) break;
            for (int j = 1; j < n; ++j) {
                mpq_class re(rng.below(5) - 2, 2);
                mpq_class im(rng.below(5) - 2, 2);
                re.canonicalize();
                im.canonicalize();
                pt[static_cast<size_t>(j)] = Scalar(re, im);
                if (!pt[static_cast<size_t>(j)].is_zero()) nonzero = true;
            }
        }
        const Scalar pval = p_part.eval(pt);
        if (!pval.is_real()) {
            sample.error = "graph part is not real at the sample";
            rep.entries.push_back(std::move(sample));
            continue;
        }
        pt[0] = Scalar(pval.re() / -2);
        sample.point = pt;
        try {
            MultitypeOptions sopts = opts;
            sopts.q = q;
            const MultitypeResult res = commutator_multitype(r, pt, sopts);
            sample.ctype = res.prefix;
            sample.status = res.status;
            sample.levi_order = levi_vanishing_order(r, q, pt);
            sample.ok = res.status != MultitypeStatus::inconclusive;
            if (!sample.ok) sample.error = "inconclusive at this sample";
        } catch (const std::exception& e) {
            sample.error = e.what();
        }
        rep.entries.push_back(std::move(sample));
    }
    for (const ScanSample& s : rep.entries) {
        if (!s.ok) continue;
        if (!rep.has_min || lex_compare(s.ctype, rep.lex_min) < 0) {
            rep.has_min = true;
            rep.lex_min = s.ctype;
            rep.min_point = s.point;
            rep.levi_order_at_min = s.levi_order;
        }
        if (lex_compare(s.ctype, rep.base_ctype) > 0) rep.semicontinuity_ok = false;
    }
    if (rep.has_min) {
        Weight one_two;
        one_two.entries.push_back(QExt(1));
        for (int i = 2; i <= n + 1 - q; ++i) one_two.entries.push_back(QExt(2));
        rep.min_is_one_two = rep.lex_min == one_two;
    }
    return rep;
}

} // namespace crgeo
