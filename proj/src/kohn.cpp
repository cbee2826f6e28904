#include "crgeo/kohn.hpp"

#include <algorithm>

#include "crgeo/errors.hpp"
#include "crgeo/forms.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace crgeo {

namespace {

long factorial(int k) {
    long f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

bool known_up_to_scalar(const std::vector<Generator>& gens, const Polynomial& p) {
    for (const Generator& g : gens)
        if (proportional(g.poly, p)) return true;
    return false;
}

} // namespace

std::string GeneratorProvenance::str() const {
    switch (kind) {
        case GeneratorKind::defining:
            return "defining function";
        case GeneratorKind::levi_coefficient:
            return "levi coefficient (step 1)";
        case GeneratorKind::wedge_coefficient: {
            std::string s = "wedge coefficient (step " + std::to_string(step) + ", j=" +
                            std::to_string(j) + ", tuple=[";
            for (size_t i = 0; i < tuple.size(); ++i) {
                if (i) s += ",";
                s += std::to_string(tuple[i]);
            }
            return s + "])";
        }
        case GeneratorKind::radical_member:
            return "radical member (m=" + std::to_string(j) + ", against generator " +
                   std::to_string(tuple.empty() ? -1 : tuple[0]) + ")";
    }
    return "";
}

MultiplierGenerators step1(const Polynomial& r, int q) {
    MultiplierGenerators out;
    out.step = 1;
    out.q = q;
    out.gens.push_back(Generator{r, GeneratorProvenance{GeneratorKind::defining, 1, {}, 0}});
    for (const Polynomial& c : levi_coefficients(r, q)) {
        if (c.is_zero() || known_up_to_scalar(out.gens, c)) continue;
        out.gens.push_back(Generator{c, GeneratorProvenance{GeneratorKind::levi_coefficient, 1, {}, 0}});
    }
    return out;
}

MultiplierGenerators step_next(const MultiplierGenerators& gens, const Polynomial& r, int j_max,
                               Exec mode) {
    const int n = r.n();
    const int q = gens.q;
    if (j_max < 1 || j_max > n - q)
        throw precondition_error("step_next: j_max must satisfy 1 <= j_max <= n-q");

    const Form r0 = Form::from_function(r);
    const Form dr = r0.d_holo();
    const Form dbr = r0.d_antiholo();
    const Form ddbr = dbr.d_holo();

    // All tuples (i_1 < ... < i_j) of current generator indices.
    std::vector<std::vector<int>> tuples;
    const int g = static_cast<int>(gens.gens.size());
    for (int j = 1; j <= j_max; ++j) {
        std::vector<int> cur;
        auto rec = [&](auto&& self, int start) -> void {
            if (static_cast<int>(cur.size()) == j) {
                tuples.push_back(cur);
                return;
            }
            for (int v = start; v < g; ++v) {
                cur.push_back(v);
                self(self, v + 1);
                cur.pop_back();
            }
        };
        rec(rec, 0);
    }

    std::vector<std::vector<Polynomial>> tuple_coeffs(tuples.size());
    auto eval_tuple = [&](size_t ti) {
        const std::vector<int>& tuple = tuples[ti];
        const int j = static_cast<int>(tuple.size());
        Form w = Form::from_function(gens.gens[static_cast<size_t>(tuple[0])].poly).d_holo();
        for (int t = 1; t < j; ++t)
            w = w.wedge(Form::from_function(gens.gens[static_cast<size_t>(tuple[t])].poly).d_holo());
        w = w.wedge(dr).wedge(dbr);
        const int k = n - q - j;
        if (k > 0) w = w.wedge(ddbr.wedge_pow(k));
        const long sgn = (static_cast<long>(k) * (k + 1) / 2) % 2 == 0 ? 1 : -1;
        w = w * Scalar(mpq_class(sgn, factorial(k)));
        std::vector<Polynomial> coeffs;
        for (const auto& [ix, c] : w.coefficients()) coeffs.push_back(c);
        tuple_coeffs[ti] = std::move(coeffs);
    };
    if (mode == Exec::parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
        for (long long ti = 0; ti < static_cast<long long>(tuples.size()); ++ti)
            eval_tuple(static_cast<size_t>(ti));
    } else {
        for (size_t ti = 0; ti < tuples.size(); ++ti) eval_tuple(ti);
    }

    MultiplierGenerators out = gens;
    out.step = gens.step + 1;
    for (size_t ti = 0; ti < tuples.size(); ++ti) {
        for (const Polynomial& c : tuple_coeffs[ti]) {
            if (c.is_zero() || known_up_to_scalar(out.gens, c)) continue;
            GeneratorProvenance prov{GeneratorKind::wedge_coefficient, out.step, tuples[ti],
                                     static_cast<int>(tuples[ti].size())};
            out.gens.push_back(Generator{c, std::move(prov)});
        }
    }
    return out;
}

MultiplierGenerators apply_radical_hook(const MultiplierGenerators& gens,
                                        const std::vector<RadicalWitness>& witnesses) {
    MultiplierGenerators out = gens;
    for (size_t wi = 0; wi < witnesses.size(); ++wi) {
        const RadicalWitness& w = witnesses[wi];
        if (w.m < 1 || w.f_index < 0 || w.f_index >= static_cast<int>(out.gens.size()))
            throw precondition_error("apply_radical_hook: malformed witness " + std::to_string(wi));
        const Polynomial& f = out.gens[static_cast<size_t>(w.f_index)].poly;
        const Polynomial lhs = (w.g * w.g.conjugated()).pow(w.m);
        const Polynomial rhs = f * f.conjugated();
        if (!exact_divide(lhs, rhs))
            throw precondition_error("apply_radical_hook: certificate failed for witness " +
                                     std::to_string(wi) + ": (g conj g)^m is not divisible by f conj f");
        if (w.g.is_zero() || known_up_to_scalar(out.gens, w.g)) continue;
        GeneratorProvenance prov{GeneratorKind::radical_member, out.step, {w.f_index}, w.m};
        out.gens.push_back(Generator{w.g, std::move(prov)});
    }
    return out;
}

UnitWitness contains_unit_at(const MultiplierGenerators& gens, const std::vector<Scalar>& point) {
    UnitWitness w;
    for (int i = 0; i < static_cast<int>(gens.gens.size()); ++i) {
        const Scalar v = gens.gens[static_cast<size_t>(i)].poly.eval(point);
        if (!v.is_zero()) {
            w.found = true;
            w.index = i;
            w.value = v;
            return w;
        }
    }
    return w;
}

KohnRunReport kohn_run(const Polynomial& r, int q, const std::vector<Scalar>& point, int max_steps,
                       int j_max, Exec mode) {
    if (max_steps < 1) throw precondition_error("kohn_run: max_steps must be positive");
    if (j_max == 0) j_max = r.n() - q;
    KohnRunReport report;
    MultiplierGenerators cur = step1(r, q);
    for (int k = 1; k <= max_steps; ++k) {
        if (k > 1) cur = step_next(cur, r, j_max, mode);
        KohnStepReport sr;
        sr.step = k;
        sr.generator_count = static_cast<int>(cur.gens.size());
        QExt best = QExt::infinity();
        for (const Generator& g : cur.gens) {
            if (g.prov.kind == GeneratorKind::defining) continue;
            const QExt o = g.poly.vanishing_order(point);
            if (o < best) best = o;
        }
        sr.min_order_excluding_r = best;
        const UnitWitness w = contains_unit_at(cur, point);
        sr.terminated = w.found;
        sr.witness_index = w.index;
        report.steps.push_back(sr);
        if (w.found) {
            report.terminated = true;
            break;
        }
    }
    report.final_generators = std::move(cur);
    return report;
}

} // namespace crgeo
