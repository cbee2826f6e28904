#include "crgeo/catlin.hpp"

#include <algorithm>
#include <map>

#include "crgeo/errors.hpp"
#include "crgeo/forms.hpp"
#include "crgeo/linalg.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace crgeo {

int ListSpec::count(int stage) const {
    int c = 0;
    for (const auto& [s, conj] : symbols)
        if (s == stage) ++c;
    return c;
}

bool ListSpec::is_ordered() const {
    for (size_t i = 1; i < symbols.size(); ++i)
        if (symbols[i].first > symbols[i - 1].first) return false;
    return true;
}

std::string ListSpec::str() const {
    std::string out;
    for (const auto& [s, conj] : symbols) {
        if (!out.empty()) out += " ";
        out += (conj ? "Lb" : "L") + std::to_string(s);
    }
    return out;
}

bool is_nu_admissible(const ListSpec& list, int nu, int first_stage,
                      const std::vector<QExt>& priors) {
    if (list.count(nu) <= 0) return false;
    mpq_class load(0);
    for (int s = first_stage; s < nu; ++s) {
        const int l = list.count(s);
        if (l == 0) continue;
        const QExt& c = priors[static_cast<size_t>(s - first_stage)];
        if (c.is_inf()) continue;
        load += mpq_class(l) / c.value();
    }
    return load < 1;
}

QExt c_of_list(const std::vector<long>& counts_old, const std::vector<QExt>& priors, long l_nu) {
    if (l_nu <= 0) throw precondition_error("c_of_list: the new field must occur in the list");
    if (counts_old.size() != priors.size())
        throw precondition_error("c_of_list: counts/priors length mismatch");
    mpq_class load(0);
    for (size_t i = 0; i < counts_old.size(); ++i) {
        if (counts_old[i] == 0) continue;
        load += mpq_class(counts_old[i]) / priors[i].value();
    }
    if (load >= 1) throw precondition_error("c_of_list: list is not admissible (prior load >= 1)");
    mpq_class c = mpq_class(l_nu) / (mpq_class(1) - load);
    c.canonicalize();
    return QExt(c);
}

namespace {

Polynomial eval_list_ptrs(const std::vector<const VectorField*>& fields, const Polynomial& r) {
    const size_t l = fields.size();
    Polynomial b = pair_d_holo(r, lie_bracket(*fields[l - 2], *fields[l - 1]));
    for (size_t i = l - 2; i-- > 0;) b = fields[i]->apply(b);
    return b;
}

Scalar value_at_origin(const Polynomial& p) {
    const int n = p.n();
    return p.coefficient(Monomial{std::vector<int>(n, 0), std::vector<int>(n, 0)});
}

// Levi pairing d dbar r (v, conj w) for (1,0) fields given their holomorphic
// coefficient blocks: sum v_k conj(w_l) r_{z_k zbar_l}.
Polynomial levi_pair(const std::vector<std::vector<Polynomial>>& hess, const VectorField& v,
                     const VectorField& w) {
    const int n = v.n;
    Polynomial out(n);
    for (int k = 0; k < n; ++k) {
        if (v.holo[k].is_zero()) continue;
        for (int l = 0; l < n; ++l) {
            const Polynomial wc = w.holo[l].conjugated();
            if (wc.is_zero() || hess[k][l].is_zero()) continue;
            out += v.holo[k] * wc * hess[k][l];
        }
    }
    return out;
}

std::vector<std::vector<Polynomial>> hessian(const Polynomial& r) {
    const int n = r.n();
    std::vector<std::vector<Polynomial>> h(n, std::vector<Polynomial>(n, Polynomial(n)));
    for (int k = 1; k <= n; ++k) {
        const Polynomial dk = r.derivative(k, false);
        for (int l = 1; l <= n; ++l) h[k - 1][l - 1] = dk.derivative(l, true);
    }
    return h;
}

// Monomials in z_2..z_n, zbar_2..zbar_n of total degree <= d, canonical order.
std::vector<Monomial> ansatz_monomials(int n, int d) {
    std::vector<Monomial> out;
    Monomial m{std::vector<int>(n, 0), std::vector<int>(n, 0)};
    auto rec = [&](auto&& self, int slot, int remaining) -> void {
        if (slot == 2 * (n - 1)) {
            out.push_back(m);
            return;
        }
        // slots 0..n-2 are alpha_2..alpha_n, then beta_2..beta_n
        int* target = slot < n - 1 ? &m.alpha[slot + 1] : &m.beta[slot - (n - 1) + 1];
        for (int e = 0; e <= remaining; ++e) {
            *target = e;
            self(self, slot + 1, remaining - e);
        }
        *target = 0;
    };
    rec(rec, 0, d);
    std::sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) {
        return MonomialOrder{}(a, b);
    });
    return out;
}

} // namespace

Polynomial list_eval(const std::vector<VectorField>& bound_fields, const Polynomial& r) {
    if (bound_fields.size() < 3)
        throw precondition_error("list_eval: lists must have length at least 3");
    std::vector<const VectorField*> ptrs;
    ptrs.reserve(bound_fields.size());
    for (const auto& f : bound_fields) ptrs.push_back(&f);
    return eval_list_ptrs(ptrs, r);
}

std::vector<VectorField> kernel_field_ansatz(const Polynomial& r, const AnsatzConstraints& cons,
                                             int ansatz_degree) {
    const int n = r.n();
    const std::vector<VectorField> frame = graph_tangent_fields(r);
    const auto hess = hessian(r);
    const std::vector<Monomial> monos = ansatz_monomials(n, ansatz_degree);
    const int nfields = n - 1;
    const int ncols = static_cast<int>(monos.size()) * nfields;

    // Constraint generators: the pairing/derivative of each frame direction.
    std::vector<std::vector<Polynomial>> gens; // gens[c][j]
    for (const VectorField& w : cons.levi_frame) {
        std::vector<Polynomial> row;
        for (int j = 0; j < nfields; ++j) row.push_back(levi_pair(hess, frame[j], w));
        gens.push_back(std::move(row));
    }
    for (const Polynomial& h : cons.functions) {
        std::vector<Polynomial> row;
        for (int j = 0; j < nfields; ++j) row.push_back(frame[j].apply(h));
        gens.push_back(std::move(row));
    }

    // Assemble the exact linear system: one row per (constraint, monomial slot).
    std::map<std::pair<int, Monomial>, int,
             decltype([](const std::pair<int, Monomial>& a, const std::pair<int, Monomial>& b) {
                 if (a.first != b.first) return a.first < b.first;
                 return MonomialOrder{}(a.second, b.second);
             })>
        row_index;
    std::vector<std::vector<Scalar>> matrix;
    auto row_of = [&](int c, const Monomial& m) -> int {
        auto it = row_index.find({c, m});
        if (it != row_index.end()) return it->second;
        const int idx = static_cast<int>(matrix.size());
        row_index.emplace(std::make_pair(c, m), idx);
        matrix.emplace_back(static_cast<size_t>(ncols), Scalar(0));
        return idx;
    };
    for (int mi = 0; mi < static_cast<int>(monos.size()); ++mi) {
        const Polynomial mono_poly = Polynomial::monomial(n, monos[static_cast<size_t>(mi)], Scalar(1));
        for (int j = 0; j < nfields; ++j) {
            const int col = mi * nfields + j;
            for (int c = 0; c < static_cast<int>(gens.size()); ++c) {
                const Polynomial contrib = mono_poly * gens[static_cast<size_t>(c)][static_cast<size_t>(j)];
                for (const auto& [m, coef] : contrib.terms())
                    matrix[static_cast<size_t>(row_of(c, m))][static_cast<size_t>(col)] = coef;
            }
        }
    }

    std::vector<std::vector<Scalar>> basis = kernel_basis(std::move(matrix), ncols);
    std::vector<VectorField> out;
    for (const auto& vec : basis) {
        VectorField l(n);
        for (int mi = 0; mi < static_cast<int>(monos.size()); ++mi) {
            for (int j = 0; j < nfields; ++j) {
                const Scalar& a = vec[static_cast<size_t>(mi * nfields + j)];
                if (a.is_zero()) continue;
                const Polynomial coeff = Polynomial::monomial(n, monos[static_cast<size_t>(mi)], a);
                l = l + frame[static_cast<size_t>(j)] * coeff;
            }
        }
        if (!l.is_zero()) out.push_back(std::move(l));
    }
    return out;
}

namespace {

struct ListShape {
    std::vector<long> counts_old; // per prior stage p+2..nu-1
    long l_nu = 0;
    QExt c;
    int total() const {
        long t = l_nu;
        for (long c0 : counts_old) t += c0;
        return static_cast<int>(t);
    }
};

struct Instance {
    int shape = 0;
    unsigned mask = 0;
    int field = 0;
};

std::vector<ListShape> enumerate_shapes(const std::vector<QExt>& priors, int cap) {
    std::vector<ListShape> shapes;
    const int k = static_cast<int>(priors.size());
    std::vector<long> counts(static_cast<size_t>(k), 0);
    auto rec = [&](auto&& self, int i, long used, mpq_class load) -> void {
        if (i == k) {
            for (long lnu = std::max<long>(1, 3 - used); used + lnu <= cap; ++lnu) {
                ListShape s;
                s.counts_old = counts;
                s.l_nu = lnu;
                s.c = c_of_list(counts, priors, lnu);
                shapes.push_back(std::move(s));
            }
            return;
        }
        for (long v = 0;; ++v) {
            if (used + v > cap) break;
            mpq_class nl = load;
            if (v > 0) {
                if (priors[static_cast<size_t>(i)].is_inf()) break; // cannot use an infinite stage
                nl += mpq_class(v) / priors[static_cast<size_t>(i)].value();
                if (nl >= 1) break;
            }
            counts[static_cast<size_t>(i)] = v;
            self(self, i + 1, used + v, nl);
        }
        counts[static_cast<size_t>(i)] = 0;
    };
    rec(rec, 0, 0, mpq_class(0));
    std::sort(shapes.begin(), shapes.end(), [](const ListShape& a, const ListShape& b) {
        if (a.c != b.c) return a.c < b.c;
        if (a.counts_old != b.counts_old) return a.counts_old < b.counts_old;
        return a.l_nu < b.l_nu;
    });
    return shapes;
}

// Symbol sequence of a shape+mask: l_nu new-field symbols first, then prior
// stages newest to oldest; mask bits give conjugation flags, outermost first.
ListSpec shape_to_list(const ListShape& s, unsigned mask, int first_stage, int nu) {
    ListSpec list;
    const int total = s.total();
    int pos = 0;
    auto push_block = [&](int stage, long count) {
        for (long i = 0; i < count; ++i) {
            const bool conj = (mask >> (total - 1 - pos)) & 1u;
            list.symbols.emplace_back(stage, conj);
            ++pos;
        }
    };
    push_block(nu, s.l_nu);
    for (int st = static_cast<int>(s.counts_old.size()) - 1; st >= 0; --st)
        push_block(first_stage + st, s.counts_old[static_cast<size_t>(st)]);
    return list;
}

struct EvalContext {
    const Polynomial& r;
    int first_stage;
    int nu;
    const std::vector<VectorField>& candidates;
    std::vector<VectorField> cand_conj;
    const std::vector<VectorField>& stage_fields;
    std::vector<VectorField> stage_conj;

    EvalContext(const Polynomial& r, int first_stage, int nu,
                const std::vector<VectorField>& candidates,
                const std::vector<VectorField>& stage_fields)
        : r(r), first_stage(first_stage), nu(nu), candidates(candidates), stage_fields(stage_fields) {
        for (const auto& c : candidates) cand_conj.push_back(c.conjugated());
        for (const auto& s : stage_fields) stage_conj.push_back(s.conjugated());
    }

    const VectorField* bound(int stage, bool conj, int field) const {
        if (stage == nu)
            return conj ? &cand_conj[static_cast<size_t>(field)]
                        : &candidates[static_cast<size_t>(field)];
        const size_t idx = static_cast<size_t>(stage - first_stage);
        return conj ? &stage_conj[idx] : &stage_fields[idx];
    }

    Polynomial eval_tail(const ListSpec& list, int from, int field) const {
        std::vector<const VectorField*> ptrs;
        for (size_t i = static_cast<size_t>(from); i < list.symbols.size(); ++i)
            ptrs.push_back(bound(list.symbols[i].first, list.symbols[i].second, field));
        return eval_list_ptrs(ptrs, r);
    }
};

} // namespace

MultitypeResult commutator_multitype(const Polynomial& r, const std::vector<Scalar>& point,
                                     const MultitypeOptions& opts) {
    const int n = r.n();
    if (opts.q < 1 || opts.q > n - 1)
        throw precondition_error("commutator_multitype: q must satisfy 1 <= q <= n-1");
    if (!r.eval(point).is_zero())
        throw precondition_error("commutator_multitype: point does not lie on the hypersurface");
    const Polynomial rs = r.shift_origin(point);
    std::string why;
    if (!is_rigid_graph_form(rs, &why))
        throw precondition_error("commutator_multitype: " + why);
    const int nu_max = n + 1 - opts.q;
    const int cap = opts.length_cap > 0 ? opts.length_cap : std::max(3, rs.degree());
    Lcg rng(opts.seed + 0x5bd1e995ULL);

    MultitypeResult res;
    res.prefix.entries.push_back(QExt(1)); // c_1 = 1: one normal derivative of r
    res.system.functions.push_back(rs);

    const std::vector<Scalar> origin(static_cast<size_t>(n), Scalar(0));
    const int p = levi_rank_at(rs, origin);
    res.rank_p = p;
    res.system.rank_p = p;
    const std::vector<VectorField> frame_all = graph_tangent_fields(rs);
    const auto hess = hessian(rs);

    // Frame block: a size-p principal subset of the Levi matrix at 0 that is
    // nonsingular; exists because the matrix is Hermitian of rank p.
    std::vector<int> subset;
    {
        std::vector<std::vector<Scalar>> h0(static_cast<size_t>(n - 1),
                                            std::vector<Scalar>(static_cast<size_t>(n - 1)));
        for (int i = 0; i < n - 1; ++i)
            for (int j = 0; j < n - 1; ++j) h0[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                hess[i + 1][j + 1].eval(origin);
        std::vector<std::vector<int>> valid;
        std::vector<int> cur;
        auto rec = [&](auto&& self, int start) -> void {
            if (static_cast<int>(cur.size()) == p) {
                std::vector<std::vector<Scalar>> minor(static_cast<size_t>(p),
                                                       std::vector<Scalar>(static_cast<size_t>(p)));
                for (int a = 0; a < p; ++a)
                    for (int b = 0; b < p; ++b)
                        minor[static_cast<size_t>(a)][static_cast<size_t>(b)] =
                            h0[static_cast<size_t>(cur[static_cast<size_t>(a)])]
                              [static_cast<size_t>(cur[static_cast<size_t>(b)])];
                if (p == 0 || !matrix_det(minor).is_zero()) valid.push_back(cur);
                return;
            }
            for (int v = start; v < n - 1; ++v) {
                cur.push_back(v);
                self(self, v + 1);
                cur.pop_back();
            }
        };
        rec(rec, 0);
        if (valid.empty())
            throw std::logic_error("commutator_multitype: no nonsingular principal Levi block");
        subset = opts.randomize ? valid[static_cast<size_t>(rng.below(static_cast<int>(valid.size())))]
                                : valid.front();
    }
    std::vector<VectorField> frame_block;
    for (int idx : subset) {
        frame_block.push_back(frame_all[static_cast<size_t>(idx)]);
        res.system.fields.push_back(frame_all[static_cast<size_t>(idx)]);
    }
    {
        StageRecord rec;
        rec.nu = 1;
        rec.case_tag = 0;
        rec.note = "levi rank " + std::to_string(p);
        res.trace.push_back(std::move(rec));
    }
    for (int i = 2; i <= std::min(p + 1, nu_max); ++i) res.prefix.entries.push_back(QExt(2));
    if (p + 1 >= nu_max) {
        res.status = MultitypeStatus::complete;
        return res;
    }

    const int first_stage = p + 2;
    std::vector<QExt> priors;
    std::vector<VectorField> stage_fields;
    std::vector<Polynomial> stage_functions;

    for (int nu = first_stage; nu <= nu_max; ++nu) {
        StageRecord stage;
        stage.nu = nu;

        AnsatzConstraints cons;
        cons.levi_frame = frame_block;
        cons.functions = stage_functions;
        std::vector<VectorField> basis = kernel_field_ansatz(rs, cons, opts.ansatz_degree);
        if (opts.randomize) {
            for (int i = static_cast<int>(basis.size()) - 1; i > 0; --i)
                std::swap(basis[static_cast<size_t>(i)], basis[static_cast<size_t>(rng.below(i + 1))]);
        }
        // Keep candidates that are nonvanishing at the point with linearly
        // independent values; these span the kernel directions there.
        std::vector<VectorField> candidates;
        std::vector<std::vector<Scalar>> values;
        for (const VectorField& b : basis) {
            std::vector<Scalar> v = b.holo_values_at(origin);
            bool zero = true;
            for (const Scalar& s : v)
                if (!s.is_zero()) zero = false;
            if (zero) continue;
            values.push_back(v);
            if (matrix_rank(values) == static_cast<int>(values.size())) {
                candidates.push_back(b);
            } else {
                values.pop_back();
            }
        }
        for (const auto& c : candidates) stage.candidate_fields.push_back(c.str());
        if (candidates.empty()) {
            res.status = MultitypeStatus::inconclusive;
            stage.note = "no candidate kernel field with the given ansatz degree; raise it";
            res.trace.push_back(std::move(stage));
            return res;
        }

        EvalContext ctx(rs, first_stage, nu, candidates, stage_fields);
        const std::vector<ListShape> shapes = enumerate_shapes(priors, cap);

        std::uint64_t budget = 0;
        for (const ListShape& s : shapes) budget += (1ULL << s.total()) * candidates.size();
        if (budget > 2000000ULL)
            throw precondition_error(
                "commutator_multitype: list enumeration too large; lower the length cap");
        std::vector<Instance> instances;
        for (int si = 0; si < static_cast<int>(shapes.size()); ++si) {
            const int total = shapes[static_cast<size_t>(si)].total();
            for (unsigned mask = 0; mask < (1u << total); ++mask)
                for (int fi = 0; fi < static_cast<int>(candidates.size()); ++fi)
                    instances.push_back(Instance{si, mask, fi});
        }
        std::vector<Scalar> inst_values(instances.size());
        auto eval_instance = [&](size_t i) {
            const Instance& inst = instances[i];
            const ListSpec list =
                shape_to_list(shapes[static_cast<size_t>(inst.shape)], inst.mask, first_stage, nu);
            inst_values[i] = value_at_origin(ctx.eval_tail(list, 0, inst.field));
        };
        if (opts.mode == Exec::parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 8)
#endif
            for (long long i = 0; i < static_cast<long long>(instances.size()); ++i)
                eval_instance(static_cast<size_t>(i));
        } else {
            for (size_t i = 0; i < instances.size(); ++i) eval_instance(i);
        }

        std::vector<size_t> nonvanishing;
        for (size_t i = 0; i < instances.size(); ++i)
            if (!inst_values[i].is_zero()) nonvanishing.push_back(i);

        for (size_t i = 0; i < instances.size(); ++i) {
            const Instance& inst = instances[i];
            const ListShape& sh = shapes[static_cast<size_t>(inst.shape)];
            ListCandidateRecord rec;
            rec.encoding = shape_to_list(sh, inst.mask, first_stage, nu).str();
            rec.counts = sh.counts_old;
            rec.counts.push_back(sh.l_nu);
            rec.c_value = sh.c;
            rec.value_at_point = inst_values[i].str();
            rec.field_index = inst.field;
            stage.lists.push_back(std::move(rec));
        }

        if (nonvanishing.empty()) {
            // Decide between certified infinity and budget exhaustion: every
            // admissible list factors through a bracket base dr([X, Y]); when
            // all such bases vanish identically, so does every longer list.
            bool all_bases_zero = true;
            std::string culprit;
            auto base_zero = [&](const VectorField& a, const VectorField& b) {
                return pair_d_holo(rs, lie_bracket(a, b)).is_zero();
            };
            auto check_pair = [&](const VectorField& x, const VectorField& y, const std::string& tag) {
                const VectorField xc = x.conjugated();
                const VectorField yc = y.conjugated();
                if (!base_zero(x, y) || !base_zero(x, yc) || !base_zero(xc, y) || !base_zero(xc, yc)) {
                    all_bases_zero = false;
                    if (culprit.empty()) culprit = tag;
                }
            };
            for (int fi = 0; fi < static_cast<int>(candidates.size()); ++fi)
                check_pair(candidates[static_cast<size_t>(fi)], candidates[static_cast<size_t>(fi)],
                           "[new,new]");
            for (int s = 0; s < static_cast<int>(priors.size()); ++s) {
                const QExt& cs = priors[static_cast<size_t>(s)];
                // A single old symbol is always admissible (1/c < 1).
                for (int fi = 0; fi < static_cast<int>(candidates.size()); ++fi)
                    check_pair(candidates[static_cast<size_t>(fi)], stage_fields[static_cast<size_t>(s)],
                               "[new,old]");
                if (cs.is_finite() && mpq_class(2) / cs.value() < 1)
                    check_pair(stage_fields[static_cast<size_t>(s)], stage_fields[static_cast<size_t>(s)],
                               "[old,old]");
                for (int s2 = s + 1; s2 < static_cast<int>(priors.size()); ++s2) {
                    const QExt& cs2 = priors[static_cast<size_t>(s2)];
                    if (cs.is_finite() && cs2.is_finite() &&
                        mpq_class(1) / cs.value() + mpq_class(1) / cs2.value() < 1)
                        check_pair(stage_fields[static_cast<size_t>(s2)],
                                   stage_fields[static_cast<size_t>(s)], "[old,old']");
                }
            }
            if (all_bases_zero) {
                stage.case_tag = 1;
                stage.note = "every admissible bracket base vanishes identically";
                res.trace.push_back(std::move(stage));
                while (static_cast<int>(res.prefix.entries.size()) < nu_max)
                    res.prefix.entries.push_back(QExt::infinity());
                res.status = MultitypeStatus::infinite_entries;
                res.system.functions.insert(res.system.functions.end(), stage_functions.begin(),
                                            stage_functions.end());
                res.system.fields.insert(res.system.fields.end(), stage_fields.begin(),
                                         stage_fields.end());
                return res;
            }
            stage.note = "all lists up to the length cap vanish but base " + culprit +
                         " is not identically zero; raise the length cap";
            res.trace.push_back(std::move(stage));
            res.status = MultitypeStatus::inconclusive;
            res.system.functions.insert(res.system.functions.end(), stage_functions.begin(),
                                        stage_functions.end());
            res.system.fields.insert(res.system.fields.end(), stage_fields.begin(), stage_fields.end());
            return res;
        }

        // Case 2: minimal c among the nonvanishing lists; instances are
        // already in canonical (c, shape, mask, field) order.
        size_t chosen = nonvanishing.front();
        {
            QExt cmin = shapes[static_cast<size_t>(instances[chosen].shape)].c;
            std::vector<size_t> argmin;
            for (size_t i : nonvanishing) {
                const QExt& c = shapes[static_cast<size_t>(instances[i].shape)].c;
                if (c < cmin) {
                    cmin = c;
                    argmin.clear();
                }
                if (c == cmin) argmin.push_back(i);
            }
            chosen = opts.randomize
                         ? argmin[static_cast<size_t>(rng.below(static_cast<int>(argmin.size())))]
                         : argmin.front();
        }
        const Instance& ci = instances[chosen];
        const ListShape& csh = shapes[static_cast<size_t>(ci.shape)];
        stage.case_tag = 2;
        stage.lists[chosen].chosen = true;
        const ListSpec clist = shape_to_list(csh, ci.mask, first_stage, nu);
        res.prefix.entries.push_back(csh.c);
        priors.push_back(csh.c);

        // Extract r_nu from the truncated list L' = {L^2, ..., L^l}.
        const Polynomial big_f = ctx.eval_tail(clist, 1, ci.field);
        const Polynomial f = big_f.real_part();
        const Polynomial g = big_f.imag_part();
        const VectorField& l1 = *ctx.bound(clist.symbols[0].first, clist.symbols[0].second, ci.field);
        const VectorField x = (l1 + l1.conjugated()) * Scalar::rational(1, 2);
        const VectorField y =
            (l1 - l1.conjugated()) * Scalar(mpq_class(0), mpq_class(-1, 2));
        struct Probe {
            const char* tag;
            const VectorField* v;
            const Polynomial* h;
        };
        const Probe probes[4] = {{"Xf", &x, &f}, {"Xg", &x, &g}, {"Yf", &y, &f}, {"Yg", &y, &g}};
        const Polynomial* r_nu = nullptr;
        for (const Probe& pr : probes) {
            if (!value_at_origin(pr.v->apply(*pr.h)).is_zero()) {
                r_nu = pr.h;
                stage.xy_choice = pr.tag;
                break;
            }
        }
        if (!r_nu)
            throw std::logic_error("commutator_multitype: all four X/Y probes vanish at the point");
        const VectorField& chosen_field = candidates[static_cast<size_t>(ci.field)];
        if (value_at_origin(chosen_field.apply(*r_nu)).is_zero())
            throw std::logic_error("commutator_multitype: L_nu(r_nu) vanishes at the point");
        stage.chosen_field = chosen_field.str();
        stage.r_nu = r_nu->str();
        stage_functions.push_back(*r_nu);
        stage_fields.push_back(chosen_field);
        res.system.chosen_lists.push_back(clist);
        res.trace.push_back(std::move(stage));
    }

    res.system.functions.insert(res.system.functions.end(), stage_functions.begin(),
                                stage_functions.end());
    res.system.fields.insert(res.system.fields.end(), stage_fields.begin(), stage_fields.end());
    res.status = MultitypeStatus::complete;

    // Boundary-system invariant: the real gradients of r_1, r_{p+2}, ..., r_nu
    // at the point are linearly independent.
    {
        std::vector<std::vector<Scalar>> grads;
        std::vector<const Polynomial*> funcs{&rs};
        for (const Polynomial& h : stage_functions) funcs.push_back(&h);
        for (const Polynomial* h : funcs) {
            std::vector<Scalar> row;
            for (int i = 1; i <= n; ++i) {
                const Scalar d = h->derivative(i, false).eval(origin);
                row.push_back(Scalar(d.re() * 2)); // d/dx_i
                row.push_back(Scalar(d.im() * -2)); // d/dy_i
            }
            grads.push_back(std::move(row));
        }
        if (matrix_rank(grads) != static_cast<int>(funcs.size()))
            throw std::logic_error("commutator_multitype: boundary-system gradients are dependent");
    }
    return res;
}

} // namespace crgeo
