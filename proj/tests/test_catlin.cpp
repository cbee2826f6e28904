#include <doctest.h>

#include "crgeo/catlin.hpp"
#include "crgeo/forms.hpp"
#include "properties.hpp"

using namespace crgeo;
using namespace crgeo::testutil;

namespace {

const char* kPaper = "2*Re(z1) + abs2(z2^2 - z3^3)";

VectorField random_field(Lcg& rng, int n) {
    VectorField v(n);
    for (int j = 0; j < n; ++j) {
        v.holo[static_cast<size_t>(j)] = random_polynomial(rng, n, 2, 2);
        v.anti[static_cast<size_t>(j)] = random_polynomial(rng, n, 2, 2);
    }
    return v;
}

} // namespace

TEST_CASE("lie brackets") {
    // [d/dz2, z2 d/dz1] = d/dz1.
    const VectorField a = VectorField::d_z(2, 2);
    const VectorField b = VectorField::d_z(2, 1) * P("z2", 2);
    CHECK(lie_bracket(a, b).str() == VectorField::d_z(2, 1).str());

    Lcg rng(3);
    for (int c = 0; c < 10; ++c) {
        const VectorField v = random_field(rng, 2);
        CHECK(lie_bracket(v, v).is_zero());
        const VectorField w = random_field(rng, 2);
        const VectorField u = random_field(rng, 2);
        // Jacobi identity.
        const VectorField j1 = lie_bracket(u, lie_bracket(v, w));
        const VectorField j2 = lie_bracket(v, lie_bracket(w, u));
        const VectorField j3 = lie_bracket(w, lie_bracket(u, v));
        CHECK((j1 + j2 + j3).is_zero());
        // Antisymmetry.
        CHECK((lie_bracket(v, w) + lie_bracket(w, v)).is_zero());
    }
}

TEST_CASE("tangent bracket pairing reproduces the levi entry") {
    const Polynomial r = P("2*Re(z1) + abs2(z2)^2", 2);
    const VectorField l2 = graph_tangent_fields(r)[0];
    const Polynomial paired = pair_d_holo(r, lie_bracket(l2, l2.conjugated()));
    // dr([L2, conj L2]) equals the Hessian entry P_{z2 zbar2} = 4 z2 zbar2,
    // which is also the Levi matrix entry in this frame and (n = 2) the
    // normalized Levi determinant coefficient.
    CHECK(paired == P("4*z2*conj(z2)", 2));
    CHECK(paired == levi_matrix(r).entries[0][0]);
    CHECK(paired == levi_coefficients(r, 1)[0]);
}

TEST_CASE("graph tangent fields") {
    {
        const auto fields = graph_tangent_fields(P("2*Re(z1) + abs2(z2)^2", 2));
        REQUIRE(fields.size() == 1);
        CHECK(fields[0].holo[1] == P("1", 2));
        CHECK(fields[0].holo[0] == P("-2*z2*conj(z2)^2", 2));
    }
    {
        const auto fields = graph_tangent_fields(P("2*Re(z1)", 3));
        CHECK(fields[0].str() == VectorField::d_z(3, 2).str());
        CHECK(fields[1].str() == VectorField::d_z(3, 3).str());
    }
    {
        const Polynomial rp = P(kPaper, 3);
        const auto fields = graph_tangent_fields(rp);
        CHECK(fields[0].holo[0] == P("-2*z2*(conj(z2)^2 - conj(z3)^3)", 3));
        CHECK(fields[1].holo[0] == P("3*z3^2*(conj(z2)^2 - conj(z3)^3)", 3));
        for (const VectorField& l : fields) CHECK(l.apply(rp).is_zero());
    }
    CHECK_THROWS_AS(graph_tangent_fields(P("2*Re(z1) + abs2(z1) + abs2(z2)", 2)),
                    precondition_error);
    CHECK_THROWS_AS(graph_tangent_fields(P("4*Re(z1) + abs2(z2)", 2)), precondition_error);
}

TEST_CASE("list evaluation") {
    const Polynomial r = P("2*Re(z1) + abs2(z2)^2", 2);
    const VectorField l2 = graph_tangent_fields(r)[0];
    const VectorField lb2 = l2.conjugated();

    // Repeated last entries give a vanishing bracket.
    CHECK(list_eval({l2, l2, l2}, r).is_zero());
    CHECK(list_eval({lb2, lb2, lb2}, r).is_zero());

    // Minimal nonvanishing list has length 4 and constant value 4.
    CHECK(list_eval({l2, lb2, l2, lb2}, r) == P("4", 2));

    // Every length-3 list over {L2, conj L2} vanishes at the origin.
    const std::vector<Scalar> zero = origin(2);
    const VectorField* fields[2] = {&l2, &lb2};
    for (int mask = 0; mask < 8; ++mask) {
        const std::vector<VectorField> lst{*fields[(mask >> 2) & 1], *fields[(mask >> 1) & 1],
                                           *fields[mask & 1]};
        CHECK(list_eval(lst, r).eval(zero).is_zero());
    }

    CHECK_THROWS_AS(list_eval({l2, lb2}, r), precondition_error);
}

TEST_CASE("list specs: ordered and admissible predicates") {
    ListSpec ordered;
    ordered.symbols = {{3, false}, {3, true}, {2, false}};
    CHECK(ordered.is_ordered());
    CHECK(ordered.count(3) == 2);
    CHECK(ordered.count(2) == 1);
    ListSpec unordered;
    unordered.symbols = {{2, false}, {3, false}, {3, true}};
    CHECK_FALSE(unordered.is_ordered());

    const std::vector<QExt> priors{QExt(4)};
    CHECK(is_nu_admissible(ordered, 3, 2, priors));       // 1/4 < 1 and l_3 > 0
    ListSpec no_new;
    no_new.symbols = {{2, false}, {2, true}, {2, false}};
    CHECK_FALSE(is_nu_admissible(no_new, 3, 2, priors)); // l_3 = 0
    ListSpec heavy;
    heavy.symbols = {{3, false}, {2, false}, {2, true}, {2, false}, {2, true}};
    CHECK_FALSE(is_nu_admissible(heavy, 3, 2, priors)); // 4/4 = 1 not < 1
}

TEST_CASE("c_of_list solves the reciprocal equation") {
    CHECK(c_of_list({}, {}, 4) == QExt(4));
    CHECK(c_of_list({2}, {QExt(4)}, 3) == QExt(6));
    CHECK(c_of_list({1, 0}, {QExt(4), QExt(6)}, 3) == QExt(4));
    CHECK_THROWS_AS(c_of_list({}, {}, 0), precondition_error);
    CHECK_THROWS_AS(c_of_list({4}, {QExt(4)}, 1), precondition_error);
}

TEST_CASE("kernel field ansatz") {
    {
        // No constraints: the whole tangent frame comes back.
        const Polynomial r = P(kPaper, 3);
        const auto basis = kernel_field_ansatz(r, AnsatzConstraints{}, 0);
        REQUIRE(basis.size() == 2);
        const auto frame = graph_tangent_fields(r);
        CHECK(basis[0].str() == frame[0].str());
        CHECK(basis[1].str() == frame[1].str());
    }
    {
        // Levi-block constraint against L2 kills the z2 direction exactly.
        const Polynomial r = P("2*Re(z1) + abs2(z2) + abs2(z3)^2", 3);
        AnsatzConstraints cons;
        cons.levi_frame = {graph_tangent_fields(r)[0]};
        const auto basis = kernel_field_ansatz(r, cons, 1);
        CHECK(!basis.empty());
        bool has_constant_l3 = false;
        for (const VectorField& b : basis) {
            CHECK(b.holo[1].is_zero());
            if (b.holo[2] == P("1", 3)) has_constant_l3 = true;
        }
        CHECK(has_constant_l3);
    }
}

TEST_CASE("commutator multitype on the models") {
    MultitypeOptions opts;
    {
        const auto res = commutator_multitype(P("2*Re(z1) + abs2(z2)", 2), origin(2), opts);
        CHECK(res.prefix.str() == "(1, 2)");
        CHECK(res.rank_p == 1);
        CHECK(res.status == MultitypeStatus::complete);
    }
    {
        const auto res = commutator_multitype(P("2*Re(z1) + abs2(z2)^2", 2), origin(2), opts);
        CHECK(res.prefix.str() == "(1, 4)");
        CHECK(res.rank_p == 0);
        CHECK(res.status == MultitypeStatus::complete);
    }
    {
        const auto res = commutator_multitype(P(kPaper, 3), origin(3), opts);
        CHECK(res.prefix.str() == "(1, 4, 6)");
        CHECK(res.rank_p == 0);
        CHECK(res.status == MultitypeStatus::complete);
        // The boundary system must reproduce its own data: L_k(r_k) != 0 at 0
        // and each chosen list evaluates to something nonzero.
        REQUIRE(res.system.functions.size() == 3);
        REQUIRE(res.system.fields.size() == 2);
        for (size_t k = 1; k < res.system.functions.size(); ++k) {
            const Scalar v =
                res.system.fields[k - 1].apply(res.system.functions[k]).eval(origin(3));
            CHECK(!v.is_zero());
        }
    }
    {
        // Degenerate cylinder: certified infinite tail.
        const auto res = commutator_multitype(P("2*Re(z1) + abs2(z2)", 3), origin(3), opts);
        CHECK(res.prefix.str() == "(1, 2, inf)");
        CHECK(res.status == MultitypeStatus::infinite_entries);
    }
    {
        // q = 2 stops the construction at nu = n - 1.
        MultitypeOptions o2;
        o2.q = 2;
        const auto res = commutator_multitype(P("2*Re(z1) + abs2(z2) + abs2(z3)", 3), origin(3), o2);
        CHECK(res.prefix.str() == "(1, 2)");
    }
    CHECK_THROWS_AS(commutator_multitype(P("2*Re(z1) + abs2(z2)", 2), {Scalar(1), Scalar(0)}, opts),
                    precondition_error);
    CHECK_THROWS_AS(commutator_multitype(P("abs2(z2) - 1 + 0*z1", 2), origin(2), opts),
                    precondition_error);
}

TEST_CASE("minimality: lists cheaper than c_nu all vanish") {
    MultitypeOptions opts;
    const auto res = commutator_multitype(P(kPaper, 3), origin(3), opts);
    REQUIRE(res.status == MultitypeStatus::complete);
    // Stage records carry every evaluated list; anything with c < the chosen
    // entry must have evaluated to zero at the point.
    for (const StageRecord& st : res.trace) {
        if (st.case_tag != 2) continue;
        QExt chosen_c = QExt::infinity();
        for (const auto& lr : st.lists)
            if (lr.chosen) chosen_c = lr.c_value;
        REQUIRE(chosen_c.is_finite());
        for (const auto& lr : st.lists)
            if (lr.c_value < chosen_c) CHECK(lr.value_at_point == "0");
    }
}

TEST_CASE("commutator multitype consistency invariants") {
    struct Case {
        const char* text;
        int n;
    };
    const Case cases[] = {
        {"2*Re(z1) + abs2(z2)", 2},
        {"2*Re(z1) + abs2(z2)^2", 2},
        {"2*Re(z1) + abs2(z2)^2 + abs2(z3)^3", 3},
        {kPaper, 3},
    };
    MultitypeOptions opts;
    for (const Case& c : cases) {
        const Polynomial r = P(c.text, c.n);
        const auto res = commutator_multitype(r, origin(c.n), opts);
        // The prefix is itself a valid weight under the default convention.
        Weight full = res.prefix;
        CHECK(is_admissible_weight(full).ok);
        // Entries equal to 2 count the Levi rank.
        int twos = 0;
        for (const QExt& e : res.prefix.entries)
            if (e == QExt(2)) ++twos;
        CHECK(twos == levi_rank_at(r, origin(c.n)));
        // The fixed-coordinate multitype bound never exceeds it (these models
        // are pseudoconvex, where the two notions agree).
        if (res.status == MultitypeStatus::complete) {
            const Weight mlb = multitype_lower_bound(r, QExt(static_cast<long>(r.degree())));
            CHECK(lex_compare(mlb, res.prefix) <= 0);
        }
    }
}

TEST_CASE("construction is insensitive to variable ordering") {
    // With the exponents swapped the commutator construction still picks its
    // own directions, while the fixed-coordinate weight bound is pinned to
    // nondecreasing entries in the given variable order and stays below.
    const Polynomial r = P("2*Re(z1) + abs2(z2)^3 + abs2(z3)^2", 3);
    MultitypeOptions opts;
    const auto res = commutator_multitype(r, origin(3), opts);
    CHECK(res.prefix.str() == "(1, 4, 6)");
    const Weight mlb = multitype_lower_bound(r, QExt(6));
    CHECK(mlb.str() == "(1, 4, 4)");
    CHECK(lex_compare(mlb, res.prefix) < 0);
}

TEST_CASE("longer minimal lists on the one-variable family") {
    MultitypeOptions opts;
    for (int m0 = 3; m0 <= 4; ++m0) {
        const Polynomial r = P("2*Re(z1) + abs2(z2)^" + std::to_string(m0), 2);
        const auto res = commutator_multitype(r, origin(2), opts);
        CHECK(res.prefix == Weight{{QExt(1), QExt(2L * m0)}});
    }
}

TEST_CASE("mixed-term pseudoconvex input: both routes give (1,4,4)") {
    // P = |z2|^4 + |z2 z3|^2 + |z3|^6 is plurisubharmonic, so the commutator
    // multitype equals the multitype; the c_3 = 4 entry comes from a genuinely
    // mixed list (two new-field symbols over the old bracket base).
    const Polynomial r = P("2*Re(z1) + abs2(z2)^2 + abs2(z2*z3) + abs2(z3)^3", 3);
    MultitypeOptions opts;
    const auto res = commutator_multitype(r, origin(3), opts);
    CHECK(res.prefix.str() == "(1, 4, 4)");
    CHECK(res.status == MultitypeStatus::complete);
    const Weight mlb = multitype_lower_bound(r, QExt(6));
    CHECK(mlb.str() == "(1, 4, 4)");
    CHECK(lex_compare(mlb, res.prefix) == 0);
}

TEST_CASE("non-diagonal flat direction: certified infinity, strict weight bound") {
    // P = |z2 + z3^2|^2 contains the curve z2 = -t^2, z3 = t; the kernel field
    // bracket bases all vanish identically, so the infinite tail is certified.
    // The fixed-coordinate weight bound stays strictly below, since reaching
    // (1, 2, inf) would need the holomorphic change w2 = z2 + z3^2.
    const Polynomial r = P("2*Re(z1) + abs2(z2 + z3^2)", 3);
    MultitypeOptions opts;
    const auto res = commutator_multitype(r, origin(3), opts);
    CHECK(res.prefix.str() == "(1, 2, inf)");
    CHECK(res.status == MultitypeStatus::infinite_entries);
    const Weight mlb = multitype_lower_bound(r, QExt(4));
    CHECK(mlb.str() == "(1, 2, 4)");
    CHECK(lex_compare(mlb, res.prefix) < 0);
    // The flat curve is found by the search as well.
    SearchBudget b;
    b.degree_bound = 2;
    b.coeff_set = {Scalar(1), Scalar(-1)};
    const TypeSearchResult ts = one_type_search(r, origin(3), b);
    CHECK(ts.bound.is_inf());
    CHECK(pullback(r, ts.witness).is_zero());
}

TEST_CASE("serial and parallel multitype agree") {
    MultitypeOptions s, p;
    s.mode = Exec::serial;
    p.mode = Exec::parallel;
    for (const char* text : {kPaper, "2*Re(z1) + abs2(z2)^2 + abs2(z3)^3"}) {
        const Polynomial r = P(text, 3);
        const auto a = commutator_multitype(r, origin(3), s);
        const auto b = commutator_multitype(r, origin(3), p);
        CHECK(a.prefix == b.prefix);
        CHECK(a.status == b.status);
        REQUIRE(a.system.functions.size() == b.system.functions.size());
        for (size_t i = 0; i < a.system.functions.size(); ++i)
            CHECK(a.system.functions[i] == b.system.functions[i]);
    }
}

TEST_CASE("choice independence across randomized reruns") {
    const SuiteResult res = ctype_choice_independence(25, 99);
    INFO(res.detail);
    CHECK(res.pass);
}
