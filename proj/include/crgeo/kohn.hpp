#pragma once

#include <string>
#include <vector>

#include "crgeo/curves.hpp"
#include "crgeo/polynomial.hpp"
#include "crgeo/qext.hpp"

namespace crgeo {

enum class GeneratorKind { defining, levi_coefficient, wedge_coefficient, radical_member };

struct GeneratorProvenance {
    GeneratorKind kind = GeneratorKind::defining;
    int step = 1;
    std::vector<int> tuple; // generator indices wedged in an A^q_k coefficient
    int j = 0;              // number of gradient factors in that wedge
    std::string str() const;
};

struct Generator {
    Polynomial poly;
    GeneratorProvenance prov;
};

// Generator list of the multiplier ideal at one step of the pre-radical Kohn
// algorithm. The list only ever grows; duplicates are pruned up to nonzero
// scalar multiples (no ideal-membership reduction).
struct MultiplierGenerators {
    int step = 1;
    int q = 1;
    std::vector<Generator> gens;
};

// Step 1: the defining function together with every Levi-determinant
// coefficient (real radical deliberately not applied).
MultiplierGenerators step1(const Polynomial& r, int q);

// Step k+1: coefficients of d f_1 ^ ... ^ d f_j ^ dr ^ dbar r ^ (d dbar r)^{n-q-j}
// over all tuples of current generators with 1 <= j <= j_max <= n-q.
MultiplierGenerators step_next(const MultiplierGenerators& gens, const Polynomial& r, int j_max,
                               Exec mode = Exec::parallel);

// Closure hook standing in for the real radical, which has no general
// algorithm here: a user-supplied member g joins the generators only with a
// divisibility certificate (g conj g)^m == h * (f conj f) against an existing
// generator f, which makes |g|^m <= C |f| hold near the point for a suitable
// constant.
struct RadicalWitness {
    Polynomial g;
    int m = 1;
    int f_index = 0;
};

// Verifies each witness exactly and appends the accepted members; rejects the
// batch with a precondition error when any certificate fails.
MultiplierGenerators apply_radical_hook(const MultiplierGenerators& gens,
                                        const std::vector<RadicalWitness>& witnesses);

struct UnitWitness {
    bool found = false;
    int index = -1;
    Scalar value;
};

// True iff some generator takes a nonzero value at the point.
UnitWitness contains_unit_at(const MultiplierGenerators& gens, const std::vector<Scalar>& point);

struct KohnStepReport {
    int step = 1;
    int generator_count = 0;
    // Effectiveness proxy: minimum vanishing order at the point over the
    // generators other than the defining function (which vanishes on the
    // whole hypersurface and says nothing).
    QExt min_order_excluding_r;
    bool terminated = false;
    int witness_index = -1;
};

struct KohnRunReport {
    bool terminated = false;
    std::vector<KohnStepReport> steps;
    MultiplierGenerators final_generators;
};

// Iterates step_next until a unit is captured at the point or max_steps is
// reached; j_max = 0 means the full n-q.
KohnRunReport kohn_run(const Polynomial& r, int q, const std::vector<Scalar>& point, int max_steps,
                       int j_max = 0, Exec mode = Exec::parallel);

} // namespace crgeo
