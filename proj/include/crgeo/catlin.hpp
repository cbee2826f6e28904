#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "crgeo/curves.hpp"
#include "crgeo/polynomial.hpp"
#include "crgeo/qext.hpp"
#include "crgeo/vector_field.hpp"
#include "crgeo/weights.hpp"

namespace crgeo {

// Derivation list over the special fields of a boundary system plus one new
// kernel field. Symbols are outermost-first; symbol (stage, conj) refers to
// L_stage or its conjugate, where stage == nu denotes the new field.
struct ListSpec {
    std::vector<std::pair<int, bool>> symbols;

    int length() const { return static_cast<int>(symbols.size()); }
    // Occurrences of L_stage plus conj(L_stage).
    int count(int stage) const;
    // Ordered: stages are nonincreasing left to right (new field outermost,
    // oldest fields innermost, no interleaving).
    bool is_ordered() const;
    std::string str() const;
};

// nu-admissibility against the prior entries c_{p+2}..c_{nu-1}: the new field
// occurs at least once and sum l_i / c_i < 1 over the prior stages.
bool is_nu_admissible(const ListSpec& list, int nu, int first_stage,
                      const std::vector<QExt>& priors);

// Unique positive solution c of sum counts_old[i]/priors[i] + l_nu/c = 1.
// Rejects inadmissible data (l_nu <= 0 or prior load >= 1).
QExt c_of_list(const std::vector<long>& counts_old, const std::vector<QExt>& priors, long l_nu);

// L^1 ... L^{l-2} dr([L^{l-1}, L^l]) for bound fields given outermost-first;
// requires at least three entries.
Polynomial list_eval(const std::vector<VectorField>& bound_fields, const Polynomial& r);

// Constraints defining the kernel bundle at the current stage: the Levi
// pairing against each frame field's conjugate must vanish identically, and
// the field must annihilate each previously constructed function.
struct AnsatzConstraints {
    std::vector<VectorField> levi_frame;
    std::vector<Polynomial> functions;
};

// Candidate (1,0) fields L = sum_j a_j L_j with polynomial coefficients of
// degree <= ansatz_degree solving the constraints exactly, L_j the graph
// tangent frame. Returns a kernel basis of the coefficient solve.
std::vector<VectorField> kernel_field_ansatz(const Polynomial& r, const AnsatzConstraints& cons,
                                             int ansatz_degree);

struct BoundarySystem {
    int rank_p = 0;
    // r_1 followed by r_{p+2}, ..., r_nu.
    std::vector<Polynomial> functions;
    // L_2, ..., L_{p+1} (frame block), then L_{p+2}, ..., L_nu (list fields).
    std::vector<VectorField> fields;
    std::vector<ListSpec> chosen_lists; // one per list stage
};

struct ListCandidateRecord {
    std::string encoding;
    std::vector<long> counts; // l_{p+2}..l_nu
    QExt c_value;
    std::string value_at_point;
    int field_index = 0;
    bool chosen = false;
};

struct StageRecord {
    int nu = 0;
    int case_tag = 0; // 0 rank stage, 1 all lists vanish, 2 minimal list found
    std::vector<std::string> candidate_fields;
    std::vector<ListCandidateRecord> lists;
    std::string chosen_field;
    std::string r_nu;
    std::string xy_choice; // which of Xf, Xg, Yf, Yg fired
    std::string note;
};

enum class MultitypeStatus { complete, infinite_entries, inconclusive };

struct MultitypeOptions {
    int q = 1;
    int length_cap = 0;   // 0 means deg(r)
    int ansatz_degree = 2;
    bool randomize = false; // randomized tie-breaking (for choice-independence checks)
    std::uint64_t seed = 0;
    Exec mode = Exec::parallel;
};

struct MultitypeResult {
    Weight prefix; // c_1 .. c_{n+1-q} (shorter when inconclusive)
    int rank_p = 0;
    MultitypeStatus status = MultitypeStatus::complete;
    BoundarySystem system;
    std::vector<StageRecord> trace;
};

// Catlin construction at a boundary point of a rigid graph-form hypersurface:
// c_1 = 1, Levi-rank block of 2s, then stagewise minimal derivation lists
// over kernel-field candidates. Infinite entries are emitted only when every
// admissible bracket base polynomial vanishes identically; budget exhaustion
// is reported as an inconclusive status instead.
MultitypeResult commutator_multitype(const Polynomial& r, const std::vector<Scalar>& point,
                                     const MultitypeOptions& opts);

} // namespace crgeo
