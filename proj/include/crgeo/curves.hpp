#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "crgeo/polynomial.hpp"

namespace crgeo {

// Execution mode for the enumeration kernels. The serial path is the
// reference implementation; the parallel path must produce bit-identical
// results and is checked against it in the tests.
enum class Exec { serial, parallel };

// Jet of a holomorphic curve t -> basepoint + (phi_1(t), ..., phi_m(t)) with
// exact coefficients; phi_j(0) = 0 for every component.
struct CurveJet {
    int m = 0;
    // comps[j][k] is the coefficient of t^k in component j+1; index 0 stays zero.
    std::vector<std::vector<Scalar>> comps;
    std::vector<Scalar> basepoint;

    static CurveJet at_point(int m, std::vector<Scalar> basepoint);

    bool is_constant() const;
    // Minimum over components of the lowest nonzero power; infinity for a
    // constant jet.
    QExt ord0() const;
    std::string str() const;
};

// Exact pullback r(basepoint + phi(t)); a Hermitian polynomial in one
// variable (t plays the role of z_1).
Polynomial pullback(const Polynomial& r, const CurveJet& phi);

// ord_0 phi^* r / ord_0 phi; infinity when the pullback vanishes identically
// (the curve sits inside {r = 0}). Rejects constant curves.
QExt contact_ratio(const Polynomial& r, const CurveJet& phi);

struct SearchBudget {
    int degree_bound = 3;
    int support_bound = 1;
    std::vector<Scalar> coeff_set = default_coeff_set();
    Exec mode = Exec::parallel;

    static std::vector<Scalar> default_coeff_set();
};

struct TypeSearchResult {
    QExt bound;       // certified lower bound for the 1-type (or infinity)
    CurveJet witness; // first curve attaining the bound in enumeration order
    std::uint64_t curves_tried = 0;
};

// Maximizes contact_ratio over all curve jets through `point` whose
// components have degree <= degree_bound, at most support_bound nonzero
// terms, and coefficients drawn from coeff_set.
TypeSearchResult one_type_search(const Polynomial& r, const std::vector<Scalar>& point,
                                 const SearchBudget& budget);

// Full-column-rank n x m matrix describing a linear embedding C^m -> C^n.
struct LinearEmbedding {
    std::vector<std::vector<Scalar>> matrix; // n rows, m columns
    int rows() const { return static_cast<int>(matrix.size()); }
    int cols() const { return matrix.empty() ? 0 : static_cast<int>(matrix[0].size()); }
    bool full_column_rank() const;
    std::string str() const;
};

// r(point + M w) as a polynomial in w_1..w_m.
Polynomial pullback_linear(const Polynomial& r, const LinearEmbedding& emb,
                           const std::vector<Scalar>& point);

struct QTypeTrial {
    LinearEmbedding embedding;
    QExt bound;
    CurveJet witness;
};

struct QTypeResult {
    QExt estimate; // minimum of the per-embedding searched lower bounds
    std::vector<QTypeTrial> trials;
};

// Heuristic estimator of the q-type: draws `trials` seeded pseudo-random
// full-rank embeddings with entries from the grid {-2..2} + i{-2..2}, pulls r
// back, and runs the curve search on each, additionally probing the lines
// spanned by generalized cross products of row subsets (the directions where
// prescribed rows vanish). Exact on the diagonal model families; neither a
// certified upper nor lower bound in general.
QTypeResult q_type_estimate(const Polynomial& r, int q, const std::vector<Scalar>& point,
                            int trials, std::uint64_t seed, const SearchBudget& budget);

} // namespace crgeo
