#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "crgeo/catlin.hpp"
#include "crgeo/curves.hpp"
#include "crgeo/polynomial.hpp"
#include "crgeo/weights.hpp"

namespace crgeo {

enum class TSource { model, asserted, searched };

struct BoundReport {
    int n = 0;
    int q = 1;
    QExt t;
    TSource source = TSource::asserted;
    QExt roundup;    // ceil(t) when finite
    QExt levi_order; // vanishing order of the Levi determinant at the point
    QExt bound;      // (ceil(t) - 2)^(n-q) when t is finite
    std::string verdict;       // "holds" | "fails" | "inapplicable"
    std::string certification; // "verified" for model/asserted t, "consistent" for searched t
};

// Checks ord(Levi determinant) <= (ceil(t) - 2)^(n-q) at the point. With
// source == searched, t is obtained from the curve search (q = 1) or the
// embedding estimator (q > 1) and the report is marked "consistent" since a
// searched t is only a lower bound for the true type.
BoundReport main_bound_check(const Polynomial& r, int q, const std::vector<Scalar>& point,
                             TSource source, const QExt& t_value, const SearchBudget& budget,
                             int trials = 4, std::uint64_t seed = 1);

struct TruncationEntry {
    int k = 0;
    QExt searched_type;
    QExt levi_order;
    std::string verdict;
};

struct TruncationReport {
    std::string mode; // "assert" for finite t, "informational" for infinite t
    bool pass = true;
    QExt baseline_type;
    QExt baseline_order;
    std::string baseline_verdict;
    std::vector<TruncationEntry> entries;
};

// For each k from ceil(t) to deg(r), truncates the recentered defining
// function at degree k, re-runs the type search with the same budgets, and
// compares the searched type and bound verdict against the untruncated
// baseline. Finite t asserts equality; infinite t only reports the drift.
TruncationReport truncation_invariance_check(const Polynomial& r, int q,
                                             const std::vector<Scalar>& point, const QExt& t,
                                             const SearchBudget& budget);

struct ChoiceIndependenceReport {
    bool pass = false;
    Weight common;
    MultitypeStatus status = MultitypeStatus::complete;
    std::vector<Weight> runs;
};

// Reruns the commutator-multitype construction with randomized tie-breaking
// and asserts the weight prefix never changes.
ChoiceIndependenceReport choice_independence_check(const Polynomial& r, int q,
                                                   const std::vector<Scalar>& point, int trials,
                                                   std::uint64_t seed);

struct ScanSample {
    std::vector<Scalar> point;
    bool ok = false;
    std::string error;
    Weight ctype;
    MultitypeStatus status = MultitypeStatus::complete;
    QExt levi_order;
};

struct ScanReport {
    int samples = 0;
    std::uint64_t seed = 0;
    Weight base_ctype; // commutator multitype at the origin
    std::vector<ScanSample> entries;
    bool has_min = false;
    Weight lex_min;
    std::vector<Scalar> min_point;
    bool min_is_one_two = false; // lex min equals (1, 2, ..., 2)
    QExt levi_order_at_min;
    bool semicontinuity_ok = true; // every sampled prefix <= the base prefix
};

// Samples exact rational boundary points near the origin (by solving
// 2 Re z1 = -P for seeded rational draws of the remaining coordinates),
// computes the commutator multitype prefix at each, and reports the
// lexicographic minimum together with the Levi order there.
ScanReport lowest_stratum_scan(const Polynomial& r, int q, int samples, std::uint64_t seed,
                               const MultitypeOptions& opts);

} // namespace crgeo
