#pragma once

#include <string>
#include <vector>

#include "crgeo/polynomial.hpp"

namespace crgeo {

// First-order differential operator sum_j holo[j] d/dz_j + sum_j anti[j] d/dzbar_j
// with exact polynomial coefficients.
struct VectorField {
    int n;
    std::vector<Polynomial> holo;
    std::vector<Polynomial> anti;

    explicit VectorField(int n);
    static VectorField d_z(int n, int j);    // d/dz_j, 1-based
    static VectorField d_zbar(int n, int j); // d/dzbar_j

    bool is_zero() const;
    bool is_type10() const; // purely (1,0): all anti coefficients vanish

    VectorField conjugated() const;
    VectorField operator+(const VectorField& o) const;
    VectorField operator-(const VectorField& o) const;
    VectorField operator*(const Polynomial& f) const;
    VectorField operator*(const Scalar& c) const;

    // Derivation action on a polynomial.
    Polynomial apply(const Polynomial& f) const;

    // Values of the (1,0) coefficients at a point (z = point, zbar = conj).
    std::vector<Scalar> holo_values_at(const std::vector<Scalar>& point) const;

    std::string str() const;
};

// Exact commutator [V, W] = V W - W V as a first-order operator.
VectorField lie_bracket(const VectorField& v, const VectorField& w);

// Pairing of the (1,0)-form dr (holomorphic differential of r) with the (1,0)
// part of a vector field: sum_k r_{z_k} * holo_k.
Polynomial pair_d_holo(const Polynomial& r, const VectorField& v);

// P in the decomposition r = 2 Re z_1 + P(z', zbar'); only valid on rigid
// graph-form input.
Polynomial graph_part(const Polynomial& r);

// A defining function is in rigid graph form when its z_1-dependence is
// exactly the term z_1 + zbar_1 (so dr/dz_1 == 1 identically). `why` receives
// a diagnostic when the check fails.
bool is_rigid_graph_form(const Polynomial& r, std::string* why = nullptr);

// Tangent frame L_j = d/dz_j - P_{z_j} d/dz_1 for j = 2..n; every returned
// field annihilates r identically. Rejects non-graph-form input.
std::vector<VectorField> graph_tangent_fields(const Polynomial& r);

} // namespace crgeo
