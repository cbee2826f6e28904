#pragma once

#include <map>
#include <utility>
#include <vector>

#include "crgeo/polynomial.hpp"
#include "crgeo/vector_field.hpp"

namespace crgeo {

// Basis slot dz_{i1}^..^dz_{ip} ^ dzbar_{j1}^..^dzbar_{jq} of a (p,q)-form;
// both index tuples strictly increasing and 1-based, holomorphic block first.
struct FormIndex {
    std::vector<int> holo;
    std::vector<int> anti;
    bool operator==(const FormIndex&) const = default;
    std::string str() const;
};

struct FormIndexOrder {
    bool operator()(const FormIndex& a, const FormIndex& b) const {
        if (a.holo != b.holo) return a.holo < b.holo;
        return a.anti < b.anti;
    }
};

// Exact (p,q)-differential form with Hermitian-polynomial coefficients. The
// orientation convention is anchored by d_holo(d_antiholo(z2*zbar2)) == dz2^dzbar2.
class Form {
public:
    using CoeffMap = std::map<FormIndex, Polynomial, FormIndexOrder>;

    Form(int n, int p, int q) : n_(n), p_(p), q_(q) {}
    static Form from_function(const Polynomial& f);

    int n() const { return n_; }
    int degree_holo() const { return p_; }
    int degree_anti() const { return q_; }
    bool is_zero() const { return coeffs_.empty(); }
    const CoeffMap& coefficients() const { return coeffs_; }
    Polynomial coefficient(const FormIndex& ix) const;

    void add(const FormIndex& ix, const Polynomial& c);

    Form operator+(const Form& o) const;
    Form operator*(const Scalar& c) const;
    bool operator==(const Form& o) const {
        return n_ == o.n_ && p_ == o.p_ && q_ == o.q_ && coeffs_ == o.coeffs_;
    }

    Form d_holo() const;     // exterior d in the holomorphic directions
    Form d_antiholo() const; // exterior d in the antiholomorphic directions
    Form wedge(const Form& o) const;
    Form wedge_pow(int k) const; // k-fold wedge with itself, k >= 1

private:
    int n_, p_, q_;
    CoeffMap coeffs_;
};

// All basis slots of a (p,q)-form in dimension n, canonical order.
std::vector<FormIndex> all_form_indices(int n, int p, int q);

// The normalized Levi-determinant form dr ^ dbar r ^ (d dbar r)^{n-q},
// scaled by -1/(n-q)! so that the model 2 Re z1 + sum |z_j|^2 has coefficient
// exactly 1. Requires real-valued r and 1 <= q <= n-1.
Form levi_determinant_form(const Polynomial& r, int q);

// Coefficients of the normalized Levi-determinant form in every canonical
// (n-q+1, n-q+1) slot (zeros included); for q = 1 the list has one entry.
std::vector<Polynomial> levi_coefficients(const Polynomial& r, int q);

// Minimum vanishing order at `point` over all Levi-determinant coefficients;
// infinity iff every coefficient is identically zero after recentering.
QExt levi_vanishing_order(const Polynomial& r, int q, const std::vector<Scalar>& point);

// Independent oracle for the q = 1 coefficient: determinant of the complex
// Hessian bordered by the gradient row/column and a zero corner, expanded by
// exact cofactors.
Polynomial bordered_hessian_det(const Polynomial& r);

// Levi matrix in a polynomial tangent frame valid wherever dr/dz1 != 0.
struct LeviMatrix {
    std::vector<VectorField> frame;               // L_2..L_n
    std::vector<std::vector<Polynomial>> entries; // entries[i][j] = d dbar r (L_i, conj L_j)
};
LeviMatrix levi_matrix(const Polynomial& r);

// Rank of the Levi form restricted to the tangent frame at a boundary point;
// kernel dimension is n - 1 - rank. Requires r(point) == 0 and dr/dz1 != 0 there.
int levi_rank_at(const Polynomial& r, const std::vector<Scalar>& point);
int levi_kernel_dim(const Polynomial& r, const std::vector<Scalar>& point);

} // namespace crgeo
