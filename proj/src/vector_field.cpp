#include "crgeo/vector_field.hpp"

#include "crgeo/errors.hpp"

namespace crgeo {

VectorField::VectorField(int n)
    : n(n), holo(static_cast<size_t>(n), Polynomial(n)), anti(static_cast<size_t>(n), Polynomial(n)) {}

VectorField VectorField::d_z(int n, int j) {
    VectorField v(n);
    v.holo[j - 1] = Polynomial::constant(n, Scalar(1));
    return v;
}

VectorField VectorField::d_zbar(int n, int j) {
    VectorField v(n);
    v.anti[j - 1] = Polynomial::constant(n, Scalar(1));
    return v;
}

bool VectorField::is_zero() const {
    for (const auto& p : holo)
        if (!p.is_zero()) return false;
    for (const auto& p : anti)
        if (!p.is_zero()) return false;
    return true;
}

bool VectorField::is_type10() const {
    for (const auto& p : anti)
        if (!p.is_zero()) return false;
    return true;
}

VectorField VectorField::conjugated() const {
    VectorField v(n);
    for (int j = 0; j < n; ++j) {
        v.holo[j] = anti[j].conjugated();
        v.anti[j] = holo[j].conjugated();
    }
    return v;
}

VectorField VectorField::operator+(const VectorField& o) const {
    VectorField v(n);
    for (int j = 0; j < n; ++j) {
        v.holo[j] = holo[j] + o.holo[j];
        v.anti[j] = anti[j] + o.anti[j];
    }
    return v;
}

VectorField VectorField::operator-(const VectorField& o) const {
    VectorField v(n);
    for (int j = 0; j < n; ++j) {
        v.holo[j] = holo[j] - o.holo[j];
        v.anti[j] = anti[j] - o.anti[j];
    }
    return v;
}

VectorField VectorField::operator*(const Polynomial& f) const {
    VectorField v(n);
    for (int j = 0; j < n; ++j) {
        v.holo[j] = holo[j] * f;
        v.anti[j] = anti[j] * f;
    }
    return v;
}

VectorField VectorField::operator*(const Scalar& c) const {
    VectorField v(n);
    for (int j = 0; j < n; ++j) {
        v.holo[j] = holo[j] * c;
        v.anti[j] = anti[j] * c;
    }
    return v;
}

Polynomial VectorField::apply(const Polynomial& f) const {
    Polynomial out(n);
    for (int j = 0; j < n; ++j) {
        if (!holo[j].is_zero()) out += holo[j] * f.derivative(j + 1, false);
        if (!anti[j].is_zero()) out += anti[j] * f.derivative(j + 1, true);
    }
    return out;
}

std::vector<Scalar> VectorField::holo_values_at(const std::vector<Scalar>& point) const {
    std::vector<Scalar> v;
    v.reserve(holo.size());
    for (const auto& p : holo) v.push_back(p.eval(point));
    return v;
}

std::string VectorField::str() const {
    std::string out;
    auto add = [&](const Polynomial& c, const std::string& dir) {
        if (c.is_zero()) return;
        if (!out.empty()) out += " + ";
        out += "(" + c.str() + ")*" + dir;
    };
    for (int j = 0; j < n; ++j) add(holo[j], "d/dz" + std::to_string(j + 1));
    for (int j = 0; j < n; ++j) add(anti[j], "d/dzbar" + std::to_string(j + 1));
    return out.empty() ? "0" : out;
}

VectorField lie_bracket(const VectorField& v, const VectorField& w) {
    if (v.n != w.n) throw precondition_error("lie_bracket: dimension mismatch");
    VectorField out(v.n);
    for (int j = 0; j < v.n; ++j) {
        out.holo[j] = v.apply(w.holo[j]) - w.apply(v.holo[j]);
        out.anti[j] = v.apply(w.anti[j]) - w.apply(v.anti[j]);
    }
    return out;
}

Polynomial pair_d_holo(const Polynomial& r, const VectorField& v) {
    Polynomial out(r.n());
    for (int j = 0; j < r.n(); ++j) {
        if (!v.holo[j].is_zero()) out += r.derivative(j + 1, false) * v.holo[j];
    }
    return out;
}

Polynomial graph_part(const Polynomial& r) {
    const int n = r.n();
    return r - Polynomial::variable(n, 1) - Polynomial::conj_variable(n, 1);
}

bool is_rigid_graph_form(const Polynomial& r, std::string* why) {
    const int n = r.n();
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (n < 2) return fail("dimension must be at least 2");
    if (!r.is_real_valued()) return fail("defining function is not real-valued");
    Monomial z1{std::vector<int>(n, 0), std::vector<int>(n, 0)};
    z1.alpha[0] = 1;
    Monomial zb1 = z1.conjugated();
    if (!(r.coefficient(z1) == Scalar(1)) || !(r.coefficient(zb1) == Scalar(1)))
        return fail("expected the z1-part to be exactly z1 + conj(z1)");
    for (const auto& [m, c] : r.terms()) {
        if (m == z1 || m == zb1) continue;
        if (m.alpha[0] != 0 || m.beta[0] != 0)
            return fail("found a z1-dependent term beyond 2*Re(z1); change coordinates to "
                        "rigid graph form 2*Re(z1) + P(z2..zn)");
    }
    return true;
}

std::vector<VectorField> graph_tangent_fields(const Polynomial& r) {
    std::string why;
    if (!is_rigid_graph_form(r, &why)) throw precondition_error("graph_tangent_fields: " + why);
    const int n = r.n();
    std::vector<VectorField> fields;
    fields.reserve(static_cast<size_t>(n) - 1);
    for (int j = 2; j <= n; ++j) {
        VectorField l(n);
        l.holo[j - 1] = Polynomial::constant(n, Scalar(1));
        l.holo[0] = -r.derivative(j, false);
        fields.push_back(std::move(l));
    }
    return fields;
}

} // namespace crgeo
