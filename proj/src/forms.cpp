#include "crgeo/forms.hpp"

#include <algorithm>

#include "crgeo/errors.hpp"
#include "crgeo/linalg.hpp"

namespace crgeo {

namespace {

// Merge two strictly increasing tuples; false on a common index. `sign`
// receives the parity of the interleaving permutation.
bool merge_tuples(const std::vector<int>& a, const std::vector<int>& b, std::vector<int>& out,
                  int& sign) {
    out.clear();
    out.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    long inversions = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) return false;
        if (a[i] < b[j]) {
            out.push_back(a[i++]);
        } else {
            // b[j] moves left past the remaining elements of a.
            inversions += static_cast<long>(a.size() - i);
            out.push_back(b[j++]);
        }
    }
    while (i < a.size()) out.push_back(a[i++]);
    while (j < b.size()) out.push_back(b[j++]);
    sign = (inversions % 2 == 0) ? 1 : -1;
    return true;
}

// Sign of inserting index k into the increasing tuple t; false if present.
bool insert_index(const std::vector<int>& t, int k, std::vector<int>& out, int& sign) {
    int before = 0;
    for (int x : t) {
        if (x == k) return false;
        if (x < k) ++before;
    }
    out = t;
    out.insert(out.begin() + before, k);
    sign = (before % 2 == 0) ? 1 : -1;
    return true;
}

void increasing_tuples(int n, int k, int start, std::vector<int>& cur,
                       std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == k) {
        out.push_back(cur);
        return;
    }
    for (int v = start; v <= n; ++v) {
        cur.push_back(v);
        increasing_tuples(n, k, v + 1, cur, out);
        cur.pop_back();
    }
}

long factorial(int k) {
    long f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

} // namespace

std::string FormIndex::str() const {
    std::string s;
    for (int i : holo) s += "dz" + std::to_string(i) + "^";
    for (int j : anti) s += "dzb" + std::to_string(j) + "^";
    if (!s.empty()) s.pop_back();
    return s;
}

Form Form::from_function(const Polynomial& f) {
    Form w(f.n(), 0, 0);
    w.add(FormIndex{}, f);
    return w;
}

Polynomial Form::coefficient(const FormIndex& ix) const {
    auto it = coeffs_.find(ix);
    return it == coeffs_.end() ? Polynomial(n_) : it->second;
}

void Form::add(const FormIndex& ix, const Polynomial& c) {
    if (c.is_zero()) return;
    auto it = coeffs_.find(ix);
    if (it == coeffs_.end()) {
        coeffs_.emplace(ix, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) coeffs_.erase(it);
    }
}

Form Form::operator+(const Form& o) const {
    Form w = *this;
    for (const auto& [ix, c] : o.coeffs_) w.add(ix, c);
    return w;
}

Form Form::operator*(const Scalar& c) const {
    Form w(n_, p_, q_);
    if (c.is_zero()) return w;
    for (const auto& [ix, f] : coeffs_) w.add(ix, f * c);
    return w;
}

Form Form::d_holo() const {
    Form w(n_, p_ + 1, q_);
    for (const auto& [ix, f] : coeffs_) {
        for (int k = 1; k <= n_; ++k) {
            Polynomial df = f.derivative(k, false);
            if (df.is_zero()) continue;
            std::vector<int> holo;
            int sign;
            if (!insert_index(ix.holo, k, holo, sign)) continue;
            w.add(FormIndex{holo, ix.anti}, sign > 0 ? df : -df);
        }
    }
    return w;
}

Form Form::d_antiholo() const {
    Form w(n_, p_, q_ + 1);
    const int cross = (p_ % 2 == 0) ? 1 : -1; // dzbar_k crosses the holomorphic block
    for (const auto& [ix, f] : coeffs_) {
        for (int k = 1; k <= n_; ++k) {
            Polynomial df = f.derivative(k, true);
            if (df.is_zero()) continue;
            std::vector<int> anti;
            int sign;
            if (!insert_index(ix.anti, k, anti, sign)) continue;
            sign *= cross;
            w.add(FormIndex{ix.holo, anti}, sign > 0 ? df : -df);
        }
    }
    return w;
}

Form Form::wedge(const Form& o) const {
    if (n_ != o.n_) throw precondition_error("wedge: dimension mismatch");
    Form w(n_, p_ + o.p_, q_ + o.q_);
    if (w.p_ > n_ || w.q_ > n_) return w;
    // dz-block of o crosses the dzbar-block of *this.
    const int block = (q_ * o.p_ % 2 == 0) ? 1 : -1;
    for (const auto& [ixa, fa] : coeffs_) {
        for (const auto& [ixb, fb] : o.coeffs_) {
            std::vector<int> holo, anti;
            int sh, sa;
            if (!merge_tuples(ixa.holo, ixb.holo, holo, sh)) continue;
            if (!merge_tuples(ixa.anti, ixb.anti, anti, sa)) continue;
            const int sign = block * sh * sa;
            Polynomial c = fa * fb;
            w.add(FormIndex{holo, anti}, sign > 0 ? c : -c);
        }
    }
    return w;
}

Form Form::wedge_pow(int k) const {
    if (k < 1) throw precondition_error("wedge_pow: k must be >= 1");
    Form w = *this;
    for (int i = 1; i < k; ++i) w = w.wedge(*this);
    return w;
}

std::vector<FormIndex> all_form_indices(int n, int p, int q) {
    std::vector<std::vector<int>> holos, antis;
    std::vector<int> cur;
    increasing_tuples(n, p, 1, cur, holos);
    increasing_tuples(n, q, 1, cur, antis);
    std::vector<FormIndex> out;
    out.reserve(holos.size() * antis.size());
    for (const auto& h : holos)
        for (const auto& a : antis) out.push_back(FormIndex{h, a});
    return out;
}

Form levi_determinant_form(const Polynomial& r, int q) {
    const int n = r.n();
    if (!r.is_real_valued()) throw precondition_error("levi: defining function must be real-valued");
    if (q < 1 || q > n - 1) throw precondition_error("levi: q must satisfy 1 <= q <= n-1");
    const Form r0 = Form::from_function(r);
    const Form dr = r0.d_holo();
    const Form dbr = r0.d_antiholo();
    const Form ddbr = dbr.d_holo(); // d dbar r with the fixed orientation anchor
    Form w = dr.wedge(dbr).wedge(ddbr.wedge_pow(n - q));
    // Normalization: the strictly pseudoconvex model gets coefficient +1 in
    // every dimension. Reordering the k+1 interleaved dz^dzbar pairs into the
    // holomorphic-first basis contributes the parity of (k+1)k/2 swaps.
    const int k = n - q;
    const long sgn = (static_cast<long>(k) * (k + 1) / 2) % 2 == 0 ? 1 : -1;
    return w * Scalar(mpq_class(sgn, factorial(k)));
}

std::vector<Polynomial> levi_coefficients(const Polynomial& r, int q) {
    const Form w = levi_determinant_form(r, q);
    const int k = r.n() - q + 1;
    std::vector<Polynomial> out;
    for (const FormIndex& ix : all_form_indices(r.n(), k, k)) out.push_back(w.coefficient(ix));
    return out;
}

QExt levi_vanishing_order(const Polynomial& r, int q, const std::vector<Scalar>& point) {
    QExt best = QExt::infinity();
    for (const Polynomial& c : levi_coefficients(r, q)) {
        QExt o = c.vanishing_order(point);
        if (o < best) best = o;
    }
    return best;
}

Polynomial bordered_hessian_det(const Polynomial& r) {
    if (!r.is_real_valued())
        throw precondition_error("bordered_hessian_det: defining function must be real-valued");
    const int n = r.n();
    std::vector<std::vector<Polynomial>> m(n + 1, std::vector<Polynomial>(n + 1, Polynomial(n)));
    for (int j = 1; j <= n; ++j) {
        m[0][j] = r.derivative(j, true);  // row dbar r
        m[j][0] = r.derivative(j, false); // column dr
        for (int k = 1; k <= n; ++k) m[j][k] = r.derivative(j, false).derivative(k, true);
    }
    // Cofactor expansion along the first row; sizes stay small (n+1 <= 10).
    std::vector<int> rows(n + 1), cols(n + 1);
    for (int i = 0; i <= n; ++i) rows[i] = cols[i] = i;
    auto det = [&](auto&& self, std::vector<int> rs, std::vector<int> cs) -> Polynomial {
        const size_t k = rs.size();
        if (k == 1) return m[rs[0]][cs[0]];
        Polynomial acc(n);
        for (size_t j = 0; j < k; ++j) {
            const Polynomial& e = m[rs[0]][cs[j]];
            if (e.is_zero()) continue;
            std::vector<int> sub;
            for (size_t t = 0; t < k; ++t)
                if (t != j) sub.push_back(cs[t]);
            Polynomial minor = self(self, std::vector<int>(rs.begin() + 1, rs.end()), sub);
            Polynomial contr = e * minor;
            acc += (j % 2 == 0) ? contr : -contr;
        }
        return acc;
    };
    return det(det, rows, cols);
}

LeviMatrix levi_matrix(const Polynomial& r) {
    const int n = r.n();
    const Polynomial r1 = r.derivative(1, false);
    LeviMatrix lm;
    for (int j = 2; j <= n; ++j) {
        VectorField l(n);
        l.holo[j - 1] = r1;
        l.holo[0] = -r.derivative(j, false);
        lm.frame.push_back(std::move(l));
    }
    std::vector<std::vector<Polynomial>> hess(n, std::vector<Polynomial>(n, Polynomial(n)));
    for (int k = 1; k <= n; ++k)
        for (int l = 1; l <= n; ++l) hess[k - 1][l - 1] = r.derivative(k, false).derivative(l, true);
    lm.entries.assign(n - 1, std::vector<Polynomial>(n - 1, Polynomial(n)));
    for (int i = 0; i < n - 1; ++i) {
        for (int j = 0; j < n - 1; ++j) {
            Polynomial e(n);
            for (int k = 0; k < n; ++k) {
                if (lm.frame[i].holo[k].is_zero()) continue;
                for (int l = 0; l < n; ++l) {
                    const Polynomial wl = lm.frame[j].holo[l].conjugated();
                    if (wl.is_zero() || hess[k][l].is_zero()) continue;
                    e += lm.frame[i].holo[k] * wl * hess[k][l];
                }
            }
            lm.entries[i][j] = std::move(e);
        }
    }
    return lm;
}

int levi_rank_at(const Polynomial& r, const std::vector<Scalar>& point) {
    if (!r.is_real_valued())
        throw precondition_error("levi_rank_at: defining function must be real-valued");
    if (!r.eval(point).is_zero())
        throw precondition_error("levi_rank_at: point does not lie on the hypersurface r = 0");
    if (r.derivative(1, false).eval(point).is_zero())
        throw precondition_error(
            "levi_rank_at: dr/dz1 vanishes at the point; no polynomial tangent frame in graph "
            "position");
    const LeviMatrix lm = levi_matrix(r);
    const int m = static_cast<int>(lm.entries.size());
    std::vector<std::vector<Scalar>> mat(m, std::vector<Scalar>(m));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) mat[i][j] = lm.entries[i][j].eval(point);
    return matrix_rank(std::move(mat));
}

int levi_kernel_dim(const Polynomial& r, const std::vector<Scalar>& point) {
    return r.n() - 1 - levi_rank_at(r, point);
}

} // namespace crgeo
