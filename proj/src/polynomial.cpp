#include "crgeo/polynomial.hpp"

#include <algorithm>
#include <stdexcept>

namespace crgeo {

int Monomial::total_degree() const {
    int d = 0;
    for (int a : alpha) d += a;
    for (int b : beta) d += b;
    return d;
}

bool MonomialOrder::operator()(const Monomial& a, const Monomial& b) const {
    int da = a.total_degree(), db = b.total_degree();
    if (da != db) return da < db;
    if (a.alpha != b.alpha) return a.alpha < b.alpha;
    return a.beta < b.beta;
}

Polynomial Polynomial::constant(int n, const Scalar& c) {
    Polynomial p(n);
    p.add_term(Monomial{std::vector<int>(n, 0), std::vector<int>(n, 0)}, c);
    return p;
}

Polynomial Polynomial::variable(int n, int j) {
    if (j < 1 || j > n) throw std::out_of_range("Polynomial: variable index");
    Monomial m{std::vector<int>(n, 0), std::vector<int>(n, 0)};
    m.alpha[j - 1] = 1;
    return monomial(n, m, Scalar(1));
}

Polynomial Polynomial::conj_variable(int n, int j) {
    if (j < 1 || j > n) throw std::out_of_range("Polynomial: variable index");
    Monomial m{std::vector<int>(n, 0), std::vector<int>(n, 0)};
    m.beta[j - 1] = 1;
    return monomial(n, m, Scalar(1));
}

Polynomial Polynomial::monomial(int n, const Monomial& m, const Scalar& c) {
    Polynomial p(n);
    p.add_term(m, c);
    return p;
}

void Polynomial::add_term(const Monomial& m, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

int Polynomial::degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, m.total_degree());
    return d;
}

Scalar Polynomial::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Scalar() : it->second;
}

Polynomial Polynomial::operator-() const {
    Polynomial r(n_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    Polynomial r = *this;
    r += o;
    return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
    Polynomial r = *this;
    r -= o;
    return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    Polynomial r(n_);
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : o.terms_) {
            Monomial m = ma;
            for (int j = 0; j < n_; ++j) {
                m.alpha[j] += mb.alpha[j];
                m.beta[j] += mb.beta[j];
            }
            r.add_term(m, ca * cb);
        }
    }
    return r;
}

Polynomial Polynomial::operator*(const Scalar& c) const {
    Polynomial r(n_);
    if (c.is_zero()) return r;
    for (const auto& [m, cc] : terms_) r.terms_.emplace(m, cc * c);
    return r;
}

Polynomial Polynomial::pow(int k) const {
    if (k < 0) throw std::invalid_argument("Polynomial: negative power");
    Polynomial r = constant(n_, Scalar(1));
    for (int i = 0; i < k; ++i) r = r * *this;
    return r;
}

Polynomial Polynomial::conjugated() const {
    Polynomial r(n_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m.conjugated(), c.conj());
    return r;
}

Polynomial Polynomial::real_part() const {
    return (*this + conjugated()) * Scalar::rational(1, 2);
}

Polynomial Polynomial::imag_part() const {
    // (p - conj(p)) / (2i)
    return (*this - conjugated()) * (Scalar(mpq_class(0), mpq_class(-1, 2)));
}

Polynomial Polynomial::derivative(int j, bool anti) const {
    Polynomial r(n_);
    for (const auto& [m, c] : terms_) {
        const std::vector<int>& e = anti ? m.beta : m.alpha;
        if (e[j - 1] == 0) continue;
        Monomial dm = m;
        (anti ? dm.beta : dm.alpha)[j - 1] -= 1;
        r.add_term(dm, c * Scalar(e[j - 1]));
    }
    return r;
}

Polynomial Polynomial::derivative(const std::vector<int>& alpha, const std::vector<int>& beta) const {
    Polynomial r = *this;
    for (int j = 1; j <= n_; ++j)
        for (int k = 0; k < alpha[j - 1]; ++k) r = r.derivative(j, false);
    for (int j = 1; j <= n_; ++j)
        for (int k = 0; k < beta[j - 1]; ++k) r = r.derivative(j, true);
    return r;
}

Scalar Polynomial::eval(const std::vector<Scalar>& point) const {
    if (static_cast<int>(point.size()) != n_)
        throw std::invalid_argument("Polynomial: point dimension mismatch");
    Scalar acc;
    for (const auto& [m, c] : terms_) {
        Scalar v = c;
        for (int j = 0; j < n_; ++j) {
            for (int k = 0; k < m.alpha[j]; ++k) v *= point[j];
            for (int k = 0; k < m.beta[j]; ++k) v *= point[j].conj();
        }
        acc += v;
    }
    return acc;
}

Polynomial Polynomial::truncate_degree(int k) const {
    Polynomial r(n_);
    for (const auto& [m, c] : terms_)
        if (m.total_degree() <= k) r.terms_.emplace(m, c);
    return r;
}

Polynomial Polynomial::shift_origin(const std::vector<Scalar>& point) const {
    if (static_cast<int>(point.size()) != n_)
        throw std::invalid_argument("Polynomial: point dimension mismatch");
    // Binomial expansion of each factor (z_j + a_j)^alpha_j (zbar_j + conj(a_j))^beta_j.
    Polynomial r(n_);
    for (const auto& [m, c] : terms_) {
        Polynomial term = constant(n_, c);
        for (int j = 0; j < n_; ++j) {
            if (m.alpha[j] > 0)
                term = term * (variable(n_, j + 1) + constant(n_, point[j])).pow(m.alpha[j]);
            if (m.beta[j] > 0)
                term = term * (conj_variable(n_, j + 1) + constant(n_, point[j].conj())).pow(m.beta[j]);
        }
        r += term;
    }
    return r;
}

QExt Polynomial::vanishing_order0() const {
    if (terms_.empty()) return QExt::infinity();
    // Graded order: the first stored term has minimal total degree.
    return QExt(static_cast<long>(terms_.begin()->first.total_degree()));
}

QExt Polynomial::vanishing_order(const std::vector<Scalar>& point) const {
    bool origin = true;
    for (const Scalar& s : point)
        if (!s.is_zero()) origin = false;
    return origin ? vanishing_order0() : shift_origin(point).vanishing_order0();
}

std::string Polynomial::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        std::string mono;
        for (int j = 0; j < n_; ++j) {
            auto piece = [&](const std::string& base, int e) {
                if (e == 0) return;
                if (!mono.empty()) mono += "*";
                mono += base;
                if (e > 1) mono += "^" + std::to_string(e);
            };
            piece("z" + std::to_string(j + 1), m.alpha[j]);
            piece("conj(z" + std::to_string(j + 1) + ")", m.beta[j]);
        }
        std::string coeff;
        bool negative = false;
        if (c.is_real()) {
            mpq_class v = c.re();
            negative = v < 0;
            mpq_class av = negative ? mpq_class(-v) : v;
            if (av == 1 && !mono.empty())
                coeff.clear();
            else
                coeff = av.get_str();
        } else {
            coeff = "(" + c.str() + ")";
        }
        std::string piece = coeff;
        if (!mono.empty()) {
            if (!piece.empty()) piece += "*";
            piece += mono;
        }
        if (first) {
            out = (negative ? "-" : "") + piece;
            first = false;
        } else {
            out += (negative ? " - " : " + ") + piece;
        }
    }
    return out;
}

std::optional<Polynomial> exact_divide(const Polynomial& p, const Polynomial& f) {
    if (f.is_zero()) return std::nullopt;
    const int n = p.n();
    Polynomial rem = p;
    Polynomial quot(n);
    // Leading term = the graded-lex maximum, i.e. the last stored term.
    const Monomial& fm = std::prev(f.terms().end())->first;
    const Scalar& fc = std::prev(f.terms().end())->second;
    while (!rem.is_zero()) {
        const Monomial& rm = std::prev(rem.terms().end())->first;
        Monomial qm = rm;
        for (int j = 0; j < n; ++j) {
            qm.alpha[j] -= fm.alpha[j];
            qm.beta[j] -= fm.beta[j];
            if (qm.alpha[j] < 0 || qm.beta[j] < 0) return std::nullopt;
        }
        const Scalar qc = std::prev(rem.terms().end())->second / fc;
        const Polynomial piece = Polynomial::monomial(n, qm, qc);
        quot += piece;
        rem -= piece * f;
    }
    return quot;
}

bool proportional(const Polynomial& p, const Polynomial& q) {
    if (p.is_zero() || q.is_zero()) return p.is_zero() && q.is_zero();
    const auto& tp = p.terms();
    const auto& tq = q.terms();
    if (tp.size() != tq.size()) return false;
    // Cross-multiply so no division is needed: p * lead(q) == q * lead(p).
    const Scalar lp = tp.begin()->second;
    const Scalar lq = tq.begin()->second;
    auto itp = tp.begin();
    auto itq = tq.begin();
    for (; itp != tp.end(); ++itp, ++itq) {
        if (!(itp->first == itq->first)) return false;
        if (itp->second * lq != itq->second * lp) return false;
    }
    return true;
}

} // namespace crgeo
