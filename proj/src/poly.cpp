#include "bratteli/poly.hpp"

namespace bratteli {

Poly make_poly(std::vector<Int> coeffs) {
    Poly p;
    p.c_ = std::move(coeffs);
    p.trim();
    return p;
}

void Poly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly Poly::constant(const Int& c) { return make_poly({c}); }

Poly Poly::var() { return make_poly({Int(0), Int(1)}); }

const Int& Poly::coeff(std::size_t i) const {
    static const Int zero(0);
    return i < c_.size() ? c_[i] : zero;
}

const Int& Poly::leading() const {
    static const Int zero(0);
    return c_.empty() ? zero : c_.back();
}

Int Poly::eval(const Int& n) const {
    Int acc = 0;
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * n + c_[i];
    return acc;
}

std::string Poly::str() const {
    if (c_.empty()) return "0";
    std::string out;
    for (std::size_t i = c_.size(); i-- > 0;) {
        const Int& c = c_[i];
        if (c == 0) continue;
        if (!out.empty()) out += c > 0 ? "+" : "-";
        else if (c < 0) out += "-";
        Int a = abs(c);
        if (i == 0 || a != 1) out += a.get_str();
        if (i > 0) {
            if (a != 1) out += "*";
            out += "n";
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out.empty() ? "0" : out;
}

Poly Poly::operator+(const Poly& o) const {
    std::vector<Int> out(std::max(c_.size(), o.c_.size()));
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = coeff(i) + o.coeff(i);
    return make_poly(std::move(out));
}

Poly Poly::operator-(const Poly& o) const {
    std::vector<Int> out(std::max(c_.size(), o.c_.size()));
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = coeff(i) - o.coeff(i);
    return make_poly(std::move(out));
}

Poly Poly::operator*(const Poly& o) const {
    if (c_.empty() || o.c_.empty()) return Poly();
    std::vector<Int> out(c_.size() + o.c_.size() - 1);
    for (std::size_t i = 0; i < c_.size(); ++i)
        for (std::size_t j = 0; j < o.c_.size(); ++j)
            out[i + j] += c_[i] * o.c_[j];
    return make_poly(std::move(out));
}

Poly Poly::pow(unsigned e) const {
    Poly acc = Poly::constant(1);
    Poly base = *this;
    while (e) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

int Poly::eventual_sign() const {
    if (c_.empty()) return 0;
    return sgn(c_.back());
}

Int Poly::positivity_bound() const {
    if (c_.empty()) return 0;
    // Cauchy bound: no root at n >= 1 + max |c_i| / |c_d|.
    Int lead = abs(c_.back());
    Int worst = 0;
    for (std::size_t i = 0; i + 1 < c_.size(); ++i) {
        Int a = abs(c_[i]);
        if (a > worst) worst = a;
    }
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), worst.get_mpz_t(), lead.get_mpz_t());
    return q + 1;
}

Rat PolyRatio::eval(const Int& n) const {
    Int d = den.eval(n);
    if (d == 0) throw Error(ErrorKind::range, "rational-function pole at n=" + n.get_str());
    Rat q(num.eval(n), d);
    q.canonicalize();
    return q;
}

std::string PolyRatio::str() const { return "(" + num.str() + ")/(" + den.str() + ")"; }

EventualOrder eventual_compare(const PolyRatio& a, const PolyRatio& b) {
    // a - b has the sign of a.num*b.den - b.num*a.den once both denominators
    // are sign-stable and positive.
    Poly diff = a.num * b.den - b.num * a.den;
    Int from = diff.positivity_bound();
    for (const Poly* d : {&a.den, &b.den}) {
        Int f = d->positivity_bound();
        if (f > from) from = f;
    }
    int s = diff.eventual_sign();
    Ordering ord = s < 0   ? Ordering::less
                   : s > 0 ? Ordering::greater
                           : Ordering::equal;
    return {ord, from};
}

SeriesCertificate classify_series(const PolyRatio& term) {
    if (term.den.eventual_sign() <= 0)
        throw Error(ErrorKind::range, "series term with non-positive denominator");
    if (term.num.eventual_sign() < 0)
        throw Error(ErrorKind::range, "series term eventually negative");
    Int from = term.num.positivity_bound();
    Int fd = term.den.positivity_bound();
    if (fd > from) from = fd;
    SeriesCertificate cert;
    cert.num_degree = term.num.degree();
    cert.den_degree = term.den.degree();
    cert.valid_from = from;
    if (term.num.is_zero())
        cert.cls = SeriesClass::convergent;
    else
        cert.cls = (cert.den_degree - cert.num_degree <= 1)
                       ? SeriesClass::divergent
                       : SeriesClass::convergent;
    return cert;
}

}  // namespace bratteli
