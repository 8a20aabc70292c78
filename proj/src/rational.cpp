#include "bratteli/rational.hpp"

namespace bratteli {

std::size_t max_digits() {
    static std::size_t cap = [] {
        const char* env = std::getenv("BRATTELI_MAX_DIGITS");
        if (!env || !*env) return std::size_t(100000);
        char* end = nullptr;
        unsigned long v = std::strtoul(env, &end, 10);
        if (!end || *end != '\0' || v == 0)
            throw Error(ErrorKind::invalid_spec,
                        "BRATTELI_MAX_DIGITS must be a positive integer");
        return std::size_t(v);
    }();
    return cap;
}

void guard_size(const Int& z) {
    if (mpz_sizeinbase(z.get_mpz_t(), 10) > max_digits())
        throw Error(ErrorKind::resource,
                    "integer exceeded BRATTELI_MAX_DIGITS (" +
                        std::to_string(max_digits()) + " digits)");
}

void guard_size(const Rat& q) {
    guard_size(q.get_num());
    guard_size(q.get_den());
}

std::string int_string(const Int& z) { return z.get_str(); }

std::string rat_string(const Rat& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rat parse_rat(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        Rat q(num, den);
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw Error(ErrorKind::invalid_spec, "bad rational literal: " + s);
    }
}

Rat dstar(const RatVec& x, const RatVec& y) {
    if (x.size() != y.size())
        throw Error(ErrorKind::range, "dstar: dimension mismatch");
    Rat sum = 0;
    for (std::size_t i = 0; i < x.size(); ++i) sum += abs(x[i] - y[i]);
    return sum;
}

double to_double(const Rat& q) { return q.get_d(); }

}  // namespace bratteli
