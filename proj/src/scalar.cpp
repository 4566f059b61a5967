#include "sghh/scalar.hpp"

#include <ostream>

namespace sghh {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t p) {
    __int128 t = 0, nt = 1, r = p, nr = a;
    while (nr != 0) {
        __int128 q = r / nr;
        __int128 tmp = t - q * nt; t = nt; nt = tmp;
        tmp = r - q * nr; r = nr; nr = tmp;
    }
    if (t < 0) t += p;
    return static_cast<std::uint64_t>(t);
}

std::uint64_t reduce_mpz(const mpz_class& z, std::uint64_t p) {
    mpz_class r = z % mpz_class(std::to_string(p));
    if (r < 0) r += mpz_class(std::to_string(p));
    return std::stoull(r.get_str());
}

}  // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    mpz_class z(std::to_string(n));
    return mpz_probab_prime_p(z.get_mpz_t(), 40) > 0;
}

FieldSpec FieldSpec::prime(std::uint64_t p) {
    if (!is_prime(p)) throw InvalidParameter("field characteristic " + std::to_string(p) + " is not prime");
    FieldSpec f;
    f.p_ = p;
    return f;
}

std::string FieldSpec::name() const { return is_rational() ? "Q" : "F_" + std::to_string(p_); }

Scalar FieldSpec::zero() const { return from_int(0); }
Scalar FieldSpec::one() const { return from_int(1); }

Scalar FieldSpec::from_int(std::int64_t v) const {
    if (is_rational()) return Scalar(mpq_class(static_cast<long>(v)));
    __int128 r = static_cast<__int128>(v) % static_cast<__int128>(p_);
    if (r < 0) r += p_;
    return Scalar(*this, static_cast<std::uint64_t>(r));
}

Scalar FieldSpec::parse(std::string_view text) const {
    std::string s(text);
    while (!s.empty() && s.front() == ' ') s.erase(s.begin());
    while (!s.empty() && s.back() == ' ') s.pop_back();
    if (!s.empty() && s.front() == '+') s.erase(s.begin());
    mpq_class q;
    if (s.empty() || q.set_str(s, 10) != 0) throw ParseError("not a scalar: '" + std::string(text) + "'");
    if (q.get_den() == 0) throw DivisionByZero("zero denominator in '" + std::string(text) + "'");
    q.canonicalize();
    if (is_rational()) return Scalar(q);
    std::uint64_t den = reduce_mpz(q.get_den(), p_);
    if (den == 0) throw DivisionByZero("denominator of '" + s + "' vanishes in " + name());
    return Scalar(*this, mulmod(reduce_mpz(q.get_num(), p_), invmod(den, p_), p_));
}

Scalar::Scalar(const FieldSpec& f, std::uint64_t residue) {
    if (f.is_rational()) {
        p_ = 0;
        v_ = mpq_class(std::to_string(residue));
    } else {
        p_ = f.characteristic();
        v_ = residue % p_;
    }
}

Scalar::Scalar(mpq_class q) : p_(0), v_(std::move(q)) { std::get<mpq_class>(v_).canonicalize(); }

FieldSpec Scalar::field() const {
    if (p_ == 0) return FieldSpec::rational();
    if (p_ == kUnbound) throw FieldMismatch("unbound zero has no field");
    return FieldSpec::prime(p_);
}

bool Scalar::is_zero() const {
    if (p_ == 0) return std::get<mpq_class>(v_) == 0;
    return std::get<std::uint64_t>(v_) == 0;
}

bool Scalar::is_one() const {
    if (p_ == 0) return std::get<mpq_class>(v_) == 1;
    return p_ != kUnbound && std::get<std::uint64_t>(v_) == 1;
}

void Scalar::adopt(const Scalar& o) {
    if (p_ == o.p_ || o.p_ == kUnbound) return;
    if (p_ != kUnbound) throw FieldMismatch("scalars over different fields");
    p_ = o.p_;
    if (p_ == 0) v_ = mpq_class(0);
    else v_ = std::uint64_t{0};
}

Scalar Scalar::operator-() const {
    Scalar r = *this;
    if (p_ == 0) r.v_ = mpq_class(-std::get<mpq_class>(v_));
    else if (p_ != kUnbound) {
        auto x = std::get<std::uint64_t>(v_);
        r.v_ = x == 0 ? 0 : p_ - x;
    }
    return r;
}

Scalar Scalar::inv() const {
    if (p_ == kUnbound || is_zero()) throw DivisionByZero("inverse of zero");
    Scalar r = *this;
    if (p_ == 0) r.v_ = mpq_class(1 / std::get<mpq_class>(v_));
    else r.v_ = invmod(std::get<std::uint64_t>(v_), p_);
    return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
    adopt(o);
    if (o.p_ == kUnbound) return *this;
    if (p_ == 0) std::get<mpq_class>(v_) += std::get<mpq_class>(o.v_);
    else {
        auto s = std::get<std::uint64_t>(v_) + std::get<std::uint64_t>(o.v_);
        if (s >= p_ || s < std::get<std::uint64_t>(o.v_)) s -= p_;
        v_ = s;
    }
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
    if (o.p_ == kUnbound) {
        if (p_ != kUnbound) *this = Scalar(field(), 0);
        return *this;
    }
    adopt(o);
    if (p_ == 0) std::get<mpq_class>(v_) *= std::get<mpq_class>(o.v_);
    else v_ = mulmod(std::get<std::uint64_t>(v_), std::get<std::uint64_t>(o.v_), p_);
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this *= o.inv(); }

bool operator==(const Scalar& a, const Scalar& b) {
    if (a.p_ == Scalar::kUnbound || b.p_ == Scalar::kUnbound) return a.is_zero() && b.is_zero();
    if (a.p_ != b.p_) throw FieldMismatch("comparing scalars over different fields");
    return a.v_ == b.v_;
}

std::string Scalar::str() const {
    if (p_ == 0) return std::get<mpq_class>(v_).get_str();
    return std::to_string(std::get<std::uint64_t>(v_));
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

}  // namespace sghh
