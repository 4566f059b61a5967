#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>

#include <gmpxx.h>

#include "sghh/errors.hpp"

namespace sghh {

class Scalar;

// p == 0 means Q.
class FieldSpec {
public:
    FieldSpec() = default;
    static FieldSpec prime(std::uint64_t p);
    static FieldSpec rational() { FieldSpec f; f.p_ = 0; return f; }

    bool is_rational() const { return p_ == 0; }
    std::uint64_t characteristic() const { return p_; }
    std::string name() const;

    Scalar zero() const;
    Scalar one() const;
    Scalar from_int(std::int64_t v) const;
    Scalar parse(std::string_view text) const;

    friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

private:
    std::uint64_t p_ = 101;
};

bool is_prime(std::uint64_t n);

// A default-constructed Scalar is an unbound zero: it takes on the field of
// whatever it is combined with.
class Scalar {
public:
    Scalar() = default;
    Scalar(const FieldSpec& f, std::uint64_t residue);
    Scalar(mpq_class q);

    bool bound() const { return p_ != kUnbound; }
    FieldSpec field() const;
    bool is_zero() const;
    bool is_one() const;
    std::uint64_t residue() const { return std::get<std::uint64_t>(v_); }
    const mpq_class& rational() const { return std::get<mpq_class>(v_); }

    Scalar operator-() const;
    Scalar inv() const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);
    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    friend bool operator==(const Scalar& a, const Scalar& b);

    // (-1)^e * this
    Scalar signed_by(long e) const { return (e & 1) ? -*this : *this; }

    std::string str() const;

private:
    static constexpr std::uint64_t kUnbound = ~std::uint64_t{0};
    void adopt(const Scalar& o);

    std::uint64_t p_ = kUnbound;
    std::variant<std::uint64_t, mpq_class> v_{std::uint64_t{0}};
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

}  // namespace sghh
