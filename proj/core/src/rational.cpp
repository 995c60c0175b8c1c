#include "diffcoh/rational.hpp"

#include <cmath>
#include <limits>
#include <ostream>

#include "diffcoh/errors.hpp"

namespace diffcoh {

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

constexpr i128 kMax64 = std::numeric_limits<std::int64_t>::max();
constexpr i128 kMin64 = std::numeric_limits<std::int64_t>::min();

u128 uabs(i128 v) { return v < 0 ? u128(0) - u128(v) : u128(v); }

u128 gcd128(u128 a, u128 b) {
    if (a == 0) return b;
    if (b == 0) return a;
    if (((a | b) >> 64) == 0) {
        std::uint64_t x = std::uint64_t(a), y = std::uint64_t(b);
        while (y) {
            std::uint64_t t = x % y;
            x = y;
            y = t;
        }
        return x;
    }
    while (b) {
        u128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

mpz_class mpz_from_i128(i128 v) {
    u128 m = uabs(v);
    mpz_class hi(static_cast<unsigned long>(std::uint64_t(m >> 64)));
    mpz_class lo(static_cast<unsigned long>(std::uint64_t(m)));
    mpz_class r = (hi << 64) + lo;
    return v < 0 ? mpz_class(-r) : r;
}

bool fits64(const mpz_class& z) { return mpz_fits_slong_p(z.get_mpz_t()) != 0; }

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw InvalidParameters("zero denominator");
    set_from_i128(num, den);
}

Rational::Rational(const mpq_class& q) {
    mpq_class c(q);
    c.canonicalize();
    assign_big(std::move(c));
}

Rational::Rational(const Rational& o) : num_(o.num_), den_(o.den_) {
    if (o.big_) big_ = std::make_unique<mpq_class>(*o.big_);
}

Rational& Rational::operator=(const Rational& o) {
    if (this == &o) return *this;
    num_ = o.num_;
    den_ = o.den_;
    if (o.big_)
        big_ = std::make_unique<mpq_class>(*o.big_);
    else
        big_.reset();
    return *this;
}

void Rational::assign_big(mpq_class q) {
    if (fits64(q.get_num()) && fits64(q.get_den())) {
        num_ = q.get_num().get_si();
        den_ = q.get_den().get_si();
        big_.reset();
        return;
    }
    big_ = std::make_unique<mpq_class>(std::move(q));
    num_ = 0;
    den_ = 1;
}

void Rational::set_from_i128(i128 n, i128 d) {
    if (d < 0) {
        n = -n;
        d = -d;
    }
    if (n == 0) {
        num_ = 0;
        den_ = 1;
        big_.reset();
        return;
    }
    if (d != 1) {
        u128 g = gcd128(uabs(n), u128(d));
        if (g > 1) {
            n /= i128(g);
            d /= i128(g);
        }
    }
    if (n >= kMin64 && n <= kMax64 && d <= kMax64) {
        num_ = std::int64_t(n);
        den_ = std::int64_t(d);
        big_.reset();
        return;
    }
    mpq_class q(mpz_from_i128(n), mpz_from_i128(d));
    q.canonicalize();
    assign_big(std::move(q));
}

Rational Rational::parse(const std::string& s) {
    try {
        mpq_class q(s, 10);
        if (q.get_den() == 0) throw ParseError("zero denominator in '" + s + "'");
        q.canonicalize();
        return Rational(q);
    } catch (const std::exception&) {
        throw ParseError("not a rational: '" + s + "'");
    }
}

bool Rational::is_integer() const {
    if (big_) return big_->get_den() == 1;
    return den_ == 1;
}

int Rational::sign() const {
    if (big_) return sgn(*big_);
    return (num_ > 0) - (num_ < 0);
}

mpq_class Rational::to_mpq() const {
    if (big_) return *big_;
    mpq_class q(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
    return q;
}

mpz_class Rational::numerator() const { return to_mpq().get_num(); }
mpz_class Rational::denominator() const { return to_mpq().get_den(); }

double Rational::to_double() const {
    if (big_) return big_->get_d();
    return double(num_) / double(den_);
}

std::string Rational::str() const {
    if (big_) return big_->get_str();
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::operator-() const {
    Rational r;
    if (big_ || num_ == std::numeric_limits<std::int64_t>::min()) {
        r.assign_big(-to_mpq());
        return r;
    }
    r.num_ = -num_;
    r.den_ = den_;
    return r;
}

Rational Rational::inverse() const {
    if (is_zero()) throw InvalidParameters("inverse of zero");
    if (big_) {
        mpq_class q = 1 / *big_;
        Rational r;
        r.assign_big(std::move(q));
        return r;
    }
    Rational r;
    r.set_from_i128(den_, num_);
    return r;
}

Rational& Rational::operator+=(const Rational& o) {
    if (!big_ && !o.big_) {
        if (den_ == 1 && o.den_ == 1) {
            set_from_i128(i128(num_) + o.num_, 1);
        } else {
            set_from_i128(i128(num_) * o.den_ + i128(o.num_) * den_, i128(den_) * o.den_);
        }
        return *this;
    }
    assign_big(to_mpq() + o.to_mpq());
    return *this;
}

Rational& Rational::operator-=(const Rational& o) {
    if (!big_ && !o.big_) {
        if (den_ == 1 && o.den_ == 1) {
            set_from_i128(i128(num_) - o.num_, 1);
        } else {
            set_from_i128(i128(num_) * o.den_ - i128(o.num_) * den_, i128(den_) * o.den_);
        }
        return *this;
    }
    assign_big(to_mpq() - o.to_mpq());
    return *this;
}

Rational& Rational::operator*=(const Rational& o) {
    if (!big_ && !o.big_) {
        if (num_ == 0 || o.num_ == 0) {
            num_ = 0;
            den_ = 1;
            return *this;
        }
        set_from_i128(i128(num_) * o.num_, i128(den_) * o.den_);
        return *this;
    }
    assign_big(to_mpq() * o.to_mpq());
    return *this;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw InvalidParameters("division by zero");
    if (!big_ && !o.big_) {
        set_from_i128(i128(num_) * o.den_, i128(den_) * o.num_);
        return *this;
    }
    assign_big(to_mpq() / o.to_mpq());
    return *this;
}

void Rational::sub_mul(const Rational& a, const Rational& b) {
    if (a.is_zero() || b.is_zero()) return;
    if (!big_ && !a.big_ && !b.big_ && a.den_ == 1 && b.den_ == 1 && den_ == 1) {
        i128 p = i128(a.num_) * b.num_;
        i128 n = i128(num_) - p;
        // p is at most 2^126 in magnitude, so the difference cannot wrap
        set_from_i128(n, 1);
        return;
    }
    *this -= a * b;
}

void Rational::add_mul(const Rational& a, const Rational& b) {
    if (a.is_zero() || b.is_zero()) return;
    if (!big_ && !a.big_ && !b.big_ && a.den_ == 1 && b.den_ == 1 && den_ == 1) {
        set_from_i128(i128(num_) + i128(a.num_) * b.num_, 1);
        return;
    }
    *this += a * b;
}

bool operator==(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
    if (a.big_ && b.big_) return *a.big_ == *b.big_;
    return false;  // canonical form: a big value never equals a small one
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
        i128 l = i128(a.num_) * b.den_;
        i128 r = i128(b.num_) * a.den_;
        return l <=> r;
    }
    int c = cmp(a.to_mpq(), b.to_mpq());
    return c <=> 0;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace diffcoh
