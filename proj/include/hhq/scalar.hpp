#pragma once

#include <gmpxx.h>

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace hhq {

// Exact field scalar: a rational number (characteristic 0) or a residue mod p.
// Residues are kept canonical in [0, p).  A default-constructed Scalar is the
// zero element with unbound characteristic; it is compatible with either mode
// and adopts the characteristic of the other operand on first use.
class Scalar {
 public:
  Scalar() : q_(0), p_(0) {}
  explicit Scalar(long n, unsigned long p = 0) : q_(n), p_(p) { reduce(); }

  static Scalar rational(long num, long den) {
    if (den == 0) throw std::invalid_argument("Scalar: zero denominator");
    Scalar s;
    s.q_ = mpq_class(num, den);
    s.q_.canonicalize();
    return s;
  }

  static Scalar from_mpq(mpq_class q, unsigned long p = 0) {
    Scalar s;
    s.q_ = std::move(q);
    s.q_.canonicalize();
    s.p_ = p;
    s.reduce();
    return s;
  }

  // Parses "n" or "n/d" (canonical serialized form).  In mod-p mode the value
  // is reduced; a denominator not invertible mod p is rejected.
  static Scalar parse(const std::string& text, unsigned long p = 0) {
    auto slash = text.find('/');
    mpz_class num(slash == std::string::npos ? text : text.substr(0, slash));
    mpz_class den(slash == std::string::npos ? std::string("1")
                                             : text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("Scalar::parse: zero denominator");
    return from_mpq(mpq_class(num, den), p);
  }

  unsigned long characteristic() const { return p_; }
  bool is_zero() const { return q_ == 0; }
  const mpq_class& value() const { return q_; }

  Scalar& operator+=(Scalar o) {
    bind(o);
    q_ += o.q_;
    reduce();
    return *this;
  }
  Scalar& operator-=(Scalar o) {
    bind(o);
    q_ -= o.q_;
    reduce();
    return *this;
  }
  Scalar& operator*=(Scalar o) {
    bind(o);
    q_ *= o.q_;
    reduce();
    return *this;
  }
  Scalar& operator/=(Scalar o) {
    bind(o);
    if (o.q_ == 0) throw std::domain_error("Scalar: division by zero");
    if (p_ == 0) {
      q_ /= o.q_;
    } else {
      q_ *= o.inverse().q_;
      reduce();
    }
    return *this;
  }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  Scalar operator-() const {
    Scalar s(*this);
    s.q_ = -s.q_;
    s.reduce();
    return s;
  }

  Scalar inverse() const {
    if (q_ == 0) throw std::domain_error("Scalar: inverse of zero");
    Scalar s;
    s.p_ = p_;
    if (p_ == 0) {
      s.q_ = 1 / q_;
      return s;
    }
    mpz_class inv, mod(p_);
    if (mpz_invert(inv.get_mpz_t(), q_.get_num().get_mpz_t(),
                   mod.get_mpz_t()) == 0)
      throw std::domain_error("Scalar: residue not invertible");
    s.q_ = inv;
    return s;
  }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.q_ == b.q_;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) {
    return !(a == b);
  }

  // Canonical form: "n" for integers, "n/d" otherwise (d > 0, gcd(n,d) = 1).
  std::string str() const {
    if (q_.get_den() == 1) return q_.get_num().get_str();
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
  }

 private:
  void reduce() {
    if (p_ == 0) return;
    if (q_.get_den() != 1) {
      // A fraction can only arise from deserialized input; fold it in.
      Scalar den;
      den.p_ = p_;
      den.q_ = q_.get_den();
      den.reduce();
      q_ = q_.get_num();
      *this *= den.inverse();
      return;
    }
    mpz_class r;
    mpz_class mod(p_);
    mpz_mod(r.get_mpz_t(), q_.get_num().get_mpz_t(), mod.get_mpz_t());
    q_ = r;
  }

  // Characteristic compatibility: an unbound operand (a plain rational, e.g.
  // an integer literal) adopts the bound side; two differently bound sides are
  // a program error.
  void bind(Scalar& o) {
    if (p_ == o.p_) return;
    if (p_ == 0) {
      p_ = o.p_;
      reduce();
    } else if (o.p_ == 0) {
      o.p_ = p_;
      o.reduce();
    } else {
      throw std::logic_error("Scalar: mixed characteristics");
    }
  }

  mpq_class q_;
  unsigned long p_;
};

}  // namespace hhq
