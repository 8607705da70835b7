#include "ph/algebra.hpp"

namespace ph {

RatFun::RatFun(MPoly num, MPoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::domain_error("RatFun: zero denominator");
  if (num_.vars() != den_.vars()) throw std::invalid_argument("RatFun: variable-list mismatch");
  canon();
}

RatFun::RatFun(const MPoly& p) : num_(p), den_(MPoly::constant(p.vars(), 1)) {}

void RatFun::canon() {
  if (num_.is_zero()) {
    den_ = MPoly::constant(den_.vars(), 1);
    return;
  }
  Int g;
  Int cn = num_.content(), cd = den_.content();
  mpz_gcd(g.get_mpz_t(), cn.get_mpz_t(), cd.get_mpz_t());
  if (den_.leading_coeff() < 0) g = -g;
  if (g != 1) {
    num_ = num_.divide_content(g);
    den_ = den_.divide_content(g);
  }
}

RatFun operator+(const RatFun& a, const RatFun& b) {
  if (a.den_ == b.den_) return RatFun(a.num_ + b.num_, a.den_);
  return RatFun(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFun operator-(const RatFun& a, const RatFun& b) {
  if (a.den_ == b.den_) return RatFun(a.num_ - b.num_, a.den_);
  return RatFun(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

RatFun operator*(const RatFun& a, const RatFun& b) { return RatFun(a.num_ * b.num_, a.den_ * b.den_); }

RatFun operator/(const RatFun& a, const RatFun& b) {
  if (b.is_zero()) throw std::domain_error("RatFun: division by zero");
  return RatFun(a.num_ * b.den_, a.den_ * b.num_);
}

bool operator==(const RatFun& a, const RatFun& b) {
  if (a.vars() != b.vars()) return false;
  return a.num_ * b.den_ == b.num_ * a.den_;
}

RatFun RatFun::reduce_univariate() const {
  if (num_.is_zero()) return *this;
  int used = -1;
  for (size_t i = 0; i < den_.nvars(); ++i) {
    if (num_.deg_in(i) > 0 || den_.deg_in(i) > 0) {
      if (used >= 0) {
        if (auto q = divide_exact(num_, den_)) return RatFun(*q);
        return *this;
      }
      used = int(i);
    }
  }
  if (used < 0) return *this;
  MPoly g = univariate_gcd(num_, den_).normalize();
  if (g.is_constant()) return *this;
  return RatFun(*divide_exact(num_, g), *divide_exact(den_, g));
}

std::string RatFun::to_string() const {
  if (den_.is_constant() && den_.coeff(MultiIndex(den_.nvars(), 0)) == 1) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

}  // namespace ph
