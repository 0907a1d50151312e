#include "fanoscope/arith.hpp"

#include <stdexcept>

namespace fanoscope {

std::string to_string(const Integer& v) { return v.str(); }

std::string to_string(const Rational& v) {
  if (is_integral(v)) return numerator(v).str();
  return numerator(v).str() + "/" + denominator(v).str();
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  Rational norm = o.re_ * o.re_ + o.im_ * o.im_;
  if (norm == 0) throw std::domain_error("division by zero in Q(i)");
  Rational r = (re_ * o.re_ + im_ * o.im_) / norm;
  Rational i = (im_ * o.re_ - re_ * o.im_) / norm;
  re_ = std::move(r);
  im_ = std::move(i);
  return *this;
}

std::string to_string(const Scalar& s) {
  if (s.is_real()) return to_string(s.re());
  std::string im;
  if (s.im() == 1)
    im = "i";
  else if (s.im() == -1)
    im = "-i";
  else
    im = to_string(s.im()) + "i";
  if (s.re() == 0) return im;
  std::string out = "(" + to_string(s.re());
  if (im.front() == '-')
    out += im;
  else
    out += "+" + im;
  return out + ")";
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << to_string(s); }

}  // namespace fanoscope
