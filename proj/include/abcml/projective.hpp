#pragma once

// Points of ℙ¹ over the Gaussian rationals, Möbius maps and the cross-ratio.

#include "abcml/scalar.hpp"

#include <stdexcept>
#include <string>

namespace abcml {

/// [x : y]; finite points are [z : 1], infinity is [1 : 0].
class ProjectivePoint {
 public:
  ProjectivePoint(GaussianRational z) : x_(std::move(z)), y_(1) {}
  ProjectivePoint(GaussianRational x, GaussianRational y) : x_(std::move(x)), y_(std::move(y)) {
    if (x_.is_zero() && y_.is_zero()) throw std::invalid_argument("[0 : 0] is not a point of the projective line");
  }
  static ProjectivePoint infinity() { return {GaussianRational(1), GaussianRational(0)}; }

  const GaussianRational& x() const { return x_; }
  const GaussianRational& y() const { return y_; }
  bool is_infinity() const { return y_.is_zero(); }
  GaussianRational value() const {
    if (is_infinity()) throw std::domain_error("the point at infinity has no affine coordinate");
    return x_ / y_;
  }

  friend bool operator==(const ProjectivePoint& a, const ProjectivePoint& b) { return a.x_ * b.y_ == b.x_ * a.y_; }

  std::string to_string() const { return is_infinity() ? "inf" : abcml::to_string(value()); }

 private:
  GaussianRational x_, y_;
};

/// Parses "inf"/"∞" or a Gaussian rational.
inline ProjectivePoint parse_point(const std::string& text) {
  std::string t = trim(text);
  if (t == "inf" || t == "infinity" || t == "∞") return ProjectivePoint::infinity();
  return ProjectivePoint(parse_gaussian(t));
}

/// z ↦ (az + b)/(cz + d), ad − bc ≠ 0.
class Mobius {
 public:
  Mobius(GaussianRational a, GaussianRational b, GaussianRational c, GaussianRational d)
      : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
    if ((a_ * d_ - b_ * c_).is_zero()) throw std::invalid_argument("degenerate Mobius map: ad - bc = 0");
  }
  ProjectivePoint operator()(const ProjectivePoint& p) const {
    return {a_ * p.x() + b_ * p.y(), c_ * p.x() + d_ * p.y()};
  }

 private:
  GaussianRational a_, b_, c_, d_;
};

/// χ = (P3−P1)(P4−P2) / ((P3−P2)(P4−P1)), via 2×2 determinants of
/// homogeneous coordinates so that ∞ needs no special case.
inline GaussianRational cross_ratio(const ProjectivePoint& p1, const ProjectivePoint& p2, const ProjectivePoint& p3,
                                    const ProjectivePoint& p4) {
  const ProjectivePoint* ps[] = {&p1, &p2, &p3, &p4};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (*ps[i] == *ps[j])
        throw std::invalid_argument("cross-ratio needs distinct points (P" + std::to_string(i + 1) + " = P" +
                                    std::to_string(j + 1) + ")");
  auto det = [](const ProjectivePoint& a, const ProjectivePoint& b) { return a.x() * b.y() - b.x() * a.y(); };
  return (det(p3, p1) * det(p4, p2)) / (det(p3, p2) * det(p4, p1));
}

}  // namespace abcml
