#pragma once

#include "isogeo/types.hpp"

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace isogeo {

/// An analytic diffeomorphism phi: R^d -> R^d together with its inverse and
/// the actions of both Jacobians.
///
/// Subclasses that do not override jvp/inv_jvp get central finite differences
/// with step h = 1e-6 * (1 + |x|_2).
class Diffeomorphism {
 public:
  virtual ~Diffeomorphism() = default;

  virtual std::string_view name() const = 0;
  virtual Eigen::Index dim() const = 0;

  virtual Vector forward(const Point& x) const = 0;
  virtual Point inverse(const Vector& p) const = 0;

  /// D_x phi [v]
  virtual Vector jvp(const Point& x, const Vector& v) const;
  /// D_p phi^{-1} [w], with p given in phi-coordinates.
  virtual Vector inv_jvp(const Vector& p, const Vector& w) const;

 protected:
  void check_dim(const Vector& v, std::string_view what) const;
};

/// phi = id on R^d.
class IdentityDiffeo final : public Diffeomorphism {
 public:
  explicit IdentityDiffeo(Eigen::Index dim);
  std::string_view name() const override { return "identity"; }
  Eigen::Index dim() const override { return dim_; }
  Vector forward(const Point& x) const override;
  Point inverse(const Vector& p) const override;
  Vector jvp(const Point& x, const Vector& v) const override;
  Vector inv_jvp(const Vector& p, const Vector& w) const override;

 private:
  Eigen::Index dim_;
};

/// phi(x) = (x1 - beta sin x2, sinh(eta x2)).
class RiverDiffeo final : public Diffeomorphism {
 public:
  RiverDiffeo(double beta, double eta);
  std::string_view name() const override { return "river"; }
  Eigen::Index dim() const override { return 2; }
  Vector forward(const Point& x) const override;
  Point inverse(const Vector& p) const override;
  Vector jvp(const Point& x, const Vector& v) const override;
  Vector inv_jvp(const Vector& p, const Vector& w) const override;

  double beta() const { return beta_; }
  double eta() const { return eta_; }

 private:
  double beta_;
  double eta_;
};

/// phi(x) = (R/beta, (angle(x) - R/beta) mod 2 pi) with R = |x|_2.
///
/// The second coordinate is reduced into [0, 2 pi). Straight segments in
/// phi-coordinates never leave that strip, but points produced by exp maps can;
/// geodesics are only meaningful between points whose images stay off the cut.
/// The origin is outside the domain of forward.
class SpiralDiffeo final : public Diffeomorphism {
 public:
  explicit SpiralDiffeo(double beta);
  std::string_view name() const override { return "spiral"; }
  Eigen::Index dim() const override { return 2; }
  Vector forward(const Point& x) const override;
  Point inverse(const Vector& p) const override;
  Vector jvp(const Point& x, const Vector& v) const override;
  Vector inv_jvp(const Vector& p, const Vector& w) const override;

  double beta() const { return beta_; }

 private:
  double beta_;
};

/// phi(x) = (x1 - a x2^2 - z, x2).
class BananaDiffeo final : public Diffeomorphism {
 public:
  BananaDiffeo(double a, double z);
  std::string_view name() const override { return "banana"; }
  Eigen::Index dim() const override { return 2; }
  Vector forward(const Point& x) const override;
  Point inverse(const Vector& p) const override;
  Vector jvp(const Point& x, const Vector& v) const override;
  Vector inv_jvp(const Vector& p, const Vector& w) const override;

  double a() const { return a_; }
  double z() const { return z_; }

 private:
  double a_;
  double z_;
};

/// phi(x) = sinh(x + 1) on R.
class SinhShiftDiffeo final : public Diffeomorphism {
 public:
  std::string_view name() const override { return "sinh_shift"; }
  Eigen::Index dim() const override { return 1; }
  Vector forward(const Point& x) const override;
  Point inverse(const Vector& p) const override;
  Vector jvp(const Point& x, const Vector& v) const override;
  Vector inv_jvp(const Vector& p, const Vector& w) const override;
};

/// User-supplied diffeomorphism from callables. Missing Jacobian actions fall
/// back to finite differences.
class FunctionDiffeo final : public Diffeomorphism {
 public:
  using Map = std::function<Vector(const Vector&)>;
  using JacobianAction = std::function<Vector(const Vector&, const Vector&)>;

  FunctionDiffeo(std::string name, Eigen::Index dim, Map forward, Map inverse,
                 JacobianAction jvp = {}, JacobianAction inv_jvp = {});

  std::string_view name() const override { return name_; }
  Eigen::Index dim() const override { return dim_; }
  Vector forward(const Point& x) const override;
  Point inverse(const Vector& p) const override;
  Vector jvp(const Point& x, const Vector& v) const override;
  Vector inv_jvp(const Vector& p, const Vector& w) const override;

 private:
  std::string name_;
  Eigen::Index dim_;
  Map forward_;
  Map inverse_;
  JacobianAction jvp_;
  JacobianAction inv_jvp_;
};

/// Central finite-difference Jacobian action of `map` at `at` along `dir`.
Vector finite_difference_jvp(const std::function<Vector(const Vector&)>& map,
                             const Vector& at, const Vector& dir);

using ParamMap = std::map<std::string, double, std::less<>>;

/// Builds a registered diffeomorphism by name. Recognized names and
/// parameters (defaults in parentheses):
///   identity   dim (2)
///   river      beta (5), eta (0.25)
///   spiral     beta (0.25)
///   banana     a (1/9), z (0)
///   sinh_shift (none)
/// Unknown names or parameters throw InputError.
std::shared_ptr<const Diffeomorphism> make_diffeomorphism(
    std::string_view name, const ParamMap& params = {});

std::vector<std::string> registered_diffeomorphisms();

}  // namespace isogeo
