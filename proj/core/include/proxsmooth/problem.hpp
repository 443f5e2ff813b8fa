#pragma once

#include <functional>
#include <memory>
#include <utility>

#include "proxsmooth/prox.hpp"
#include "proxsmooth/types.hpp"

namespace proxsmooth {

// Differentiable term h with Lipschitz-continuous gradient over dom phi.
class SmoothTerm {
 public:
  virtual ~SmoothTerm() = default;
  virtual double value(const Vec& x) const = 0;
  virtual Vec gradient(const Vec& x) const = 0;
  /// Upper bound on the gradient's Lipschitz constant; +inf when unknown.
  virtual double lipschitz_grad() const = 0;
};

// Continuously differentiable mapping S with Jacobian-adjoint evaluation.
class SmoothMap {
 public:
  virtual ~SmoothMap() = default;
  virtual int input_dim() const = 0;
  virtual int output_dim() const = 0;
  virtual Vec value(const Vec& x) const = 0;
  /// Computes DS(x)^* [y], y of size output_dim().
  virtual Vec jacobian_adjoint(const Vec& x, const Vec& y) const = 0;
};

// Proper lsc convex term phi with a computable prox.
class ConvexTerm {
 public:
  virtual ~ConvexTerm() = default;
  virtual Vec prox(double gamma, const Vec& z) const = 0;
  /// phi(z); +inf outside the domain.
  virtual double evaluate(const Vec& z) const = 0;
  virtual bool in_domain(const Vec& z) const = 0;
};

class ZeroSmoothTerm : public SmoothTerm {
 public:
  double value(const Vec&) const override { return 0.0; }
  Vec gradient(const Vec& x) const override { return Vec::Zero(x.size()); }
  double lipschitz_grad() const override { return 0.0; }
};

class CallbackSmoothTerm : public SmoothTerm {
 public:
  CallbackSmoothTerm(std::function<double(const Vec&)> value, std::function<Vec(const Vec&)> gradient,
                     double lipschitz = kInf)
      : value_(std::move(value)), gradient_(std::move(gradient)), lipschitz_(lipschitz) {}

  double value(const Vec& x) const override { return value_(x); }
  Vec gradient(const Vec& x) const override { return gradient_(x); }
  double lipschitz_grad() const override { return lipschitz_; }

 private:
  std::function<double(const Vec&)> value_;
  std::function<Vec(const Vec&)> gradient_;
  double lipschitz_;
};

class IdentityMap : public SmoothMap {
 public:
  explicit IdentityMap(int dim) : dim_(dim) { require(dim >= 1, "IdentityMap: dim must be >= 1"); }
  int input_dim() const override { return dim_; }
  int output_dim() const override { return dim_; }
  Vec value(const Vec& x) const override { return x; }
  Vec jacobian_adjoint(const Vec&, const Vec& y) const override { return y; }

 private:
  int dim_;
};

class CallbackSmoothMap : public SmoothMap {
 public:
  CallbackSmoothMap(int in_dim, int out_dim, std::function<Vec(const Vec&)> value,
                    std::function<Vec(const Vec&, const Vec&)> adjoint)
      : in_(in_dim), out_(out_dim), value_(std::move(value)), adjoint_(std::move(adjoint)) {}

  int input_dim() const override { return in_; }
  int output_dim() const override { return out_; }
  Vec value(const Vec& x) const override { return value_(x); }
  Vec jacobian_adjoint(const Vec& x, const Vec& y) const override { return adjoint_(x, y); }

 private:
  int in_, out_;
  std::function<Vec(const Vec&)> value_;
  std::function<Vec(const Vec&, const Vec&)> adjoint_;
};

// phi identically zero (unconstrained).
class FreeTerm : public ConvexTerm {
 public:
  Vec prox(double, const Vec& z) const override { return z; }
  double evaluate(const Vec&) const override { return 0.0; }
  bool in_domain(const Vec&) const override { return true; }
};

// Indicator of the box [lo, hi]; entries may be +-inf. The prox clamps each
// coordinate independently of gamma.
class IndicatorBox : public ConvexTerm {
 public:
  IndicatorBox(Vec lo, Vec hi);

  Vec prox(double gamma, const Vec& z) const override;
  double evaluate(const Vec& z) const override;
  bool in_domain(const Vec& z) const override;

  const Vec& lo() const { return lo_; }
  const Vec& hi() const { return hi_; }

 private:
  Vec lo_, hi_;
};

std::shared_ptr<const IndicatorBox> indicator_box(Vec lo, Vec hi);

// Indicator of a general closed convex set given by its metric projection
// (independent of gamma) and a membership test.
class IndicatorSet : public ConvexTerm {
 public:
  IndicatorSet(std::function<Vec(const Vec&)> project, std::function<bool(const Vec&)> member)
      : project_(std::move(project)), member_(std::move(member)) {}

  Vec prox(double, const Vec& z) const override { return project_(z); }
  double evaluate(const Vec& z) const override { return member_(z) ? 0.0 : kInf; }
  bool in_domain(const Vec& z) const override { return member_(z); }

 private:
  std::function<Vec(const Vec&)> project_;
  std::function<bool(const Vec&)> member_;
};

// The problem bundle h + g o S + phi over R^{dim_in}, S: R^{dim_in} -> R^{dim_out}.
struct CompositeProblem {
  std::shared_ptr<const SmoothTerm> h;
  std::shared_ptr<const ProxFunction> g;
  std::shared_ptr<const SmoothMap> S;
  std::shared_ptr<const ConvexTerm> phi;
  int dim_in = 0;
  int dim_out = 0;

  // Optional analytic upper bound mu |-> L on the gradient Lipschitz
  // constant of the smoothed cost h + (envelope of g) o S. Used only by
  // stepsize-floor diagnostics, never by the algorithm itself.
  std::function<double(double)> lipschitz_smoothed_grad;

  void validate() const;

  double true_cost(const Vec& x) const;
  double smoothed_cost(double mu, const Vec& x) const;
};

}  // namespace proxsmooth
