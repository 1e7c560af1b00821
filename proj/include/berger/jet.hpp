#pragma once

#include <Eigen/Dense>

#include <cassert>
#include <cmath>
#include <cstddef>
#include <vector>

namespace berger {

/// Truncated multivariate Taylor jet: a value together with all partial
/// derivatives up to `order()` (at most 3) in `dim()` variables.
///
/// Derivative arrays are stored densely (not only the symmetric half), so
/// `d(i, j) == d(j, i)` holds by construction of every operation. Binary
/// operations truncate to the lower of the two operand orders.
template <typename Scalar>
class Jet {
 public:
  static constexpr int kMaxOrder = 3;

  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  Jet() = default;

  /// Constant jet (all derivatives zero).
  Jet(int dim, Scalar value, int order = kMaxOrder)
      : dim_(dim), order_(order), data_(storage_size(dim), Scalar(0)) {
    assert(order >= 0 && order <= kMaxOrder);
    data_[0] = value;
  }

  /// The coordinate function x_index evaluated at `value`.
  static Jet variable(int dim, int index, Scalar value, int order = kMaxOrder) {
    Jet j(dim, value, order);
    if (order >= 1) j.d(index) = Scalar(1);
    return j;
  }

  int dim() const { return dim_; }
  int order() const { return order_; }

  Scalar value() const { return data_[0]; }
  Scalar& value() { return data_[0]; }

  Scalar d(int i) const { return data_[1 + i]; }
  Scalar& d(int i) { return data_[1 + i]; }
  Scalar d(int i, int j) const { return data_[hess_offset() + i * dim_ + j]; }
  Scalar& d(int i, int j) { return data_[hess_offset() + i * dim_ + j]; }
  Scalar d(int i, int j, int k) const { return data_[third_offset() + (i * dim_ + j) * dim_ + k]; }
  Scalar& d(int i, int j, int k) { return data_[third_offset() + (i * dim_ + j) * dim_ + k]; }

  Vector gradient() const {
    Vector g(dim_);
    for (int i = 0; i < dim_; ++i) g(i) = order_ >= 1 ? d(i) : Scalar(0);
    return g;
  }

  Matrix hessian() const {
    Matrix h = Matrix::Zero(dim_, dim_);
    if (order_ >= 2)
      for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) h(i, j) = d(i, j);
    return h;
  }

  /// Jet of the partial derivative with respect to variable k; one order lower.
  Jet partial(int k) const {
    assert(order_ >= 1);
    Jet r(dim_, d(k), order_ - 1);
    if (order_ >= 2)
      for (int i = 0; i < dim_; ++i) r.d(i) = d(k, i);
    if (order_ >= 3)
      for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) r.d(i, j) = d(k, i, j);
    return r;
  }

  Jet truncated(int order) const {
    Jet r = *this;
    r.order_ = std::min(order_, order);
    return r;
  }

  Jet operator-() const {
    Jet r = *this;
    for (auto& v : r.data_) v = -v;
    return r;
  }

  Jet& operator+=(const Jet& o) {
    check_compatible(o);
    order_ = std::min(order_, o.order_);
    for (std::size_t n = 0; n < data_.size(); ++n) data_[n] += o.data_[n];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    check_compatible(o);
    order_ = std::min(order_, o.order_);
    for (std::size_t n = 0; n < data_.size(); ++n) data_[n] -= o.data_[n];
    return *this;
  }
  Jet& operator+=(Scalar s) {
    data_[0] += s;
    return *this;
  }
  Jet& operator-=(Scalar s) {
    data_[0] -= s;
    return *this;
  }
  Jet& operator*=(Scalar s) {
    for (auto& v : data_) v *= s;
    return *this;
  }
  Jet& operator/=(Scalar s) {
    for (auto& v : data_) v /= s;
    return *this;
  }
  Jet& operator*=(const Jet& o) { return *this = *this * o; }
  Jet& operator/=(const Jet& o) { return *this = *this / o; }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator+(Jet a, Scalar s) { return a += s; }
  friend Jet operator+(Scalar s, Jet a) { return a += s; }
  friend Jet operator-(Jet a, Scalar s) { return a -= s; }
  friend Jet operator-(Scalar s, const Jet& a) { return (-a) += s; }
  friend Jet operator*(Jet a, Scalar s) { return a *= s; }
  friend Jet operator*(Scalar s, Jet a) { return a *= s; }
  friend Jet operator/(Jet a, Scalar s) { return a /= s; }

  friend Jet operator*(const Jet& a, const Jet& b) {
    a.check_compatible(b);
    const int n = a.dim_;
    Jet r(n, a.value() * b.value(), std::min(a.order_, b.order_));
    if (r.order_ >= 1)
      for (int i = 0; i < n; ++i) r.d(i) = a.d(i) * b.value() + a.value() * b.d(i);
    if (r.order_ >= 2)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          r.d(i, j) = a.d(i, j) * b.value() + a.d(i) * b.d(j) + a.d(j) * b.d(i) + a.value() * b.d(i, j);
    if (r.order_ >= 3)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < n; ++k)
            r.d(i, j, k) = a.d(i, j, k) * b.value() + a.d(i, j) * b.d(k) + a.d(i, k) * b.d(j) +
                           a.d(j, k) * b.d(i) + a.d(i) * b.d(j, k) + a.d(j) * b.d(i, k) +
                           a.d(k) * b.d(i, j) + a.value() * b.d(i, j, k);
    return r;
  }

  friend Jet operator/(const Jet& a, const Jet& b) { return a * reciprocal(b); }
  friend Jet operator/(Scalar s, const Jet& b) { return reciprocal(b) * s; }

  /// f(u) given f and its first three derivatives at u.value()
  /// (Faa di Bruno through third order).
  friend Jet compose(const Jet& u, Scalar f0, Scalar f1, Scalar f2, Scalar f3) {
    const int n = u.dim_;
    Jet r(n, f0, u.order_);
    if (r.order_ >= 1)
      for (int i = 0; i < n; ++i) r.d(i) = f1 * u.d(i);
    if (r.order_ >= 2)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r.d(i, j) = f2 * u.d(i) * u.d(j) + f1 * u.d(i, j);
    if (r.order_ >= 3)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < n; ++k)
            r.d(i, j, k) = f3 * u.d(i) * u.d(j) * u.d(k) +
                           f2 * (u.d(i, j) * u.d(k) + u.d(i, k) * u.d(j) + u.d(j, k) * u.d(i)) +
                           f1 * u.d(i, j, k);
    return r;
  }

  friend Jet reciprocal(const Jet& u) {
    const Scalar v = u.value();
    const Scalar r = Scalar(1) / v;
    return compose(u, r, -r * r, Scalar(2) * r * r * r, Scalar(-6) * r * r * r * r);
  }

 private:
  static std::size_t storage_size(int n) {
    const auto m = static_cast<std::size_t>(n);
    return 1 + m + m * m + m * m * m;
  }
  std::size_t hess_offset() const { return 1 + static_cast<std::size_t>(dim_); }
  std::size_t third_offset() const {
    const auto m = static_cast<std::size_t>(dim_);
    return 1 + m + m * m;
  }
  void check_compatible([[maybe_unused]] const Jet& o) const { assert(dim_ == o.dim_); }

  int dim_ = 0;
  int order_ = kMaxOrder;
  std::vector<Scalar> data_ = std::vector<Scalar>(1, Scalar(0));
};

template <typename Scalar>
Jet<Scalar> sin(const Jet<Scalar>& u) {
  using std::cos, std::sin;
  const Scalar s = sin(u.value()), c = cos(u.value());
  return compose(u, s, c, -s, -c);
}

template <typename Scalar>
Jet<Scalar> cos(const Jet<Scalar>& u) {
  using std::cos, std::sin;
  const Scalar s = sin(u.value()), c = cos(u.value());
  return compose(u, c, -s, -c, s);
}

template <typename Scalar>
Jet<Scalar> tan(const Jet<Scalar>& u) {
  using std::tan;
  const Scalar t = tan(u.value());
  const Scalar sec2 = Scalar(1) + t * t;
  return compose(u, t, sec2, Scalar(2) * t * sec2, sec2 * (Scalar(2) + Scalar(6) * t * t));
}

template <typename Scalar>
Jet<Scalar> sinh(const Jet<Scalar>& u) {
  using std::cosh, std::sinh;
  const Scalar s = sinh(u.value()), c = cosh(u.value());
  return compose(u, s, c, s, c);
}

template <typename Scalar>
Jet<Scalar> cosh(const Jet<Scalar>& u) {
  using std::cosh, std::sinh;
  const Scalar s = sinh(u.value()), c = cosh(u.value());
  return compose(u, c, s, c, s);
}

template <typename Scalar>
Jet<Scalar> tanh(const Jet<Scalar>& u) {
  using std::tanh;
  const Scalar t = tanh(u.value());
  const Scalar s2 = Scalar(1) - t * t;
  return compose(u, t, s2, Scalar(-2) * t * s2, s2 * (Scalar(6) * t * t - Scalar(2)));
}

template <typename Scalar>
Jet<Scalar> exp(const Jet<Scalar>& u) {
  using std::exp;
  const Scalar e = exp(u.value());
  return compose(u, e, e, e, e);
}

/// Requires u.value() > 0.
template <typename Scalar>
Jet<Scalar> log(const Jet<Scalar>& u) {
  using std::log;
  const Scalar r = Scalar(1) / u.value();
  return compose(u, log(u.value()), r, -r * r, Scalar(2) * r * r * r);
}

/// Requires u.value() > 0 whenever derivatives are carried.
template <typename Scalar>
Jet<Scalar> sqrt(const Jet<Scalar>& u) {
  using std::sqrt;
  const Scalar s = sqrt(u.value());
  const Scalar r = Scalar(1) / u.value();
  return compose(u, s, Scalar(0.5) / s, Scalar(-0.25) * s * r * r, Scalar(0.375) * s * r * r * r);
}

/// u^p for a constant exponent p. Integer p is valid for any sign of u.
template <typename Scalar>
Jet<Scalar> pow(const Jet<Scalar>& u, Scalar p) {
  using std::pow;
  const Scalar v = u.value();
  Scalar f[4];
  Scalar coeff = Scalar(1);
  for (int k = 0; k < 4; ++k) {
    const Scalar e = p - Scalar(k);
    // An integral exponent that reached zero kills every higher derivative.
    f[k] = coeff == Scalar(0) ? Scalar(0) : coeff * pow(v, e);
    coeff *= e;
  }
  return compose(u, f[0], f[1], f[2], f[3]);
}

}  // namespace berger
