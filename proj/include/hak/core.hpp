#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace hak {

inline constexpr int kMaxDim = 3;

/// Point in R^n, n <= 3. Fixed capacity, no heap traffic.
class Point {
 public:
  Point() = default;
  explicit Point(int dim, double fill = 0.0) : dim_(check_dim(dim)) { v_.fill(fill); }
  Point(std::initializer_list<double> xs) : dim_(check_dim(int(xs.size()))) {
    int i = 0;
    for (double x : xs) v_[i++] = x;
  }

  int dim() const { return dim_; }
  double operator[](int i) const { return v_[i]; }
  double& operator[](int i) { return v_[i]; }

  double norm2() const {
    double s = 0;
    for (int i = 0; i < dim_; ++i) s += v_[i] * v_[i];
    return s;
  }
  double norm() const { return std::sqrt(norm2()); }

  friend Point operator-(const Point& a, const Point& b) {
    Point r(a.dim_);
    for (int i = 0; i < a.dim_; ++i) r.v_[i] = a.v_[i] - b.v_[i];
    return r;
  }
  friend Point operator+(const Point& a, const Point& b) {
    Point r(a.dim_);
    for (int i = 0; i < a.dim_; ++i) r.v_[i] = a.v_[i] + b.v_[i];
    return r;
  }
  friend bool operator==(const Point& a, const Point& b) {
    if (a.dim_ != b.dim_) return false;
    for (int i = 0; i < a.dim_; ++i)
      if (a.v_[i] != b.v_[i]) return false;
    return true;
  }

 private:
  static int check_dim(int d) {
    if (d < 1 || d > kMaxDim) throw std::invalid_argument("Point: dimension must be 1..3");
    return d;
  }
  std::array<double, kMaxDim> v_{};
  int dim_ = 1;
};

inline double dist(const Point& a, const Point& b) { return (a - b).norm(); }

/// Multi-index xi in N_0^n with |xi| and the eigenvalue 2|xi| + n.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(int dim, int fill = 0) : dim_(check_dim(dim)) {
    e_.fill(0);
    for (int i = 0; i < dim_; ++i) e_[i] = check_entry(fill);
  }
  MultiIndex(std::initializer_list<int> es) : dim_(check_dim(int(es.size()))) {
    e_.fill(0);
    int i = 0;
    for (int k : es) e_[i++] = check_entry(k);
  }

  int dim() const { return dim_; }
  int operator[](int i) const { return e_[i]; }

  int order() const {
    int s = 0;
    for (int i = 0; i < dim_; ++i) s += e_[i];
    return s;
  }
  double eigenvalue() const { return 2.0 * order() + dim_; }

  /// xi + c*e_axis; returns an invalid (negative-entry) flag through `ok`.
  MultiIndex shifted(int axis, int delta, bool& ok) const {
    MultiIndex r = *this;
    r.e_[axis] += delta;
    ok = r.e_[axis] >= 0;
    return r;
  }
  MultiIndex shifted(int axis, int delta) const {
    bool ok = true;
    MultiIndex r = shifted(axis, delta, ok);
    if (!ok) throw std::invalid_argument("MultiIndex: negative entry");
    return r;
  }

  friend bool operator==(const MultiIndex& a, const MultiIndex& b) {
    return a.dim_ == b.dim_ && a.e_ == b.e_;
  }
  /// Graded lexicographic: total degree first, then entry-wise lexicographic.
  friend bool operator<(const MultiIndex& a, const MultiIndex& b) {
    int oa = a.order(), ob = b.order();
    if (oa != ob) return oa < ob;
    if (a.dim_ != b.dim_) return a.dim_ < b.dim_;
    for (int i = 0; i < a.dim_; ++i)
      if (a.e_[i] != b.e_[i]) return a.e_[i] < b.e_[i];
    return false;
  }

  std::size_t hash() const {
    std::size_t h = 1469598103934665603ull;
    auto mix = [&h](std::size_t x) {
      h ^= x;
      h *= 1099511628211ull;
    };
    mix(std::size_t(dim_));
    for (int i = 0; i < dim_; ++i) mix(std::size_t(e_[i]));
    return h;
  }

 private:
  static int check_dim(int d) {
    if (d < 1 || d > kMaxDim) throw std::invalid_argument("MultiIndex: dimension must be 1..3");
    return d;
  }
  static int check_entry(int k) {
    if (k < 0) throw std::invalid_argument("MultiIndex: entries must be >= 0");
    return k;
  }
  std::array<int, kMaxDim> e_{};
  int dim_ = 1;
};

struct MultiIndexHash {
  std::size_t operator()(const MultiIndex& m) const { return m.hash(); }
};

/// Critical radius rho(x) = 1/(1+|x|).
inline double critical_radius(const Point& x) { return 1.0 / (1.0 + x.norm()); }

/// rho(y) ~ rho(x) whenever |x-y| < rho(x); the ratio then lies in [1/2, 2].
inline bool critical_radius_comparable(const Point& x, const Point& y) {
  return dist(x, y) < critical_radius(x);
}

/// Compensated (Neumaier) summation; kernels sum many cancelling terms.
class KahanSum {
 public:
  void add(double x) {
    double t = s_ + x;
    if (std::abs(s_) >= std::abs(x))
      c_ += (s_ - t) + x;
    else
      c_ += (x - t) + s_;
    s_ = t;
  }
  double value() const { return s_ + c_; }

 private:
  double s_ = 0, c_ = 0;
};

/// Shortest round-trip decimal form, locale-independent.
inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return std::string(buf);
}

/// Thread cap from HAK_THREADS (>=1). Library loops consult this.
int thread_cap();

/// index-space parallel map; results land in caller-owned slots, so output
/// is independent of the schedule.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace hak
