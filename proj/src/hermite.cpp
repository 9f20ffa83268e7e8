#include "hak/hermite.hpp"

#include <cmath>

namespace hak {

namespace {

constexpr double kQuarterRootPi = 0.7511255444649425;  // pi^{-1/4}

// Running value u with true value u * 2^exp; keeps |u| inside [2^-500, 2^500].
struct Scaled {
  double u = 0;
  long exp = 0;
};

inline void rescale(double& a, double& b, long& e) {
  double m = std::max(std::abs(a), std::abs(b));
  if (m == 0.0) return;
  if (m < 0x1p-500) {
    a *= 0x1p1000;
    b *= 0x1p1000;
    e -= 1000;
  } else if (m > 0x1p500) {
    a *= 0x1p-1000;
    b *= 0x1p-1000;
    e += 1000;
  }
}

inline double to_double(double u, long e) {
  if (u == 0.0) return 0.0;
  if (e > 1000) return u * HUGE_VAL;  // unreachable for |h| <= O(1)
  if (e < -1100) return 0.0;
  return std::ldexp(u, int(e));
}

// Seed h_0(t) = pi^{-1/4} exp(-t^2/2) as (mantissa, base-2 exponent).
inline void seed(double t, double& u0, long& e0) {
  const double s = -t * t * 0.5 * 1.4426950408889634;  // log2 e
  const double fl = std::floor(s);
  e0 = long(fl);
  u0 = kQuarterRootPi * std::exp2(s - fl);
}

}  // namespace

double hermite_eval_1d(int k, double t) {
  if (k < 0) throw std::invalid_argument("hermite_eval_1d: k must be >= 0");
  double prev = 0, cur;
  long e;
  seed(t, cur, e);
  for (int j = 0; j < k; ++j) {
    double next = t * std::sqrt(2.0 / (j + 1)) * cur - std::sqrt(double(j) / (j + 1)) * prev;
    prev = cur;
    cur = next;
    rescale(prev, cur, e);
  }
  return to_double(cur, e);
}

std::vector<double> hermite_eval_1d(int k, std::span<const double> ts) {
  std::vector<double> out(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) out[i] = hermite_eval_1d(k, ts[i]);
  return out;
}

std::vector<double> hermite_all_1d(int kmax, double t) {
  if (kmax < 0) throw std::invalid_argument("hermite_all_1d: kmax must be >= 0");
  std::vector<double> out(std::size_t(kmax) + 1);
  double prev = 0, cur;
  long e;
  seed(t, cur, e);
  out[0] = to_double(cur, e);
  for (int j = 0; j < kmax; ++j) {
    double next = t * std::sqrt(2.0 / (j + 1)) * cur - std::sqrt(double(j) / (j + 1)) * prev;
    prev = cur;
    cur = next;
    rescale(prev, cur, e);
    out[std::size_t(j) + 1] = to_double(cur, e);
  }
  return out;
}

std::complex<double> hermite_eval_1d(int k, std::complex<double> t) {
  if (k < 0) throw std::invalid_argument("hermite_eval_1d: k must be >= 0");
  using C = std::complex<double>;
  // seed pi^{-1/4} exp(-t^2/2) split into unit-scale mantissa and 2^e
  C z = -t * t * 0.5;
  const double s = z.real() * 1.4426950408889634;
  const double fl = std::floor(s);
  long e = long(fl);
  C cur = kQuarterRootPi * std::exp(z - std::log(2.0) * fl);
  C prev = 0;
  for (int j = 0; j < k; ++j) {
    C next = t * std::sqrt(2.0 / (j + 1)) * cur - std::sqrt(double(j) / (j + 1)) * prev;
    prev = cur;
    cur = next;
    double m = std::max(std::abs(prev), std::abs(cur));
    if (m != 0.0 && m < 0x1p-500) {
      prev *= 0x1p1000;
      cur *= 0x1p1000;
      e -= 1000;
    } else if (m > 0x1p500) {
      prev *= 0x1p-1000;
      cur *= 0x1p-1000;
      e += 1000;
    }
  }
  if (e < -1100) return 0.0;
  return cur * std::exp2(double(e));
}

double hermite_eval_nd(const MultiIndex& xi, const Point& x) {
  if (xi.dim() != x.dim()) throw std::invalid_argument("hermite_eval_nd: dimension mismatch");
  double p = 1;
  for (int i = 0; i < xi.dim(); ++i) p *= hermite_eval_1d(xi[i], x[i]);
  return p;
}

std::vector<double> hermite_eval_nd(const MultiIndex& xi, std::span<const Point> xs) {
  std::vector<double> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) out[i] = hermite_eval_nd(xi, xs[i]);
  return out;
}

const std::vector<double>& Herm1DCache::get(double t) {
  std::uint64_t key;
  std::memcpy(&key, &t, sizeof key);
  auto it = map_.find(key);
  if (it != map_.end()) return it->second;
  return map_.emplace(key, hermite_all_1d(kmax_, t)).first->second;
}

}  // namespace hak
