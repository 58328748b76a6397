#include "modlab/differences.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "modlab/errors.hpp"

namespace modlab {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kNodeGap = 1e-13;
constexpr int kStructuredPoints = 40;
constexpr double kGridMargin = 1e-6;

double checked(double v, double x) {
  if (!std::isfinite(v)) {
    throw SingularityError("non-finite sample " + std::to_string(v) +
                           " at x = " + std::to_string(x));
  }
  return v;
}

double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

/// Richardson table over step sequence h_j = h0 2^{-j}, error expansion in
/// powers h^{p}, h^{2p}, ... Returns the first diagonal value that agrees
/// with its predecessor, or throws.
template <class Sample>
double richardson(Sample sample, int levels, int power, const std::string& what) {
  std::vector<std::vector<double>> t(levels);
  for (int j = 0; j < levels; ++j) {
    t[j].resize(j + 1);
    t[j][0] = sample(j);
    double factor = std::pow(2.0, power);
    for (int l = 1; l <= j; ++l) {
      t[j][l] = t[j][l - 1] + (t[j][l - 1] - t[j - 1][l - 1]) / (factor - 1.0);
      factor *= std::pow(2.0, power);
    }
    if (j >= 1) {
      const double a = t[j][j];
      const double b = t[j - 1][j - 1];
      if (std::abs(a - b) <= 1e-6 * std::max(std::abs(a), std::abs(b)) + 1e-9) {
        return a;
      }
    }
  }
  throw DerivativeUnavailableError(what + " did not converge under step halving");
}

}  // namespace

void DifferenceSpec::validate() const {
  if (order < 1) throw InvalidArgumentError("difference order must be >= 1");
  if (!(step > 0.0)) throw InvalidArgumentError("difference step must be > 0");
  if (!(domain.lo < domain.hi)) {
    throw InvalidArgumentError("difference domain must satisfy a < b");
  }
}

double binomial(int k, int i) {
  if (i < 0 || i > k) return 0.0;
  double r = 1.0;
  for (int j = 1; j <= i; ++j) r = r * (k - i + j) / j;
  return std::round(r);
}

double difference(const RealFunction& f, const DifferenceSpec& spec, double x) {
  const int k = spec.order;
  const double h = spec.step;
  double start = 0.0;
  switch (spec.direction) {
    case Direction::symmetric:
      if (x - 0.5 * k * h < spec.domain.lo || x + 0.5 * k * h > spec.domain.hi) {
        return 0.0;
      }
      start = x - 0.5 * k * h;
      break;
    case Direction::forward:
      if (x < spec.domain.lo || x + k * h > spec.domain.hi) return 0.0;
      start = x;
      break;
    case Direction::backward:
      if (x - k * h < spec.domain.lo || x > spec.domain.hi) return 0.0;
      start = x - k * h;
      break;
  }
  double s = 0.0;
  for (int i = 0; i <= k; ++i) {
    const double xi = (i == k && spec.direction == Direction::forward)
                          ? x + k * h
                          : ((i == k && spec.direction == Direction::backward)
                                 ? x
                                 : start + i * h);
    const double c = binomial(k, i) * (((k - i) % 2 == 0) ? 1.0 : -1.0);
    s += c * checked(f(xi), xi);
  }
  return s;
}

double difference(const FunctionDescriptor& f, const DifferenceSpec& spec, double x) {
  spec.validate();
  return difference(f.eval, spec, x);
}

double divided_difference_values(std::span<const double> points,
                                 std::span<const double> values) {
  const std::size_t m = points.size();
  if (m == 0 || values.size() != m) {
    throw InvalidArgumentError("divided difference needs matching nonempty inputs");
  }
  std::vector<std::size_t> order(m);
  for (std::size_t i = 0; i < m; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return points[a] < points[b]; });
  std::vector<double> x(m);
  std::vector<double> d(m);
  for (std::size_t i = 0; i < m; ++i) {
    x[i] = points[order[i]];
    d[i] = values[order[i]];
  }
  for (std::size_t i = 1; i < m; ++i) {
    if (x[i] - x[i - 1] < kNodeGap) {
      throw DegenerateNodesError("nodes " + std::to_string(x[i - 1]) + " and " +
                                 std::to_string(x[i]) + " coincide within 1e-13");
    }
  }
  for (std::size_t level = 1; level < m; ++level) {
    for (std::size_t i = m - 1; i >= level; --i) {
      d[i] = (d[i] - d[i - 1]) / (x[i] - x[i - level]);
      if (i == level) break;
    }
  }
  return d[m - 1];
}

double divided_difference(std::span<const double> points, const FunctionDescriptor& f) {
  std::vector<double> values(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    values[i] = checked(f(points[i]), points[i]);
  }
  return divided_difference_values(points, values);
}

namespace {

/// Bound on the rounding error of the explicit divided-difference sum
/// sum_i f(x_i) / prod_{j != i}(x_i - x_j).
double rounding_bound(std::span<const double> x, std::span<const double> v) {
  double s = 0.0;
  const std::size_t m = x.size();
  for (std::size_t i = 0; i < m; ++i) {
    double prod = 1.0;
    for (std::size_t j = 0; j < m; ++j) {
      if (j != i) prod *= std::abs(x[i] - x[j]);
    }
    s += std::abs(v[i]) / prod;
  }
  return 4.0 * static_cast<double>(m) * kEps * s;
}

}  // namespace

MonotoneVerdict certify_k_monotone(const FunctionDescriptor& f, int k, int trials,
                                   std::uint64_t seed, double tol) {
  if (k < 1) throw InvalidArgumentError("k-monotonicity order must be >= 1");
  if (trials < 1) throw InvalidArgumentError("trials must be >= 1");
  MonotoneVerdict verdict;
  const int m = k + 1;
  const double c = 1.0 - kGridMargin;

  std::vector<double> grid(kStructuredPoints);
  std::vector<double> grid_values(kStructuredPoints);
  for (int j = 0; j < kStructuredPoints; ++j) {
    grid[j] = -c * std::cos((2.0 * j + 1.0) * std::numbers::pi / (2.0 * kStructuredPoints));
    grid_values[j] = checked(f(grid[j]), grid[j]);
  }

  std::vector<double> xs(m);
  std::vector<double> vs(m);
  auto test = [&]() {
    const double dd = divided_difference_values(xs, vs);
    ++verdict.evaluations;
    if (dd < -(tol + rounding_bound(xs, vs))) {
      verdict.certified = false;
      verdict.witness = xs;
      verdict.witness_value = dd;
      return false;
    }
    return true;
  };

  if (m <= kStructuredPoints) {
    std::vector<int> idx(m);
    for (int i = 0; i < m; ++i) idx[i] = i;
    while (true) {
      for (int i = 0; i < m; ++i) {
        xs[i] = grid[idx[i]];
        vs[i] = grid_values[idx[i]];
      }
      if (!test()) return verdict;
      int pos = m - 1;
      while (pos >= 0 && idx[pos] == kStructuredPoints - m + pos) --pos;
      if (pos < 0) break;
      ++idx[pos];
      for (int i = pos + 1; i < m; ++i) idx[i] = idx[i - 1] + 1;
    }
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int t = 0; t < trials; ++t) {
    // Alternate between uniformly spread nodes and tight clusters.
    const bool clustered = (t % 2) == 1;
    const double center = -c + 2.0 * c * unit(rng);
    // Cluster widths down to 10^(-6/k): the k-th difference then amplifies
    // evaluation rounding by at most about 1e6.
    const double scale = std::pow(10.0, -6.0 / k * unit(rng));
    bool ok = false;
    for (int attempt = 0; attempt < 20 && !ok; ++attempt) {
      for (int i = 0; i < m; ++i) {
        const double u = -c + 2.0 * c * unit(rng);
        xs[i] = clustered ? std::clamp(center + scale * (2.0 * unit(rng) - 1.0), -c, c)
                          : u;
      }
      std::vector<double> sorted = xs;
      std::sort(sorted.begin(), sorted.end());
      ok = true;
      for (int i = 1; i < m; ++i) {
        if (sorted[i] - sorted[i - 1] < 1e-9) ok = false;
      }
    }
    if (!ok) continue;
    for (int i = 0; i < m; ++i) vs[i] = checked(f(xs[i]), xs[i]);
    if (!test()) return verdict;
  }
  verdict.certified = true;
  return verdict;
}

double central_derivative(const FunctionDescriptor& f, int r, double x0) {
  if (r == 0) return checked(f(x0), x0);
  if (r <= f.derivative_order()) return checked(f.derivatives[r - 1](x0), x0);
  const double h0 = 0.1;
  auto sample = [&](int j) {
    const double h = h0 * std::ldexp(1.0, -j);
    double s = 0.0;
    for (int i = 0; i <= r; ++i) {
      const double x = x0 - 0.5 * r * h + i * h;
      s += binomial(r, i) * (((r - i) % 2 == 0) ? 1.0 : -1.0) * checked(f(x), x);
    }
    return s / std::pow(h, r);
  };
  return richardson(sample, 8, 2, "central derivative of order " + std::to_string(r));
}

double left_derivative(const FunctionDescriptor& f, int r) {
  const double s = 1e-3;
  constexpr int kLevels = 7;
  if (r == 0 || r <= f.derivative_order()) {
    const RealFunction& g = r == 0 ? f.eval : f.derivatives[r - 1];
    auto sample = [&](int j) {
      const double x = -s * std::ldexp(1.0, -j);
      return checked(g(x), x);
    };
    return richardson(sample, kLevels, 1,
                      "left limit of derivative " + std::to_string(r));
  }
  auto sample = [&](int j) {
    const double h = s * std::ldexp(1.0, -j);
    double acc = 0.0;
    for (int i = 0; i <= r; ++i) {
      const double x = -(r - i) * h;
      const double xv = i == r ? std::nextafter(0.0, -1.0) : x;
      acc += binomial(r, i) * (((r - i) % 2 == 0) ? 1.0 : -1.0) * checked(f(xv), xv);
    }
    return acc / std::pow(h, r);
  };
  return richardson(sample, kLevels, 1, "left derivative of order " + std::to_string(r));
}

ChebyshevPoly taylor_truncation(const FunctionDescriptor& f, int k) {
  if (k < 1) throw InvalidArgumentError("Taylor truncation order must be >= 1");
  std::vector<double> a(k, 0.0);
  for (int i = 0; i + 1 < k; ++i) a[i] = central_derivative(f, i, 0.0) / factorial(i);
  a[k - 1] = left_derivative(f, k - 1) / factorial(k - 1);
  ChebyshevPoly p = ChebyshevPoly::from_monomial(a);
  for (double& c : p.coeffs) {
    if (std::abs(c) < 1e-13) c = 0.0;
  }
  return p;
}

MPlusSplit mplus_split(const FunctionDescriptor& f, int k) {
  const ChebyshevPoly t = taylor_truncation(f, k);
  const double sign = (k % 2 == 0) ? 1.0 : -1.0;
  MPlusSplit out;
  out.f1.eval = [e = f.eval, t](double x) { return x > 0.0 ? e(x) - t(x) : 0.0; };
  out.f2.eval = [e = f.eval, t, sign](double x) {
    return x > 0.0 ? sign * (e(-x) - t(-x)) : 0.0;
  };
  out.f1.endpoint_exponents = {0.0, std::min(f.endpoint_exponents.plus, 0.0)};
  out.f2.endpoint_exponents = {0.0, std::min(f.endpoint_exponents.minus, 0.0)};
  for (auto* g : {&out.f1, &out.f2}) {
    g->support = Interval{0.0, 1.0};
    g->monotone = MonotoneDeclaration{k, CertificateSource::checked};
    g->breakpoints.push_back(0.0);
  }
  for (double b : f.breakpoints) {
    if (b > 0.0) out.f1.breakpoints.push_back(b);
    if (b < 0.0) out.f2.breakpoints.push_back(-b);
  }
  out.f1.label = f.label + "_1";
  out.f2.label = f.label + "_2";
  return out;
}

}  // namespace modlab
