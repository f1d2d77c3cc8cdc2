#include "quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "constants.hpp"
#include "errors.hpp"

namespace cpvdw {

namespace {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK qk15).
// xgk holds the positive abscissae in descending order; odd indices are
// the Gauss points.
constexpr double kXgk[8] = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691,
    0.7415311855993944, 0.5860872354676911, 0.4058451513773972,
    0.2077849550078985, 0.0000000000000000};
constexpr double kWgk[8] = {
    0.0229353220105292, 0.0630920926299785, 0.1047900103222502,
    0.1406532597155259, 0.1690047266392679, 0.1903505780647854,
    0.2044329400752989, 0.2094821410847278};
constexpr double kWg[4] = {0.1294849661688697, 0.2797053914892767,
                           0.3818300505051189, 0.4179591836734694};

struct PanelEstimate {
  double result = 0.0;
  double abserr = 0.0;
};

// One qk15 application to [a, b].  `eval` must already guard against
// non-finite values.
PanelEstimate qk15(const std::function<double(double)> &eval, double a,
                   double b) {
  const double centre = 0.5 * (a + b);
  const double hlgth = 0.5 * (b - a);

  double fv1[7], fv2[7];
  const double fc = eval(centre);
  double resg = fc * kWg[3];
  double resk = fc * kWgk[7];
  double resabs = std::abs(resk);
  for (int j = 0; j < 3; ++j) {
    const int jtw = 2 * j + 1;
    const double absc = hlgth * kXgk[jtw];
    fv1[jtw] = eval(centre - absc);
    fv2[jtw] = eval(centre + absc);
    const double fsum = fv1[jtw] + fv2[jtw];
    resg += kWg[j] * fsum;
    resk += kWgk[jtw] * fsum;
    resabs += kWgk[jtw] * (std::abs(fv1[jtw]) + std::abs(fv2[jtw]));
  }
  for (int j = 0; j < 4; ++j) {
    const int jtwm1 = 2 * j;
    const double absc = hlgth * kXgk[jtwm1];
    fv1[jtwm1] = eval(centre - absc);
    fv2[jtwm1] = eval(centre + absc);
    const double fsum = fv1[jtwm1] + fv2[jtwm1];
    resk += kWgk[jtwm1] * fsum;
    resabs += kWgk[jtwm1] * (std::abs(fv1[jtwm1]) + std::abs(fv2[jtwm1]));
  }
  const double reskh = resk * 0.5;
  double resasc = kWgk[7] * std::abs(fc - reskh);
  for (int j = 0; j < 7; ++j)
    resasc +=
        kWgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));

  PanelEstimate p;
  p.result = resk * hlgth;
  resabs *= std::abs(hlgth);
  resasc *= std::abs(hlgth);
  double abserr = std::abs((resk - resg) * hlgth);
  if (resasc != 0.0 && abserr != 0.0)
    abserr = resasc * std::min(1.0, std::pow(200.0 * abserr / resasc, 1.5));
  p.abserr = abserr;
  return p;
}

struct Interval {
  double a = 0.0, b = 0.0;
  double val = 0.0, err = 0.0;
};

} // namespace

double pairwise_sum(std::span<const double> v) {
  const std::size_t n = v.size();
  if (n <= 8) {
    double s = 0.0;
    for (double x : v)
      s += x;
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(v.subspan(0, half)) + pairwise_sum(v.subspan(half));
}

const GaussRule &gauss_legendre(int n) {
  if (n < 1 || n > 256)
    throw InvalidArgument("gauss_legendre: order out of range [1, 256]");
  // No locking: the library is single-threaded by contract (results must
  // be bit-stable, so all summations run in a fixed order anyway).
  static std::map<int, GaussRule> cache;
  auto it = cache.find(n);
  if (it != cache.end())
    return it->second;

  GaussRule rule;
  rule.x.resize(n);
  rule.w.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Chebyshev-based initial guess, then Newton on P_n.
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      if (n == 1) {
        p1 = x;
      }
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      // p1 = P_n(x), p0 = P_{n-1}(x)
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15)
        break;
    }
    rule.x[i] = -x;
    rule.x[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    rule.w[i] = w;
    rule.w[n - 1 - i] = w;
  }
  if (n == 1) {
    rule.x[0] = 0.0;
    rule.w[0] = 2.0;
  }
  auto [pos, inserted] = cache.emplace(n, std::move(rule));
  (void)inserted;
  return pos->second;
}

namespace {

// Wraps the user integrand with the (0,inf) -> (0,1) transform and the
// non-finite guard.
std::function<double(double)> transformed(const std::function<double(double)> &f,
                                          double u0, long &evals) {
  return [&f, u0, &evals](double t) {
    const double omt = 1.0 - t;
    const double u = u0 * t / omt;
    const double jac = u0 / (omt * omt);
    const double fu = f(u);
    ++evals;
    if (!std::isfinite(fu))
      throw NonFinite("integrand returned a non-finite value at u = " +
                      std::to_string(u));
    const double v = fu * jac;
    if (!std::isfinite(v))
      throw NonFinite("transformed integrand overflowed at u = " +
                      std::to_string(u));
    return v;
  };
}

QuadResult adaptive_gk(const std::function<double(double)> &f,
                       const QuadratureSpec &spec, double u0) {
  long evals = 0;
  auto g = transformed(f, u0, evals);

  std::vector<Interval> ivs;
  {
    PanelEstimate p = qk15(g, 0.0, 1.0);
    ivs.push_back({0.0, 1.0, p.result, p.abserr});
  }

  auto totals = [&ivs]() {
    double v = 0.0, e = 0.0;
    for (const auto &iv : ivs) {
      v += iv.val;
      e += iv.err;
    }
    return std::pair<double, double>(v, e);
  };

  bool converged = false;
  for (;;) {
    auto [tv, te] = totals();
    const double tol = std::max(spec.rel_tol * std::abs(tv), spec.abs_tol);
    if (te <= tol) {
      converged = true;
      break;
    }
    if (evals + 30 > spec.max_evals)
      break;
    // split the splittable interval with the largest error
    std::size_t worst = ivs.size();
    double werr = -1.0;
    for (std::size_t i = 0; i < ivs.size(); ++i) {
      if (ivs[i].b - ivs[i].a < 2e-14)
        continue;
      if (ivs[i].err > werr) {
        werr = ivs[i].err;
        worst = i;
      }
    }
    if (worst == ivs.size())
      break; // nothing left to split: saturated in t
    const Interval iv = ivs[worst];
    const double mid = 0.5 * (iv.a + iv.b);
    PanelEstimate left = qk15(g, iv.a, mid);
    PanelEstimate right = qk15(g, mid, iv.b);
    ivs[worst] = {iv.a, mid, left.result, left.abserr};
    ivs.push_back({mid, iv.b, right.result, right.abserr});
  }

  // Deterministic final sum: intervals in position order.
  std::sort(ivs.begin(), ivs.end(),
            [](const Interval &l, const Interval &r) { return l.a < r.a; });
  std::vector<double> vals, errs;
  vals.reserve(ivs.size());
  errs.reserve(ivs.size());
  for (const auto &iv : ivs) {
    vals.push_back(iv.val);
    errs.push_back(iv.err);
  }
  QuadResult res;
  res.value = pairwise_sum(vals);
  res.error_estimate = pairwise_sum(errs);
  res.evals = evals;
  res.converged = converged;
  return res;
}

QuadResult composite_gl(const std::function<double(double)> &f,
                        const QuadratureSpec &spec, double u0) {
  long evals = 0;
  auto g = transformed(f, u0, evals);
  const GaussRule &rule = gauss_legendre(16);

  auto pass = [&](int panels) {
    std::vector<double> contrib;
    contrib.reserve(static_cast<std::size_t>(panels) * rule.x.size());
    const double w = 1.0 / panels;
    for (int p = 0; p < panels; ++p) {
      const double a = p * w;
      const double c = a + 0.5 * w;
      for (std::size_t k = 0; k < rule.x.size(); ++k)
        contrib.push_back(0.5 * w * rule.w[k] * g(c + 0.5 * w * rule.x[k]));
    }
    return pairwise_sum(contrib);
  };

  QuadResult res;
  double prev = pass(2);
  int panels = 4;
  for (;;) {
    const double cur = pass(panels);
    const double diff = std::abs(cur - prev);
    res.value = cur;
    res.error_estimate = diff;
    res.evals = evals;
    const double tol = std::max(spec.rel_tol * std::abs(cur), spec.abs_tol);
    if (diff <= tol) {
      res.converged = true;
      return res;
    }
    if (evals + 2L * panels * 16L > spec.max_evals || panels >= 4096) {
      res.converged = false;
      return res;
    }
    prev = cur;
    panels *= 2;
  }
}

} // namespace

QuadResult integrate_semiaxis(const std::function<double(double)> &f,
                              const QuadratureSpec &spec) {
  if (!(spec.rel_tol > 0.0) || !(spec.abs_tol > 0.0))
    throw InvalidArgument("quadrature tolerances must be > 0");
  if (spec.max_evals < 100)
    throw InvalidArgument("quadrature max_evals must be >= 100");
  const double u0 = spec.u0 > 0.0 ? spec.u0 : 1.0;
  if (spec.rule == QuadratureSpec::Rule::composite_gl)
    return composite_gl(f, spec, u0);
  return adaptive_gk(f, spec, u0);
}

SemiAxisGrid semiaxis_grid(double u0, int min_nodes) {
  if (!(u0 > 0.0))
    throw InvalidArgument("semiaxis_grid: u0 must be > 0");
  if (min_nodes < 1)
    throw InvalidArgument("semiaxis_grid: node count must be >= 1");
  const int panels = (min_nodes + 14) / 15;

  SemiAxisGrid grid;
  grid.u.reserve(static_cast<std::size_t>(panels) * 15);
  grid.weight.reserve(grid.u.capacity());
  grid.weight_gauss.reserve(grid.u.capacity());

  const double width = 1.0 / panels;
  for (int p = 0; p < panels; ++p) {
    const double centre = (p + 0.5) * width;
    const double hlgth = 0.5 * width;
    for (int k = 0; k < 15; ++k) {
      // ascending t across the panel; node k maps onto table entry
      // min(k, 14-k)
      const int idx = k < 8 ? k : 14 - k;
      const double sign = k < 7 ? -1.0 : (k == 7 ? 0.0 : 1.0);
      const double t = centre + sign * hlgth * kXgk[idx];
      const double omt = 1.0 - t;
      const double jac = u0 / (omt * omt);
      grid.u.push_back(u0 * t / omt);
      grid.weight.push_back(kWgk[idx] * hlgth * jac);
      // Gauss points sit at odd table indices plus the centre.
      double wg = 0.0;
      if (idx == 7)
        wg = kWg[3];
      else if (idx % 2 == 1)
        wg = kWg[idx / 2];
      grid.weight_gauss.push_back(wg * hlgth * jac);
    }
  }
  return grid;
}

} // namespace cpvdw
