#include "kac/continuum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "kac/efp.hpp"
#include "kac/errors.hpp"

namespace kac {

double entropy(double m) {
  if (!(std::abs(m) <= 1.0)) throw DomainError("magnetization outside [-1, 1]");
  auto term = [](double x) { return x > 0.0 ? -x * std::log(x) : 0.0; };
  return term(0.5 * (1.0 + m)) + term(0.5 * (1.0 - m));
}

double mf_free_energy(double m, double beta) { return -0.5 * m * m - entropy(m) / beta; }

Profile make_profile(double L, double h, double left, double right) {
  const double M = 1.0 / h;
  if (!(h > 0.0) || std::abs(M - std::round(M)) > 1e-9) throw ResolutionError("1/h must be an integer");
  const double cells = 2.0 * L / h;
  if (!(L > 0.0) || std::abs(cells - std::round(cells)) > 1e-9) throw ResolutionError("h must divide 2L");
  Profile p;
  p.L = L;
  p.h = h;
  p.m.assign(size_t(std::llround(cells)), 0.0);
  p.left_clamp = left;
  p.right_clamp = right;
  return p;
}

Profile tanh_profile(double L, double h, double m_beta, double width) {
  Profile p = make_profile(L, h, -m_beta, m_beta);
  for (int i = 0; i < p.size(); ++i) p.m[i] = m_beta * std::tanh(p.r(i) / width);
  return p;
}

std::string convention_name(Convention c) { return c == Convention::excess_intro5 ? "excess_intro5" : "lp_F5"; }

Convention convention_from_name(const std::string& s) {
  if (s == "excess_intro5") return Convention::excess_intro5;
  if (s == "lp_F5") return Convention::lp_F5;
  throw ConfigError("unknown functional convention: " + s);
}

std::vector<double> discrete_kernel(Kernel k, double h) {
  const int M = int(std::llround(1.0 / h));
  if (M < 2 || std::abs(M * h - 1.0) > 1e-9) throw ResolutionError("kernel support needs 1/h >= 2 integer");
  std::vector<double> w(2 * M + 1);
  double mass = 0.0;
  for (int j = -M; j <= M; ++j) mass += w[j + M] = kernel_shape(k, std::abs(j) * h);
  for (double& x : w) x /= mass;
  return w;
}

std::vector<double> convolve_clamped(const Profile& p, const std::vector<double>& K) {
  const int M = int(K.size() / 2), n = p.size();
  std::vector<double> out(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int j = -M; j <= M; ++j) {
      const int t = i + j;
      s += K[j + M] * (t < 0 ? p.left_clamp : t >= n ? p.right_clamp : p.m[t]);
    }
    out[i] = s;
  }
  return out;
}

double lp_functional(const Profile& p, const FunctionalConfig& c) {
  const double mb = solve_m_beta(c.beta), fb = mf_free_energy(mb, c.beta);
  const auto K = discrete_kernel(c.kernel, p.h);
  const int M = int(K.size() / 2), n = p.size();
  for (double v : p.m)
    if (!(std::abs(v) <= 1.0)) throw DomainError("profile value outside [-1, 1]");
  double F = 0.0;
  if (c.convention == Convention::excess_intro5) {
    // K sums to one, so K[j] / h approximates J and the double integral picks up h * K[j].
    for (int i = 0; i < n; ++i) {
      F += p.h * (mf_free_energy(p.m[i], c.beta) - fb);
      for (int j = -M; j <= M; ++j) {
        const int t = i + j;
        if (t < 0 || t >= n) continue;
        const double d = p.m[i] - p.m[t];
        F += p.h * K[j + M] * d * d;
      }
    }
  } else {
    const auto Jm = convolve_clamped(p, K);
    for (int i = 0; i < n; ++i) F += p.h * (-entropy(p.m[i]) / c.beta - 0.5 * p.m[i] * Jm[i] - fb);
  }
  return F;
}

namespace {

double sup_residual(const Profile& p, const std::vector<double>& K, double beta, std::vector<double>& target) {
  const auto Jm = convolve_clamped(p, K);
  double r = 0.0;
  target.resize(p.m.size());
  for (int i = 0; i < p.size(); ++i) {
    target[i] = std::tanh(beta * Jm[i]);
    r = std::max(r, std::abs(p.m[i] - target[i]));
  }
  return r;
}

}  // namespace

InstantonResult instanton_solve(const FunctionalConfig& c, const InstantonOptions& o) {
  if (o.L < 10.0) throw DomainError("domain half-length needs at least ten kernel widths");
  if (!(o.damping > 0.0 && o.damping <= 1.0)) throw DomainError("damping must lie in (0, 1]");
  const double mb = solve_m_beta(c.beta);
  if (!(mb > 0.0)) throw DomainError("instanton needs beta > 1");
  InstantonResult res;
  Profile p = o.constant_seed ? make_profile(o.L, o.h, mb, mb) : make_profile(o.L, o.h, -mb, mb);
  const int n = p.size();
  for (int i = 0; i < n; ++i) p.m[i] = o.constant_seed ? mb : (p.r(i) < 0.0 ? -mb : mb);
  const auto K = discrete_kernel(c.kernel, o.h);
  std::vector<double> target;
  double best = INFINITY;
  int it = 0;
  for (;; ++it) {
    const double r = sup_residual(p, K, c.beta, target);
    best = std::min(best, r);
    if (r <= o.tol) break;
    if (it >= o.max_iter) {
      char buf[128];
      std::snprintf(buf, sizeof buf, "instanton iteration stalled, best residual %.3g", best);
      throw NonConvergence(buf);
    }
    for (int i = 0; i < n; ++i) p.m[i] = (1.0 - o.damping) * p.m[i] + o.damping * target[i];
    if (!o.constant_seed) {
      // Pin the translation mode: the odd part is the fixed point's symmetry class.
      for (int i = 0; i < n / 2; ++i) {
        const double a = 0.5 * (p.m[n - 1 - i] - p.m[i]);
        p.m[i] = -a;
        p.m[n - 1 - i] = a;
      }
    }
  }
  res.iterations = it;
  res.residual = sup_residual(p, K, c.beta, target);
  for (int i = 0; i < n; ++i) res.antisymmetry = std::max(res.antisymmetry, std::abs(p.m[i] + p.m[n - 1 - i]));
  if (o.constant_seed) res.antisymmetry = 0.0;
  FunctionalConfig a = c, b = c;
  a.convention = Convention::excess_intro5;
  b.convention = Convention::lp_F5;
  res.fbar_intro5 = lp_functional(p, a);
  res.fbar_F5 = lp_functional(p, b);
  res.profile = std::move(p);
  return res;
}

std::string profile_tsv(const Profile& p) {
  std::string out = "r\tm\n";
  char buf[96];
  for (int i = 0; i < p.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.10g\t%.17g\n", p.r(i), p.m[i]);
    out += buf;
  }
  return out;
}

ScalingReport scaling_report(const std::vector<ScalingInput>& family, double fbar, Convention c) {
  ScalingReport rep;
  rep.convention = c;
  rep.fbar = fbar;
  for (const auto& in : family) {
    ScalingRow r;
    r.gamma = 1.0 / in.range;
    r.lambda = in.lambda;
    r.eps = in.eps;
    r.phi = in.phi;
    r.lambda_over_eps = in.lambda / in.eps;
    r.minus_gamma_log_eps = -r.gamma / in.beta * std::log(in.eps);
    r.gamma_phi = r.gamma * in.phi;
    r.phi_check = std::exp(-in.beta * in.phi) / in.eps;
    r.tolerance = in.tolerance;
    rep.rows.push_back(r);
  }
  std::sort(rep.rows.begin(), rep.rows.end(), [](const auto& a, const auto& b) { return a.gamma > b.gamma; });
  rep.log_eps_monotone = true;
  for (size_t i = 1; i < rep.rows.size(); ++i) {
    const double d0 = rep.rows[1].minus_gamma_log_eps - rep.rows[0].minus_gamma_log_eps;
    const double d = rep.rows[i].minus_gamma_log_eps - rep.rows[i - 1].minus_gamma_log_eps;
    if (d * d0 < 0.0) rep.log_eps_monotone = false;
  }
  if (rep.rows.size() >= 2) {
    std::vector<double> x, y;
    for (const auto& r : rep.rows) {
      x.push_back(r.gamma);
      y.push_back(r.gamma_phi);
    }
    rep.trend_slope = fit_line(x, y).first;
    double mx = 0.0, my = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
      mx += x[i] / x.size();
      my += y[i] / y.size();
    }
    rep.trend_intercept = my - rep.trend_slope * mx;
  }
  return rep;
}

std::string scaling_tsv(const ScalingReport& r) {
  std::string out = "convention\tgamma\tlambda\teps\tphi\tlambda_over_eps\tminus_gamma_log_eps_over_beta\tgamma_phi\tfbar\tphi_check\ttolerance\n";
  char buf[512];
  for (const auto& w : r.rows) {
    std::snprintf(buf, sizeof buf, "%s\t%.10g\t%.10g\t%.10g\t%.10g\t%.10g\t%.10g\t%.10g\t%.10g\t%.12g\t%.3g\n",
                  convention_name(r.convention).c_str(), w.gamma, w.lambda, w.eps, w.phi, w.lambda_over_eps,
                  w.minus_gamma_log_eps, w.gamma_phi, r.fbar, w.phi_check, w.tolerance);
    out += buf;
  }
  return out;
}

}  // namespace kac
