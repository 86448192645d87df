#pragma once
#include <string>
#include <vector>

#include "kac/params.hpp"

namespace kac {

// S(m) with S(+-1) = 0; DomainError for |m| > 1.
double entropy(double m);
// f_beta(m) = -m^2 / 2 - S(m) / beta.
double mf_free_energy(double m, double beta);

// Cell-midpoint grid r_i = -L + (i + 1/2) h on [-L, L]; values beyond the
// domain are the clamps.
struct Profile {
  double L = 0.0, h = 0.0;
  std::vector<double> m;
  double left_clamp = 0.0, right_clamp = 0.0;
  int size() const { return int(m.size()); }
  double r(int i) const { return -L + (i + 0.5) * h; }
};

// 1/h must be an integer so grid offsets land on the kernel support edge.
Profile make_profile(double L, double h, double left_clamp, double right_clamp);
Profile tanh_profile(double L, double h, double m_beta, double width);

enum class Convention { excess_intro5, lp_F5 };
std::string convention_name(Convention c);
Convention convention_from_name(const std::string& s);

struct FunctionalConfig {
  Convention convention = Convention::excess_intro5;
  double beta = 2.0;
  Kernel kernel = Kernel::triangular;
};

// Unit-mass discrete kernel on offsets -M..M with M h = 1.
std::vector<double> discrete_kernel(Kernel k, double h);
// (J * m~)(r_i) with the clamps outside the domain.
std::vector<double> convolve_clamped(const Profile& p, const std::vector<double>& kernel);

// excess_intro5: int {f(m) - f(m_beta)} + int int_{domain^2} J (m - m')^2.
// lp_F5: int {-S(m)/beta - m (J * m~) / 2 - f(m_beta)} with the clamps as the
// exterior. Both vanish on m = +-m_beta with matching clamps.
double lp_functional(const Profile& p, const FunctionalConfig& c);

struct InstantonResult {
  Profile profile;
  double residual = 0.0;       // sup |m - tanh(beta J * m)|
  double antisymmetry = 0.0;   // sup |m(r) + m(-r)|
  double fbar_intro5 = 0.0, fbar_F5 = 0.0;
  int iterations = 0;
};

struct InstantonOptions {
  double L = 12.0, h = 0.05;
  double tol = 1e-8, damping = 0.5;
  int max_iter = 200000;
  bool constant_seed = false;  // seed m = m_beta with +m_beta clamps on both sides
};

// Damped fixed point from the seed m_beta sign(r), clamps -+m_beta.
InstantonResult instanton_solve(const FunctionalConfig& c, const InstantonOptions& o);

std::string profile_tsv(const Profile& p);

struct ScalingInput {
  int range = 0;
  double beta = 0.0, lambda = 0.0, eps = 0.0, phi = 0.0, tolerance = 0.0;
};

struct ScalingRow {
  double gamma = 0.0, lambda = 0.0, eps = 0.0, phi = 0.0;
  double lambda_over_eps = 0.0, minus_gamma_log_eps = 0.0, gamma_phi = 0.0;
  double phi_check = 0.0;  // exp(-beta phi) / eps
  double tolerance = 0.0;
};

struct ScalingReport {
  Convention convention = Convention::excess_intro5;
  double fbar = 0.0;
  std::vector<ScalingRow> rows;  // sorted by decreasing gamma
  bool log_eps_monotone = false;
  double trend_slope = 0.0, trend_intercept = 0.0;  // gamma phi vs gamma, linear
};

ScalingReport scaling_report(const std::vector<ScalingInput>& family, double fbar, Convention c);
std::string scaling_tsv(const ScalingReport& r);

}  // namespace kac
