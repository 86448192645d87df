#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "kac/cache.hpp"
#include "kac/continuum.hpp"
#include "kac/contours.hpp"
#include "kac/efp.hpp"
#include "kac/errors.hpp"
#include "kac/mcmc.hpp"
#include "kac/pipeline.hpp"
#include "kac/renewal.hpp"
#include "kac/surface.hpp"
#include "kac/torus.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace kac;

namespace {

// Every data record carries these; no timestamps so reruns are bit-identical.
struct Context {
  std::string experiment;
  ModelParams p;
  std::uint64_t seed = 0;
  fs::path out = "kaclab-out";
  std::map<std::string, std::string> precision;

  std::string str(const std::string& k, const std::string& def) const {
    auto it = precision.find(k);
    return it == precision.end() ? def : it->second;
  }
  double num(const std::string& k, double def) const {
    auto it = precision.find(k);
    if (it == precision.end()) return def;
    try {
      size_t pos = 0;
      double v = std::stod(it->second, &pos);
      if (pos != it->second.size()) throw std::invalid_argument(k);
      return v;
    } catch (const std::exception&) {
      throw ConfigError("precision key " + k + " is not a number: " + it->second);
    }
  }
  int integer(const std::string& k, int def) const {
    const double v = num(k, def);
    if (v != std::floor(v)) throw ConfigError("precision key " + k + " must be an integer");
    return int(v);
  }
  std::vector<int> ints(const std::string& k, const std::string& def) const {
    std::vector<int> v;
    std::stringstream ss(str(k, def));
    std::string item;
    while (std::getline(ss, item, ','))
      try {
        v.push_back(std::stoi(item));
      } catch (const std::exception&) {
        throw ConfigError("precision key " + k + " must be a comma-separated integer list");
      }
    return v;
  }
  PipelineOptions pipeline() const {
    PipelineOptions o;
    o.fit_n_min = integer("fit_n_min", o.fit_n_min);
    o.fit_n_max = integer("fit_n_max", o.fit_n_max);
    o.R_trunc = integer("R_trunc", o.R_trunc);
    o.R_enum = integer("R_enum", o.R_enum);
    o.eps_tol = num("eps_tol", o.eps_tol);
    o.lambda_tol = num("lambda_tol", o.lambda_tol);
    return o;
  }
};

class Output {
 public:
  explicit Output(const Context& c) : c_(c) {
    fs::create_directories(c.out);
    jsonl_.open(c.out / (c.experiment + ".jsonl"));
    if (!jsonl_) throw ConfigError("cannot write to output directory " + c.out.string());
  }
  void record(const std::string& type, json body) {
    json r = {{"experiment", c_.experiment}, {"record", type}, {"params_hash", hex64(params_hash(c_.p))},
              {"seed", c_.seed}};
    r.update(body);
    jsonl_ << r.dump() << "\n";
  }
  // Delimited table with a comment header naming params hash and seed.
  void table(const std::string& name, const std::string& tsv) {
    std::ofstream f(c_.out / (c_.experiment + "-" + name + ".tsv"));
    f << "# experiment=" << c_.experiment << " params_hash=" << hex64(params_hash(c_.p)) << " seed=" << c_.seed
      << "\n"
      << tsv;
  }

 private:
  const Context& c_;
  std::ofstream jsonl_;
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

json law_json(const RenewalLaw& l) {
  return {{"lambda", l.lambda}, {"alpha", l.alpha}, {"mass", l.mass}, {"tail", l.tail},
          {"eps", l.eps}, {"lambda_over_eps", l.lambda_over_eps}, {"alpha_over_half_eps", l.alpha_over_half_eps},
          {"iterations", l.iterations}};
}

std::unique_ptr<CacheStore> cache_for(const Context& c) {
  if (c.str("cache", "on") == "off") return nullptr;
  return std::make_unique<CacheStore>(c.out / "cache");
}

void run_pressure(const Context& c, Output& o) {
  auto bs = build_block_space(c.p);
  const auto po = c.pipeline();
  const int n_table = c.integer("n_table", 120);
  auto cache = cache_for(c);
  auto fit = cache ? cache->boundary_fit(bs, po.fit_n_min, po.fit_n_max, n_table)
                   : fit_boundary(bs, po.fit_n_min, po.fit_n_max, n_table);
  o.record("fit", {{"p_plus", fit.p_plus}, {"d", fit.d}, {"n_min", fit.n_min}, {"n_max", fit.n_max},
                   {"gauge_ref", fit.gauge_ref}, {"fit_hash", hex64(fit.hash())}});
  std::string t = "n\tsup_abs_G\tA\n";
  for (int n = 1; n <= fit.n_table; ++n) t += std::to_string(n) + "\t" + fmt("%.6e", fit.sup_abs_G(n)) + "\t" +
                                              fmt("%.6e", fit.A[n]) + "\n";
  o.table("G", t);
  std::cout << "p_plus " << fmt("%.15g", fit.p_plus) << "  supG_" << fit.n_table / 2 << " "
            << fmt("%.3e", fit.sup_abs_G(fit.n_table / 2)) << "\n";
}

void run_interface(const Context& c, Output& o) {
  const auto po = c.pipeline();
  auto bs = build_block_space(c.p);
  auto cache = cache_for(c);
  const int m = c.integer("m", 20), n_max = c.integer("n_max", 150);
  const int n_table = std::max(po.R_trunc, 2 * m + n_max + 2) + 2;
  auto fit = cache ? cache->boundary_fit(bs, po.fit_n_min, po.fit_n_max, n_table)
                   : fit_boundary(bs, po.fit_n_min, po.fit_n_max, n_table);
  auto it = interface_table(bs, fit, n_table);
  auto eps = eps_total(it, po.eps_tol);
  auto st = surface_tension(bs, fit, it, m, n_max);
  const double check = std::abs(st.weight - eps.eps) / eps.eps;
  o.record("interface", {{"eps", eps.eps}, {"eps_tail", eps.tail}, {"u_max", eps.u_max}, {"m", m},
                         {"n_max", n_max}, {"phi", st.phi}, {"exp_minus_beta_phi", st.weight},
                         {"relative_gap", check}, {"tolerance", st.tolerance}});
  std::string t = "u\teps_u\tsplit_ratio\n";
  for (int u = 2; u <= n_max; ++u)
    t += std::to_string(u) + "\t" + fmt("%.12e", it.eps[u]) + "\t" +
         fmt("%.12e", u < int(st.ratio.size()) ? st.ratio[u] : NAN) + "\n";
  o.table("eps", t);
  std::cout << "eps " << fmt("%.10g", eps.eps) << "  phi " << fmt("%.10g", st.phi) << "  gap "
            << fmt("%.3e", check) << " (tol " << fmt("%.3e", st.tolerance) << ")\n";
}

void run_weights(const Context& c, Output& o) {
  auto cache = cache_for(c);
  auto s = build_renewal_setup(c.p, c.pipeline(), cache.get());
  json rec = law_json(s.law);
  rec["R_trunc"] = s.table.R_trunc;
  rec["tail_moment"] = s.law.tail_moment;
  o.record("law", rec);
  std::string t = "n\tw_lambda_shell\n";
  for (size_t n = 0; n < s.law.shells.size(); ++n)
    if (s.law.shells[n] > 0.0) t += std::to_string(n) + "\t" + fmt("%.12e", s.law.shells[n]) + "\n";
  o.table("shells", t);
  std::string e = "u\tlength\tw\n";
  for (const auto& [u, w] : s.table.entries) e += quadruple_str(u) + "\t" + std::to_string(u.length()) + "\t" +
                                                   fmt("%.12e", w) + "\n";
  o.table("entries", e);
  std::cout << "lambda " << fmt("%.12g", s.law.lambda) << "  alpha " << fmt("%.12g", s.law.alpha) << "  mass-1 "
            << fmt("%.2e", s.law.mass - 1.0) << "\n";
}

std::vector<LocalEvent> events_of(const Context& c) {
  std::vector<LocalEvent> ev;
  std::stringstream ss(c.str("events", "plus@0:3,plus@0:1-2,iface_pm@0:2-1,minus@0:4"));
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      ev.push_back(parse_event(item));
    } catch (const Error& e) {
      throw ConfigError("bad event '" + item + "': " + e.what());
    }
  }
  return ev;
}

void run_renewal_compare(const Context& c, Output& o) {
  auto cache = cache_for(c);
  auto s = build_renewal_setup(c.p, c.pipeline(), cache.get());
  const auto events = events_of(c);
  const auto sizes = c.ints("torus_sizes", "16,24,32");
  o.record("law", law_json(s.law));
  std::string t = "L\tevent\tp_gibbs\tp_renewal\tgap\trenewal_residual\n";
  for (const auto& e : events) {
    auto r = local_event_probability(s.k, s.law, e, s.table.R_trunc);
    for (int L : sizes) {
      auto pb = pbc_by_transfer(s.bs, L);
      const double rel = pb.log_pbc - s.bs.p.beta * s.bs.lp * s.fit.p_plus * L;
      const double g = torus_event_probability(s.k, e, L, rel);
      o.record("compare", {{"L", L}, {"event", event_str(e)}, {"p_gibbs", g}, {"p_renewal", r.p},
                           {"gap", std::abs(g - r.p)}, {"renewal_residual", r.residual}});
      t += std::to_string(L) + "\t" + event_str(e) + "\t" + fmt("%.15e", g) + "\t" + fmt("%.15e", r.p) + "\t" +
           fmt("%.3e", std::abs(g - r.p)) + "\t" + fmt("%.3e", r.residual) + "\n";
    }
  }
  o.table("compare", t);
  std::cout << t;
}

void run_mcmc(const Context& c, Output& o) {
  McConfig cfg;
  cfg.L = c.integer("L", 32);
  cfg.sweeps = c.integer("sweeps", 20000);
  cfg.burn_in = c.integer("burn_in", 1000);
  cfg.thin = c.integer("thin", 5);
  cfg.seed = derive_seed(c.seed, 0);
  auto run = run_metropolis(c.p, cfg);
  std::string t = "sweep\tenergy\tmagnetization\tclass\n";
  std::vector<double> mags;
  for (size_t i = 0; i < run.sigma.size(); ++i) {
    Spins sp(run.sigma[i].begin(), run.sigma[i].end());
    double m = 0.0;
    for (int v : sp) m += v;
    m /= run.N;
    mags.push_back(m);
    auto cls = classify_pbc(phase_labels(sp, c.p, true).big_theta);
    t += std::to_string(run.sweep[i]) + "\t" + fmt("%.10g", run.energy[i]) + "\t" + fmt("%.10g", m) + "\t" +
         pbc_class_name(cls) + "\n";
  }
  o.table("samples", t);
  auto me = estimate_series(mags);
  o.record("magnetization", {{"mean", me.mean}, {"stderr", me.stderr_}, {"ess", me.ess}, {"tau", me.tau}});
  for (const auto& e : events_of(c)) {
    if (e.span() + 4 > cfg.L) continue;
    auto est = estimate_event(c.p, run, e);
    o.record("event", {{"event", event_str(e)}, {"mean", est.mean}, {"stderr", est.stderr_}, {"ess", est.ess},
                       {"tau", est.tau}});
  }
  auto st = interval_statistics(c.p, run);
  json counts;
  for (int k = 0; k < 4; ++k) counts[pbc_class_name(PbcClass(k))] = st.class_counts[k];
  o.record("intervals", {{"class_counts", counts},
                         {"plus_tail", {{"rate", st.plus_tail.rate}, {"chi2", st.plus_tail.chi2},
                                        {"dof", st.plus_tail.dof}, {"n", st.plus_tail.n}}},
                         {"minus_tail", {{"rate", st.minus_tail.rate}, {"chi2", st.minus_tail.chi2},
                                         {"dof", st.minus_tail.dof}, {"n", st.minus_tail.n}}}});
  std::string h = "kind\tlength\tcount\n";
  for (int k = 0; k < 4; ++k)
    for (size_t l = 0; l < st.histogram[k].size(); ++l)
      if (st.histogram[k][l]) h += atom_kind_name(AtomKind(k)) + "\t" + std::to_string(l) + "\t" +
                                   std::to_string(st.histogram[k][l]) + "\n";
  o.table("histogram", h);
  std::cout << "samples " << run.sigma.size() << "  magnetization " << fmt("%.4f", me.mean) << " +- "
            << fmt("%.4f", me.stderr_) << "  g-class " << st.class_counts[0] << "\n";
}

void run_contours(const Context& c, Output& o) {
  auto bs = build_block_space(c.p);
  std::vector<int> plus;
  for (int s = 0; s < bs.nb; ++s)
    if (bs.theta[s] == 1) plus.push_back(s);
  const int n_poly = c.integer("n_poly", 5);
  for (int n = 1; n <= n_poly; ++n) {
    auto r = polymer_partition(bs, n, plus.front(), plus.back());
    o.record("polymer", {{"n", n}, {"chains", r.chains}, {"log_z_plus", r.log_z_plus},
                         {"log_z_polymer", r.log_z_polymer}, {"rel_error", r.rel_error}});
    std::cout << "polymer n=" << n << " rel_error " << fmt("%.2e", r.rel_error) << "\n";
  }
  auto kp = kp_diagnostic(bs, c.integer("n_pool", 7), c.num("b_prime", 0.0));
  o.record("kp", {{"kp_sum", kp.kp_sum}, {"kp_holds", kp.kp_holds},
                  {"b_prime_threshold", std::isnan(kp.b_prime_threshold) ? json(nullptr) : json(kp.b_prime_threshold)},
                  {"peierls_slope", kp.peierls_slope}, {"peierls_r2", kp.peierls_r2}});
  auto pt = extract_potentials(bs, c.integer("n_potential", 8));
  o.record("potentials", {{"max_residual", pt.max_residual}, {"decay_slope", pt.decay_slope},
                          {"decay_r2", pt.decay_r2}});
  o.table("potentials", potential_table_tsv(pt));
  std::cout << "kp_sum " << fmt("%.4g", kp.kp_sum) << "  peierls slope " << fmt("%.4g", kp.peierls_slope)
            << "  u decay slope " << fmt("%.4g", pt.decay_slope) << "\n";
}

FunctionalConfig functional_of(const Context& c) {
  FunctionalConfig f;
  f.beta = c.num("instanton_beta", c.p.beta);
  f.kernel = c.p.kernel;
  f.convention = convention_from_name(c.str("convention", "lp_F5"));
  return f;
}

InstantonOptions instanton_options(const Context& c) {
  InstantonOptions io;
  io.L = c.num("domain", io.L);
  io.h = c.num("h", io.h);
  io.tol = c.num("instanton_tol", io.tol);
  io.damping = c.num("damping", io.damping);
  return io;
}

void run_instanton(const Context& c, Output& o) {
  auto f = functional_of(c);
  auto r = instanton_solve(f, instanton_options(c));
  o.record("instanton", {{"beta", f.beta}, {"residual", r.residual}, {"antisymmetry", r.antisymmetry},
                         {"fbar_excess_intro5", r.fbar_intro5}, {"fbar_lp_F5", r.fbar_F5},
                         {"iterations", r.iterations}, {"h", r.profile.h}, {"domain", r.profile.L}});
  o.table("profile", profile_tsv(r.profile));
  std::cout << "fbar lp_F5 " << fmt("%.10g", r.fbar_F5) << "  excess_intro5 " << fmt("%.10g", r.fbar_intro5)
            << "  residual " << fmt("%.2e", r.residual) << "\n";
}

StepDistribution steps_of(const Context& c) {
  std::map<int, double> q;
  std::stringstream ss(c.str("q", "8:0.5,9:0.5"));
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto colon = item.find(':');
    if (colon == std::string::npos) throw ConfigError("step law entries look like step:prob, got " + item);
    try {
      q[std::stoi(item.substr(0, colon))] += std::stod(item.substr(colon + 1));
    } catch (const std::logic_error&) {
      throw ConfigError("bad step law entry " + item);
    }
  }
  return make_step_distribution(q);
}

void run_efp(const Context& c, Output& o) {
  auto q = steps_of(c);
  const int n_max = c.integer("n_max", 2000);
  auto r = efp_dp(q, n_max, c.str("allow_periodic", "no") == "yes");
  o.record("dp", {{"n_max", n_max}, {"mean", r.mean}, {"limit", r.limit}, {"h_n_max", r.h[n_max]},
                  {"gap_n_max", std::abs(r.h[n_max] - r.limit)}, {"identity_error", r.identity_error},
                  {"decay_rate", r.decay_rate}, {"decay_r2", r.decay_r2}, {"periodic", r.periodic}});
  std::string t = "n\th\n";
  for (int n = 0; n <= n_max; ++n) t += std::to_string(n) + "\t" + fmt("%.17g", r.h[n]) + "\n";
  o.table("h", t);
  auto cp = efp_coupling(q, c.integer("x0", -100), c.integer("y0", -1000), derive_seed(c.seed, 1),
                         c.integer("trials", 100000));
  o.record("coupling", {{"trials", cp.trials}, {"met", cp.met}, {"rate", cp.rate}, {"r2", cp.r2}});
  std::string ct = "t\ttail\n";
  for (size_t i = 0; i < cp.t.size(); ++i) ct += std::to_string(cp.t[i]) + "\t" + fmt("%.10g", cp.tail[i]) + "\n";
  o.table("coupling", ct);
  std::cout << "limit " << fmt("%.15g", r.limit) << "  |h(n_max)-limit| " << fmt("%.2e", std::abs(r.h[n_max] - r.limit))
            << "  identity " << fmt("%.1e", r.identity_error) << "  coupling met " << cp.met << "/" << cp.trials
            << "  tail r2 " << fmt("%.5f", cp.r2) << "\n";
}

void run_scaling(const Context& c, Output& o) {
  const auto ranges = c.ints("ranges", "2,3,4");
  const int lp_ratio = c.integer("lp_ratio", 2), lm_ratio = c.integer("lm_ratio", 1);
  const int m = c.integer("m", 20), n_max = c.integer("n_max", 150);
  auto base = raw_of(c.p);
  std::vector<ScalingInput> fam;
  for (int r : ranges) {
    RawParams raw = base;
    raw.range = r;
    raw.len_plus = lp_ratio * r;
    raw.len_minus = lm_ratio * r;
    raw.len_cg = 1;
    auto po = c.pipeline();
    po.R_trunc = std::max(po.R_trunc, 2 * m + n_max + 2);
    auto s = build_renewal_setup(build_params(raw), po);
    auto st = surface_tension(s.bs, s.fit, s.it, m, n_max);
    fam.push_back({r, raw.beta, s.law.lambda, s.eps.eps, st.phi, st.tolerance});
    std::cout << "range " << r << " lambda " << fmt("%.6g", s.law.lambda) << " eps " << fmt("%.6g", s.eps.eps)
              << " phi " << fmt("%.6g", st.phi) << "\n";
  }
  auto f = functional_of(c);
  auto inst = instanton_solve(f, instanton_options(c));
  const double fbar = f.convention == Convention::lp_F5 ? inst.fbar_F5 : inst.fbar_intro5;
  auto rep = scaling_report(fam, fbar, f.convention);
  for (const auto& w : rep.rows)
    o.record("scaling", {{"gamma", w.gamma}, {"lambda", w.lambda}, {"eps", w.eps}, {"phi", w.phi},
                         {"lambda_over_eps", w.lambda_over_eps}, {"minus_gamma_log_eps", w.minus_gamma_log_eps},
                         {"gamma_phi", w.gamma_phi}, {"phi_check", w.phi_check}, {"tolerance", w.tolerance},
                         {"fbar", fbar}, {"convention", convention_name(rep.convention)}});
  o.record("trend", {{"slope", rep.trend_slope}, {"intercept", rep.trend_intercept},
                     {"log_eps_monotone", rep.log_eps_monotone}, {"fbar", fbar},
                     {"convention", convention_name(rep.convention)}});
  o.table("scaling", scaling_tsv(rep));
}

const std::map<std::string, std::function<void(const Context&, Output&)>>& registry() {
  static const std::map<std::string, std::function<void(const Context&, Output&)>> r = {
      {"pressure", run_pressure}, {"interface", run_interface}, {"weights", run_weights},
      {"renewal-compare", run_renewal_compare}, {"mcmc", run_mcmc}, {"contours", run_contours},
      {"instanton", run_instanton}, {"efp", run_efp}, {"scaling", run_scaling}};
  return r;
}

std::string valid_names() {
  std::string s;
  for (const auto& [k, v] : registry()) s += (s.empty() ? "" : ", ") + k;
  return s;
}

RawParams default_params() {
  RawParams r;
  r.beta = 2.0; r.zeta = 0.2; r.len_cg = 1; r.len_minus = 2; r.range = 4; r.len_plus = 4;
  return r;
}

RawParams params_from_json(const json& j) {
  static const std::vector<std::string> keys = {"beta", "zeta", "len_cg", "len_minus", "range", "len_plus", "kernel"};
  if (!j.is_object()) throw ConfigError("params must be an object");
  for (const auto& [k, v] : j.items())
    if (std::find(keys.begin(), keys.end(), k) == keys.end()) throw ConfigError("unknown params key: " + k);
  for (const auto& k : keys)
    if (!j.contains(k)) throw ConfigError("missing params key: " + k);
  try {
    RawParams r;
    r.beta = j.at("beta");
    r.zeta = j.at("zeta");
    r.len_cg = j.at("len_cg");
    r.len_minus = j.at("len_minus");
    r.range = j.at("range");
    r.len_plus = j.at("len_plus");
    r.kernel = j.at("kernel");
    return r;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad params value: ") + e.what());
  }
}

struct Flags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::vector<std::string> precision;
};

Context make_context(const std::string& subcommand, const Flags& f) {
  Context c;
  json cfg = json::object();
  if (!f.config.empty()) {
    std::ifstream in(f.config);
    if (!in) throw ConfigError("cannot open config " + f.config);
    try {
      cfg = json::parse(in);
    } catch (const json::exception& e) {
      throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
  }
  std::string name = subcommand;
  if (cfg.contains("experiment")) {
    const std::string e = cfg["experiment"];
    if (subcommand == "run") name = e;
    else if (e != subcommand) throw ConfigError("config names experiment " + e + " but subcommand is " + subcommand);
  }
  if (name == "run") throw ConfigError("run needs an experiment name in the config; valid names: " + valid_names());
  if (!registry().count(name)) throw ConfigError("unknown experiment '" + name + "'; valid names: " + valid_names());
  c.experiment = name;
  c.p = build_params(cfg.contains("params") ? params_from_json(cfg["params"]) : default_params());
  if (cfg.contains("seed")) c.seed = cfg["seed"].get<std::uint64_t>();
  if (cfg.contains("out")) c.out = cfg["out"].get<std::string>();
  if (cfg.contains("precision")) {
    for (const auto& [k, v] : cfg["precision"].items()) c.precision[k] = v.is_string() ? v.get<std::string>() : v.dump();
  }
  if (f.seed) c.seed = *f.seed;
  if (!f.out.empty()) c.out = f.out;
  for (const auto& kv : f.precision) {
    auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("--precision expects KEY=VAL, got " + kv);
    c.precision[kv.substr(0, eq)] = kv.substr(eq + 1);
  }
  for (const auto& [k, v] : c.precision)
    if (k.size() >= 3 && k.compare(k.size() - 3, 3, "tol") == 0 && !(c.num(k, 0.0) > 0.0))
      throw ConfigError("tolerance " + k + " must be positive");
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kaclab: Kac chain transfer, renewal and continuum experiments"};
  app.require_subcommand(1);
  Flags flags;
  std::vector<std::string> names = {"run"};
  for (const auto& [k, v] : registry()) names.push_back(k);
  for (const auto& n : names) {
    auto* sc = app.add_subcommand(n, n == "run" ? "run the experiment named in the config" : "experiment " + n);
    sc->add_option("--config", flags.config, "JSON config with params, precision, seed, out");
    sc->add_option("--seed", flags.seed, "root seed");
    sc->add_option("--out", flags.out, "output directory");
    sc->add_option("--precision", flags.precision, "KEY=VAL override, repeatable");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  const std::string sub = app.get_subcommands().front()->get_name();
  try {
    Context c = make_context(sub, flags);
    Output out(c);
    const auto t0 = std::chrono::steady_clock::now();
    registry().at(c.experiment)(c, out);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cerr << c.experiment << " done in " << fmt("%.2f", secs) << " s, outputs in " << c.out.string() << "\n";
    return 0;
  } catch (const ConfigFailure& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
