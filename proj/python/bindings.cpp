#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>

#include "kac/contours.hpp"
#include "kac/continuum.hpp"
#include "kac/efp.hpp"
#include "kac/mcmc.hpp"
#include "kac/pipeline.hpp"
#include "kac/renewal.hpp"
#include "kac/surface.hpp"
#include "kac/torus.hpp"

namespace py = pybind11;
using namespace kac;

namespace {

EnsembleConstraint constraint_of(const std::string& kind, int n, const std::vector<int>& spec) {
  if (kind == "free") return EnsembleConstraint::free_chain(n);
  if (kind == "plus_ensemble") return EnsembleConstraint::plus_ensemble(n);
  if (kind == "plus_interval") return EnsembleConstraint::plus_interval(n);
  if (kind == "iface_pm") return EnsembleConstraint::iface_pm(n);
  if (kind == "iface_mp") return EnsembleConstraint::iface_mp(n);
  if (kind == "theta_spec") {
    if (int(spec.size()) != n) throw ConfigError("theta_spec needs a spec of length n");
    return EnsembleConstraint::theta_spec(spec);
  }
  throw ConfigError("unknown constraint '" + kind +
                    "' (valid: free, plus_ensemble, plus_interval, iface_pm, iface_mp, theta_spec)");
}

py::dict law_dict(const RenewalLaw& l) {
  py::dict d;
  d["lambda"] = l.lambda;
  d["alpha"] = l.alpha;
  d["mass"] = l.mass;
  d["tail"] = l.tail;
  d["tail_moment"] = l.tail_moment;
  d["eps"] = l.eps;
  d["lambda_over_eps"] = l.lambda_over_eps;
  d["alpha_over_half_eps"] = l.alpha_over_half_eps;
  d["iterations"] = l.iterations;
  return d;
}

// Owns the block space and every table derived from it.
struct Setup {
  std::shared_ptr<RenewalSetup> s;
};

}  // namespace

PYBIND11_MODULE(_kaclab, m) {
  m.doc() = "Block-spin transfer, renewal and continuum numerics for one-dimensional Kac-Ising chains";

  auto base = py::register_exception<Error>(m, "KacError", PyExc_RuntimeError);
  auto config = py::register_exception<ConfigFailure>(m, "ConfigFailure", base.ptr());
  auto numerical = py::register_exception<NumericalFailure>(m, "NumericalFailure", base.ptr());
  py::register_exception<ParamError>(m, "ParamError", config.ptr());
  py::register_exception<DivisibilityError>(m, "DivisibilityError", config.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", config.ptr());
  py::register_exception<EmptyEnsembleError>(m, "EmptyEnsembleError", numerical.ptr());
  py::register_exception<NonConvergence>(m, "NonConvergence", numerical.ptr());
  py::register_exception<AdmissibilityError>(m, "AdmissibilityError", base.ptr());
  py::register_exception<SizeError>(m, "SizeError", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<WindowError>(m, "WindowError", base.ptr());
  py::register_exception<PeriodicSupportWarning>(m, "PeriodicSupportWarning", base.ptr());

  py::class_<ModelParams>(m, "Params")
      .def(py::init([](double beta, double zeta, int len_cg, int len_minus, int range, int len_plus,
                       const std::string& kernel) {
             return build_params({beta, zeta, len_cg, len_minus, range, len_plus, kernel});
           }),
           py::arg("beta") = 2.0, py::arg("zeta") = 0.2, py::arg("len_cg") = 1, py::arg("len_minus") = 2,
           py::arg("range") = 4, py::arg("len_plus") = 4, py::arg("kernel") = "triangular")
      .def_static("parse", &parse_params, py::arg("text"))
      .def_readonly("beta", &ModelParams::beta)
      .def_readonly("zeta", &ModelParams::zeta)
      .def_readonly("len_cg", &ModelParams::len_cg)
      .def_readonly("len_minus", &ModelParams::len_minus)
      .def_readonly("range", &ModelParams::range)
      .def_readonly("len_plus", &ModelParams::len_plus)
      .def_readonly("m_beta", &ModelParams::m_beta)
      .def_readonly("coupling", &ModelParams::coupling)
      .def_property_readonly("kernel", [](const ModelParams& p) { return kernel_name(p.kernel); })
      .def("serialize", &serialize_params)
      .def("hash", [](const ModelParams& p) { return hex64(params_hash(p)); })
      .def("__repr__", [](const ModelParams& p) { return "Params(" + serialize_params(p) + ")"; });

  m.def("solve_m_beta", &solve_m_beta, py::arg("beta"));
  m.def("entropy", &entropy, py::arg("m"));
  m.def("mf_free_energy", &mf_free_energy, py::arg("m"), py::arg("beta"));
  m.def("energy_pbc", &energy_pbc, py::arg("params"), py::arg("spins"));

  m.def(
      "phase_labels",
      [](const ModelParams& p, const Spins& s, bool cyclic) {
        auto l = phase_labels(s, p, cyclic);
        py::dict d;
        d["eta"] = l.eta;
        d["theta"] = l.theta;
        d["big_theta"] = l.big_theta;
        if (cyclic) {
          const auto cls = classify_pbc(l.big_theta);
          d["pbc_class"] = pbc_class_name(cls);
          // Only class-g tori carry an interval partition.
          if (cls == PbcClass::g) d["partition"] = serialize_partition(decompose(l.big_theta, true));
        }
        return d;
      },
      py::arg("params"), py::arg("spins"), py::arg("cyclic") = true);

  m.def(
      "restricted_log_z",
      [](const ModelParams& p, const std::string& kind, int n, int s0, int s_right, const std::vector<int>& spec) {
        return restricted_log_z(build_block_space(p), n, s0, s_right, constraint_of(kind, n, spec));
      },
      py::arg("params"), py::arg("kind"), py::arg("n"), py::arg("s0"), py::arg("s_right"),
      py::arg("spec") = std::vector<int>{});

  m.def(
      "pbc_decomposition",
      [](const ModelParams& p, int L) {
        auto t = pbc_decomposition(build_block_space(p), L);
        py::dict d;
        d["L"] = t.L;
        d["exact_enumeration"] = t.exact_enumeration;
        d["log_pbc"] = t.log_pbc;
        d["log_g"] = t.log_g;
        d["log_X0"] = t.log_X0;
        d["log_Xplus"] = t.log_Xplus;
        d["log_Xminus"] = t.log_Xminus;
        return d;
      },
      py::arg("params"), py::arg("L"));

  m.def(
      "surface_tension",
      [](const ModelParams& p, int m_collar, int n_max, int fit_n_min, int fit_n_max, double eps_tol) {
        auto bs = build_block_space(p);
        const int n_table = 2 * m_collar + n_max + 4;
        auto fit = fit_boundary(bs, fit_n_min, fit_n_max, n_table);
        auto it = interface_table(bs, fit, n_table);
        auto eps = eps_total(it, eps_tol);
        auto st = surface_tension(bs, fit, it, m_collar, n_max);
        py::dict d;
        d["p_plus"] = fit.p_plus;
        d["eps"] = eps.eps;
        d["phi"] = st.phi;
        d["exp_minus_beta_phi"] = st.weight;
        d["relative_gap"] = std::abs(st.weight - eps.eps) / eps.eps;
        d["tolerance"] = st.tolerance;
        return d;
      },
      py::arg("params"), py::arg("m") = 20, py::arg("n_max") = 150, py::arg("fit_n_min") = 20,
      py::arg("fit_n_max") = 40, py::arg("eps_tol") = 1e-6);

  py::class_<Setup>(m, "RenewalSetup")
      .def(py::init([](const ModelParams& p, int R_trunc, int R_enum, int fit_n_min, int fit_n_max) {
             PipelineOptions o;
             o.R_trunc = R_trunc;
             o.R_enum = R_enum;
             o.fit_n_min = fit_n_min;
             o.fit_n_max = fit_n_max;
             return Setup{std::make_shared<RenewalSetup>(build_renewal_setup(p, o))};
           }),
           py::arg("params"), py::arg("R_trunc") = 400, py::arg("R_enum") = 16, py::arg("fit_n_min") = 20,
           py::arg("fit_n_max") = 40)
      .def_property_readonly("law", [](const Setup& s) { return law_dict(s.s->law); })
      .def_property_readonly("p_plus", [](const Setup& s) { return s.s->fit.p_plus; })
      .def_property_readonly("eps", [](const Setup& s) { return s.s->eps.eps; })
      .def_property_readonly("shells", [](const Setup& s) { return py::array(py::cast(s.s->law.shells)); })
      .def_property_readonly("entries",
                             [](const Setup& s) {
                               py::list out;
                               for (const auto& [u, w] : s.s->table.entries)
                                 out.append(py::make_tuple(quadruple_str(u), u.length(), w));
                               return out;
                             })
      .def("mass", [](const Setup& s, double lambda) { return s.s->table.mass(lambda); }, py::arg("lambda_"))
      .def(
          "event_probability",
          [](const Setup& s, const std::string& e) {
            auto r = local_event_probability(s.s->k, s.s->law, parse_event(e), s.s->table.R_trunc);
            return py::make_tuple(r.p, r.residual);
          },
          py::arg("event"))
      .def(
          "torus_event_probability",
          [](const Setup& s, const std::string& e, int L) {
            const auto& r = *s.s;
            auto pb = pbc_by_transfer(r.bs, L);
            const double rel = pb.log_pbc - r.bs.p.beta * r.bs.lp * r.fit.p_plus * L;
            return torus_event_probability(r.k, parse_event(e), L, rel);
          },
          py::arg("event"), py::arg("L"))
      .def(
          "sample_rods",
          [](const Setup& s, int window, std::uint64_t seed, int R) {
            RodSampler rs(s.s->k, s.s->law, R);
            auto seq = sample_stationary_renewal(rs, window, seed);
            py::list out;
            for (const auto& r : seq.rods) out.append(py::make_tuple(r.x, quadruple_str(r.u), r.u.length()));
            return out;
          },
          py::arg("window"), py::arg("seed"), py::arg("R") = 400);

  m.def(
      "efp",
      [](const std::map<int, double>& q, int n_max, bool allow_periodic) {
        auto r = efp_dp(make_step_distribution(q), n_max, allow_periodic);
        py::dict d;
        d["h"] = py::array(py::cast(r.h));
        d["limit"] = r.limit;
        d["mean"] = r.mean;
        d["periodic"] = r.periodic;
        d["identity_error"] = r.identity_error;
        d["decay_rate"] = r.decay_rate;
        d["decay_r2"] = r.decay_r2;
        return d;
      },
      py::arg("q"), py::arg("n_max") = 2000, py::arg("allow_periodic") = false);

  m.def(
      "coupling",
      [](const std::map<int, double>& q, std::int64_t x0, std::int64_t y0, std::uint64_t seed, int trials) {
        auto r = efp_coupling(make_step_distribution(q), x0, y0, seed, trials);
        py::dict d;
        d["trials"] = r.trials;
        d["met"] = r.met;
        d["sums"] = py::array(py::cast(r.sums));
        d["rate"] = r.rate;
        d["r2"] = r.r2;
        return d;
      },
      py::arg("q"), py::arg("x0") = -100, py::arg("y0") = -1000, py::arg("seed") = 0, py::arg("trials") = 100000);

  m.def(
      "metropolis",
      [](const ModelParams& p, int L, long sweeps, long burn_in, long thin, std::uint64_t seed,
         const std::vector<std::string>& events) {
        McConfig c;
        c.L = L;
        c.sweeps = sweeps;
        c.burn_in = burn_in;
        c.thin = thin;
        c.seed = seed;
        auto run = run_metropolis(p, c);
        py::array_t<std::int8_t> sigma({py::ssize_t(run.sigma.size()), py::ssize_t(run.N)});
        auto v = sigma.mutable_unchecked<2>();
        for (size_t i = 0; i < run.sigma.size(); ++i)
          for (int k = 0; k < run.N; ++k) v(i, k) = run.sigma[i][k];
        py::dict d;
        d["sigma"] = sigma;
        d["energy"] = py::array(py::cast(run.energy));
        d["sweep"] = py::array(py::cast(run.sweep));
        py::dict ev;
        for (const auto& e : events) {
          auto est = estimate_event(p, run, parse_event(e));
          ev[py::str(e)] = py::make_tuple(est.mean, est.stderr_, est.tau);
        }
        d["events"] = ev;
        return d;
      },
      py::arg("params"), py::arg("L"), py::arg("sweeps"), py::arg("burn_in") = 1000, py::arg("thin") = 5,
      py::arg("seed") = 0, py::arg("events") = std::vector<std::string>{});

  m.def(
      "polymer_partition",
      [](const ModelParams& p, int n, int s0, int s_right) {
        auto r = polymer_partition(build_block_space(p), n, s0, s_right);
        py::dict d;
        d["log_z_plus"] = r.log_z_plus;
        d["log_z_polymer"] = r.log_z_polymer;
        d["rel_error"] = r.rel_error;
        d["chains"] = r.chains;
        return d;
      },
      py::arg("params"), py::arg("n"), py::arg("s0"), py::arg("s_right"));

  m.def(
      "potentials",
      [](const ModelParams& p, int n_max) {
        auto t = extract_potentials(build_block_space(p), n_max);
        py::dict d;
        py::list e;
        for (const auto& x : t.entries) e.append(py::make_tuple(x.a, x.b, x.value));
        d["entries"] = e;
        d["max_residual"] = t.max_residual;
        d["decay_slope"] = t.decay_slope;
        return d;
      },
      py::arg("params"), py::arg("n_max") = 8);

  m.def(
      "kp_diagnostic",
      [](const ModelParams& p, int n_pool, double b_prime) {
        auto r = kp_diagnostic(build_block_space(p), n_pool, b_prime);
        py::dict d;
        d["kp_sum"] = r.kp_sum;
        d["kp_holds"] = r.kp_holds;
        d["b_prime_threshold"] = r.b_prime_threshold;
        d["peierls_slope"] = r.peierls_slope;
        return d;
      },
      py::arg("params"), py::arg("n_pool") = 8, py::arg("b_prime") = 0.0);

  m.def(
      "instanton",
      [](double beta, const std::string& kernel, double L, double h, double tol) {
        FunctionalConfig f;
        f.convention = Convention::lp_F5;
        f.beta = beta;
        f.kernel = kernel_from_name(kernel);
        InstantonOptions o;
        o.L = L;
        o.h = h;
        o.tol = tol;
        auto r = instanton_solve(f, o);
        std::vector<double> x(r.profile.size());
        for (int i = 0; i < r.profile.size(); ++i) x[i] = r.profile.r(i);
        py::dict d;
        d["r"] = py::array(py::cast(x));
        d["m"] = py::array(py::cast(r.profile.m));
        d["residual"] = r.residual;
        d["antisymmetry"] = r.antisymmetry;
        d["fbar_F5"] = r.fbar_F5;
        d["fbar_intro5"] = r.fbar_intro5;
        d["iterations"] = r.iterations;
        return d;
      },
      py::arg("beta"), py::arg("kernel") = "triangular", py::arg("L") = 12.0, py::arg("h") = 0.05,
      py::arg("tol") = 1e-8);
}
