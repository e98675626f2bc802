#include "detgeo/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "detgeo/json_io.hpp"

namespace detgeo {

using nlohmann::json;

namespace {

struct SuiteMeta {
  SuiteId id;
  const char* name;
  bool fd;
};

constexpr SuiteMeta kSuites[] = {
    {SuiteId::schatten, "schatten", false},
    {SuiteId::regdet, "regdet", false},
    {SuiteId::preline, "preline", false},
    {SuiteId::connection, "connection", false},
    {SuiteId::descent, "descent", true},
    {SuiteId::curvature, "curvature", true},
    {SuiteId::closedness, "closedness", true},
    {SuiteId::cocycle, "cocycle", false},
    {SuiteId::coboundary, "coboundary", false},
    {SuiteId::identities, "identities", false},
    {SuiteId::dlogf, "dlogf", true},
};

const SuiteMeta& meta(SuiteId id) {
  for (const auto& m : kSuites) {
    if (m.id == id) return m;
  }
  throw InvalidInputError("unknown suite id");
}

Rng trial_rng(SuiteId id, int trial, const SuiteConfig& cfg) {
  return Rng(cfg.seed)
      .split(static_cast<std::uint64_t>(id) + 1)
      .split(static_cast<std::uint64_t>(trial) + 1);
}

void put(json* capture, const char* key, const CMat& m) {
  if (capture) (*capture)[key] = matrix_to_json(m);
}

void put_frame(json* capture, const char* key, const Frame& w) {
  if (capture) (*capture)[key] = frame_to_json(w);
}

void put_point(json* capture, const char* key, const GrassmannPoint& p) {
  if (capture) (*capture)[key] = point_to_json(p);
}

CMat bounded_general(Index n, Rng& rng, double bound) {
  CMat g = random_matrix(n, n, rng);
  double nrm = operator_norm(g);
  if (nrm > 0.0) g *= bound / nrm;
  return g;
}

double relative_gap(Cplx got, Cplx want) {
  return std::abs(got - want) / std::max(1.0, std::abs(want));
}

// --- suite trials ---------------------------------------------------------

double schatten_trial(int trial, const SuiteConfig& cfg, json* capture) {
  Rng rng = trial_rng(SuiteId::schatten, trial, cfg);
  const Index n = cfg.dim_plus + cfg.dim_minus;
  CMat a = random_matrix(n, n, rng);
  CMat b = random_matrix(n, n, rng);
  put(capture, "A", a);
  put(capture, "B", b);

  double res = 0.0;
  const double triples[][3] = {{1.0, 2.0, 2.0}, {2.0, 4.0, 4.0}};
  for (const auto& t : triples) {
    double lhs = schatten_norm(a * b, t[0]);
    double rhs = schatten_norm(a, t[1]) * schatten_norm(b, t[2]);
    res = std::max(res, lhs - rhs);  // positive only when the inequality fails
  }
  double s2 = schatten_norm(a, 2.0);
  double frob2 = (a * a.adjoint()).trace().real();
  res = std::max(res, std::abs(s2 * s2 - frob2) / std::max(1.0, frob2));
  return std::max(res, 0.0);
}

double regdet_trial(int trial, const SuiteConfig& cfg, json* capture) {
  Rng rng = trial_rng(SuiteId::regdet, trial, cfg);
  const Index n = cfg.dim_plus + cfg.dim_minus;
  CMat a = bounded_general(n, rng, 0.45);
  CMat b = bounded_general(n, rng, 0.45);
  put(capture, "A", a);
  put(capture, "B", b);

  const CMat eye = CMat::Identity(n, n);
  Cplx d2 = det2(a);
  Cplx closed = determinant(CMat(eye + a)) * std::exp(-a.trace());
  double res = std::abs(d2 - closed) / std::max(1.0, std::abs(closed));
  res = std::max(res, std::abs(det_reg(a, 1).value - determinant(CMat(eye + a))));
  res = std::max(res, anomaly_residual(a, b));
  res = std::max(res, relative_gap(det2_series(a), d2));
  return res;
}

double preline_trial(int trial, const SuiteConfig& cfg, json* capture) {
  Rng rng = trial_rng(SuiteId::preline, trial, cfg);
  Polarization pol{cfg.dim_plus, cfg.dim_minus};
  Frame w0 = random_frame(pol, rng);
  GaugeElement g1 = random_gauge(pol.n_plus, rng);
  GaugeElement g2 = random_gauge(pol.n_plus, rng);
  GaugeElement g3 = random_gauge(pol.n_plus, rng);
  put_frame(capture, "w0", w0);
  put(capture, "g1", g1);
  put(capture, "g2", g2);
  put(capture, "g3", g3);

  Frame w1{w0.w * g1, pol}, w2{w0.w * g2, pol}, w3{w0.w * g3, pol};
  Cplx chain = fiber_cocycle(w2, w3) * fiber_cocycle(w1, w2) / fiber_cocycle(w1, w3);
  double res = std::abs(chain - 1.0);
  res = std::max(res, std::abs(fiber_cocycle(w1, w1) - 1.0));

  // Twist compatibility under composition of gauges.
  CMat wp = top_block(w1.w, pol);
  Cplx lhs = det2_twist(wp, CMat(g2 * g3));
  Cplx rhs = det2_twist(wp, g2) * det2_twist(top_block(CMat(w1.w * g2), pol), g3);
  res = std::max(res, relative_gap(lhs, rhs));
  return res;
}

double connection_trial(int trial, const SuiteConfig& cfg, json* capture) {
  Rng rng = trial_rng(SuiteId::connection, trial, cfg);
  Polarization pol{cfg.dim_plus, cfg.dim_minus};
  Frame w = random_frame(pol, rng);
  FrameTangent dw = random_matrix(pol.dim(), pol.n_plus, rng);
  CMat xi = random_matrix(pol.n_plus, pol.n_plus, rng);
  GaugeElement g = random_gauge(pol.n_plus, rng);
  put_frame(capture, "w", w);
  put(capture, "dw", dw);
  put(capture, "xi", xi);
  put(capture, "g", g);

  const CMat eye = CMat::Identity(pol.n_plus, pol.n_plus);
  CMat wp = top_block(w.w, pol);

  Cplx three_term = connection_form(w, dw);
  Cplx grouped = -((wp - eye) * theta_modified(w, dw)).trace() -
                 top_block(horizontal_projection(w, dw), pol).trace();
  double res = std::abs(three_term - grouped);

  Cplx vertical = connection_form(w, CMat(w.w * xi));
  res = std::max(res, std::abs(vertical + ((wp - eye) * xi).trace()));

  Frame wg{w.w * g, pol};
  CMat ginv = pseudo_inverse(g);
  res = std::max(res,
                 (theta_plain(wg, CMat(dw * g)) - ginv * theta_plain(w, dw) * g).norm());
  res = std::max(res, (theta_modified(wg, CMat(dw * g)) -
                       ginv * theta_modified(w, dw) * g)
                          .norm());
  return res;
}

double descent_trial(int trial, const SuiteConfig& cfg, json* capture) {
  Rng rng = trial_rng(SuiteId::descent, trial, cfg);
  Polarization pol{cfg.dim_plus, cfg.dim_minus};
  Frame w = random_frame(pol, rng);
  Cplx z = std::exp(rng.cnormal());
  FrameTangent dw = random_matrix(pol.dim(), pol.n_plus, rng, 0.5);
  Cplx dz = 0.5 * rng.cnormal();
  GaugeElement g = random_gauge(pol.n_plus, rng);
  CMat gdot = random_matrix(pol.n_plus, pol.n_plus, rng, 0.5);
  put_frame(capture, "w", w);
  put(capture, "dw", dw);
  put(capture, "g", g);
  put(capture, "gdot", gdot);
  if (capture) {
    (*capture)["z"] = json{{"re", z.real()}, {"im", z.imag()}};
    (*capture)["dz"] = json{{"re", dz.real()}, {"im", dz.imag()}};
  }

  return descent_residual(BundlePoint{w, z}, BundleTangent{dw, dz}, g, gdot, cfg.fd_step);
}

double curvature_trial(int trial, const SuiteConfig& cfg, json* capture) {
  Rng rng = trial_rng(SuiteId::curvature, trial, cfg);
  Polarization pol{cfg.dim_plus, cfg.dim_minus};
  Frame w0 = random_frame(pol, rng);
  CMat s = random_matrix(pol.dim(), pol.n_plus, rng, 0.4);
  CMat t = random_matrix(pol.dim(), pol.n_plus, rng, 0.4);
  CMat m = random_matrix(pol.dim(), pol.n_plus, rng, 0.4);
  put_frame(capture, "w0", w0);
  put(capture, "S", s);
  put(capture, "T", t);
  put(capture, "M", m);

  FrameSurface surface = [&](double ss, double tt) {
    return Frame{w0.w + ss * s + tt * t + (ss * tt) * m, pol};
  };

  // d(connection form) against the base curvature two-form.
  FrameOneForm conn = [](const Frame& f, const FrameTangent& v) {
    return connection_form(f, v);
  };
  Cplx d_conn = fd_exterior_derivative(conn, surface, cfg.fd_step);
  Cplx pullback = fd_curvature_pullback(surface, cfg.fd_step);
  double res = std::abs(d_conn - pullback) / std::max(1.0, std::abs(pullback));

  // Structure equation for the plain frame connection.
  CMat lhs = connection_curvature(w0, s, t);
  auto theta_t = [&](double ss) {
    Frame base = surface(ss, 0.0);
    CMat dt = fd_matrix_derivative([&](double tt) { return surface(ss, tt).w; },
                                   cfg.fd_step);
    return CMat(theta_plain(base, dt));
  };
  auto theta_s = [&](double tt) {
    Frame base = surface(0.0, tt);
    CMat ds = fd_matrix_derivative([&](double ss) { return surface(ss, tt).w; },
                                   cfg.fd_step);
    return CMat(theta_plain(base, ds));
  };
  CMat d_theta =
      fd_matrix_derivative([&](double ss) { return theta_t(ss); }, cfg.fd_step) -
      fd_matrix_derivative([&](double tt) { return theta_s(tt); }, cfg.fd_step);
  CMat th_s = theta_plain(w0, s);
  CMat th_t = theta_plain(w0, t);
  CMat rhs = d_theta + th_s * th_t - th_t * th_s;
  res = std::max(res, (lhs - rhs).norm() / std::max(1.0, lhs.norm()));
  return res;
}

double closedness_trial(int trial, const SuiteConfig& cfg, json* capture) {
  Rng rng = trial_rng(SuiteId::closedness, trial, cfg);
  Polarization pol{cfg.dim_plus, cfg.dim_minus};
  Frame w0 = random_frame(pol, rng);
  CMat s = random_matrix(pol.dim(), pol.n_plus, rng, 0.4);
  CMat t = random_matrix(pol.dim(), pol.n_plus, rng, 0.4);
  CMat u = random_matrix(pol.dim(), pol.n_plus, rng, 0.4);
  CMat st = random_matrix(pol.dim(), pol.n_plus, rng, 0.3);
  CMat su = random_matrix(pol.dim(), pol.n_plus, rng, 0.3);
  CMat tu = random_matrix(pol.dim(), pol.n_plus, rng, 0.3);
  put_frame(capture, "w0", w0);
  put(capture, "S", s);
  put(capture, "T", t);
  put(capture, "U", u);
  put(capture, "ST", st);
  put(capture, "SU", su);
  put(capture, "TU", tu);

  FrameVolume volume = [&](double a, double b, double c) {
    return Frame{w0.w + a * s + b * t + c * u + (a * b) * st + (a * c) * su +
                     (b * c) * tu,
                 pol};
  };
  return closedness_residual(volume, cfg.fd_step);
}

double cocycle_trial(int trial, const SuiteConfig& cfg, json* capture) {
  Rng rng = trial_rng(SuiteId::cocycle, trial, cfg);
  Polarization pol{cfg.dim_plus, cfg.dim_minus};
  GrassmannPoint p = random_point(pol, 0.8, rng);
  CMat x = bounded_general(pol.dim(), rng, 1.0);
  CMat y = bounded_general(pol.dim(), rng, 1.0);
  CMat z = bounded_general(pol.dim(), rng, 1.0);
  put_point(capture, "F", p);
  put(capture, "X", x);
  put(capture, "Y", y);
  put(capture, "Z", z);

  CocycleForm alg = algebraic_cocycle_form(pol);
  CocycleForm geo = geometric_cocycle_form(pol);
  double res = cocycle_residual(alg, p, x, y, z);
  res = std::max(res, cocycle_residual(geo, p, x, y, z));
  res = std::max(res,
                 std::abs(cocycle_algebraic(p, x, y) - cocycle_algebraic_conditional(p, x, y)));
  Cplx geo_xy = cocycle_geometric(p, x, y);
  Cplx curv = curvature_form(p, bracket(p.F, x), bracket(p.F, y));
  res = std::max(res, std::abs(geo_xy + curv));
  res = std::max(res, std::abs(cocycle_algebraic(p, x, y) + cocycle_algebraic(p, y, x)));
  res = std::max(res, std::abs(geo_xy + cocycle_geometric(p, y, x)));
  return res;
}

double coboundary_trial(int trial, const SuiteConfig& cfg, json* capture) {
  Rng rng = trial_rng(SuiteId::coboundary, trial, cfg);
  Polarization pol{cfg.dim_plus, cfg.dim_minus};
  GrassmannPoint p = random_point(pol, 0.8, rng);
  CMat x = bounded_general(pol.dim(), rng, 1.0);
  CMat y = bounded_general(pol.dim(), rng, 1.0);
  Frame w = random_frame(pol, rng);
  GaugeElement g = random_gauge(pol.n_plus, rng);
  put_point(capture, "F", p);
  put(capture, "X", x);
  put(capture, "Y", y);
  put_frame(capture, "w", w);
  put(capture, "g", g);

  double res = coboundary_relation_residual(p, x, y);
  res = std::max(res, coboundary_via_connection_residual(w, x));
  res = std::max(res, coboundary_via_connection_residual(Frame{w.w * g, pol}, x));
  return res;
}

double identities_trial(int trial, const SuiteConfig& cfg, json* capture) {
  Rng rng = trial_rng(SuiteId::identities, trial, cfg);
  Polarization pol{cfg.dim_plus, cfg.dim_minus};
  GrassmannPoint p = random_point(pol, 0.8, rng);
  Frame w = random_frame(pol, rng);
  put_point(capture, "F", p);
  put_frame(capture, "w", w);

  double res = involution_identity_residuals(p).max();
  res = std::max(res, frame_identity_residuals(w).max());
  res = std::max(res, h_conjugation_residual(w));
  return res;
}

double dlogf_trial(int trial, const SuiteConfig& cfg, json* capture) {
  Rng rng = trial_rng(SuiteId::dlogf, trial, cfg);
  Polarization pol{cfg.dim_plus, cfg.dim_minus};
  Frame w0 = random_frame(pol, rng);
  CMat x0 = random_matrix(pol.dim(), pol.n_plus, rng, 0.5);
  CMat x1 = random_matrix(pol.dim(), pol.n_plus, rng, 0.5);
  GaugeElement g0 = random_gauge(pol.n_plus, rng);
  CMat gdot = random_matrix(pol.n_plus, pol.n_plus, rng, 0.5);
  put_frame(capture, "w0", w0);
  put(capture, "X0", x0);
  put(capture, "X1", x1);
  put(capture, "g0", g0);
  put(capture, "gdot", gdot);

  FramePairCurve curve = [&](double t) {
    CMat w1 = w0.w + t * x0 + (t * t) * x1;
    CMat g = g0 + t * gdot;
    return std::make_pair(Frame{w1, pol}, Frame{w1 * g, pol});
  };
  return dlogf_residual(curve, cfg.fd_step);
}

}  // namespace

const char* suite_name(SuiteId id) {
  return meta(id).name;
}

std::optional<SuiteId> suite_from_name(std::string_view name) {
  for (const auto& m : kSuites) {
    if (name == m.name) return m.id;
  }
  if (name == "appendixA") return SuiteId::identities;
  if (name == "appendixB") return SuiteId::dlogf;
  return std::nullopt;
}

std::vector<SuiteId> all_suites() {
  std::vector<SuiteId> out;
  for (const auto& m : kSuites) out.push_back(m.id);
  return out;
}

bool suite_uses_fd_tolerance(SuiteId id) {
  return meta(id).fd;
}

double run_suite_trial(SuiteId id, int trial, const SuiteConfig& cfg, json* capture) {
  switch (id) {
    case SuiteId::schatten:
      return schatten_trial(trial, cfg, capture);
    case SuiteId::regdet:
      return regdet_trial(trial, cfg, capture);
    case SuiteId::preline:
      return preline_trial(trial, cfg, capture);
    case SuiteId::connection:
      return connection_trial(trial, cfg, capture);
    case SuiteId::descent:
      return descent_trial(trial, cfg, capture);
    case SuiteId::curvature:
      return curvature_trial(trial, cfg, capture);
    case SuiteId::closedness:
      return closedness_trial(trial, cfg, capture);
    case SuiteId::cocycle:
      return cocycle_trial(trial, cfg, capture);
    case SuiteId::coboundary:
      return coboundary_trial(trial, cfg, capture);
    case SuiteId::identities:
      return identities_trial(trial, cfg, capture);
    case SuiteId::dlogf:
      return dlogf_trial(trial, cfg, capture);
  }
  throw InvalidInputError("run_suite_trial: unknown suite id");
}

namespace {

void validate_config(const SuiteConfig& cfg) {
  if (cfg.dim_plus < 1 || cfg.dim_minus < 1) {
    throw InvalidInputError("config: dimensions must be at least 1");
  }
  if (cfg.trials < 1) {
    throw InvalidInputError("config: trials must be at least 1");
  }
  if (!(cfg.tol_exact > 0.0) || !(cfg.tol_fd > 0.0) || !(cfg.fd_step > 0.0)) {
    throw InvalidInputError("config: tolerances and step must be positive");
  }
}

json config_to_json(const SuiteConfig& cfg) {
  json names = json::array();
  for (SuiteId id : cfg.suites) names.push_back(suite_name(id));
  return json{{"dim_plus", cfg.dim_plus}, {"dim_minus", cfg.dim_minus},
              {"trials", cfg.trials},     {"seed", cfg.seed},
              {"tol_exact", cfg.tol_exact}, {"tol_fd", cfg.tol_fd},
              {"fd_step", cfg.fd_step},   {"suites", names}};
}

}  // namespace

SuiteReport run_suites(const SuiteConfig& cfg) {
  validate_config(cfg);
  SuiteReport report;
  report.version = kVersion;
  report.config = cfg;
  if (report.config.suites.empty()) report.config.suites = all_suites();
  report.pass = true;

  for (SuiteId id : report.config.suites) {
    SuiteResult result;
    result.id = id;
    result.name = suite_name(id);
    result.tolerance = suite_uses_fd_tolerance(id) ? cfg.tol_fd : cfg.tol_exact;

    double max_res = 0.0;
    int worst_trial = -1;
    bool unstable = false;
    for (int t = 0; t < cfg.trials; ++t) {
      double res;
      try {
        res = run_suite_trial(id, t, cfg, nullptr);
      } catch (const NumericalInstabilityError& err) {
        result.note = std::string("trial ") + std::to_string(t) + ": " + err.what();
        unstable = true;
        break;
      }
      ++result.trials;
      if (worst_trial < 0 || res > max_res || std::isnan(res)) {
        max_res = res;
        worst_trial = t;
      }
    }
    result.max_residual = max_res;
    result.pass = !unstable && result.trials == cfg.trials && max_res <= result.tolerance;

    if (worst_trial >= 0) {
      result.worst.trial = worst_trial;
      result.worst.residual = max_res;
      json inputs;
      run_suite_trial(id, worst_trial, cfg, &inputs);
      result.worst.inputs = std::move(inputs);
    }

    report.pass = report.pass && result.pass;
    report.suites.push_back(std::move(result));
  }
  return report;
}

nlohmann::json report_to_json(const SuiteReport& report) {
  json suites = json::array();
  for (const auto& s : report.suites) {
    json worst;
    worst["suite"] = s.name;
    worst["trial"] = s.worst.trial;
    worst["seed"] = report.config.seed;
    worst["dim_plus"] = report.config.dim_plus;
    worst["dim_minus"] = report.config.dim_minus;
    worst["fd_step"] = report.config.fd_step;
    worst["residual"] = s.worst.residual;
    worst["repro"] = std::string("detgeo show-case --in <report.json> --suite ") + s.name;
    worst["inputs"] = s.worst.inputs;
    json entry{{"name", s.name},
               {"trials", s.trials},
               {"max_residual", s.max_residual},
               {"tolerance", s.tolerance},
               {"pass", s.pass},
               {"worst_case", std::move(worst)}};
    if (!s.note.empty()) entry["note"] = s.note;
    suites.push_back(std::move(entry));
  }
  return json{{"version", report.version},
              {"config", config_to_json(report.config)},
              {"suites", std::move(suites)},
              {"pass", report.pass}};
}

void emit_report(const SuiteReport& report, const std::string& path) {
  std::string text = report_to_json(report).dump(2);
  text.push_back('\n');
  if (path.empty() || path == "-") {
    std::cout << text;
    if (!std::cout) throw IoError("emit_report: failed to write to stdout");
    return;
  }
  std::ofstream out(path);
  if (!out) {
    throw IoError("emit_report: cannot open '" + path + "' for writing");
  }
  out << text;
  if (!out) {
    throw IoError("emit_report: failed while writing '" + path + "'");
  }
}

}  // namespace detgeo
