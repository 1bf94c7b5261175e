#include "lieortho/commands.hpp"

#include <algorithm>
#include <cmath>
#include <ctime>
#include <stdexcept>
#include <utility>
#include <vector>

#include "lieortho/cartan.hpp"
#include "lieortho/coxeter.hpp"
#include "lieortho/numkernel.hpp"

namespace lieortho {

namespace {

constexpr const char* kVersion = "0.1.0";

std::string iso_timestamp_now() {
  const std::time_t t = std::time(nullptr);
  std::tm utc{};
  gmtime_r(&t, &utc);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buf;
}

// The algebra constructor verifies the Killing Gram over the whole basis,
// so its cost grows like dim^4.  Size 16 keeps every command interactive
// while leaving headroom over the verified family ranges.
constexpr int kMaxMatrixSize = 16;

AlgebraDescriptor checked_descriptor(const RunConfig& cfg) {
  const AlgebraDescriptor desc(cfg.family, cfg.n);
  if (desc.matrix_size() > kMaxMatrixSize)
    throw std::invalid_argument(desc.name() +
                                " exceeds the supported matrix size of 16");
  return desc;
}

Tolerances tolerances_of(const RunConfig& cfg) {
  if (!(cfg.tol > 0.0)) throw std::invalid_argument("tol must be positive");
  if (cfg.max_iter < 1) throw std::invalid_argument("max_iter must be positive");
  Tolerances t;
  t.residual = cfg.tol;
  t.max_iter = cfg.max_iter;
  return t;
}

Json certificate_shell(const char* command, const RunConfig& cfg) {
  Json cert;
  cert["version"]   = kVersion;
  cert["command"]   = command;
  cert["timestamp"] = iso_timestamp_now();
  cert["config"]    = Json{{"family", family_to_string(cfg.family)},
                           {"n", cfg.n},
                           {"tol", cfg.tol},
                           {"seed", cfg.seed},
                           {"max_iter", cfg.max_iter},
                           {"strategy", goto_strategy_to_string(cfg.strategy)}};
  cert["verdicts"]  = Json::object();
  cert["payload"]   = Json::object();
  return cert;
}

void set_verdict(Json& cert, const char* name, bool pass, double residual) {
  cert["verdicts"][name] = Json{{"pass", pass}, {"residual", residual}};
}

bool all_pass(const Json& cert) {
  for (const auto& item : cert["verdicts"].items())
    if (!item.value()["pass"].get<bool>()) return false;
  return true;
}

// A given element is validated (size, membership) strictly: bad input is a
// usage error, not a numerical failure.
Mat element_or_random(const Algebra& alg, const RunConfig& cfg,
                      const std::optional<Mat>& input) {
  if (!input) {
    Rng rng(cfg.seed);
    return alg.random_element(rng);
  }
  if (input->rows() != alg.matrix_size() || input->cols() != alg.matrix_size())
    throw std::invalid_argument("input matrix size does not fit the algebra");
  if (alg.membership_residual(*input) > cfg.tol * std::max(1.0, input->norm()))
    throw std::invalid_argument("input matrix is not a member of the algebra");
  return *input;
}

Json basis_to_json(const std::vector<Mat>& basis) {
  Json arr = Json::array();
  for (const Mat& m : basis) arr.push_back(mat_to_json(m));
  return arr;
}

}  // namespace

CommandResult cmd_construct(const RunConfig& cfg) {
  const Algebra alg(checked_descriptor(cfg), tolerances_of(cfg));
  Json          cert = certificate_shell("construct", cfg);

  const CartanSub standard = standard_cartan(alg);
  const CartanSub partner  = orthogonal_cartan(alg, standard);

  const CartanReport r1    = verify_cartan(alg, standard);
  const CartanReport r2    = verify_cartan(alg, partner);
  const double       ortho = verify_orthogonal(alg, standard, partner);

  const auto worst = [](const CartanReport& r) {
    return std::max(
        {r.membership_residual, r.bracket_residual, r.centralizer_distance});
  };
  set_verdict(cert, "standard_is_cartan", r1.pass(), worst(r1));
  set_verdict(cert, "partner_is_cartan", r2.pass(), worst(r2));
  set_verdict(cert, "partner_dim", partner.dim() == alg.rank(),
              static_cast<double>(std::abs(partner.dim() - alg.rank())));
  set_verdict(cert, "orthogonality", ortho < cfg.tol, ortho);

  cert["payload"] =
      Json{{"standard_basis", basis_to_json(standard.matrix_basis(alg))},
           {"partner_basis", basis_to_json(partner.matrix_basis(alg))},
           {"partner_origin", cartan_origin_to_string(partner.origin)}};
  const bool pass = all_pass(cert);
  return {std::move(cert), pass};
}

CommandResult cmd_coxeter(const RunConfig& cfg) {
  if (cfg.family != Family::su)
    throw std::invalid_argument("coxeter lifts exist only for the su family");
  const Algebra alg(checked_descriptor(cfg), tolerances_of(cfg));
  Json          cert = certificate_shell("coxeter", cfg);

  const int         m    = alg.matrix_size();
  const CoxeterLift lift = coxeter_lift_su(m);

  double lift_res = 0.0;
  for (double d : {(lift.g_mat * lift.d_mat * lift.g_mat.adjoint() - lift.n_mat).norm(),
                   (mat_exp(lift.lambda) - lift.d_mat).norm(),
                   (mat_exp(lift.n_log) - lift.n_mat).norm(),
                   alg.membership_residual(lift.n_log)})
    lift_res = std::max(lift_res, d);
  set_verdict(cert, "exp_matches", lift_res < 1e-9, lift_res);

  const CartanSub     c  = standard_cartan(alg);
  const ResidueReport fp = coxeter_fixed_point_check(alg, lift, c, cfg.tol);
  set_verdict(cert, "no_fixed_points", fp.verdict, fp.residuals[0]);

  const ResidueReport im = cartan_in_bracket_image(alg, c, lift.n_log, cfg.tol);
  double              worst_im = 0.0;
  for (double r : im.residuals) worst_im = std::max(worst_im, r);
  set_verdict(cert, "cartan_in_image", im.verdict, worst_im);

  const Mat    a       = strengthen_to_regular(alg, lift.n_log, cfg.seed);
  const double contain =
      std::max(containment_residual(c.space, alg.ad_image(a)),
               containment_residual(alg.ad_image(lift.n_log), alg.ad_image(a)));
  set_verdict(cert, "regular_strengthening",
              alg.is_regular(a) && contain < cfg.tol, contain);

  cert["payload"] = Json{{"lift", coxeter_lift_to_json(lift)},
                         {"fixed_point", Json{{"det_gap", fp.residuals[0]},
                                              {"min_eig_gap", fp.residuals[1]}}}};
  const bool pass = all_pass(cert);
  return {std::move(cert), pass};
}

CommandResult cmd_descend(const RunConfig& cfg, const std::optional<Mat>& input) {
  const Algebra alg(checked_descriptor(cfg), tolerances_of(cfg));
  Json          cert = certificate_shell("descend", cfg);

  const Mat       x     = element_or_random(alg, cfg, input);
  const CartanSub c     = standard_cartan(alg);
  const double    scale = std::max(1.0, alg.norm(x));

  DescentResult res;
  bool          converged = true;
  try {
    res = descend_to_complement(alg, x, c);
  } catch (const DescentNonConvergence& e) {
    res       = e.partial;
    converged = false;
  }

  const double c_norm = c.space.project(alg.coords(res.x_final)).norm();
  set_verdict(cert, "converged", converged && c_norm < cfg.tol * scale, c_norm);

  bool   strict           = true;
  double decrement_defect = 0.0;
  for (const DescentStep& s : res.trace.steps) {
    if (!(s.c_after < s.c_before)) strict = false;
    const double drop = s.c_before * s.c_before - s.c_after * s.c_after;
    decrement_defect =
        std::max(decrement_defect, std::abs(drop - s.h_coord * s.h_coord) /
                                       std::max(1.0, s.c_before * s.c_before));
  }
  set_verdict(cert, "strict_decrease", strict && decrement_defect < 1e-9,
              decrement_defect);

  const double gres = alg.group_membership_residual(res.g);
  set_verdict(cert, "group_membership", gres < cfg.tol, gres);

  cert["payload"] = Json{{"x", mat_to_json(x)},
                         {"g", mat_to_json(res.g)},
                         {"x_final", mat_to_json(res.x_final)},
                         {"trace", descent_trace_to_json(res.trace)}};
  const bool pass = all_pass(cert);
  return {std::move(cert), pass};
}

CommandResult cmd_factorize(const RunConfig& cfg, const std::optional<Mat>& input) {
  const Algebra alg(checked_descriptor(cfg), tolerances_of(cfg));
  Json          cert = certificate_shell("factorize", cfg);

  const Mat    x     = element_or_random(alg, cfg, input);
  const double scale = std::max(1.0, alg.norm(x));

  const GotoWitness w = goto_factorize(alg, x, cfg.strategy, cfg.seed);

  set_verdict(cert, "reconstruction", w.residual < 10.0 * cfg.tol * scale,
              w.residual);
  set_verdict(cert, "a_regular", w.a_regular, 0.0);

  const double ortho = alg.centralizer(w.a).project(alg.coords(x)).norm();
  set_verdict(cert, "orthogonal_to_cartan", ortho < 10.0 * cfg.tol * scale, ortho);

  cert["payload"] =
      Json{{"x", mat_to_json(x)}, {"witness", goto_witness_to_json(w)}};
  const bool pass = all_pass(cert);
  return {std::move(cert), pass};
}

CommandResult cmd_kostant(const RunConfig& cfg, int samples,
                          const std::optional<Mat>& input) {
  if (cfg.family != Family::su || cfg.n > 5)
    throw std::invalid_argument("the convexity check needs su(n) with n <= 5");
  if (samples < 1) throw std::invalid_argument("samples must be positive");
  const Algebra alg(checked_descriptor(cfg), tolerances_of(cfg));
  Json          cert = certificate_shell("kostant", cfg);

  const CartanSub c = standard_cartan(alg);
  Mat             x;
  if (input) {
    x = element_or_random(alg, cfg, input);
  } else {
    Rng  rng(cfg.seed);
    RVec w(c.dim());
    for (int i = 0; i < c.dim(); ++i) w(i) = rng.gaussian();
    x = alg.from_coords(c.space.basis() * w);
  }

  const KostantReport rep =
      kostant_projection_check(alg, x, samples, cfg.seed, 10.0 * cfg.tol);
  set_verdict(cert, "all_in_hull", rep.max_distance < 10.0 * cfg.tol,
              rep.max_distance);
  set_verdict(cert, "zero_in_hull", rep.zero_distance < 10.0 * cfg.tol,
              rep.zero_distance);

  cert["payload"] = Json{{"x", mat_to_json(x)},
                         {"samples", rep.samples},
                         {"max_distance", rep.max_distance},
                         {"zero_distance", rep.zero_distance}};
  const bool pass = all_pass(cert);
  return {std::move(cert), pass};
}

CommandResult cmd_suite(const RunConfig& cfg) {
  Json cert     = certificate_shell("suite", cfg);
  Json sections = Json::object();

  // sections drop their timestamps so a rerun with the same config and
  // seed reproduces the document byte for byte below the top-level field
  const auto add = [&](const char* name, CommandResult r) {
    r.certificate.erase("timestamp");
    set_verdict(cert, name, r.pass, 0.0);
    sections[name] = std::move(r.certificate);
  };

  add("construct", cmd_construct(cfg));
  if (cfg.family == Family::su) add("coxeter", cmd_coxeter(cfg));
  add("descend", cmd_descend(cfg));

  RunConfig fact = cfg;
  fact.strategy  = GotoStrategy::descent;
  add("factorize_descent", cmd_factorize(fact));
  if (cfg.family == Family::su) {
    fact.strategy = GotoStrategy::coxeter;
    add("factorize_coxeter", cmd_factorize(fact));
  }
  if (cfg.family == Family::su && cfg.n <= 5) add("kostant", cmd_kostant(cfg, 200));

  cert["payload"]["sections"] = std::move(sections);
  const bool pass = all_pass(cert);
  return {std::move(cert), pass};
}

Json error_certificate(const std::string& command, const std::string& type,
                       const std::string& message) {
  Json cert;
  cert["version"]   = kVersion;
  cert["command"]   = command;
  cert["timestamp"] = iso_timestamp_now();
  cert["error"]     = Json{{"type", type}, {"message", message}};
  return cert;
}

}  // namespace lieortho
