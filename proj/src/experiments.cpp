#include "renormlab/experiments.hpp"

#include <chrono>

#include "renormlab/control.hpp"
#include "renormlab/errors.hpp"
#include "renormlab/metric.hpp"
#include "renormlab/pair.hpp"
#include "renormlab/fit.hpp"
#include "renormlab/partition.hpp"

namespace renormlab {

namespace {

double wall_ms(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
      .count();
}

Real param_or(const FamilySpec& spec, const std::string& name, const std::string& fallback,
              int bits) {
  auto it = spec.params.find(name);
  return Real::from_string(it != spec.params.end() ? it->second : fallback, bits);
}

CircleMapLift family_template(const FamilySpec& spec, int bits) {
  std::map<std::string, Real> params;
  for (const auto& [name, value] : spec.params) {
    params.emplace(name, Real::from_string(value, bits));
  }
  params.insert_or_assign("omega", Real(bits));
  if (spec.omega) params.insert_or_assign("omega", Real::from_string(*spec.omega, bits));
  // placeholder omega 0 keeps the constructor happy; validation happens on the
  // solved member
  if (params.at("omega").is_zero()) params.insert_or_assign("omega", Real(0L, bits));
  return CircleMapLift::make(spec.family, params, bits);
}

}  // namespace

nlohmann::json FamilySpec::to_json() const {
  nlohmann::json j;
  j["family"] = family;
  j["params"] = nlohmann::json::object();
  for (const auto& [name, value] : params) j["params"][name] = value;
  if (omega) j["omega"] = *omega;
  return j;
}

FamilySpec FamilySpec::from_json(const nlohmann::json& j) {
  FamilySpec spec;
  spec.family = j.value("family", "arnold");
  if (j.contains("params")) {
    for (const auto& [name, value] : j.at("params").items()) {
      spec.params[name] = value.get<std::string>();
    }
  }
  if (j.contains("omega")) spec.omega = j.at("omega").get<std::string>();
  return spec;
}

nlohmann::json ExperimentConfig::to_json() const {
  nlohmann::json j;
  j["precision_bits"] = precision_bits;
  j["grid_size"] = grid_size;
  j["depth"] = depth;
  j["max_iterations"] = max_iterations;
  j["target_digits"] = {{"prefix", target.prefix}, {"period", target.period}};
  j["families"] = nlohmann::json::array();
  for (const auto& f : families) j["families"].push_back(f.to_json());
  j["levels"] = {{"from", level_from}, {"to", level_to}};
  j["expansion_periods"] = expansion_periods;
  j["sync"] = {{"period", sync_period}, {"refine_factor", sync_refine}};
  j["yoccoz_digit"] = yoccoz_digit;
  return j;
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
  ExperimentConfig c;
  c.precision_bits = j.value("precision_bits", 212);
  c.grid_size = j.value("grid_size", 257L);
  c.depth = j.value("depth", 16L);
  c.max_iterations = j.value("max_iterations", kDefaultMaxIterations);
  if (j.contains("target_digits")) {
    c.target.prefix = j.at("target_digits").value("prefix", std::vector<long>{});
    c.target.period = j.at("target_digits").value("period", std::vector<long>{1});
  }
  if (j.contains("families")) {
    for (const auto& f : j.at("families")) c.families.push_back(FamilySpec::from_json(f));
  }
  if (j.contains("levels")) {
    c.level_from = j.at("levels").value("from", 4L);
    c.level_to = j.at("levels").value("to", 14L);
  }
  if (j.contains("expansion_periods")) {
    c.expansion_periods = j.at("expansion_periods").get<std::vector<long>>();
  }
  if (j.contains("sync")) {
    c.sync_period = j.at("sync").value("period", 40L);
    c.sync_refine = j.at("sync").value("refine_factor", std::string("0.5"));
  }
  c.yoccoz_digit = j.value("yoccoz_digit", 60L);
  return c;
}

SolvedMap solve_family(const ExperimentConfig& config, const FamilySpec& spec,
                       const DigitTarget& target, long depth) {
  const int bits = config.precision_bits;
  SolvedMap out;
  if (spec.omega) {
    CircleMapLift map = family_template(spec, bits);
    out.map = std::make_shared<CircleMapLift>(map);
    out.cf = closest_returns(*out.map, depth, config.max_iterations);
    long matched = 0;
    for (size_t k = 0; k < out.cf.digits.size(); ++k) {
      if (out.cf.digits[k] != target.at(static_cast<long>(k))) break;
      ++matched;
    }
    out.verified_digits = matched;
    if (matched < depth) {
      throw SolverError(spec.family + ": explicit omega reproduces only " +
                        std::to_string(matched) + " of " + std::to_string(depth) +
                        " target digits");
    }
  } else {
    CircleMapLift tmpl = family_template(spec, bits);
    SolveOptions opt;
    opt.max_iterations = config.max_iterations;
    SolveResult res = solve_parameter(tmpl, target, depth, opt);
    if (!res.met_depth) {
      throw SolverError(spec.family + ": parameter search verified only " +
                        std::to_string(res.verified_digits) + " of " +
                        std::to_string(depth) + " digits");
    }
    out.map = std::make_shared<CircleMapLift>(tmpl.with_omega(res.omega));
    out.cf = res.cf;
    out.verified_digits = res.verified_digits;
  }
  if (out.map->has_critical_point()) out.map->validate();
  return out;
}

namespace {

void require_two_families(const ExperimentConfig& config, const char* what) {
  if (config.families.size() != 2) {
    throw ConfigError(std::string(what) + " needs exactly two families");
  }
}

nlohmann::json solved_json(const SolvedMap& solved) {
  nlohmann::json j;
  j["family"] = solved.map->family();
  j["omega"] = solved.map->omega().str();
  j["verified_digits"] = solved.verified_digits;
  return j;
}

}  // namespace

ExperimentResult run_rotnum(const ExperimentConfig& config) {
  if (config.families.empty()) throw ConfigError("rotnum needs one family");
  SolvedMap solved = solve_family(config, config.families[0], config.target, config.depth);
  ExperimentResult result;
  CsvTable table;
  table.columns = {"n", "a_n", "p_n", "q_n", "r_n"};
  for (size_t n = 0; n < solved.cf.convergents.size(); ++n) {
    std::string digit = n < solved.cf.digits.size()
                            ? std::to_string(solved.cf.digits[n])
                            : std::string();
    table.rows.push_back({std::to_string(n), digit, std::to_string(solved.cf.p(static_cast<long>(n))),
                          std::to_string(solved.cf.q(static_cast<long>(n))),
                          solved.cf.closest_return_points[n].str()});
  }
  nlohmann::json report = report_header("rotnum", config.to_json());
  report["solved"] = solved_json(solved);
  report["digits"] = solved.cf.digits;
  report["complete"] = solved.cf.complete;
  result.tables.emplace_back("rotnum", std::move(table));
  result.report = std::move(report);
  return result;
}

ExperimentResult run_renorm_orbit(const ExperimentConfig& config) {
  if (config.families.empty()) throw ConfigError("renorm-orbit needs one family");
  SolvedMap solved =
      solve_family(config, config.families[0], config.target, config.depth + 2);
  ExperimentResult result;
  CsvTable table;
  table.columns = {"n", "a", "xi0", "d2_next", "minimal_k", "schwarzian_max"};
  nlohmann::json rows = nlohmann::json::array();
  CommutingPair prev = normalize(extract_pair(solved.map, solved.cf, 1));
  for (long n = 1; n <= config.depth; ++n) {
    CommutingPair next = normalize(extract_pair(solved.map, solved.cf, n + 1));
    MetricReport d = distance(prev, next, 2, MetricVariant::Moebius, config.grid_size);
    KControlReport k = k_control(prev, config.grid_size);
    table.rows.push_back({std::to_string(n), std::to_string(k.a), prev.xi0().str(),
                          d.d2.str(), k.minimal_k.str(), k.schwarzian_max.str()});
    nlohmann::json row;
    row["n"] = n;
    row["a"] = k.a;
    row["minimal_k"] = k.minimal_k.str();
    row["schwarzian_max"] = k.schwarzian_max.str();
    rows.push_back(row);
    prev = std::move(next);
  }
  nlohmann::json report = report_header("renorm-orbit", config.to_json());
  report["solved"] = solved_json(solved);
  report["rows"] = std::move(rows);
  result.tables.emplace_back("renorm_orbit", std::move(table));
  result.report = std::move(report);
  return result;
}

ExperimentResult run_converge(const ExperimentConfig& config) {
  require_two_families(config, "converge");
  const int bits = config.precision_bits;
  SolvedMap a = solve_family(config, config.families[0], config.target, config.depth + 2);
  SolvedMap b = solve_family(config, config.families[1], config.target, config.depth + 2);
  for (long k = 0; k < config.depth + 2; ++k) {
    if (a.cf.digits[static_cast<size_t>(k)] != b.cf.digits[static_cast<size_t>(k)]) {
      throw SolverError("solved maps disagree at digit " + std::to_string(k));
    }
  }

  ExperimentResult result;
  CsvTable table;
  table.columns = {"n", "d0", "d1", "d2", "ratio"};
  nlohmann::json rows = nlohmann::json::array();
  std::vector<Real> ns, d2s;
  Real prev_d2(bits);
  bool any_zero = false;
  for (long n = 1; n <= config.depth; ++n) {
    auto t0 = std::chrono::steady_clock::now();
    CommutingPair pa = normalize(extract_pair(a.map, a.cf, n));
    CommutingPair pb = normalize(extract_pair(b.map, b.cf, n));
    MetricReport rep = distance(pa, pb, 2, MetricVariant::Moebius, config.grid_size);
    std::string ratio;
    if (n > 1 && prev_d2.sign() > 0) ratio = (rep.d2 / prev_d2).str();
    table.rows.push_back({std::to_string(n), rep.d0.str(), rep.d1.str(), rep.d2.str(), ratio});
    nlohmann::json row;
    row["n"] = n;
    row["d0"] = rep.d0.str();
    row["d1"] = rep.d1.str();
    row["d2"] = rep.d2.str();
    row["ratio"] = ratio;
    row["wall_ms"] = wall_ms(t0);
    rows.push_back(row);
    if (rep.d2.is_zero()) any_zero = true;
    ns.push_back(Real(n, bits));
    d2s.push_back(rep.d2);
    prev_d2 = rep.d2;
  }

  nlohmann::json report = report_header("converge", config.to_json());
  report["solved"] = {solved_json(a), solved_json(b)};
  report["rows"] = std::move(rows);
  long w_lo = (config.depth + 2) / 3;
  if (!any_zero && config.depth - w_lo + 1 >= 2) {
    std::vector<Real> xs(ns.begin() + (w_lo - 1), ns.end());
    std::vector<Real> ys(d2s.begin() + (w_lo - 1), d2s.end());
    FitResult loglog = fit_loglinear(xs, ys);
    std::vector<Real> lys;
    for (const Real& y : ys) lys.push_back(log(y));
    FitResult semilog = fit_linear(xs, lys);
    report["fit_window"] = {{"from", w_lo}, {"to", config.depth}};
    report["fit_loglinear"] = {{"slope", loglog.slope.str()},
                               {"intercept", loglog.intercept.str()},
                               {"r_squared", loglog.r_squared.str()}};
    report["fit_semilog"] = {{"slope", semilog.slope.str()},
                             {"r_squared", semilog.r_squared.str()},
                             {"lambda_estimate", exp(semilog.slope).str()}};
  } else if (any_zero) {
    report["fit_skipped"] = "zero distance rows (identical maps?)";
  }
  result.tables.emplace_back("converge", std::move(table));
  result.report = std::move(report);
  return result;
}

ExperimentResult run_yoccoz(const ExperimentConfig& config) {
  if (config.families.empty()) throw ConfigError("yoccoz needs one family");
  const int bits = config.precision_bits;
  const long a = config.yoccoz_digit;
  DigitTarget target{{a}, {1}};
  SolvedMap solved = solve_family(config, config.families[0], target, 6);

  // The period-a pair sits at the base level for this digit pattern; scan a
  // couple of levels anyway and report which one matched.
  long level_used = 0;
  std::optional<CommutingPair> pair;
  for (long level = -1; level <= 1; ++level) {
    CommutingPair cand = extract_pair(solved.map, solved.cf, level);
    auto per = cand.try_period();
    if (per && per->a == a) {
      pair = std::move(cand);
      level_used = level;
      break;
    }
  }
  if (!pair) throw SolverError("no extraction level has period " + std::to_string(a));

  const PairPeriod& per = pair->period();
  FlattestPoint fp = flattest_point(*pair);
  long N = 0;
  for (long i = 0; i <= per.a; ++i) {
    if (per.orbit[static_cast<size_t>(i)] >= fp.p) N = i;
  }

  ExperimentResult result;
  CsvTable table;
  table.columns = {"i", "len", "r"};
  Real max_r(bits), min_r(bits);
  bool first = true;
  for (long i = 1; i <= a - 1; ++i) {
    Real len = per.orbit[static_cast<size_t>(i - 1)] - per.orbit[static_cast<size_t>(i)];
    long m = std::min(i, a - i);
    Real r = len * Real(m * m, bits);
    table.rows.push_back({std::to_string(i), len.str(), r.str()});
    if (first) {
      max_r = r;
      min_r = r;
      first = false;
    } else {
      max_r = max(max_r, r);
      min_r = min(min_r, r);
    }
  }

  nlohmann::json report = report_header("yoccoz", config.to_json());
  report["solved"] = solved_json(solved);
  report["a"] = a;
  report["level_used"] = level_used;
  report["flattest_point"] = fp.p.str();
  report["N"] = N;
  report["N_over_a"] = (Real(N, bits) / Real(a, bits)).str();
  report["max_r"] = max_r.str();
  report["min_r"] = min_r.str();
  report["r_ratio"] = (max_r / min_r).str();
  result.tables.emplace_back("yoccoz", std::move(table));
  result.report = std::move(report);
  return result;
}

namespace {

// Boundary orbit point x_a and period check for the level-0 pair of a map
// with digits [1, a, 1, ...]: eta(x) = lift(x) - 1 and xi(0) = lift(0).
// Returns x_a when the crossing happens exactly at step a+1, otherwise null.
std::optional<Real> expansion_boundary(const CircleMapLift& map, long a) {
  Real x = map.eval(Real(map.bits()));
  Real one(1L, map.bits());
  for (long i = 1; i <= a + 1; ++i) {
    x = map.eval(x) - one;
    if (x.sign() < 0) return i == a + 1 ? std::optional<Real>(std::nullopt) : std::nullopt;
    if (i == a) {
      Real next = map.eval(x) - one;
      if (next.sign() >= 0) return std::nullopt;  // period larger than a
      return x;
    }
  }
  return std::nullopt;
}

}  // namespace

ExperimentResult run_expansion(const ExperimentConfig& config) {
  if (config.families.empty()) throw ConfigError("expand needs one family");
  const int bits = config.precision_bits;

  ExperimentResult result;
  CsvTable table;
  table.columns = {"a", "delta", "deriv_neg", "deriv_pos"};
  std::vector<Real> as, derivs_neg, derivs_pos;
  nlohmann::json rows = nlohmann::json::array();

  for (long a : config.expansion_periods) {
    DigitTarget target{{1, a}, {1}};
    SolvedMap solved = solve_family(config, config.families[0], target, 8);
    CommutingPair pair0 = extract_pair(solved.map, solved.cf, 0);
    if (pair0.period().a != a) {
      throw SolverError("level-0 pair period mismatch for a = " + std::to_string(a));
    }
    Real xa = pair0.period().orbit[static_cast<size_t>(a)];
    Real x_probe = xa * Real(0.5, bits);
    Real omega = solved.map->omega();

    auto boundary_at = [&](const Real& w) { return expansion_boundary(solved.map->with_omega(w), a); };
    auto probe_at = [&](const Real& w) {
      return solved.map->with_omega(w).eval(x_probe) - Real(1L, bits);
    };

    Real delta = pow2(-48, bits);
    std::optional<Real> d_neg, d_pos;
    for (int halvings = 0; halvings < 60; ++halvings) {
      auto up = boundary_at(omega + delta);
      auto down = boundary_at(omega - delta);
      auto up2 = boundary_at(omega + delta * Real(0.5, bits));
      auto down2 = boundary_at(omega - delta * Real(0.5, bits));
      if (up && down && up2 && down2) {
        Real two_delta = Real(2L, bits) * delta;
        Real coarse = abs(*up - *down) / two_delta;
        Real fine = abs(*up2 - *down2) / delta;
        if (abs(coarse - fine) <= Real(0.05, bits) * fine) {
          d_neg = fine;
          Real pc = abs(probe_at(omega + delta) - probe_at(omega - delta)) / two_delta;
          Real pf = abs(probe_at(omega + delta * Real(0.5, bits)) -
                        probe_at(omega - delta * Real(0.5, bits))) /
                    delta;
          if (abs(pc - pf) <= Real(0.05, bits) * max(pf, pow2(-bits / 2, bits))) {
            d_pos = pf;
            delta = delta * Real(0.5, bits);
            break;
          }
        }
      }
      delta = delta * Real(0.5, bits);
    }
    if (!d_neg || !d_pos) {
      throw SolverError("finite-difference step never stabilized for a = " + std::to_string(a));
    }

    table.rows.push_back({std::to_string(a), delta.str(), d_neg->str(), d_pos->str()});
    nlohmann::json row;
    row["a"] = a;
    row["omega"] = omega.str();
    row["deriv_neg"] = d_neg->str();
    row["deriv_pos"] = d_pos->str();
    rows.push_back(row);
    as.push_back(Real(a, bits));
    derivs_neg.push_back(*d_neg);
    derivs_pos.push_back(*d_pos);
  }

  nlohmann::json report = report_header("expand", config.to_json());
  report["rows"] = std::move(rows);
  FitResult neg = fit_loglinear(as, derivs_neg);
  FitResult pos = fit_loglinear(as, derivs_pos);
  report["fit_neg"] = {{"slope", neg.slope.str()}, {"r_squared", neg.r_squared.str()}};
  report["fit_pos"] = {{"slope", pos.slope.str()}, {"r_squared", pos.r_squared.str()}};
  result.tables.emplace_back("expand", std::move(table));
  result.report = std::move(report);
  return result;
}

namespace {

struct SyncProfileResult {
  CsvTable table;
  nlohmann::json json;
};

SyncProfileResult sync_profile(const ExperimentConfig& config, const SolvedMap& a,
                               const SolvedMap& b, long period) {
  const int bits = config.precision_bits;
  CommutingPair pa = normalize(extract_pair(a.map, a.cf, -1));
  CommutingPair pb_raw = normalize(extract_pair(b.map, b.cf, -1));
  // Affine alignment: rescale so both critical values coincide.
  Real alpha = pa.xi0() / pb_raw.xi0();
  CommutingPair pb = conjugate_homothety(pb_raw, alpha);

  if (pa.period().a != period || pb.period().a != period) {
    throw SolverError("sync pairs do not share the expected period");
  }
  Real eps = distance(pa, pb, 2, MetricVariant::Moebius, config.grid_size).d2;
  FlattestPoint fa = flattest_point(pa);
  FlattestPoint fb = flattest_point(pb);
  Real h = pa.eta().eval(fa.p) - pb.eta().eval(fa.p);

  const auto& xa = pa.period().orbit;
  const auto& xb = pb.period().orbit;
  SyncProfileResult out;
  out.table.columns = {"i", "x_i", "xt_i", "dx_i", "delta_i"};
  Real l_sync(bits), k_dxi(bits), prev_dx(bits);
  for (long i = 0; i <= period; ++i) {
    Real dx = xb[static_cast<size_t>(i)] - xa[static_cast<size_t>(i)];
    std::string delta_str;
    if (i > 0) delta_str = abs(dx - prev_dx).str();
    out.table.rows.push_back({std::to_string(i), xa[static_cast<size_t>(i)].str(),
                              xb[static_cast<size_t>(i)].str(), dx.str(), delta_str});
    if (i == period) l_sync = abs(dx) / eps;
    if (i >= 1 && i <= period / 2) k_dxi = max(k_dxi, Real(i, bits) * abs(dx) / eps);
    prev_dx = dx;
  }
  Real k_h = Real(period * period, bits) * abs(h) / eps;

  out.json["a"] = period;
  out.json["eps"] = eps.str();
  out.json["h"] = h.str();
  out.json["p"] = fa.p.str();
  out.json["p_tilde"] = fb.p.str();
  out.json["p_residual"] = abs(fa.p - fb.p).str();
  out.json["L_sync"] = l_sync.str();
  out.json["K_dxi"] = k_dxi.str();
  out.json["K_h"] = k_h.str();
  return out;
}

}  // namespace

ExperimentResult run_sync(const ExperimentConfig& config) {
  require_two_families(config, "sync");
  const int bits = config.precision_bits;
  DigitTarget target{{config.sync_period}, {1}};
  SolvedMap a = solve_family(config, config.families[0], target, 6);
  SolvedMap b = solve_family(config, config.families[1], target, 6);

  ExperimentResult result;
  SyncProfileResult base = sync_profile(config, a, b, config.sync_period);
  nlohmann::json report = report_header("sync", config.to_json());
  report["solved"] = {solved_json(a), solved_json(b)};
  report["profile"] = base.json;
  result.tables.emplace_back("sync", std::move(base.table));

  // Refinement run: pull the second family toward the first and re-measure.
  FamilySpec refined = config.families[1];
  refined.omega.reset();
  if (refined.params.count("beta")) {
    Real beta = param_or(refined, "beta", "0.1", bits);
    Real factor = Real::from_string(config.sync_refine, bits);
    refined.params["beta"] = (beta * factor).str();
    SolvedMap b2 = solve_family(config, refined, target, 6);
    SyncProfileResult fine = sync_profile(config, a, b2, config.sync_period);
    report["profile_refined"] = fine.json;
    report["refined_beta"] = refined.params["beta"];
    result.tables.emplace_back("sync_refined", std::move(fine.table));
  } else {
    report["profile_refined"] = nullptr;
  }
  result.report = std::move(report);
  return result;
}

ExperimentResult run_lipschitz(const ExperimentConfig& config) {
  require_two_families(config, "lipschitz");
  const int bits = config.precision_bits;
  long depth_needed = config.level_to + 3;
  SolvedMap a = solve_family(config, config.families[0], config.target, depth_needed);
  SolvedMap b = solve_family(config, config.families[1], config.target, depth_needed);

  ExperimentResult result;
  CsvTable table;
  table.columns = {"n", "a", "d2_n", "d2_next", "ratio"};
  Real max_ratio(bits);
  bool any = false;
  CommutingPair pa = normalize(extract_pair(a.map, a.cf, config.level_from));
  CommutingPair pb = normalize(extract_pair(b.map, b.cf, config.level_from));
  Real d_cur = distance(pa, pb, 2, MetricVariant::Moebius, config.grid_size).d2;
  for (long n = config.level_from; n <= config.level_to; ++n) {
    CommutingPair na = normalize(extract_pair(a.map, a.cf, n + 1));
    CommutingPair nb = normalize(extract_pair(b.map, b.cf, n + 1));
    Real d_next = distance(na, nb, 2, MetricVariant::Moebius, config.grid_size).d2;
    std::string ratio = "undefined";
    if (d_cur.sign() > 0) {
      Real r = d_next / d_cur;
      ratio = r.str();
      max_ratio = any ? max(max_ratio, r) : r;
      any = true;
    }
    table.rows.push_back({std::to_string(n),
                          std::to_string(a.cf.digits[static_cast<size_t>(n + 1)]),
                          d_cur.str(), d_next.str(), ratio});
    d_cur = d_next;
  }

  nlohmann::json report = report_header("lipschitz", config.to_json());
  report["solved"] = {solved_json(a), solved_json(b)};
  report["max_ratio"] = any ? max_ratio.str() : "undefined";
  result.tables.emplace_back("lipschitz", std::move(table));
  result.report = std::move(report);
  return result;
}

ExperimentResult run_rigidity(const ExperimentConfig& config) {
  require_two_families(config, "rigidity");
  const int bits = config.precision_bits;
  long depth_needed = config.level_to + 2;
  SolvedMap f = solve_family(config, config.families[0], config.target, depth_needed);
  SolvedMap g = solve_family(config, config.families[1], config.target, depth_needed);

  ExperimentResult result;
  CsvTable table;
  table.columns = {"n", "max_log_discrepancy"};
  std::vector<Real> ns, maxima;
  for (long n = config.level_from; n <= config.level_to; ++n) {
    DynamicalPartition pf = build_partition(f.map, f.cf, n);
    DynamicalPartition pg = build_partition(g.map, g.cf, n);
    // position of each labeled atom inside g's sorted order
    std::map<std::pair<long, int>, size_t> g_index;
    for (size_t s = 0; s < pg.atoms.size(); ++s) {
      g_index[{pg.atoms[s].orbit_index, pg.atoms[s].family}] = s;
    }
    size_t count = pf.atoms.size();
    Real max_disc(bits);
    for (size_t s = 0; s < count; ++s) {
      const PartitionAtom& i_f = pf.atoms[s];
      const PartitionAtom& j_f = pf.atoms[(s + 1) % count];
      size_t gi = g_index.at({i_f.orbit_index, i_f.family});
      size_t gj = g_index.at({j_f.orbit_index, j_f.family});
      if ((gi + 1) % count != gj) {
        throw CombinatoricsError("corresponding atoms are not adjacent in the second map");
      }
      const PartitionAtom& i_g = pg.atoms[gi];
      const PartitionAtom& j_g = pg.atoms[gj];
      Real disc = abs(log(i_g.length() / i_f.length()) - log(j_g.length() / j_f.length()));
      max_disc = max(max_disc, disc);
    }
    table.rows.push_back({std::to_string(n), max_disc.str()});
    ns.push_back(Real(n, bits));
    maxima.push_back(max_disc);
  }

  nlohmann::json report = report_header("rigidity", config.to_json());
  report["solved"] = {solved_json(f), solved_json(g)};
  bool all_positive = true;
  for (const Real& m : maxima) {
    if (!(m.sign() > 0)) all_positive = false;
  }
  if (all_positive && maxima.size() >= 2) {
    std::vector<Real> logs;
    for (const Real& m : maxima) logs.push_back(log(m));
    FitResult fit = fit_linear(ns, logs);
    report["decay_fit"] = {{"slope", fit.slope.str()}, {"r_squared", fit.r_squared.str()}};
  }

  // Conjugacy sample h(f^j(c)) = g^j(c) at the deepest level, with
  // divided-difference slopes between consecutive sorted points.
  CsvTable conj;
  conj.columns = {"j", "u_f", "u_g", "slope"};
  {
    DynamicalPartition pf = build_partition(f.map, f.cf, config.level_to);
    DynamicalPartition pg = build_partition(g.map, g.cf, config.level_to);
    std::vector<long> order(pf.orbit.size());
    for (size_t j = 0; j < order.size(); ++j) order[j] = static_cast<long>(j);
    std::sort(order.begin(), order.end(), [&](long i, long j) {
      return pf.orbit[static_cast<size_t>(i)] < pf.orbit[static_cast<size_t>(j)];
    });
    for (size_t s = 0; s < order.size(); ++s) {
      long j = order[s];
      long jn = order[(s + 1) % order.size()];
      Real uf = pf.orbit[static_cast<size_t>(j)];
      Real ug = pg.orbit[static_cast<size_t>(j)];
      Real uf_n = pf.orbit[static_cast<size_t>(jn)];
      Real ug_n = pg.orbit[static_cast<size_t>(jn)];
      if (s + 1 == order.size()) {
        uf_n += Real(1L, bits);
        ug_n += Real(1L, bits);
      }
      Real slope = (ug_n - ug) / (uf_n - uf);
      conj.rows.push_back({std::to_string(j), uf.str(), ug.str(), slope.str()});
    }
  }

  result.tables.emplace_back("rigidity", std::move(table));
  result.tables.emplace_back("rigidity_conjugacy", std::move(conj));
  result.report = std::move(report);
  return result;
}

}  // namespace renormlab
