#include "hak/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "hak/cancellation.hpp"
#include "hak/decompose.hpp"
#include "hak/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace hak {

namespace {

struct RunConfig {
  std::string command = "verify";
  int dim = 1;
  int degree = 8;
  std::string grid = "-4:4:81";
  std::string op = "heat";
  std::string alpha = "1";
  std::string word = "A";
  std::string symbol = "constant";
  std::vector<double> symbol_params{1.0};
  double p = 1.0, q = 2.0;
  double omega = 1.5, delta = 1.6;
  double time = 0.5;
  double radius = 0.05;
  double center = 0.5;
  int annuli = -1;
  std::string shape = "dipole";
  std::string suite = "all";
  std::string input;
  std::uint64_t seed = 7;
  std::string out = "hak-out";
  bool strict = false;
  bool inverse = false;
};

json config_to_json(const RunConfig& c) {
  return json{{"command", c.command}, {"dim", c.dim},       {"degree", c.degree},
              {"grid", c.grid},       {"op", c.op},         {"alpha", c.alpha},
              {"word", c.word},       {"symbol", c.symbol}, {"symbol_params", c.symbol_params},
              {"p", c.p},             {"q", c.q},           {"omega", c.omega},
              {"delta", c.delta},     {"time", c.time},     {"radius", c.radius},
              {"center", c.center},   {"annuli", c.annuli}, {"shape", c.shape},
              {"suite", c.suite},     {"input", c.input},   {"seed", c.seed},
              {"out", c.out},         {"strict", c.strict}, {"inverse", c.inverse}};
}

void config_from_json(const json& j, RunConfig& c) {
  auto get = [&](const char* key, auto& slot) {
    if (j.contains(key)) slot = j.at(key).get<std::decay_t<decltype(slot)>>();
  };
  get("command", c.command);
  get("dim", c.dim);
  get("degree", c.degree);
  get("grid", c.grid);
  get("op", c.op);
  get("alpha", c.alpha);
  get("word", c.word);
  get("symbol", c.symbol);
  get("symbol_params", c.symbol_params);
  get("p", c.p);
  get("q", c.q);
  get("omega", c.omega);
  get("delta", c.delta);
  get("time", c.time);
  get("radius", c.radius);
  get("center", c.center);
  get("annuli", c.annuli);
  get("shape", c.shape);
  get("suite", c.suite);
  get("input", c.input);
  get("seed", c.seed);
  get("out", c.out);
  get("strict", c.strict);
  get("inverse", c.inverse);
}

struct GridSpec {
  double lo = -4, hi = 4;
  int count = 81;
};

GridSpec parse_grid(const std::string& s) {
  GridSpec g;
  if (std::sscanf(s.c_str(), "%lf:%lf:%d", &g.lo, &g.hi, &g.count) != 3 || g.count < 1 ||
      g.hi <= g.lo)
    throw CLI::ValidationError("--grid expects lo:hi:count with hi > lo, count >= 1");
  return g;
}

void write_manifest(const RunConfig& c, const std::vector<std::string>& outputs) {
  json m = config_to_json(c);
  m["outputs"] = outputs;
  std::ofstream os(fs::path(c.out) / "manifest.json");
  os << m.dump(2) << "\n";
}

// ---------------------------------------------------------------------------
// check bookkeeping shared by the verify suites

struct CheckLog {
  bool strict = false;
  bool hard_failed = false;
  bool report_failed = false;
  json summary = json::array();
  std::string out_dir;

  void hard(const std::string& name, double residual, double tol) {
    bool ok = std::isfinite(residual) && residual <= tol;
    hard_failed = hard_failed || !ok;
    std::cout << (ok ? "[ok]   " : "[FAIL] ") << name << " residual=" << format_double(residual)
              << " tol=" << format_double(tol) << "\n";
    summary.push_back(
        {{"name", name}, {"kind", "assert"}, {"residual", residual}, {"tol", tol}, {"pass", ok}});
  }

  void report(const BoundReport& rep) {
    report_failed = report_failed || !rep.pass;
    std::cout << (rep.pass ? "[ok]   " : "[warn] ") << rep.summary_line() << "\n";
    if (!out_dir.empty()) {
      std::string fname = "report_" + std::to_string(summary.size()) + ".csv";
      std::ofstream os(fs::path(out_dir) / fname);
      write_bound_report_csv(os, rep);
    }
    json jr = {{"name", rep.name},
               {"kind", "bound"},
               {"constant", rep.constant},
               {"refined", rep.refined_constant},
               {"ratio", rep.refinement_ratio},
               {"pass", rep.pass}};
    for (const auto& p : rep.params) jr["params"][p.first] = p.second;
    summary.push_back(jr);
  }

  void flag(const std::string& name, bool ok, const std::string& detail) {
    report_failed = report_failed || !ok;
    std::cout << (ok ? "[ok]   " : "[warn] ") << name << " " << detail << "\n";
    summary.push_back({{"name", name}, {"kind", "flag"}, {"pass", ok}, {"detail", detail}});
  }

  int exit_code() const {
    if (hard_failed) return 2;
    if (strict && report_failed) return 2;
    return 0;
  }
};

std::vector<std::pair<Point, Point>> identity_samples(int dim, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-2.2, 2.2);
  std::vector<std::pair<Point, Point>> ps;
  for (int i = 0; i < 10; ++i) {
    Point x(dim), y(dim);
    for (int ax = 0; ax < dim; ++ax) {
      x[ax] = u(rng);
      y[ax] = u(rng);
    }
    ps.emplace_back(x, y);
  }
  return ps;
}

// ---------------------------------------------------------------------------
// verify suites

void suite_identities(const RunConfig& cfg, CheckLog& log) {
  std::mt19937_64 rng(cfg.seed);
  AdmissibleSystem sys;
  for (int dim = 1; dim <= 2; ++dim) {
    auto samples = identity_samples(dim, rng);
    auto sym = [&](const MultiIndex& xi) { return sys.phi_j_at(2, xi); };
    int hi = dyadic_block_range(2, dim).hi;
    for (int N = 1; N <= 3; ++N) {
      double r = check_displacement_identity(dim, 0, N, sym, hi, samples);
      log.hard("displacement_identity n=" + std::to_string(dim) + " N=" + std::to_string(N), r,
               1e-9);
    }
    for (auto letter : {Ladder::creation, Ladder::annihilation}) {
      double worst1 = 0, worst2 = 0;
      for (int M = 0; M <= 3; ++M) {
        for (int N = 1; N <= 3; ++N) {
          MultiIndex xi = MultiIndex(dim, 0).shifted(0, 2);
          MultiIndex eta = MultiIndex(dim, 0).shifted(0, 3);
          worst1 = std::max(worst1, check_commutation_moving_letter(dim, 0, M, N, letter, xi, eta,
                                                                    samples));
          worst2 = std::max(worst2, check_commutation_moving_difference(dim, 0, M, N, letter, xi,
                                                                        eta, samples));
        }
      }
      std::string lname = letter == Ladder::creation ? "A" : "A*";
      log.hard("commutation_moving_letter n=" + std::to_string(dim) + " letter=" + lname, worst1,
               1e-9);
      log.hard("commutation_moving_difference n=" + std::to_string(dim) + " letter=" + lname,
               worst2, 1e-9);
    }
  }
  // ladder identities as pointwise function identities (complex step)
  {
    double worst = 0;
    for (int k = 0; k <= 40; ++k) {
      for (double t = -8.0; t <= 8.0; t += 0.5) {
        const double h = 1e-150;
        double d = hermite_eval_1d(k, std::complex<double>(t, h)).imag() / h;
        double v = hermite_eval_1d(k, t);
        double up = -d + t * v - std::sqrt(2.0 * k + 2.0) * hermite_eval_1d(k + 1, t);
        double dn = d + t * v - (k == 0 ? 0.0 : std::sqrt(2.0 * k) * hermite_eval_1d(k - 1, t));
        worst = std::max({worst, std::abs(up), std::abs(dn)});
      }
    }
    log.hard("ladder_pointwise_identities k<=40", worst, 1e-9);
  }
  // Leibniz rules
  {
    double worst = 0;
    for (int ell = 1; ell <= 3; ++ell)
      worst = std::max(worst, check_discrete_leibniz(ell, unsigned(cfg.seed) + unsigned(ell)));
    log.hard("discrete_leibniz ell<=3", worst, 1e-9);

    std::vector<Point> xs;
    for (double x = -2.0; x <= 2.0; x += 0.41) xs.push_back(Point{x});
    double worst2 = 0;
    for (bool gauss : {false, true})
      for (int pdeg = 0; pdeg <= 2; ++pdeg)
        for (int a = 1; a <= 2; ++a)
          worst2 = std::max(worst2, check_ladder_leibniz(SmoothFn::monomial(MultiIndex{pdeg}, gauss),
                                                         MultiIndex{4}, MultiIndex{a}, xs));
    log.hard("ladder_leibniz", worst2, 1e-9);
  }
  // partition of unity on [1/2, 2^{J-1}]
  {
    double worst = 0;
    for (int J : {4, 10})
      for (double lam = 0.5; lam <= std::ldexp(1.0, J - 1); lam *= 1.03)
        worst = std::max(worst, std::abs(sys.partial_sum(J, lam) - 1.0));
    log.hard("partition_identity", worst, 1e-9);
  }
}

void suite_kernels(const RunConfig& cfg, CheckLog& log) {
  // heat kernel vs closed form, pointwise relative with a representability
  // floor at 1e-6 of the on-diagonal scale
  {
    double worst = 0;
    for (double t : {0.1, 0.3, 1.0, 2.0}) {
      double floor_scale = 1e-6 * std::pow(2.0 * M_PI * std::sinh(2.0 * t), -0.5);
      for (double x = -3.0; x <= 3.0; x += 0.5) {
        for (double y = -3.0; y <= 3.0; y += 0.5) {
          double s = heat_kernel_series(t, Point{x}, Point{y});
          double m = heat_kernel_mehler(t, Point{x}, Point{y});
          worst = std::max(worst, std::abs(s - m) / std::max(std::abs(m), floor_scale));
        }
      }
    }
    log.hard("heat_series_vs_closed_form", worst, 1e-8);
  }
  // semigroup composition on coefficients
  {
    std::mt19937_64 rng(cfg.seed);
    CoefVec c = random_coefvec(make_basis(1, 24), rng);
    double r = (heat_apply(0.35, heat_apply(0.4, c)) - heat_apply(0.75, c)).l2_norm() /
               std::max(c.l2_norm(), 1e-30);
    log.hard("semigroup_composition", r, 1e-14);
  }
  for (double mu : {0.0, 2.0}) {
    BoundReport rep = check_projector_growth(1, 5, mu, SampleBox{6.0, 41});
    log.report(rep);
  }
  for (int k : {0, 1}) {
    for (double N : {0.0, 2.0}) {
      log.report(check_heat_kernel_bound(1, k, N, SampleBox{4.0, 13}));
    }
  }
  for (int g : {1, 2}) log.report(check_heat_kernel_deriv_bound(1, MultiIndex{g}, 2.0, SampleBox{4.0, 13}));
}

void suite_hczo(const RunConfig& cfg, CheckLog& log) {
  HczoOptions opts;
  opts.box = SampleBox{4.0, 21};
  if (cfg.op == "riesz" || cfg.op == "heat") {
    KernelEvaluator ev = cfg.op == "riesz"
                             ? riesz_kernel_evaluator(make_riesz_op(cfg.alpha, cfg.word, 1), 2048)
                             : heat_kernel_evaluator(cfg.time, 1);
    auto reps = grade_hczo(ev, 0, 0.5, 2.0, opts);
    for (const auto& r : reps) log.report(r);
    for (int dg = 0; dg <= 1; ++dg) {
      log.report(check_kernel_decay(ev, MultiIndex{dg}, MultiIndex{0}, 2.0, opts));
      if (dg == 1) log.report(check_kernel_decay(ev, MultiIndex{0}, MultiIndex{dg}, 2.0, opts));
    }
  } else if (cfg.op == "pseudo") {
    PseudoSymbol sigma = make_symbol(cfg.symbol, cfg.symbol_params, 1);
    KernelEvaluator ev = pseudo_kernel_evaluator(sigma, 1024);
    auto reps = grade_hczo(ev, 0, 0.5, 2.0, opts);
    for (const auto& r : reps) log.report(r);
  } else {
    throw CLI::ValidationError("verify hczo: --op must be riesz, pseudo or heat");
  }
  // dyadic piece bounds on both sides; the factor-3 cross-level gate runs
  // without the critical-radius damping (mu = 0), the damped variant is
  // reported alongside
  DyadicBoundSpec spec0, spec1;
  spec1.N = 1;
  RieszOp op1 = first_order(0, LadderLetter::creation, 1);
  PseudoSymbol one = make_symbol("constant", {1.0}, 1);
  for (const auto* spec : {&spec0, &spec1}) {
    auto res = check_dyadic_kernel_bounds_riesz(op1, *spec, 1, 5, 0.0, SampleBox{5.0, 17});
    for (const auto& r : res.per_j) log.report(r);
    log.flag("dyadic_riesz cross-j (N=" + std::to_string(spec->N) + ")", res.stable,
             "max/min=" + format_double(res.cross_j_ratio));
    auto damped = check_dyadic_kernel_bounds_riesz(op1, *spec, 1, 5, 2.0, SampleBox{5.0, 17});
    for (const auto& r : damped.per_j) log.report(r);
  }
  for (const auto* spec : {&spec0, &spec1}) {
    auto res = check_dyadic_kernel_bounds_pseudo(one, *spec, 1, 5, 0.0, SampleBox{5.0, 17});
    for (const auto& r : res.per_j) log.report(r);
    log.flag("dyadic_pseudo cross-j (N=" + std::to_string(spec->N) + ")", res.stable,
             "max/min=" + format_double(res.cross_j_ratio));
  }
}

void suite_cancellation(const RunConfig& cfg, CheckLog& log) {
  (void)cfg;
  // moment-bump norms: rho^{s-|alpha|} ||g||_{Lambda^s} finite and stable
  for (double s : {0.5, 1.5}) {
    for (int a = 0; a <= 1; ++a) {
      auto run = [&](const LipNormOptions& lip) {
        std::vector<RatioSample> rows;
        for (double c0 : {0.0, 1.0, -1.0, 2.0, -2.0, 4.0, -4.0, 8.0, -8.0}) {
          Point x0{c0};
          double rho = critical_radius(x0);
          int need = int(std::pow(4.0, lip.j_max) / 2.0) + 2;
          CoefVec g = project_local(
              [&](const Point& y) { return moment_bump_value(x0, MultiIndex{a}, y); },
              c0 - 2.0 * rho, c0 + 2.0 * rho, need);
          RatioSample r;
          r.label = "x0=" + format_double(c0);
          r.lhs = std::pow(rho, s - a) * lip_norm(g, s, lip);
          r.rhs = 1.0;
          rows.push_back(r);
        }
        return rows;
      };
      LipNormOptions base, fine;
      base.j_max = 5;
      base.sup_points = 1201;
      fine.j_max = 6;
      fine.sup_points = 2401;
      BoundReport rep = make_bound_report(
          "moment_bump_lip_norm s=" + format_double(s) + " |alpha|=" + std::to_string(a),
          run(base), run(fine));
      log.report(rep);
    }
  }
  // bmo-scale version (s = 0)
  {
    std::vector<RatioSample> rows;
    BallFamily fam;
    fam.extent = 10.0;
    fam.centers_per_axis = 41;
    fam.radii_count = 10;
    for (double c0 : {0.0, 2.0, 8.0}) {
      Point x0{c0};
      double rho = critical_radius(x0);
      for (int a = 0; a <= 1; ++a) {
        auto grid = Grid::uniform(1, -12.0, 12.0, 4801);
        GridFn g = make_g(x0, MultiIndex{a}, grid);
        RatioSample r;
        r.label = "x0=" + format_double(c0) + ";a=" + std::to_string(a);
        r.lhs = std::pow(rho, -double(a)) * bmo_norm(g, fam);
        r.rhs = 1.0;
        rows.push_back(r);
      }
    }
    BoundReport rep = make_bound_report("moment_bump_bmo_norm", rows, rows);
    log.report(rep);
  }
  // cancellation functionals
  CancellationOptions copts;
  copts.j_max = 5;
  copts.lip.j_max = 5;
  copts.lip.sup_points = 1201;
  RieszOp op1 = first_order(0, LadderLetter::creation, 1);
  log.report(cancellation_functional(riesz_operator(op1, 1), 0.5, MultiIndex{0}, copts));
  log.report(cancellation_functional(identity_operator(), 0.5, MultiIndex{0}, copts));
  log.report(cancellation_functional(heat_operator(1.0), 1.5, MultiIndex{1}, copts));

  // far-field decay of the semigroup on cancelling inputs
  SpaceParams params;
  params.p = 0.9;
  params.q = 2;
  params.M = 1;
  Ball ball{Point{0.0}, 0.05};
  auto grid = make_annulus_grid(ball, 3);
  GridFn atom = make_smooth_atom(ball, params, grid);
  FarFieldOptions fopts;
  fopts.s = 1.5;
  log.report(far_field_heat_decay_check(atom, ball, params, FarFieldMode::vanishing_moments, fopts));
}

void suite_norms(const RunConfig& cfg, CheckLog& log) {
  (void)cfg;
  BallFamily fam;
  fam.extent = 4.0;
  fam.centers_per_axis = 17;
  fam.radii_count = 8;
  for (double s : {0.5, 1.0}) {
    int N = 1 + int(std::floor(s / 2.0));
    auto res = check_campanato_equivalence(s, N, fam);
    log.flag("campanato_lip_window s=" + format_double(s),
             res.window_ok && res.stable,
             "ratio=[" + format_double(res.ratio_min) + "," + format_double(res.ratio_max) +
                 "] refined=[" + format_double(res.refined_ratio_min) + "," +
                 format_double(res.refined_ratio_max) + "]");
  }
  // heat maximal operator on band-limited atoms: ||M a||_{L^ptilde} against
  // |B|^{1/ptilde - 1/p}
  SpaceParams params;
  params.p = 1.0;
  params.q = 2;
  params.M = 1;
  auto atom_rows = [&](int grid_pts, int t_count) {
    std::vector<RatioSample> rows;
    for (double c0 : {0.0, 1.0}) {
      Ball ball{Point{c0}, 0.04 * critical_radius(Point{c0})};
      // smooth odd atom projected into coefficient space
      CoefVec cb = project_local(
          [&](const Point& x) {
            double u = dist(x, ball.center) / ball.radius;
            double env = smooth_step_down(2.0 * u - 1.0);
            return env * (x[0] - ball.center[0]) / ball.radius;
          },
          ball.center[0] - ball.radius, ball.center[0] + ball.radius, 160);
      GridFn syn = synthesize(cb, Grid::uniform(1, ball.center[0] - 2, ball.center[0] + 2, 1601));
      double budget = std::pow(ball.volume(), 1.0 / params.q - 1.0 / params.p);
      CoefVec cn = scaled(cb, budget / syn.lq_norm(params.q));
      for (double pt : {1.0, 0.9}) {
        RatioSample r;
        r.label = "center=" + format_double(c0) + ";ptilde=" + format_double(pt);
        r.lhs = hp_norm(cn, Grid::uniform(1, -8.0, 8.0, grid_pts), pt,
                        default_time_sample(t_count));
        r.rhs = std::pow(ball.volume(), 1.0 / pt - 1.0 / params.p);
        rows.push_back(r);
      }
    }
    return rows;
  };
  BoundReport rep =
      make_bound_report("maximal_on_atoms", atom_rows(1601, 48), atom_rows(3201, 96));
  log.report(rep);
}

// ---------------------------------------------------------------------------
// commands

int cmd_transform(const RunConfig& cfg) {
  fs::create_directories(cfg.out);
  std::vector<std::string> outputs;
  if (cfg.input.empty()) throw CLI::ValidationError("transform: --in <csv> required");
  if (!cfg.inverse) {
    GridFn f = read_gridfn_csv(cfg.input);
    auto basis = make_basis(f.grid->dim(), cfg.degree);
    CoefVec c = transform(f, basis);
    GridFn back = synthesize(c, f.grid);
    double denom = std::max(f.l2_norm(), 1e-30);
    double residual = (back - f).l2_norm() / denom;
    std::cout << "round_trip_residual=" << format_double(residual) << "\n";
    std::ofstream os(fs::path(cfg.out) / "coef.csv");
    os << "# dim=" << basis->dim() << " degree=" << basis->max_degree() << "\n";
    for (std::size_t i = 0; i < c.values.size(); ++i) {
      const MultiIndex& xi = c.basis->at(i);
      for (int ax = 0; ax < basis->dim(); ++ax) os << xi[ax] << ",";
      os << format_double(c.values[i]) << "\n";
    }
    outputs.push_back("coef.csv");
  } else {
    // coefficient CSV -> samples on --grid
    std::ifstream is(cfg.input);
    if (!is) throw CLI::ValidationError("transform: cannot open " + cfg.input);
    std::string line;
    std::vector<std::pair<MultiIndex, double>> entries;
    int dim = -1, maxdeg = 0;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
      ++lineno;
      if (line.empty() || line[0] == '#') continue;
      std::stringstream ss(line);
      std::string tok;
      std::vector<double> fields;
      while (std::getline(ss, tok, ',')) {
        try {
          fields.push_back(std::stod(tok));
        } catch (const std::exception&) {
          throw std::runtime_error("malformed coefficient CSV at line " + std::to_string(lineno));
        }
      }
      if (dim < 0) dim = int(fields.size()) - 1;
      if (int(fields.size()) != dim + 1)
        throw std::runtime_error("wrong column count at line " + std::to_string(lineno));
      MultiIndex xi(dim, 0);
      for (int ax = 0; ax < dim; ++ax) xi = xi.shifted(ax, int(fields[std::size_t(ax)]));
      maxdeg = std::max(maxdeg, xi.order());
      entries.emplace_back(xi, fields.back());
    }
    if (entries.empty()) throw std::runtime_error("empty coefficient CSV");
    CoefVec c(make_basis(dim, maxdeg));
    for (const auto& [xi, v] : entries) c.set(xi, v);
    GridSpec gs = parse_grid(cfg.grid);
    GridFn f = synthesize(c, Grid::uniform(dim, gs.lo, gs.hi, gs.count));
    write_gridfn_csv((fs::path(cfg.out) / "synthesized.csv").string(), f);
    outputs.push_back("synthesized.csv");
  }
  RunConfig recorded = cfg;
  write_manifest(recorded, outputs);
  return 0;
}

int cmd_kernel(const RunConfig& cfg) {
  fs::create_directories(cfg.out);
  GridSpec gs = parse_grid(cfg.grid);
  std::vector<double> xs(std::size_t(gs.count), 0.0);
  for (int i = 0; i < gs.count; ++i)
    xs[std::size_t(i)] = gs.count == 1 ? gs.lo : gs.lo + (gs.hi - gs.lo) * i / (gs.count - 1);

  std::ofstream os(fs::path(cfg.out) / "kernel.csv");
  std::vector<std::string> outputs{"kernel.csv"};

  if (cfg.op == "heat") {
    os << "# op=heat t=" << format_double(cfg.time) << "\n# x,y,value,diagnostic\n";
    for (double x : xs)
      for (double y : xs) {
        double v = heat_kernel_series(cfg.time, Point{x}, Point{y});
        double d = std::abs(v - heat_kernel_mehler(cfg.time, Point{x}, Point{y}));
        os << format_double(x) << "," << format_double(y) << "," << format_double(v) << ","
           << format_double(d) << "\n";
      }
  } else if (cfg.op == "projector") {
    os << "# op=projector N=" << cfg.degree << "\n# x,y,value,diagnostic\n";
    for (double x : xs)
      for (double y : xs)
        os << format_double(x) << "," << format_double(y) << ","
           << format_double(projector_QN(cfg.degree, Point{x}, Point{y})) << ",0\n";
  } else if (cfg.op == "riesz") {
    RieszOp op = make_riesz_op(cfg.alpha, cfg.word, 1);
    int K = std::max(cfg.degree, 256);
    double min_sep = riesz_kernel_min_separation(K);
    os << "# op=riesz K=" << K << " min_separation=" << format_double(min_sep)
       << "\n# x,y,value,diagnostic\n";
    Herm1DCache cache(K + op.word.order() + 8);
    for (double x : xs)
      for (double y : xs) {
        if (std::abs(x - y) < min_sep) {
          os << format_double(x) << "," << format_double(y) << ",nan,inf\n";
          continue;
        }
        double diag = 0;
        double v = riesz_kernel_cut(op, Point{x}, Point{y}, 2.0 * K + 1, &diag, &cache);
        os << format_double(x) << "," << format_double(y) << "," << format_double(v) << ","
           << format_double(diag) << "\n";
      }
  } else if (cfg.op == "pseudo") {
    PseudoSymbol sigma = make_symbol(cfg.symbol, cfg.symbol_params, 1);
    int K = std::max(cfg.degree, 128);
    os << "# op=pseudo symbol=" << cfg.symbol << " K=" << K << "\n# x,y,re,im,diagnostic\n";
    for (double x : xs)
      for (double y : xs) {
        double diag = 0;
        auto v = pseudo_kernel(sigma, Point{x}, Point{y}, K, &diag);
        os << format_double(x) << "," << format_double(y) << "," << format_double(v.real()) << ","
           << format_double(v.imag()) << "," << format_double(diag) << "\n";
      }
  } else {
    throw CLI::ValidationError("kernel: --op must be one of heat, projector, riesz, pseudo");
  }
  write_manifest(cfg, outputs);
  return 0;
}

int cmd_decompose(const RunConfig& cfg) {
  fs::create_directories(cfg.out);
  Ball ball{Point{cfg.center}, cfg.radius};
  SpaceParams params;
  params.p = cfg.p;
  params.q = cfg.q;
  params.omega = cfg.omega;
  params.delta = cfg.delta;
  if (!params.decomposition_admissible(1))
    throw CLI::ValidationError(
        "decompose: delta must exceed max{0, floor(omega) - n(1/p-1)} = " +
        format_double(std::max(0.0, params.floor_omega() - (1.0 / cfg.p - 1.0))));

  DecomposeOptions dopts;
  dopts.J = cfg.annuli;
  int J = cfg.annuli >= 0 ? cfg.annuli : default_annulus_count(ball, params, dopts);
  dopts.J = J;

  GridFn m = [&] {
    if (!cfg.input.empty()) return read_gridfn_csv(cfg.input);
    auto grid = make_annulus_grid(ball, J);
    return make_synthetic_molecule(ball, params, grid, cfg.shape, J);
  }();

  auto vrep = validate_molecule(m, ball, params, J);
  if (!vrep.pass) std::cout << "[warn] input fails the molecule contract\n";

  Decomposition D = decompose_molecule(m, ball, params, dopts);
  std::vector<std::string> outputs;
  auto dump = [&](const GridFn& piece, const std::string& name) {
    write_gridfn_csv((fs::path(cfg.out) / (name + ".csv")).string(), piece);
    outputs.push_back(name + ".csv");
  };
  for (int j = 0; j <= D.J; ++j) dump(D.annulus_pieces[std::size_t(j)], "a_" + std::to_string(j));
  for (std::size_t a = 0; a < D.alphas.size(); ++a) {
    for (int j = 0; j < D.J; ++j)
      dump(D.transfer_pieces[a][std::size_t(j)],
           "a_" + std::to_string(j) + "_alpha" + std::to_string(D.alphas[a].order()));
    dump(D.moment_pieces[a], "a_alpha" + std::to_string(D.alphas[a].order()));
  }
  json man = config_to_json(cfg);
  man["outputs"] = outputs;
  man["J"] = D.J;
  man["C1"] = D.C1;
  man["C2"] = D.C2;
  man["C3"] = D.C3;
  man["gram_condition"] = D.gram_condition;
  man["reassembly_l2"] = D.reassembly_l2;
  man["dual_residual"] = D.dual_residual;
  man["piece_moment_residual"] = D.piece_moment_residual;
  man["moment_transfer_residual"] = D.moment_transfer_residual;
  std::ofstream osm(fs::path(cfg.out) / "manifest.json");
  osm << man.dump(2) << "\n";
  std::cout << "J=" << D.J << " C1=" << format_double(D.C1) << " C2=" << format_double(D.C2)
            << " C3=" << format_double(D.C3)
            << " reassembly_l2=" << format_double(D.reassembly_l2) << "\n";
  return 0;
}

int cmd_verify(const RunConfig& cfg) {
  fs::create_directories(cfg.out);
  CheckLog log;
  log.strict = cfg.strict;
  log.out_dir = cfg.out;
  if (cfg.suite == "identities" || cfg.suite == "all") suite_identities(cfg, log);
  if (cfg.suite == "kernels" || cfg.suite == "all") suite_kernels(cfg, log);
  if (cfg.suite == "hczo" || cfg.suite == "all") suite_hczo(cfg, log);
  if (cfg.suite == "cancellation" || cfg.suite == "all") suite_cancellation(cfg, log);
  if (cfg.suite == "norms" || cfg.suite == "all") suite_norms(cfg, log);
  if (cfg.suite != "identities" && cfg.suite != "kernels" && cfg.suite != "hczo" &&
      cfg.suite != "cancellation" && cfg.suite != "norms" && cfg.suite != "all")
    throw CLI::ValidationError("verify: unknown suite '" + cfg.suite + "'");

  std::ofstream os(fs::path(cfg.out) / "summary.json");
  json top;
  top["config"] = config_to_json(cfg);
  top["checks"] = log.summary;
  top["hard_failed"] = log.hard_failed;
  top["report_failed"] = log.report_failed;
  os << top.dump(2) << "\n";
  write_manifest(cfg, {"summary.json"});
  return log.exit_code();
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  RunConfig cfg;

  // manifest replay: `hak replay <manifest.json> [--out dir]`
  if (!args.empty() && args[0] == "replay") {
    if (args.size() < 2) {
      std::cerr << "replay: need a manifest path\n";
      return 3;
    }
    std::ifstream is(args[1]);
    if (!is) {
      std::cerr << "replay: cannot open " << args[1] << "\n";
      return 3;
    }
    try {
      json j;
      is >> j;
      config_from_json(j, cfg);
      for (std::size_t i = 2; i + 1 < args.size(); i += 2)
        if (args[i] == "--out") cfg.out = args[i + 1];
      if (cfg.command == "transform") return cmd_transform(cfg);
      if (cfg.command == "kernel") return cmd_kernel(cfg);
      if (cfg.command == "decompose") return cmd_decompose(cfg);
      if (cfg.command == "verify") return cmd_verify(cfg);
      std::cerr << "replay: unknown command in manifest\n";
      return 3;
    } catch (const std::exception& e) {
      std::cerr << "replay failed: " << e.what() << "\n";
      return 3;
    }
  }

  CLI::App app{"Hermite-operator harmonic analysis kit"};
  app.require_subcommand(1);

  // pre-scan for --config so its values become defaults
  for (std::size_t i = 0; i + 1 < args.size(); ++i) {
    if (args[i] == "--config") {
      std::ifstream is(args[i + 1]);
      if (!is) {
        std::cerr << "cannot open config " << args[i + 1] << "\n";
        return 3;
      }
      try {
        json j;
        is >> j;
        config_from_json(j, cfg);
      } catch (const std::exception& e) {
        std::cerr << "config parse error: " << e.what() << "\n";
        return 3;
      }
    }
  }

  std::string config_path;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON config file; explicit flags win");
    sub->add_option("--dim", cfg.dim)->check(CLI::Range(1, 3));
    sub->add_option("--degree", cfg.degree);
    sub->add_option("--grid", cfg.grid);
    sub->add_option("--op", cfg.op);
    sub->add_option("--alpha", cfg.alpha);
    sub->add_option("--word", cfg.word);
    sub->add_option("--symbol", cfg.symbol);
    sub->add_option("--symbol-params", cfg.symbol_params);
    sub->add_option("--p", cfg.p);
    sub->add_option("--q", cfg.q);
    sub->add_option("--omega", cfg.omega);
    sub->add_option("--delta", cfg.delta);
    sub->add_option("--time", cfg.time);
    sub->add_option("--radius", cfg.radius);
    sub->add_option("--center", cfg.center);
    sub->add_option("--annuli", cfg.annuli);
    sub->add_option("--shape", cfg.shape);
    sub->add_option("--in", cfg.input);
    sub->add_option("--seed", cfg.seed);
    sub->add_option("--out", cfg.out);
    sub->add_flag("--strict", cfg.strict);
    sub->add_flag("--inverse", cfg.inverse);
  };

  CLI::App* t = app.add_subcommand("transform", "Hermite analysis/synthesis of CSV data");
  add_common(t);
  CLI::App* k = app.add_subcommand("kernel", "kernel tables with diagnostics");
  add_common(k);
  CLI::App* d = app.add_subcommand("decompose", "molecule-to-atoms decomposition");
  add_common(d);
  CLI::App* v = app.add_subcommand("verify", "run verification suites");
  v->add_option("suite", cfg.suite, "identities|kernels|hczo|cancellation|norms|all");
  add_common(v);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 3;
  }

  try {
    if (t->parsed()) {
      cfg.command = "transform";
      return cmd_transform(cfg);
    }
    if (k->parsed()) {
      cfg.command = "kernel";
      return cmd_kernel(cfg);
    }
    if (d->parsed()) {
      cfg.command = "decompose";
      return cmd_decompose(cfg);
    }
    if (v->parsed()) {
      cfg.command = "verify";
      return cmd_verify(cfg);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 3;
}

}  // namespace hak
