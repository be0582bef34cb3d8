#include "hjlab/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "hjlab/entropy.hpp"
#include "hjlab/semiconcave.hpp"

namespace hjlab {

namespace {

using nlohmann::json;

std::vector<double> parse_number_list(const std::string& s, char sep) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, sep)) {
    if (tok.empty()) continue;
    size_t pos = 0;
    double v = std::stod(tok, &pos);
    if (pos != tok.size()) throw ArgumentError("bad number in list: " + tok);
    out.push_back(v);
  }
  return out;
}

InitialData from_oracle(SupergradientOracle oracle, double B, double L) {
  InitialData init;
  init.oracle = oracle;
  init.B = B;
  init.L = L;
  Generator g = Generator::analytic(oracle.value, [oracle](const Vec& x) {
    return oracle.supergradients(x).front();
  });
  g.id = 0;
  init.fn.generators.push_back(std::move(g));
  init.fn.B = B;
  init.fn.L = L;
  return init;
}

InitialData make_neg_abs(int dim) {
  SupergradientOracle o;
  o.value = [](const Vec& x) { return -x.norm(); };
  o.supergradients = [dim](const Vec& x) {
    double r = x.norm();
    std::vector<Vec> grads;
    if (r > 1e-12) {
      grads.push_back((-1.0 / r) * x);
    } else if (dim == 1) {
      grads.push_back(Vec::d1(-1.0));
      grads.push_back(Vec::d1(1.0));
    } else {
      for (int k = 0; k < 8; ++k) {
        double a = 2.0 * M_PI * k / 8.0;
        grads.push_back(Vec::d2(-std::cos(a), -std::sin(a)));
      }
    }
    return grads;
  };
  return from_oracle(std::move(o), 0.0, 1.0);
}

InitialData make_min_affine(const std::string& params, int dim) {
  // d=1 pieces "slope,offset"; d=2 pieces "sx,sy,offset"; pieces joined by ';'
  std::vector<Vec> slopes;
  std::vector<double> offsets;
  std::stringstream ss(params);
  std::string piece;
  while (std::getline(ss, piece, ';')) {
    if (piece.empty()) continue;
    std::vector<double> nums = parse_number_list(piece, ',');
    if (static_cast<int>(nums.size()) != dim + 1)
      throw ArgumentError("min-affine: each piece needs " + std::to_string(dim + 1) +
                          " numbers");
    slopes.push_back(dim == 1 ? Vec::d1(nums[0]) : Vec::d2(nums[0], nums[1]));
    offsets.push_back(nums.back());
  }
  if (slopes.empty()) throw ArgumentError("min-affine: no pieces");
  double L = 0.0;
  for (const auto& s : slopes) L = std::max(L, s.norm());
  SupergradientOracle o;
  o.value = [slopes, offsets](const Vec& x) {
    double best = slopes[0].dot(x) - offsets[0];
    for (size_t i = 1; i < slopes.size(); ++i)
      best = std::min(best, slopes[i].dot(x) - offsets[i]);
    return best;
  };
  o.supergradients = [slopes, offsets](const Vec& x) {
    double best = slopes[0].dot(x) - offsets[0];
    for (size_t i = 1; i < slopes.size(); ++i)
      best = std::min(best, slopes[i].dot(x) - offsets[i]);
    std::vector<Vec> grads;
    for (size_t i = 0; i < slopes.size(); ++i)
      if (slopes[i].dot(x) - offsets[i] <= best + 1e-9) grads.push_back(slopes[i]);
    return grads;
  };
  return from_oracle(std::move(o), 0.0, L);
}

InitialData make_concave_poly(const std::string& params, int dim) {
  if (dim != 1) throw ArgumentError("concave-poly: d=1 only");
  std::vector<double> c = parse_number_list(params, ',');
  if (c.empty()) throw ArgumentError("concave-poly: no coefficients");
  auto poly = [c](double x) {
    double v = 0.0;
    for (size_t i = c.size(); i-- > 0;) v = v * x + c[i];
    return v;
  };
  auto dpoly = [c](double x) {
    double v = 0.0;
    for (size_t i = c.size(); i-- > 1;) v = v * x + c[i] * static_cast<double>(i);
    return v;
  };
  auto ddpoly = [c](double x) {
    double v = 0.0;
    for (size_t i = c.size(); i-- > 2;)
      v = v * x + c[i] * static_cast<double>(i) * static_cast<double>(i - 1);
    return v;
  };
  double B = 0.0, L = 0.0;
  for (int i = 0; i <= 160; ++i) {
    double x = -8.0 + i * 0.1;
    B = std::max(B, ddpoly(x));
    L = std::max(L, std::fabs(dpoly(x)));
  }
  SupergradientOracle o;
  o.value = [poly](const Vec& x) { return poly(x[0]); };
  o.supergradients = [dpoly](const Vec& x) {
    return std::vector<Vec>{Vec::d1(dpoly(x[0]))};
  };
  return from_oracle(std::move(o), B, std::max(L, 1e-6));
}

InitialData make_grid_data(const std::string& path, int dim) {
  if (dim != 1) throw ArgumentError("grid initial data: d=1 only");
  std::ifstream in(path);
  if (!in) throw ArgumentError("grid initial data: cannot open " + path);
  DiscreteData data;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::stringstream ls(line);
    double x, v;
    if (!(ls >> x >> v)) throw ArgumentError("grid initial data: bad line: " + line);
    data.xs.push_back(x);
    data.values.push_back(v);
  }
  if (data.xs.size() < 2) throw ArgumentError("grid initial data: need >= 2 rows");
  for (size_t i = 0; i + 1 < data.xs.size(); ++i)
    if (data.xs[i + 1] <= data.xs[i])
      throw ArgumentError("grid initial data: x column must increase");
  return from_oracle(data.oracle(), data.estimate_B(), data.estimate_L());
}

const std::vector<std::string> kSolverOrder = {"inf-family", "variational",
                                               "iterated-k", "hopf",
                                               "lax-oleinik", "fd-oracle"};

std::string fmt_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_time_tag(double t) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", t);
  return buf;
}

}  // namespace

InitialData make_initial(const std::string& id, int dim) {
  if (dim != 1 && dim != 2) throw ArgumentError("initial data: dim must be 1 or 2");
  if (id == "neg-abs") return make_neg_abs(dim);
  if (id.rfind("min-affine:", 0) == 0) return make_min_affine(id.substr(11), dim);
  if (id.rfind("concave-poly:", 0) == 0)
    return make_concave_poly(id.substr(13), dim);
  if (id.rfind("grid:", 0) == 0) return make_grid_data(id.substr(5), dim);
  throw ArgumentError("unknown initial condition id: " + id);
}

std::vector<std::string> initial_ids() {
  return {"concave-poly:<coeff list>", "grid:<two-column csv path>",
          "min-affine:<slope(s),offset;...>", "neg-abs"};
}

ScenarioConfig parse_scenario(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ArgumentError(std::string("config parse error: ") + e.what());
  }
  ScenarioConfig cfg;
  try {
    cfg.name = j.value("name", std::string("scenario"));
    cfg.hamiltonian = j.at("hamiltonian").get<std::string>();
    cfg.initial = j.at("initial").get<std::string>();
    const json& axes = j.at("grid").at("axes");
    if (!axes.is_array() || axes.empty() || axes.size() > 2)
      throw ArgumentError("config: grid.axes must list 1 or 2 axes");
    cfg.dim = static_cast<int>(axes.size());
    cfg.grid.dim = cfg.dim;
    for (int a = 0; a < cfg.dim; ++a) {
      cfg.grid.ax[a].lo = axes[static_cast<size_t>(a)].at("min").get<double>();
      cfg.grid.ax[a].hi = axes[static_cast<size_t>(a)].at("max").get<double>();
      cfg.grid.ax[a].count = axes[static_cast<size_t>(a)].at("count").get<int>();
    }
    cfg.times = j.at("times").get<std::vector<double>>();
    cfg.solvers = j.at("solvers").get<std::vector<std::string>>();
    if (j.contains("params")) {
      const json& p = j["params"];
      cfg.dt = p.value("dt", cfg.dt);
      cfg.k = p.value("k", cfg.k);
      cfg.sites = p.value("sites", cfg.sites);
      cfg.dual_resolution = p.value("dual_resolution", cfg.dual_resolution);
      cfg.dual_p_range = p.value("dual_p_range", cfg.dual_p_range);
      cfg.cfl = p.value("cfl", cfg.cfl);
      cfg.y_margin = p.value("y_margin", cfg.y_margin);
      cfg.lax_resolution = p.value("lax_resolution", cfg.lax_resolution);
    }
    if (j.contains("checker")) {
      const json& c = j["checker"];
      cfg.check_entropy = c.value("entropy", false);
      cfg.entropy_mode = c.value("mode", std::string("convex"));
      cfg.entropy_tol = c.value("tol", cfg.entropy_tol);
      cfg.ordering_tol = c.value("ordering_tol", cfg.ordering_tol);
    }
    cfg.out_dir = j.value("out", std::string("."));
  } catch (const json::exception& e) {
    throw ArgumentError(std::string("config schema error: ") + e.what());
  }

  cfg.grid.validate();
  if (cfg.times.empty()) throw ArgumentError("config: times must be nonempty");
  double prev = -1e300;
  for (double t : cfg.times) {
    if (t < 0) throw ArgumentError("config: times must be nonnegative");
    if (t <= prev) throw ArgumentError("config: times must increase");
    prev = t;
  }
  if (cfg.solvers.empty()) throw ArgumentError("config: solvers must be nonempty");
  for (const auto& s : cfg.solvers)
    if (std::find(kSolverOrder.begin(), kSolverOrder.end(), s) == kSolverOrder.end())
      throw ArgumentError("config: unknown solver: " + s);
  if (cfg.entropy_mode != "convex" && cfg.entropy_mode != "concave")
    throw ArgumentError("config: checker.mode must be convex or concave");
  if (cfg.check_entropy &&
      std::find(cfg.solvers.begin(), cfg.solvers.end(), "inf-family") ==
          cfg.solvers.end())
    throw ArgumentError("config: entropy checker needs the inf-family solver");
  make_model(cfg.hamiltonian, cfg.dim);      // id must resolve
  make_initial(cfg.initial, cfg.dim);        // id must resolve
  return cfg;
}

namespace {

const char* kBurgersShock = R"({
  "name": "burgers-shock",
  "hamiltonian": "quadratic",
  "initial": "neg-abs",
  "grid": {"axes": [{"min": -2.0, "max": 2.0, "count": 201}]},
  "times": [1.0],
  "solvers": ["inf-family", "variational", "fd-oracle"],
  "params": {"dt": 0.002, "sites": 81, "cfl": 0.45},
  "checker": {"entropy": true, "mode": "convex", "tol": 1e-6, "ordering_tol": 5e-2}
})";

const char* kAntiBurgersRarefaction = R"({
  "name": "anti-burgers-rarefaction",
  "hamiltonian": "neg-quadratic",
  "initial": "neg-abs",
  "grid": {"axes": [{"min": -2.0, "max": 2.0, "count": 201}]},
  "times": [1.0],
  "solvers": ["inf-family", "variational", "fd-oracle"],
  "params": {"dt": 0.002, "sites": 81, "cfl": 0.45},
  "checker": {"entropy": true, "mode": "convex", "tol": 1e-6, "ordering_tol": 5e-2}
})";

}  // namespace

std::string builtin_scenario_json(const std::string& name) {
  if (name == "burgers-shock") return kBurgersShock;
  if (name == "anti-burgers-rarefaction") return kAntiBurgersRarefaction;
  return "";
}

std::vector<std::string> builtin_scenario_names() {
  return {"anti-burgers-rarefaction", "burgers-shock"};
}

std::string list_builtins() {
  std::ostringstream os;
  os << "hamiltonians:\n";
  for (const auto& id : model_ids()) os << "  " << id << "\n";
  os << "initial conditions:\n";
  for (const auto& id : initial_ids()) os << "  " << id << "\n";
  os << "scenarios:\n";
  for (const auto& id : builtin_scenario_names()) os << "  " << id << "\n";
  return os.str();
}

namespace {

struct TimeSlice {
  double t = 0.0;
  std::vector<SolutionField> fields;  // canonical order
};

void write_fields_csv(const std::filesystem::path& dir, const TimeSlice& slice,
                      const Grid& grid) {
  std::string tag = fmt_time_tag(slice.t);
  std::ofstream csv(dir / ("fields_t" + tag + ".csv"));
  std::ofstream dat(dir / ("fields_t" + tag + ".dat"));
  csv << (grid.dim == 1 ? "x" : "x,y");
  dat << (grid.dim == 1 ? "# x" : "# x y");
  for (const auto& f : slice.fields) {
    csv << "," << f.provenance;
    dat << " " << f.provenance;
  }
  csv << "\n";
  dat << "\n";
  const int m = grid.size();
  for (int i = 0; i < m; ++i) {
    Vec x = grid.node(i);
    csv << fmt_real(x[0]);
    dat << fmt_real(x[0]);
    if (grid.dim == 2) {
      csv << "," << fmt_real(x[1]);
      dat << " " << fmt_real(x[1]);
    }
    for (const auto& f : slice.fields) {
      csv << "," << fmt_real(f.values[static_cast<size_t>(i)]);
      dat << " " << fmt_real(f.values[static_cast<size_t>(i)]);
    }
    csv << "\n";
    dat << "\n";
  }
}

json ordering_to_json(double t, const OrderingReport& rep) {
  json jt;
  jt["t"] = t;
  jt["pass"] = rep.pass;
  jt["tol"] = rep.tol;
  jt["pairs"] = json::array();
  for (const auto& p : rep.pairs) {
    json jp;
    jp["lower"] = p.lower;
    jp["upper"] = p.upper;
    jp["max_violation"] = p.max_violation;
    jp["max_abs_diff"] = p.max_abs_diff;
    jt["pairs"].push_back(jp);
  }
  return jt;
}

json entropy_to_json(double t, const FieldEntropyScan& scan,
                     const std::string& mode) {
  json jt;
  jt["t"] = t;
  jt["mode"] = mode;
  jt["pass"] = scan.pass;
  jt["worst_margin"] = scan.worst_margin;
  jt["reports"] = json::array();
  for (const auto& r : scan.reports) {
    json jr;
    jr["x"] = std::vector<double>(r.x.c.begin(), r.x.c.begin() + r.x.dim);
    jr["pass"] = r.pass;
    jr["worst_margin"] = r.worst_margin;
    jr["worst_p"] =
        std::vector<double>(r.worst_p.c.begin(), r.worst_p.c.begin() + r.worst_p.dim);
    json grads = json::array();
    for (const auto& g : r.extreme_gradients)
      grads.push_back(std::vector<double>(g.c.begin(), g.c.begin() + g.dim));
    jr["extreme_gradients"] = grads;
    jt["reports"].push_back(jr);
  }
  return jt;
}

SolutionField sample_initial(const InitialData& u0, const Grid& grid,
                             const std::string& provenance) {
  SolutionField f;
  f.t = 0.0;
  f.grid = grid;
  f.provenance = provenance;
  f.values.resize(static_cast<size_t>(grid.size()));
  for (int i = 0; i < grid.size(); ++i)
    f.values[static_cast<size_t>(i)] = u0.oracle.value(grid.node(i));
  return f;
}

}  // namespace

int run_scenario(const ScenarioConfig& config, const RunOptions& opts,
                 std::string& diagnostics) {
  std::ostringstream diag;
  std::string stage = "setup";
  try {
    config.grid.validate();
    HamiltonianModel model = make_model(config.hamiltonian, config.dim);
    InitialData u0 = make_initial(config.initial, config.dim);
    std::filesystem::path out =
        opts.out_dir.empty() ? config.out_dir : opts.out_dir;
    std::filesystem::create_directories(out);

    auto wants = [&](const std::string& s) {
      return std::find(config.solvers.begin(), config.solvers.end(), s) !=
             config.solvers.end();
    };

    double Bc = std::clamp(u0.B, 1e-6, 1e3);
    double Lc = std::clamp(u0.L, 1e-6, 1e3);
    SemiConcaveFn family;
    if (wants("inf-family")) {
      stage = "family construction";
      std::vector<Vec> sites;
      if (config.dim == 1) {
        for (int i = 0; i < config.sites; ++i)
          sites.push_back(Vec::d1(config.grid.ax[0].lo +
                                  (config.grid.ax[0].hi - config.grid.ax[0].lo) * i /
                                      (config.sites - 1)));
      } else {
        for (int j = 0; j < config.sites; ++j)
          for (int i = 0; i < config.sites; ++i)
            sites.push_back(Vec::d2(
                config.grid.ax[0].lo + (config.grid.ax[0].hi - config.grid.ax[0].lo) *
                                           i / (config.sites - 1),
                config.grid.ax[1].lo + (config.grid.ax[1].hi - config.grid.ax[1].lo) *
                                           j / (config.sites - 1)));
      }
      family = build_family_f0(u0.oracle, sites, Bc, Lc);
    }

    DualFunction dual;
    if (wants("hopf")) {
      stage = "legendre dual";
      double P = config.dual_p_range > 0
                     ? config.dual_p_range
                     : lipschitz_bound(Lc, model.bound_A, config.times.back()) + 1.0;
      Box xb = config.grid.box();
      Box pb;
      pb.lo = Vec::zero(config.dim);
      pb.hi = Vec::zero(config.dim);
      for (int a = 0; a < config.dim; ++a) {
        double w = xb.hi[a] - xb.lo[a];
        xb.lo[a] -= 0.5 * w + P * config.times.back();
        xb.hi[a] += 0.5 * w + P * config.times.back();
        pb.lo[a] = -P;
        pb.hi[a] = P;
      }
      dual = legendre_concave_dual(u0.oracle.value, xb, pb, config.dual_resolution);
    }

    json ordering_json;
    ordering_json["times"] = json::array();
    bool ordering_pass = true;
    json entropy_json;
    entropy_json["times"] = json::array();
    bool entropy_pass = true;
    bool ordering_checked = false, entropy_checked = false;

    for (double t : config.times) {
      TimeSlice slice;
      slice.t = t;
      FamilyEvolution fe;
      bool have_fe = false;
      for (const auto& name : kSolverOrder) {
        if (!wants(name)) continue;
        stage = name + " at t=" + fmt_time_tag(t);
        SolutionField f;
        if (t <= 1e-15) {
          f = sample_initial(u0, config.grid, name);
        } else if (name == "inf-family") {
          fe = evolve_family(model, family, t, config.grid, config.dt);
          have_fe = true;
          f = fe.min_field("inf-family");
        } else if (name == "variational") {
          f = variational_solution(model, u0, t, config.grid, config.dt,
                                   config.sites);
        } else if (name == "iterated-k") {
          f = iterated_variational(model, u0, t, config.grid, config.dt, config.k);
        } else if (name == "hopf") {
          f = hopf_solution(model, dual, t, config.grid);
        } else if (name == "lax-oleinik") {
          f = lax_oleinik(model, u0.oracle.value, t, config.grid, config.y_margin,
                          config.lax_resolution);
        } else {  // fd-oracle
          std::vector<double> uv(static_cast<size_t>(config.grid.size()));
          for (int i = 0; i < config.grid.size(); ++i)
            uv[static_cast<size_t>(i)] = u0.oracle.value(config.grid.node(i));
          f = fd_viscosity_oracle(model, uv, t, config.grid, config.cfl);
        }
        slice.fields.push_back(std::move(f));
      }

      stage = "output at t=" + fmt_time_tag(t);
      write_fields_csv(out, slice, config.grid);

      if (slice.fields.size() >= 2) {
        stage = "ordering check at t=" + fmt_time_tag(t);
        OrderingReport rep = compare_solutions(slice.fields, config.ordering_tol);
        ordering_json["times"].push_back(ordering_to_json(t, rep));
        ordering_pass = ordering_pass && rep.pass;
        ordering_checked = true;
      }
      if (config.check_entropy && have_fe && t > 1e-15) {
        stage = "entropy check at t=" + fmt_time_tag(t);
        EnvelopeMode mode = config.entropy_mode == "convex" ? EnvelopeMode::Convex
                                                            : EnvelopeMode::Concave;
        FieldEntropyScan scan = scan_field(model, fe, mode, config.entropy_tol);
        entropy_json["times"].push_back(entropy_to_json(t, scan, config.entropy_mode));
        entropy_pass = entropy_pass && scan.pass;
        entropy_checked = true;
      }
    }

    stage = "report output";
    if (ordering_checked) {
      ordering_json["pass"] = ordering_pass;
      std::ofstream(out / "ordering_report.json") << ordering_json.dump(2) << "\n";
    }
    if (entropy_checked) {
      entropy_json["pass"] = entropy_pass;
      std::ofstream(out / "entropy_report.json") << entropy_json.dump(2) << "\n";
    }

    if (opts.assert_ordering && !(ordering_checked && ordering_pass)) {
      diag << "assert ordering: "
           << (ordering_checked ? "violation above tolerance" : "not checked")
           << "\n";
      diagnostics = diag.str();
      return 1;
    }
    if (opts.assert_entropy_pass && !(entropy_checked && entropy_pass)) {
      diag << "assert entropy-pass: "
           << (entropy_checked ? "entropy condition failed" : "not checked") << "\n";
      diagnostics = diag.str();
      return 1;
    }
    diagnostics = diag.str();
    return 0;
  } catch (const HorizonError& e) {
    diagnostics = "stage [" + stage + "]: " + e.what();
    return 3;
  } catch (const StabilityError& e) {
    diagnostics = "stage [" + stage + "]: " + e.what();
    return 3;
  } catch (const BlowupError& e) {
    diagnostics = "stage [" + stage + "]: " + e.what();
    return 3;
  } catch (const std::exception& e) {
    diagnostics = "stage [" + stage + "]: " + e.what();
    return 2;
  }
}

}  // namespace hjlab
