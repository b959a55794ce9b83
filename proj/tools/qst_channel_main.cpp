// qst-channel: simulation runs, pole tables, analytic predictions,
// numeric-vs-analytic comparison, parameter sweeps, and figure dataset
// emission for the two-impurity channel model.  All output is CSV.

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "qst/dynamics.hpp"
#include "qst/model.hpp"
#include "qst/regimes.hpp"
#include "qst/spectral.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitTolerance = 4;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// All CSV output goes through a temp file renamed on success, so a failed run
// never leaves a partial file behind.
void write_file(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw qst::validation_error("cannot open output file " + tmp.string());
    }
    out << content;
    if (!out.good()) {
      throw qst::validation_error("failed writing " + tmp.string());
    }
  }
  fs::rename(tmp, target);
}

std::vector<double> linspace(double t0, double t1, int n) {
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) {
    out[i] = t0 + (t1 - t0) * i / (n - 1);
  }
  return out;
}

struct TimeGridOpts {
  double t_start = 0.0;
  double t_end = 100.0;
  int samples = 1000;

  void validate() const {
    if (samples < 2) throw qst::validation_error("--samples must be >= 2");
    if (!(t_end > t_start) || t_start < 0) {
      throw qst::validation_error("need t_end > t_start >= 0");
    }
  }
  std::vector<double> grid() const { return linspace(t_start, t_end, samples); }
};

struct CommonOpts {
  qst::ModelParams params;
  TimeGridOpts time;
  std::string out;
};

void add_model_flags(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--n", opts.params.n_modes, "number of channel modes N");
  cmd->add_option("--l", opts.params.distance, "impurity distance L");
  cmd->add_option("--g", opts.params.coupling, "coupling strength g");
  cmd->add_option("--omega", opts.params.impurity_energy, "impurity energy Omega");
}

void add_time_flags(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--t-start", opts.time.t_start, "start of the time grid");
  cmd->add_option("--t-end", opts.time.t_end, "end of the time grid");
  cmd->add_option("--samples", opts.time.samples, "number of time samples");
}

qst::ClassifierThresholds thresholds_from_env() {
  const char* env = std::getenv("QST_CHANNEL_THRESHOLDS");
  return qst::ClassifierThresholds::from_env_string(env ? env : "");
}

// --------------------------------------------------------------------------
// simulate

int cmd_simulate(const CommonOpts& opts) {
  opts.params.validate();
  opts.time.validate();
  const auto traj = qst::evolve(opts.params, qst::SingleExcitationState::on_a(opts.params),
                                opts.time.grid());
  std::ostringstream csv;
  csv << "t,p_a,p_b,p_chan\n";
  for (std::size_t i = 0; i < traj.size(); ++i) {
    csv << fmt(traj.times[i]) << ',' << fmt(traj.p_a[i]) << ',' << fmt(traj.p_b[i])
        << ',' << fmt(traj.p_chan[i]) << '\n';
  }
  write_file(opts.out, csv.str());
  return 0;
}

// --------------------------------------------------------------------------
// poles

int cmd_poles(const CommonOpts& opts) {
  opts.params.validate();
  const qst::PoleSet set = qst::find_poles(opts.params);
  std::ostringstream csv;
  csv << "omega,parity,residue_weight\n";
  for (const qst::Pole& p : set.poles) {
    csv << fmt(p.omega) << ',' << qst::to_string(p.parity) << ','
        << fmt(p.residue_weight) << '\n';
  }
  write_file(opts.out, csv.str());
  return 0;
}

// --------------------------------------------------------------------------
// predict

int cmd_predict(const CommonOpts& opts) {
  opts.params.validate();
  const auto report = qst::classify_regime(opts.params, thresholds_from_env());

  std::string omega_plus, omega_minus, omega_plus_cont, omega_minus_cont;
  std::string gamma_big, d1m, d1p, d2m, d2p, t_star, fast, slow;
  switch (report.regime) {
    case qst::Regime::WeakOffResonance: {
      const auto pred = qst::predict_weak_offres(opts.params);
      omega_plus = fmt(pred.omega_plus);
      omega_minus = fmt(pred.omega_minus);
      omega_plus_cont = fmt(pred.omega_plus_continuum);
      omega_minus_cont = fmt(pred.omega_minus_continuum);
      break;
    }
    case qst::Regime::WeakResonantDiscrete:
    case qst::Regime::WeakResonantDiffusive: {
      const auto pred = qst::predict_weak_resonant(opts.params);
      gamma_big = fmt(pred.gamma_big);
      d1m = fmt(pred.delta_roots[0]);
      d1p = fmt(pred.delta_roots[1]);
      d2m = fmt(pred.delta_roots[2]);
      d2p = fmt(pred.delta_roots[3]);
      if (pred.omega_zero && pred.l_even) t_star = fmt(pred.t_star);
      break;
    }
    case qst::Regime::StrongCoupling: {
      const auto pred = qst::predict_strong(opts.params);
      fast = fmt(pred.fast_freq);
      slow = fmt(pred.slow_freq);
      break;
    }
    case qst::Regime::Crossover:
      break;
  }

  std::ostringstream csv;
  csv << "regime,g_sqrt_n,resonance_offset,omega_plus,omega_minus,"
         "omega_plus_continuum,omega_minus_continuum,gamma_big,"
         "delta_1_minus,delta_1_plus,delta_2_minus,delta_2_plus,t_star,"
         "fast_freq,slow_freq\n";
  csv << qst::to_string(report.regime) << ',' << fmt(report.g_sqrt_n) << ','
      << fmt(report.resonance_offset) << ',' << omega_plus << ',' << omega_minus << ','
      << omega_plus_cont << ',' << omega_minus_cont << ',' << gamma_big << ',' << d1m
      << ',' << d1p << ',' << d2m << ',' << d2p << ',' << t_star << ',' << fast << ','
      << slow << '\n';
  write_file(opts.out, csv.str());
  return 0;
}

// --------------------------------------------------------------------------
// compare

struct TheoryCurve {
  std::vector<double> p_a;
  std::vector<double> p_b;
};

TheoryCurve theory_for(const qst::ModelParams& params, qst::Regime regime,
                       const std::vector<double>& times) {
  TheoryCurve th;
  th.p_a.reserve(times.size());
  th.p_b.reserve(times.size());
  switch (regime) {
    case qst::Regime::WeakOffResonance: {
      const auto pred = qst::predict_weak_offres(params);
      for (double t : times) {
        th.p_a.push_back(pred.p_a(t));
        th.p_b.push_back(pred.p_b(t));
      }
      break;
    }
    case qst::Regime::WeakResonantDiscrete:
    case qst::Regime::WeakResonantDiffusive: {
      const auto pred = qst::predict_weak_resonant(params);
      for (double t : times) {
        th.p_a.push_back(pred.p_a(t));
        th.p_b.push_back(pred.p_b(t));
      }
      break;
    }
    case qst::Regime::StrongCoupling: {
      const auto pred = qst::predict_strong(params);
      for (double t : times) {
        th.p_a.push_back(pred.p_a(t));
        th.p_b.push_back(pred.p_b(t));
      }
      break;
    }
    case qst::Regime::Crossover:
      throw qst::validation_error(
          "no closed-form predictor applies in the Crossover regime");
  }
  return th;
}

int cmd_compare(const CommonOpts& opts, double tolerance) {
  opts.params.validate();
  opts.time.validate();
  if (!(tolerance >= 0)) throw qst::validation_error("--tolerance must be >= 0");

  const auto report = qst::classify_regime(opts.params, thresholds_from_env());
  const auto times = opts.time.grid();
  const auto traj =
      qst::evolve(opts.params, qst::SingleExcitationState::on_a(opts.params), times);
  const TheoryCurve th = theory_for(opts.params, report.regime, times);

  double max_dev = 0.0;
  std::ostringstream csv;
  csv << "t,p_a_num,p_b_num,p_a_th,p_b_th,deviation\n";
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double dev = std::max(std::abs(traj.p_a[i] - th.p_a[i]),
                                std::abs(traj.p_b[i] - th.p_b[i]));
    max_dev = std::max(max_dev, dev);
    csv << fmt(times[i]) << ',' << fmt(traj.p_a[i]) << ',' << fmt(traj.p_b[i]) << ','
        << fmt(th.p_a[i]) << ',' << fmt(th.p_b[i]) << ',' << fmt(dev) << '\n';
  }
  write_file(opts.out, csv.str());
  std::cout << "max_abs_deviation=" << fmt(max_dev) << '\n';
  return max_dev <= tolerance ? 0 : kExitTolerance;
}

// --------------------------------------------------------------------------
// sweep

std::vector<double> parse_axis(const std::string& text, const std::string& name) {
  double a = 0, b = 0, step = 0;
  char c1 = 0, c2 = 0;
  std::istringstream in(text);
  if (!(in >> a >> c1 >> b >> c2 >> step) || c1 != ':' || c2 != ':' || !(step > 0)) {
    throw qst::validation_error(name + " expects 'start:stop:step' with step > 0, got '" +
                                text + "'");
  }
  std::vector<double> out;
  for (double v = a; v <= b + step * 1e-9; v += step) out.push_back(v);
  if (out.empty()) throw qst::validation_error(name + " produced an empty axis");
  return out;
}

int cmd_sweep(const CommonOpts& opts, const std::string& ax_g, const std::string& ax_omega,
              const std::string& ax_n, const std::string& ax_l, int jobs) {
  opts.params.validate();
  opts.time.validate();
  if (jobs < 1) throw qst::validation_error("--jobs must be >= 1");

  const std::vector<double> gs =
      ax_g.empty() ? std::vector<double>{opts.params.coupling} : parse_axis(ax_g, "--sweep-g");
  const std::vector<double> omegas = ax_omega.empty()
                                         ? std::vector<double>{opts.params.impurity_energy}
                                         : parse_axis(ax_omega, "--sweep-omega");
  auto to_ints = [](const std::vector<double>& vs, const std::string& name) {
    std::vector<int> out;
    for (double v : vs) {
      const int i = static_cast<int>(std::lround(v));
      if (std::abs(v - i) > 1e-9) {
        throw qst::validation_error(name + " must contain integers");
      }
      out.push_back(i);
    }
    return out;
  };
  const std::vector<int> ns = ax_n.empty()
                                  ? std::vector<int>{opts.params.n_modes}
                                  : to_ints(parse_axis(ax_n, "--sweep-n"), "--sweep-n");
  const std::vector<int> ls = ax_l.empty()
                                  ? std::vector<int>{opts.params.distance}
                                  : to_ints(parse_axis(ax_l, "--sweep-l"), "--sweep-l");

  struct Point {
    qst::ModelParams params;
  };
  std::vector<Point> points;
  for (double g : gs)
    for (double omega : omegas)
      for (int n : ns)
        for (int l : ls) {
          qst::ModelParams p{n, l, g, omega};
          p.validate();
          points.push_back(Point{p});
        }

  const auto thresholds = thresholds_from_env();
  const auto times = opts.time.grid();
  auto run_point = [&](const Point& pt) -> std::string {
    const auto report = qst::classify_regime(pt.params, thresholds);
    const auto traj =
        qst::evolve(pt.params, qst::SingleExcitationState::on_a(pt.params), times);
    const auto metrics = qst::transfer_metrics(traj);
    std::ostringstream row;
    row << fmt(pt.params.coupling) << ',' << fmt(pt.params.impurity_energy) << ','
        << pt.params.n_modes << ',' << pt.params.distance << ','
        << qst::to_string(report.regime) << ',' << fmt(metrics.max_p_b) << ','
        << fmt(metrics.t_at_max) << '\n';
    return row.str();
  };

  std::vector<std::string> rows(points.size());
  if (jobs <= 1) {
    for (std::size_t i = 0; i < points.size(); ++i) rows[i] = run_point(points[i]);
  } else {
    // Bounded fan-out; rows keep grid order regardless of completion order.
    std::size_t next = 0;
    while (next < points.size()) {
      const std::size_t batch = std::min<std::size_t>(jobs, points.size() - next);
      std::vector<std::future<std::string>> futs;
      for (std::size_t j = 0; j < batch; ++j) {
        futs.push_back(std::async(std::launch::async, run_point,
                                  std::cref(points[next + j])));
      }
      for (std::size_t j = 0; j < batch; ++j) rows[next + j] = futs[j].get();
      next += batch;
    }
  }

  std::ostringstream csv;
  csv << "g,omega,n,l,regime,max_p_b,t_at_max\n";
  for (const std::string& row : rows) csv << row;
  write_file(opts.out, csv.str());
  return 0;
}

// --------------------------------------------------------------------------
// figures

void write_figure(const std::string& path, const std::vector<double>& times,
                  double time_unit, const qst::Trajectory& traj,
                  const std::vector<double>& pa_th, const std::vector<double>& pb_th) {
  std::ostringstream csv;
  csv << "t,p_a_num,p_b_num,p_a_th,p_b_th\n";
  for (std::size_t i = 0; i < times.size(); ++i) {
    csv << fmt(times[i] * time_unit) << ',' << fmt(traj.p_a[i]) << ','
        << fmt(traj.p_b[i]) << ',' << fmt(pa_th[i]) << ',' << fmt(pb_th[i]) << '\n';
  }
  write_file(path, csv.str());
}

int cmd_figures(const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);

  {  // Fig. 1: weak coupling off-resonance, raw time axis.
    const qst::ModelParams params{30, 6, 0.05, 1.5};
    const auto pred = qst::predict_weak_offres(params);
    const auto times = linspace(0.0, pred.rabi_period(), 4000);
    const auto traj =
        qst::evolve(params, qst::SingleExcitationState::on_a(params), times);
    std::vector<double> pa, pb;
    for (double t : times) {
      pa.push_back(pred.p_a(t));
      pb.push_back(pred.p_b(t));
    }
    write_figure((fs::path(out_dir) / "fig1.csv").string(), times, 1.0, traj, pa, pb);
  }
  {  // Fig. 2: weak coupling at resonance, time in units of sqrt(2) g / sqrt(N).
    const qst::ModelParams params{16, 8, 0.01, 0.0};
    const auto pred = qst::predict_weak_resonant(params);
    const auto times = linspace(0.0, 2.0 * pred.t_star, 4000);
    const auto traj =
        qst::evolve(params, qst::SingleExcitationState::on_a(params), times);
    std::vector<double> pa, pb;
    for (double t : times) {
      pa.push_back(pred.p_a(t));
      pb.push_back(pred.p_b(t));
    }
    const double unit =
        std::numbers::sqrt2 * params.coupling / std::sqrt(double(params.n_modes));
    write_figure((fs::path(out_dir) / "fig2.csv").string(), times, unit, traj, pa, pb);
  }
  {  // Fig. 3: strong coupling, time in units of g/[2(2g)^L]; the grid is
     // dense over the first fast periods, then coarse out to one slow period.
    const qst::ModelParams params{50, 4, 10.0, 0.0};
    const auto pred = qst::predict_strong(params);
    const double fast_period = std::numbers::pi / pred.fast_freq;
    const double slow_period = std::numbers::pi / pred.slow_freq;
    std::vector<double> times = linspace(0.0, 3.0 * fast_period, 600);
    const auto coarse = linspace(3.0 * fast_period, slow_period, 4000);
    times.insert(times.end(), coarse.begin() + 1, coarse.end());
    const auto traj =
        qst::evolve(params, qst::SingleExcitationState::on_a(params), times);
    std::vector<double> pa, pb;
    for (double t : times) {
      pa.push_back(pred.p_a(t));
      pb.push_back(pred.p_b(t));
    }
    write_figure((fs::path(out_dir) / "fig3.csv").string(), times, pred.slow_freq,
                 traj, pa, pb);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"two-impurity quantum channel simulator"};
  app.require_subcommand(1);
  app.set_config("--config")->configurable(false);

  CommonOpts opts;
  double tolerance = 0.05;
  int jobs = 1;
  std::string ax_g, ax_omega, ax_n, ax_l;

  CLI::App* simulate = app.add_subcommand("simulate", "time evolution to CSV");
  CLI::App* poles = app.add_subcommand("poles", "pole table of D+ and D-");
  CLI::App* predict = app.add_subcommand("predict", "regime and closed-form predictions");
  CLI::App* compare = app.add_subcommand("compare", "numeric vs analytic comparison");
  CLI::App* sweep = app.add_subcommand("sweep", "parameter sweep with transfer metrics");
  CLI::App* figures = app.add_subcommand("figures", "emit the three figure datasets");

  for (CLI::App* cmd : {simulate, poles, predict, compare, sweep}) {
    add_model_flags(cmd, opts);
    cmd->add_option("--out", opts.out, "output CSV path")->required();
  }
  for (CLI::App* cmd : {simulate, compare, sweep}) {
    add_time_flags(cmd, opts);
  }
  compare->add_option("--tolerance", tolerance, "max allowed |num - theory|");
  sweep->add_option("--jobs", jobs, "max concurrent sweep evaluations");
  sweep->add_option("--sweep-g", ax_g, "g axis start:stop:step");
  sweep->add_option("--sweep-omega", ax_omega, "Omega axis start:stop:step");
  sweep->add_option("--sweep-n", ax_n, "N axis start:stop:step");
  sweep->add_option("--sweep-l", ax_l, "L axis start:stop:step");
  figures->add_option("--out", opts.out, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (simulate->parsed()) return cmd_simulate(opts);
    if (poles->parsed()) return cmd_poles(opts);
    if (predict->parsed()) return cmd_predict(opts);
    if (compare->parsed()) return cmd_compare(opts, tolerance);
    if (sweep->parsed()) return cmd_sweep(opts, ax_g, ax_omega, ax_n, ax_l, jobs);
    if (figures->parsed()) return cmd_figures(opts.out);
  } catch (const qst::validation_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const qst::regime_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return 0;
}
