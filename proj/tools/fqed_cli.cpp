// fqed: command-line front end over the C API.
#include "fqed/fqed.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <variant>
#include <vector>

namespace {

constexpr double kElectronMassMeV = 0.51099895;
constexpr double kPi = 3.14159265358979323846;

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1; // selftest found a broken property
constexpr int kExitDomain = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitUsage = 64;

struct CliError {
  int code;
  std::string message;
};

int exit_code(fqed_status s) {
  switch (s) {
  case FQED_OK: return kExitOk;
  case FQED_ERR_DOMAIN: return kExitDomain;
  case FQED_ERR_NUMERIC:
  case FQED_ERR_POLE:
  case FQED_ERR_INTERNAL: return kExitNumeric;
  case FQED_ERR_INVALID_ARGUMENT:
  case FQED_ERR_IO: return kExitUsage;
  }
  return kExitNumeric;
}

using ContextPtr = std::unique_ptr<fqed_context, decltype(&fqed_context_destroy)>;

void check(fqed_context* ctx, fqed_status s) {
  if (s != FQED_OK) throw CliError{exit_code(s), std::string(fqed_status_string(s)) + ": " + fqed_context_last_error(ctx)};
}

// ---- tables ----------------------------------------------------------------

using Cell = std::variant<double, std::string>;
using Row = std::vector<Cell>;

struct Column {
  std::string name;
  int dim = 0; // mass dimension, used by --mev
};

struct Table {
  std::vector<Column> columns;
  std::vector<Row> rows;
};

std::string format_number(double v) {
  char buf[40];
  if (fqed_format_double(v, buf, sizeof buf) != FQED_OK) return "nan";
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void write_csv(std::ostream& out, const Table& t) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i].name;
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      if (const double* d = std::get_if<double>(&row[i])) out << format_number(*d);
      else out << csv_field(std::get<std::string>(row[i]));
    }
    out << '\n';
  }
}

void write_json(std::ostream& out, const Table& t, const nlohmann::ordered_json& config) {
  nlohmann::ordered_json doc;
  doc["config"] = config;
  doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json r = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (const double* d = std::get_if<double>(&row[i])) {
        // non-finite values have no JSON literal
        r[t.columns[i].name] = std::isfinite(*d) ? nlohmann::ordered_json(*d) : nlohmann::ordered_json(nullptr);
      } else {
        r[t.columns[i].name] = std::get<std::string>(row[i]);
      }
    }
    doc["rows"].push_back(std::move(r));
  }
  out << doc.dump(2) << '\n';
}

void rescale(Table& t, double mass) {
  const double s = kElectronMassMeV / mass;
  for (auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (double* d = std::get_if<double>(&row[i]); d && t.columns[i].dim != 0) *d *= std::pow(s, t.columns[i].dim);
    }
  }
}

// ---- sweeps ----------------------------------------------------------------

struct Sweep {
  std::string var;
  double start = 0, stop = 0;
  std::size_t count = 1;
  bool log = false;

  std::vector<double> points() const;
};

std::string canonical(std::string name) {
  std::replace(name.begin(), name.end(), '_', '-');
  return name;
}

Sweep parse_sweep(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  if (parts.size() != 4 && parts.size() != 5) throw CliError{kExitUsage, "sweep '" + spec + "': want var:start:stop:count[:log|:linear]"};
  Sweep s;
  s.var = canonical(parts[0]);
  try {
    std::size_t used = 0;
    s.start = std::stod(parts[1], &used);
    if (used != parts[1].size()) throw std::invalid_argument("start");
    s.stop = std::stod(parts[2], &used);
    if (used != parts[2].size()) throw std::invalid_argument("stop");
    const long long n = std::stoll(parts[3], &used);
    if (used != parts[3].size() || n < 1) throw std::invalid_argument("count");
    s.count = static_cast<std::size_t>(n);
  } catch (const std::exception&) {
    throw CliError{kExitUsage, "sweep '" + spec + "': bad number or count < 1"};
  }
  if (parts.size() == 5) {
    if (parts[4] == "log") s.log = true;
    else if (parts[4] != "linear") throw CliError{kExitUsage, "sweep '" + spec + "': spacing must be log or linear"};
  }
  if (!std::isfinite(s.start) || !std::isfinite(s.stop)) throw CliError{kExitUsage, "sweep '" + spec + "': endpoints must be finite"};
  if (s.log && s.start == 0.0 && s.stop == 0.0) throw CliError{kExitUsage, "sweep '" + spec + "': log spacing over a zero range"};
  return s;
}

// Log spacing is geometric when both ends share a sign. A range that crosses
// zero is spaced uniformly in asinh(x/s), which is logarithmic in |x| away from
// s and linear through the origin; s is the smaller nonzero endpoint magnitude.
std::vector<double> Sweep::points() const {
  std::vector<double> v(count);
  if (count == 1) return {start};
  const double n = static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) {
    const double f = static_cast<double>(i) / n;
    if (!log) {
      v[i] = start + (stop - start) * static_cast<double>(i) / n;
    } else if (start * stop > 0.0) {
      v[i] = std::copysign(std::exp(std::log(std::abs(start)) + f * (std::log(std::abs(stop)) - std::log(std::abs(start)))), start);
    } else {
      double scale = std::min(std::abs(start), std::abs(stop));
      if (scale == 0.0) scale = 1e-3 * std::max(std::abs(start), std::abs(stop));
      const double a = std::asinh(start / scale), b = std::asinh(stop / scale);
      v[i] = scale * std::sinh(a + f * (b - a));
    }
  }
  v.front() = start;
  v.back() = stop;
  return v;
}

// ---- kernels ---------------------------------------------------------------

enum class Angle { none, polar, azimuth };

struct Param {
  std::string name;   // option name without dashes
  std::string column; // output column when shown
  double value;
  Angle angle = Angle::none;
  bool shown = false; // always present in the output
  int dim = 1;
  std::string help;
};

struct Kernel {
  std::vector<Param> params;
  std::vector<Column> outputs;
  std::function<std::vector<double>(fqed_context*, const std::vector<double>&)> eval;
};

double rad(double deg) { return deg * kPi / 180.0; }

std::vector<double> process_row(fqed_context* ctx, fqed_status s, const fqed_process_result& r) {
  check(ctx, s);
  return {r.m2_spin_avg, r.dsigma_domega};
}

Kernel compton_kernel() {
  Kernel k;
  k.params = {{"omega-in", "omega_in", 1.0, Angle::none, false, 1, "incident photon energy"},
              {"theta", "theta_deg", 90.0, Angle::polar, true, 0, "photon scattering angle (deg)"},
              {"phi", "phi_deg", 0.0, Angle::azimuth, false, 0, "photon azimuth (deg)"}};
  k.outputs = {{"omega_out", 1}, {"M2_spin_avg", 0}, {"dsigma_dOmega", -2}};
  k.eval = [](fqed_context* ctx, const std::vector<double>& p) {
    fqed_process_result r;
    check(ctx, fqed_compton_lab(ctx, p[0], rad(p[1]), rad(p[2]), &r));
    return std::vector<double>{r.momenta[3][0], r.m2_spin_avg, r.dsigma_domega};
  };
  return k;
}

Kernel two_body_kernel(fqed_status (*fn)(fqed_context*, double, double, fqed_process_result*), double energy) {
  Kernel k;
  k.params = {{"energy", "energy", energy, Angle::none, true, 1, "energy of each incoming particle in the CM frame"},
              {"theta", "theta_deg", 90.0, Angle::polar, true, 0, "scattering angle (deg)"}};
  k.outputs = {{"M2_spin_avg", 0}, {"dsigma_dOmega", -2}};
  k.eval = [fn](fqed_context* ctx, const std::vector<double>& p) {
    fqed_process_result r;
    return process_row(ctx, fn(ctx, p[0], rad(p[1]), &r), r);
  };
  return k;
}

Kernel brems_kernel() {
  Kernel k;
  k.params = {{"energy-in", "energy_in", 2.0, Angle::none, false, 1, "incoming electron energy"},
              {"omega", "omega", 0.5, Angle::none, true, 1, "emitted photon energy"},
              {"theta-k", "theta_k_deg", 30.0, Angle::polar, true, 0, "photon angle (deg)"},
              {"theta-e", "theta_e_deg", 20.0, Angle::polar, true, 0, "outgoing electron angle (deg)"},
              {"phi-e", "phi_e_deg", 45.0, Angle::azimuth, false, 0, "outgoing electron azimuth (deg)"},
              {"Z", "Z", 1.0, Angle::none, false, 0, "nuclear charge"}};
  k.outputs = {{"M2_spin_avg", -4}};
  k.eval = [](fqed_context* ctx, const std::vector<double>& p) {
    fqed_process_result r;
    check(ctx, fqed_bremsstrahlung(ctx, p[0], p[1], rad(p[2]), rad(p[3]), rad(p[4]), p[5], &r));
    return std::vector<double>{r.m2_spin_avg};
  };
  return k;
}

Kernel pairprod_kernel() {
  Kernel k;
  k.params = {{"omega", "omega", 4.0, Angle::none, false, 1, "incident photon energy"},
              {"energy-plus", "energy_plus", 2.0, Angle::none, true, 1, "positron energy"},
              {"theta-plus", "theta_plus_deg", 30.0, Angle::polar, true, 0, "positron angle (deg)"},
              {"theta-minus", "theta_minus_deg", 40.0, Angle::polar, true, 0, "electron angle (deg)"},
              {"phi-minus", "phi_minus_deg", 120.0, Angle::azimuth, false, 0, "electron azimuth (deg)"},
              {"Z", "Z", 1.0, Angle::none, false, 0, "nuclear charge"}};
  k.outputs = {{"M2_spin_avg", -4}};
  k.eval = [](fqed_context* ctx, const std::vector<double>& p) {
    fqed_process_result r;
    check(ctx, fqed_pair_production(ctx, p[0], p[1], rad(p[2]), rad(p[3]), rad(p[4]), p[5], &r));
    return std::vector<double>{r.m2_spin_avg};
  };
  return k;
}

Kernel vacuum_pol_kernel() {
  Kernel k;
  k.params = {{"k2", "k2", 1e-3, Angle::none, true, 2, "photon virtuality k^2"}};
  k.outputs = {{"re_pi_bar", 0}, {"im_pi_bar", 0}};
  k.eval = [](fqed_context* ctx, const std::vector<double>& p) {
    double re = 0, im = 0;
    check(ctx, fqed_vacuum_polarization(ctx, p[0], &re, &im));
    return std::vector<double>{re, im};
  };
  return k;
}

Kernel self_energy_kernel() {
  Kernel k;
  k.params = {{"p2", "p2", 0.5, Angle::none, true, 2, "electron virtuality p^2"}};
  k.outputs = {{"scalar_pole", 0}, {"scalar_finite_re", 0}, {"scalar_finite_im", 0},
               {"slash_pole", 0},  {"slash_finite_re", 0},  {"slash_finite_im", 0}};
  k.eval = [](fqed_context* ctx, const std::vector<double>& p) {
    fqed_laurent s{}, v{};
    check(ctx, fqed_self_energy(ctx, p[0], &s, &v));
    return std::vector<double>{s.pole_re, s.finite_re, s.finite_im, v.pole_re, v.finite_re, v.finite_im};
  };
  return k;
}

// ---- options ---------------------------------------------------------------

struct Global {
  double mass = 1.0;
  double alpha = 7.2973525693e-3;
  std::string format = "csv";
  std::string output = "-";
  int threads = 0;
  bool mev = false;
  double abs_tol = 1e-13;
  double rel_tol = 1e-11;
  std::size_t max_intervals = 2000;
};

ContextPtr make_context(const Global& g) {
  fqed_context* raw = nullptr;
  if (fqed_context_create(&raw) != FQED_OK) throw CliError{kExitNumeric, "cannot allocate a context"};
  ContextPtr ctx(raw, &fqed_context_destroy);
  auto usage = [&](fqed_status s) {
    if (s != FQED_OK) throw CliError{kExitUsage, fqed_context_last_error(ctx.get())};
  };
  usage(fqed_context_set_mass(ctx.get(), g.mass));
  usage(fqed_context_set_alpha(ctx.get(), g.alpha));
  usage(fqed_context_set_quadrature(ctx.get(), g.abs_tol, g.rel_tol, g.max_intervals));
  return ctx;
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("FQED_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || n < 1) throw CliError{kExitUsage, "FQED_THREADS must be a positive integer"};
    return static_cast<int>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

nlohmann::ordered_json base_config(const std::string& sub, const Global& g) {
  nlohmann::ordered_json c;
  c["subcommand"] = sub;
  c["mass"] = g.mass;
  c["alpha"] = g.alpha;
  c["units"] = g.mev ? "MeV" : "natural";
  c["quadrature"] = {{"abs_tol", g.abs_tol}, {"rel_tol", g.rel_tol}, {"max_intervals", g.max_intervals}};
  return c;
}

void check_angle(const Param& p, double v) {
  const double hi = p.angle == Angle::polar ? 180.0 : 360.0;
  if (p.angle != Angle::none && !(v >= 0.0 && v <= hi))
    throw CliError{kExitUsage, "--" + p.name + " = " + format_number(v) + " outside [0, " + format_number(hi) + "] degrees"};
}

// Evaluates the kernel over the Cartesian product of the sweeps, last sweep
// fastest. Points are spread over worker threads with one context each; rows
// land in their index slot so the output order never depends on scheduling.
Table run_grid(const Kernel& k, const std::vector<Sweep>& sweeps, const Global& g, int threads) {
  std::vector<int> swept(k.params.size(), -1);
  std::vector<std::vector<double>> axes;
  for (const auto& s : sweeps) {
    auto it = std::find_if(k.params.begin(), k.params.end(), [&](const Param& p) { return p.name == s.var; });
    if (it == k.params.end()) throw CliError{kExitUsage, "sweep variable '" + s.var + "' is not a parameter here"};
    const auto idx = static_cast<std::size_t>(it - k.params.begin());
    if (swept[idx] >= 0) throw CliError{kExitUsage, "sweep variable '" + s.var + "' given twice"};
    swept[idx] = static_cast<int>(axes.size());
    axes.push_back(s.points());
    for (double v : axes.back()) check_angle(*it, v);
  }
  for (std::size_t i = 0; i < k.params.size(); ++i) check_angle(k.params[i], k.params[i].value);

  Table t;
  std::vector<std::size_t> shown;
  for (std::size_t i = 0; i < k.params.size(); ++i) {
    if (k.params[i].shown || swept[i] >= 0) {
      shown.push_back(i);
      t.columns.push_back({k.params[i].column, k.params[i].dim});
    }
  }
  for (const auto& c : k.outputs) t.columns.push_back(c);

  std::size_t total = 1;
  for (const auto& a : axes) total *= a.size();

  auto point = [&](std::size_t index) {
    std::vector<double> v(k.params.size());
    std::vector<std::size_t> digit(axes.size());
    for (std::size_t a = axes.size(); a-- > 0;) {
      digit[a] = index % axes[a].size();
      index /= axes[a].size();
    }
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = swept[i] >= 0 ? axes[swept[i]][digit[swept[i]]] : k.params[i].value;
    return v;
  };

  t.rows.resize(total);
  std::vector<std::optional<CliError>> errors(total);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    ContextPtr ctx = make_context(g);
    for (std::size_t i; (i = next.fetch_add(1)) < total;) {
      try {
        const auto v = point(i);
        Row row;
        for (std::size_t j : shown) row.emplace_back(v[j]);
        for (double out : k.eval(ctx.get(), v)) row.emplace_back(out);
        t.rows[i] = std::move(row);
      } catch (const CliError& e) {
        errors[i] = e;
      }
    }
  };
  make_context(g); // surface configuration errors before spawning
  const auto n = static_cast<std::size_t>(std::max(1, threads));
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < std::min(n, total); ++w) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  for (std::size_t i = 0; i < total; ++i) {
    if (errors[i]) {
      std::string where;
      const auto v = point(i);
      for (std::size_t j = 0; j < v.size(); ++j) where += (j ? " " : "") + k.params[j].name + "=" + format_number(v[j]);
      throw CliError{errors[i]->code, errors[i]->message + " [row " + std::to_string(i) + ": " + where + "]"};
    }
  }
  return t;
}

struct Output {
  std::ofstream file;
  std::ostream* stream = &std::cout;

  explicit Output(const std::string& path) {
    if (path == "-") return;
    file.open(path, std::ios::out | std::ios::trunc);
    if (!file) throw CliError{kExitUsage, "cannot open output file '" + path + "'"};
    stream = &file;
  }
};

void emit(const Global& g, Table t, const nlohmann::ordered_json& config) {
  if (g.mev) rescale(t, g.mass);
  Output out(g.output);
  out.stream->imbue(std::locale::classic());
  if (g.format == "json") write_json(*out.stream, t, config);
  else write_csv(*out.stream, t);
  out.stream->flush();
  if (!*out.stream) throw CliError{kExitNumeric, "write failed on '" + g.output + "'"};
}

std::vector<double> parse_list(const std::string& s, std::size_t n, const std::string& what) {
  std::vector<double> v;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw CliError{kExitUsage, what + ": '" + item + "' is not a number"};
    }
  }
  if (v.size() != n) throw CliError{kExitUsage, what + ": expected " + std::to_string(n) + " comma-separated values"};
  return v;
}

// ---- subcommands without a grid ---------------------------------------------

struct ShiftOptions {
  std::string spectrum;
  std::string level;
};

void run_energy_shift(const Global& g, const ShiftOptions& o) {
  ContextPtr ctx = make_context(g);
  fqed_spectrum* raw = nullptr;
  check(ctx.get(), fqed_spectrum_load(ctx.get(), o.spectrum.c_str(), &raw));
  std::unique_ptr<fqed_spectrum, decltype(&fqed_spectrum_destroy)> spec(raw, &fqed_spectrum_destroy);

  Table t;
  t.columns = {{"level", 0},     {"energy", 1},   {"static_term", 1}, {"lamb_term", 1},
               {"width_term", 1}, {"total_re", 1}, {"total_im", 1}};
  bool found = false;
  for (std::size_t i = 0; i < fqed_spectrum_level_count(spec.get()); ++i) {
    const std::string label = fqed_spectrum_level_label(spec.get(), i);
    if (!o.level.empty() && label != o.level) continue;
    found = true;
    fqed_energy_shift_terms r{};
    check(ctx.get(), fqed_energy_shift(ctx.get(), spec.get(), label.c_str(), &r));
    t.rows.push_back({label, fqed_spectrum_level_energy(spec.get(), i), r.static_term, r.lamb_term, r.width_term,
                      r.total_re, r.total_im});
  }
  if (!found) throw CliError{kExitDomain, "level '" + o.level + "' not in " + o.spectrum};
  auto config = base_config("energy-shift", g);
  config["spectrum"] = o.spectrum;
  config["level"] = o.level.empty() ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(o.level);
  emit(g, std::move(t), config);
}

struct ClassicalOptions {
  std::string p = "0,0,0";
  std::string z = "0.7071067811865476,0,0,0,0.7071067811865476,0,0,0";
  std::string x = "0,0,0,0";
  double span = 100.0;
  double dt = 1e-3;
  std::size_t sample_every = 10;
  bool summary = false;
};

void run_classical(const Global& g, const ClassicalOptions& o) {
  const auto pv = parse_list(o.p, 3, "--p");
  const auto zv = parse_list(o.z, 8, "--z");
  const auto xv = parse_list(o.x, 4, "--x");
  ContextPtr ctx = make_context(g);
  const double p[4] = {std::sqrt(g.mass * g.mass + pv[0] * pv[0] + pv[1] * pv[1] + pv[2] * pv[2]), pv[0], pv[1], pv[2]};
  double z_re[4], z_im[4];
  for (int a = 0; a < 4; ++a) {
    z_re[a] = zv[2 * a];
    z_im[a] = zv[2 * a + 1];
  }
  fqed_trajectory* raw = nullptr;
  check(ctx.get(), fqed_electron_integrate(ctx.get(), xv.data(), p, z_re, z_im, o.span, o.dt, o.sample_every, &raw));
  std::unique_ptr<fqed_trajectory, decltype(&fqed_trajectory_destroy)> traj(raw, &fqed_trajectory_destroy);
  if (fqed_trajectory_aborted(traj.get())) std::cerr << "fqed: warning: " << fqed_trajectory_reason(traj.get()) << '\n';

  auto config = base_config("classical", g);
  config["p"] = {p[0], p[1], p[2], p[3]};
  config["z"] = zv;
  config["x"] = xv;
  config["span"] = o.span;
  config["dt"] = o.dt;
  config["sample_every"] = o.sample_every;
  config["aborted"] = fqed_trajectory_aborted(traj.get()) != 0;

  Table t;
  const std::size_t n = fqed_trajectory_size(traj.get());
  std::vector<std::vector<double>> rows(n, std::vector<double>(FQED_TRAJECTORY_COLUMNS));
  for (std::size_t i = 0; i < n; ++i) fqed_trajectory_sample(traj.get(), i, rows[i].data());

  if (o.summary) {
    double omega = std::nan("");
    check(ctx.get(), fqed_trajectory_zitterbewegung(ctx.get(), traj.get(), &omega));
    double dzz = 0, dh = 0;
    for (const auto& r : rows) {
      dzz = std::max(dzz, std::abs(r[17] - rows.front()[17]));
      dh = std::max(dh, std::abs(r[18] - rows.front()[18]));
    }
    t.columns = {{"samples", 0}, {"zitterbewegung_omega", 1}, {"zbar_z_drift", 0}, {"H_drift", 1}};
    t.rows.push_back({static_cast<double>(n), omega, dzz, dh});
  } else {
    t.columns = {{"tau", -1}, {"x0", -1}, {"x1", -1}, {"x2", -1}, {"x3", -1}, {"p0", 1}, {"p1", 1}, {"p2", 1}, {"p3", 1}};
    for (int a = 0; a < 4; ++a) {
      t.columns.push_back({"re_z" + std::to_string(a), 0});
      t.columns.push_back({"im_z" + std::to_string(a), 0});
    }
    t.columns.push_back({"zbar_z", 0});
    t.columns.push_back({"H", 1});
    for (const auto& r : rows) t.rows.emplace_back(r.begin(), r.end());
  }
  emit(g, std::move(t), config);
}

int run_selftest(const Global& g) {
  ContextPtr ctx = make_context(g);
  Table t;
  t.columns = {{"property", 0}, {"status", 0}, {"detail", 0}};
  int all = 0;
  auto cb = [](void* user, const char* name, int passed, const char* detail) {
    static_cast<Table*>(user)->rows.push_back({std::string(name), std::string(passed ? "PASS" : "FAIL"), std::string(detail)});
  };
  check(ctx.get(), fqed_selftest(ctx.get(), cb, &t, &all));
  emit(g, std::move(t), base_config("selftest", g));
  return all ? kExitOk : kExitFailed;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"First-quantized QED numerics: tree amplitudes, one-loop pieces, classical spinor dynamics"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(fqed_version()));

  Global g;
  app.add_option("--mass", g.mass, "electron mass in the units of all inputs")->capture_default_str();
  app.add_option("--alpha", g.alpha, "fine-structure constant")->capture_default_str();
  app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  app.add_option("-o,--output", g.output, "output path, '-' for stdout")->capture_default_str();
  app.add_option("--threads", g.threads, "worker threads for sweeps (default $FQED_THREADS, then all cores)")
      ->check(CLI::PositiveNumber);
  app.add_flag("--mev", g.mev, "print dimensionful columns in MeV (display only)");
  app.add_option("--abs-tol", g.abs_tol, "quadrature absolute tolerance")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--rel-tol", g.rel_tol, "quadrature relative tolerance")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--max-intervals", g.max_intervals, "quadrature subinterval cap")->check(CLI::PositiveNumber)->capture_default_str();

  struct GridCommand {
    std::string name;
    Kernel kernel;
    std::vector<std::string> sweeps;
    CLI::App* app = nullptr;
  };
  std::vector<GridCommand> grids;
  grids.push_back({"compton", compton_kernel(), {}, nullptr});
  grids.push_back({"annihilate", two_body_kernel(&fqed_annihilation_cm, 2.0), {}, nullptr});
  grids.push_back({"moller", two_body_kernel(&fqed_moller_cm, 2.0), {}, nullptr});
  grids.push_back({"bhabha", two_body_kernel(&fqed_bhabha_cm, 2.0), {}, nullptr});
  grids.push_back({"brems", brems_kernel(), {}, nullptr});
  grids.push_back({"pairprod", pairprod_kernel(), {}, nullptr});
  grids.push_back({"vacuum-pol", vacuum_pol_kernel(), {}, nullptr});
  grids.push_back({"self-energy", self_energy_kernel(), {}, nullptr});
  const std::map<std::string, std::string> blurbs = {
      {"compton", "Compton scattering, electron at rest"},
      {"annihilate", "pair annihilation into two photons, CM frame"},
      {"moller", "electron-electron scattering, CM frame"},
      {"bhabha", "electron-positron scattering, CM frame"},
      {"brems", "bremsstrahlung off a static Coulomb field"},
      {"pairprod", "pair production by a photon in a static Coulomb field"},
      {"vacuum-pol", "subtracted vacuum polarization Pi_bar(k^2)"},
      {"self-energy", "one-loop electron self-energy coefficients"},
  };
  for (auto& gc : grids) {
    gc.app = app.add_subcommand(gc.name, blurbs.at(gc.name));
    for (auto& p : gc.kernel.params) gc.app->add_option("--" + p.name, p.value, p.help)->capture_default_str();
    gc.app->add_option("--sweep", gc.sweeps, "var:start:stop:count[:log|:linear], repeatable (grid product)");
  }

  ShiftOptions shift;
  auto* shift_app = app.add_subcommand("energy-shift", "level shift from a tabulated spectrum");
  shift_app->add_option("--spectrum", shift.spectrum, "spectrum file")->required();
  shift_app->add_option("--level", shift.level, "level label (default: all levels)");

  ClassicalOptions cls;
  auto* cls_app = app.add_subcommand("classical", "free classical spinning electron, RK4 trajectory");
  cls_app->add_option("--p", cls.p, "spatial momentum px,py,pz")->capture_default_str();
  cls_app->add_option("--z", cls.z, "spinor re0,im0,...,re3,im3")->capture_default_str();
  cls_app->add_option("--x", cls.x, "initial position x0,x1,x2,x3")->capture_default_str();
  cls_app->add_option("--span", cls.span, "proper-time span")->check(CLI::PositiveNumber)->capture_default_str();
  cls_app->add_option("--dt", cls.dt, "RK4 step")->check(CLI::PositiveNumber)->capture_default_str();
  cls_app->add_option("--sample-every", cls.sample_every, "steps between samples")->check(CLI::PositiveNumber)->capture_default_str();
  cls_app->add_flag("--summary", cls.summary, "one row: zitterbewegung frequency and invariant drifts");

  auto* self_app = app.add_subcommand("selftest", "embedded invariant checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (self_app->parsed()) return run_selftest(g);
    if (shift_app->parsed()) {
      run_energy_shift(g, shift);
      return kExitOk;
    }
    if (cls_app->parsed()) {
      run_classical(g, cls);
      return kExitOk;
    }
    for (auto& gc : grids) {
      if (!gc.app->parsed()) continue;
      std::vector<Sweep> sweeps;
      for (const auto& s : gc.sweeps) sweeps.push_back(parse_sweep(s));
      Table t = run_grid(gc.kernel, sweeps, g, resolve_threads(g.threads));
      auto config = base_config(gc.name, g);
      nlohmann::ordered_json params = nlohmann::ordered_json::object();
      for (const auto& p : gc.kernel.params) params[p.name] = p.value;
      config["params"] = params;
      config["sweeps"] = nlohmann::ordered_json::array();
      for (const auto& s : sweeps)
        config["sweeps"].push_back(
            {{"var", s.var}, {"start", s.start}, {"stop", s.stop}, {"count", s.count}, {"spacing", s.log ? "log" : "linear"}});
      emit(g, std::move(t), config);
      return kExitOk;
    }
  } catch (const CliError& e) {
    std::cerr << "fqed: " << e.message << '\n';
    return e.code;
  }
  return kExitUsage;
}
