#include "heunqes/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "heunqes/error.hpp"
#include "heunqes/oracle.hpp"
#include "heunqes/quantize.hpp"
#include "heunqes/wavefunction.hpp"

namespace heunqes::cli {

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) return "0";

  char buf[64];
  std::snprintf(buf, sizeof buf, "%.11e", value);
  const double rounded = std::strtod(buf, nullptr);
  int digits = 12;
  for (int p = 1; p < 12; ++p) {
    std::snprintf(buf, sizeof buf, "%.*e", p - 1, rounded);
    if (std::strtod(buf, nullptr) == rounded) {
      digits = p;
      break;
    }
  }
  std::snprintf(buf, sizeof buf, "%.*e", digits - 1, rounded);
  const double magnitude = std::abs(rounded);
  if (magnitude < 1e-4 || magnitude >= 1e6) return buf;

  const int exponent = std::atoi(std::strchr(buf, 'e') + 1);
  const int decimals = std::max(0, digits - 1 - exponent);
  std::snprintf(buf, sizeof buf, "%.*f", decimals, rounded);
  return buf;
}

std::string format_exact(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

double parse_double(const std::string& key, const std::string& text) {
  double v = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  const auto res = std::from_chars(begin, end, v);
  if (res.ec != std::errc{} || res.ptr != end || !std::isfinite(v))
    throw std::runtime_error("invalid number for '" + key + "': '" + text + "'");
  return v;
}

int parse_int(const std::string& key, const std::string& text) {
  int v = 0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  if (begin != end && *begin == '+') ++begin;
  const auto res = std::from_chars(begin, end, v);
  if (res.ec != std::errc{} || res.ptr != end)
    throw std::runtime_error("invalid integer for '" + key + "': '" + text + "'");
  return v;
}

std::vector<int> parse_int_list(const std::string& key, const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_int(key, trim(item)));
  if (out.empty()) throw std::runtime_error("empty list for '" + key + "'");
  return out;
}

std::string join(const std::vector<int>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(values[i]);
  }
  return out;
}

}  // namespace

std::map<std::string, std::string> parse_config_text(const std::string& text) {
  std::map<std::string, std::string> out;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const std::string body = trim(line.substr(0, line.find('#')));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config line " + std::to_string(lineno) +
                               ": expected 'key = value'");
    std::string key = trim(std::string_view(body).substr(0, eq));
    std::replace(key.begin(), key.end(), '_', '-');
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    if (key.empty() || value.empty())
      throw std::runtime_error("config line " + std::to_string(lineno) +
                               ": empty key or value");
    out[key] = value;
  }
  return out;
}

void apply_setting(RunConfig& config, const std::string& key, const std::string& value) {
  auto& ph = config.physical;
  if (key == "mass") ph.mass = parse_double(key, value);
  else if (key == "quad") ph.quad = parse_double(key, value);
  else if (key == "lambda") ph.lambda = parse_double(key, value);
  else if (key == "eta") ph.eta = parse_double(key, value);
  else if (key == "kz") ph.kz = parse_double(key, value);
  else if (key == "l") ph.l = parse_int(key, value);
  else if (key == "n") config.n = parse_int(key, value);
  else if (key == "n-max") config.n_max = parse_int(key, value);
  else if (key == "l-list") config.l_list = parse_int_list(key, value);
  else if (key == "samples") config.samples = parse_int(key, value);
  else if (key == "rho-max") config.rho_max = parse_double(key, value);
  else if (key == "grid") config.grid = parse_int_list(key, value);
  else if (key == "output") config.output = value;
  else if (key == "format") config.format = value;
  else if (key == "jobs") config.jobs = parse_int(key, value);
  else if (key == "perturb-omega") config.perturb_omega = parse_double(key, value);
  else if (key == "root-index") config.root_index = parse_int(key, value);
  else throw std::runtime_error("unknown setting '" + key + "'");
}

std::string run_header(const std::string& command, const RunConfig& config) {
  std::ostringstream h;
  const auto line = [&](const char* key, const std::string& value) {
    h << "# " << key << " = " << value << '\n';
  };
  const auto& ph = config.physical;
  h << "# heunqes " << command << '\n';
  line("mass", format_exact(ph.mass));
  line("quad", format_exact(ph.quad));
  line("lambda", format_exact(ph.lambda));
  line("eta", format_exact(ph.eta));
  line("kz", format_exact(ph.kz));
  if (command == "scan") {
    line("n-max", std::to_string(config.n_max.value_or(config.n)));
    line("l-list", join(config.l_list.empty() ? std::vector<int>{ph.l} : config.l_list));
    return h.str();
  }
  if (command == "verify" && config.n_max) line("n-max", std::to_string(*config.n_max));
  else line("n", std::to_string(config.n));
  if (command == "verify" && !config.l_list.empty()) line("l-list", join(config.l_list));
  else line("l", std::to_string(ph.l));
  if (command == "wavefunction") {
    line("root-index", std::to_string(config.root_index));
    line("samples", std::to_string(config.samples));
    if (config.rho_max) line("rho-max", format_exact(*config.rho_max));
  }
  if (command == "verify") {
    line("grid", join(config.grid));
    line("perturb-omega", format_exact(config.perturb_omega));
  }
  return h.str();
}

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<SpectralSolution> solve_states(const ReducedProblem& problem) {
  return problem.n == 1 ? solve_cubic(problem) : solve_frequency(problem);
}

int map_error(const Error& e, std::ostream& err) {
  err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
  switch (e.code()) {
    case Errc::NoRootInRange:
    case Errc::NoPositiveRoot:
      return kNoRoot;
    default:
      return kConfigError;
  }
}

void write_rows(std::ostream& out, const std::vector<std::string>& header,
                const std::vector<std::vector<std::string>>& rows, bool table) {
  if (!table) {
    const auto emit = [&](const std::vector<std::string>& r) {
      for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << r[i];
      out << '\n';
    };
    emit(header);
    for (const auto& r : rows) emit(r);
    return;
  }
  std::vector<std::size_t> width(header.size());
  for (std::size_t i = 0; i < header.size(); ++i) width[i] = header[i].size();
  for (const auto& r : rows)
    for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
  const auto emit = [&](const std::vector<std::string>& r) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i) out << "  ";
      out << std::string(width[i] - r[i].size(), ' ') << r[i];
    }
    out << '\n';
  };
  emit(header);
  for (const auto& r : rows) emit(r);
}

bool use_table(const RunConfig& config, bool table_by_default) {
  if (config.format.empty()) return table_by_default;
  if (config.format == "table") return true;
  if (config.format == "csv") return false;
  throw UsageError("--format must be csv or table, got '" + config.format + "'");
}

int threads_for(const RunConfig& config) {
  if (config.jobs > 0) return config.jobs;
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

int cmd_solve(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const bool table = use_table(config, true);
  std::vector<SpectralSolution> states;
  try {
    states = solve_states(make_problem(config.physical, config.n));
  } catch (const Error& e) {
    return map_error(e, err);
  }
  std::vector<std::vector<std::string>> rows;
  for (const auto& s : states)
    rows.push_back({std::to_string(s.n), std::to_string(s.l), format_number(s.omega),
                    format_number(s.energy), format_number(s.zeta_sq),
                    std::to_string(s.node_count), format_number(s.residuals.truncation)});
  out << run_header("solve", config);
  write_rows(out, {"n", "l", "omega", "energy", "zeta_sq", "node_count", "residual"}, rows,
             table);
  return kOk;
}

int cmd_scan(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const bool table = use_table(config, false);
  const int n_max = config.n_max.value_or(config.n);
  std::vector<int> ls = config.l_list.empty() ? std::vector<int>{config.physical.l}
                                              : config.l_list;
  if (n_max < 1) throw UsageError("--n-max must be >= 1");
  for (int l : ls)
    if (l == 0) {
      err << "error: ZeroAngularMomentum: l-list contains 0; quantization requires l != 0\n";
      return kConfigError;
    }
  try {
    validate(config.physical, false);
    if (config.physical.coupling() == 0.0)
      throw Error(Errc::VanishingCoupling, "M * lambda = 0 removes the Coulomb-type term");
  } catch (const Error& e) {
    return map_error(e, err);
  }
  std::sort(ls.begin(), ls.end());
  ls.erase(std::unique(ls.begin(), ls.end()), ls.end());

  struct Cell {
    int n = 0;
    int l = 0;
    std::vector<SpectralSolution> states;
    std::string status = "ok";
  };
  std::vector<Cell> cells;
  for (int n = 1; n <= n_max; ++n)
    for (int l : ls) cells.push_back({n, l, {}, "ok"});

  const long count = static_cast<long>(cells.size());
  const int threads = threads_for(config);
  (void)threads;
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (long i = 0; i < count; ++i) {
    Cell& cell = cells[i];
    PhysicalParams p = config.physical;
    p.l = cell.l;
    try {
      cell.states = solve_states(make_problem(p, cell.n));
    } catch (const Error& e) {
      cell.status = std::string(to_string(e.code()));
    } catch (const std::exception&) {
      cell.status = "InternalError";
    }
  }

  std::vector<std::vector<std::string>> rows;
  for (const auto& cell : cells) {
    if (cell.status != "ok") {
      rows.push_back({std::to_string(cell.n), std::to_string(cell.l), "", "", "", "", "", "",
                      cell.status});
      continue;
    }
    for (std::size_t k = 0; k < cell.states.size(); ++k) {
      const auto& s = cell.states[k];
      rows.push_back({std::to_string(s.n), std::to_string(s.l), std::to_string(k),
                      format_number(s.omega), format_number(s.energy),
                      format_number(s.zeta_sq), std::to_string(s.node_count),
                      format_number(s.residuals.truncation), "ok"});
    }
  }
  RunConfig echoed = config;
  echoed.n_max = n_max;
  echoed.l_list = ls;
  out << run_header("scan", echoed);
  write_rows(out,
             {"n", "l", "root_index", "omega", "energy", "zeta_sq", "node_count", "residual",
              "status"},
             rows, table);
  return kOk;
}

int cmd_wavefunction(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (config.samples < 2) throw UsageError("--samples must be >= 2");
  if (config.rho_max && !(*config.rho_max > 0.0)) throw UsageError("--rho-max must be positive");
  RadialWavefunction wf;
  try {
    const auto states = solve_states(make_problem(config.physical, config.n));
    if (config.root_index < 0 || config.root_index >= static_cast<int>(states.size()))
      throw UsageError("--root-index out of range: " + std::to_string(states.size()) +
                       " root(s) found");
    wf = normalize(states[config.root_index]);
  } catch (const Error& e) {
    return map_error(e, err);
  }
  const double rho_max = config.rho_max.value_or(wf.rho_max);
  out << run_header("wavefunction", config);
  out << "rho,R\n";
  for (const auto& [rho, value] : sample(wf, config.samples, rho_max))
    out << format_number(rho) << ',' << format_number(value) << '\n';
  return kOk;
}

int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (config.grid.empty() || config.grid.size() > 2)
    throw UsageError("--grid takes one value, or two for a coarse/fine pair");
  if (!(config.perturb_omega > 0.0)) throw UsageError("--perturb-omega must be positive");
  VerifyOptions options;
  options.points = config.grid[0];
  if (config.grid.size() == 2) options.fine_points = config.grid[1];
  if (config.rho_max) options.rho_max = *config.rho_max;
  options.perturb_omega = config.perturb_omega;

  std::vector<int> ns;
  for (int n = config.n_max ? 1 : config.n; n <= config.n_max.value_or(config.n); ++n)
    ns.push_back(n);
  const std::vector<int> ls =
      config.l_list.empty() ? std::vector<int>{config.physical.l} : config.l_list;

  std::ostringstream body;
  int total = 0;
  int passed = 0;
  try {
    for (int n : ns) {
      for (int l : ls) {
        PhysicalParams p = config.physical;
        p.l = l;
        const auto states = solve_states(make_problem(p, n));
        for (std::size_t k = 0; k < states.size(); ++k) {
          const VerificationReport r = verify_solution(states[k], options);
          ++total;
          if (r.pass) ++passed;
          body << (r.pass ? "PASS" : "FAIL") << " n=" << r.n << " l=" << r.l << " root=" << k
               << " omega=" << format_number(r.omega) << " nodes=" << r.node_count
               << " zeta_sq=" << format_number(r.zeta_sq_analytic)
               << " oracle=" << format_number(r.zeta_sq_oracle)
               << " deviation=" << format_number(r.deviation)
               << " deviation_fine=" << format_number(r.deviation_fine)
               << " ratio=" << format_number(r.convergence_ratio()) << " grid=" << r.points
               << '/' << r.fine_points << '\n';
        }
      }
    }
  } catch (const Error& e) {
    return map_error(e, err);
  }
  out << run_header("verify", config) << body.str();
  out << "# " << passed << '/' << total << " states passed\n";
  return passed == total ? kOk : kVerifyFailed;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quasi-exact spectra of a magnetic quadrupole in harmonic + linear confinement",
               "heunqes"};
  app.require_subcommand(1, 1);

  static const std::vector<std::pair<std::string, std::string>> kFlags = {
      {"n", "polynomial degree n >= 1"},
      {"l", "angular quantum number (nonzero)"},
      {"n-max", "largest n for scan/verify"},
      {"l-list", "comma-separated angular numbers"},
      {"mass", "particle mass m"},
      {"quad", "quadrupole magnitude M"},
      {"lambda", "field parameter lambda"},
      {"eta", "linear confinement strength"},
      {"kz", "axial wavenumber k"},
      {"samples", "number of wavefunction samples"},
      {"rho-max", "sampling range / oracle box size"},
      {"output", "write data to this file instead of stdout"},
      {"format", "csv or table"},
      {"jobs", "worker threads for scan (default: all processors)"},
      {"perturb-omega", "multiply each solved omega before verification"},
      {"root-index", "which frequency root to use for wavefunction"},
  };
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;
  for (const auto& [key, help] : kFlags)
    options[key] = app.add_option("--" + key, values[key], help);
  std::vector<std::string> grid;
  auto* grid_opt = app.add_option("--grid", grid, "oracle grid points (repeat for coarse/fine)");
  std::string config_path;
  app.add_option("--config", config_path, "flat key = value config file")
      ->envname("HEUNQES_CONFIG");

  std::string command;
  for (const char* name : {"solve", "scan", "wavefunction", "verify"}) {
    auto* sub = app.add_subcommand(name);
    sub->fallthrough();
    sub->callback([&command, name] { command = name; });
  }
  static const std::map<std::string, std::string> kDescriptions = {
      {"solve", "quantized frequencies and energies for one (n, l)"},
      {"scan", "CSV table over n <= n-max and an l list"},
      {"wavefunction", "normalized radial wavefunction samples"},
      {"verify", "cross-check solutions against the finite-difference oracle"},
  };
  for (auto* sub : app.get_subcommands({})) sub->description(kDescriptions.at(sub->get_name()));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }

  RunConfig config;
  try {
    if (!config_path.empty())
      for (const auto& [key, value] : parse_config_text(read_file(config_path)))
        if (options.count(key) == 0 || options[key]->count() == 0)
          if (!(key == "grid" && grid_opt->count() > 0)) apply_setting(config, key, value);
    for (const auto& [key, opt] : options)
      if (opt->count() > 0) apply_setting(config, key, values[key]);
    if (grid_opt->count() > 0) {
      std::string joined;
      for (const auto& g : grid) joined += (joined.empty() ? "" : ",") + g;
      apply_setting(config, "grid", joined);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }

  std::ofstream file;
  std::ostream* sink = &out;
  if (config.output) {
    file.open(*config.output);
    if (!file) {
      err << "error: cannot open output file '" << *config.output << "'\n";
      return kConfigError;
    }
    sink = &file;
  }

  try {
    if (command == "solve") return cmd_solve(config, *sink, err);
    if (command == "scan") return cmd_scan(config, *sink, err);
    if (command == "wavefunction") return cmd_wavefunction(config, *sink, err);
    return cmd_verify(config, *sink, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const Error& e) {
    return map_error(e, err);
  }
}

}  // namespace heunqes::cli
