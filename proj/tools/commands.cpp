#include "commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "kmb/chain.hpp"
#include "kmb/curvature_closed.hpp"
#include "kmb/curvature_direct.hpp"
#include "kmb/geodesic.hpp"
#include "kmb/metric.hpp"
#include "kmb/parallel.hpp"

namespace kmb::cli {

using json = nlohmann::ordered_json;

std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

Matrix parse_matrix_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw MalformedInput(std::string("JSON parse error: ") + e.what());
  }
  if (!j.is_object()) throw MalformedInput("matrix file must hold a JSON object");
  if (!j.contains("modes") || !j["modes"].is_number_integer()) {
    throw MalformedInput("missing integer field \"modes\"");
  }
  if (!j.contains("entries") || !j["entries"].is_array()) {
    throw MalformedInput("missing array field \"entries\"");
  }
  std::string ordering = "block";
  if (j.contains("ordering")) {
    if (!j["ordering"].is_string()) throw MalformedInput("\"ordering\" must be a string");
    ordering = j["ordering"].get<std::string>();
    if (ordering != "block" && ordering != "interleaved") {
      throw MalformedInput("\"ordering\" must be \"block\" or \"interleaved\"");
    }
  }
  long long n = j["modes"].get<long long>();
  if (n < 1 || n > 10000) throw MalformedInput("\"modes\" must be a positive integer");
  const auto& e = j["entries"];
  const std::size_t d = static_cast<std::size_t>(2 * n);
  if (e.size() != d * d) {
    throw MalformedInput("expected " + std::to_string(d * d) + " entries for " +
                         std::to_string(n) + " modes, got " + std::to_string(e.size()));
  }
  Matrix m(d, d);
  for (std::size_t i = 0; i < d * d; ++i) {
    if (!e[i].is_number()) {
      throw MalformedInput("entry " + std::to_string(i) + " is not a number");
    }
    m(i / d, i % d) = e[i].get<double>();
  }
  return ordering == "interleaved" ? interleaved_to_block(m) : m;
}

Matrix load_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MalformedInput("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_matrix_json(ss.str());
}

std::string matrix_to_json(const Matrix& m) {
  json j;
  j["modes"] = m.rows() / 2;
  j["ordering"] = "block";
  json e = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    for (int k = 0; k < m.cols(); ++k) e.push_back(m(i, k));
  }
  j["entries"] = e;
  return j.dump();
}

namespace {

std::vector<double> sorted_copy(const Vector& v) {
  std::vector<double> s(v.data(), v.data() + v.size());
  std::sort(s.begin(), s.end());
  return s;
}

bool dominates(const std::vector<double>& hi, const std::vector<double>& lo) {
  for (std::size_t i = 0; i < hi.size(); ++i) {
    if (hi[i] < lo[i]) return false;
  }
  return true;
}

}  // namespace

PetzReport petz_compare(const std::vector<PetzPoint>& points,
                        const std::vector<std::pair<std::size_t, std::size_t>>& pairs,
                        double tie_tolerance, std::size_t max_examples) {
  std::vector<std::vector<double>> sorted;
  sorted.reserve(points.size());
  for (const auto& p : points) sorted.push_back(sorted_copy(p.nu));

  PetzReport r;
  for (auto [a, b] : pairs) {
    const PetzPoint& pa = points[a];
    const PetzPoint& pb = points[b];
    double ds = pb.entropy - pa.entropy;
    double dc = pb.scal - pa.scal;
    double ts = tie_tolerance * std::max({1.0, std::abs(pa.entropy), std::abs(pb.entropy)});
    double tc = tie_tolerance * std::max({1.0, std::abs(pa.scal), std::abs(pb.scal)});
    bool agree;
    if (std::abs(ds) <= ts) {
      agree = std::abs(dc) <= tc;
    } else {
      agree = (ds > 0) ? dc > 0 : dc < 0;
    }
    ++r.pairs;
    if (agree) {
      ++r.agreements;
    } else {
      ++r.violations;
      if (r.examples.size() < max_examples) r.examples.emplace_back(a, b);
    }
    if (sorted[a].size() == sorted[b].size() && std::abs(ds) > ts) {
      bool up = dominates(sorted[b], sorted[a]);
      bool down = dominates(sorted[a], sorted[b]);
      if (up || down) {
        ++r.dominance_pairs;
        if ((up && !(dc > 0)) || (down && !(dc < 0))) ++r.dominance_violations;
      }
    }
  }
  return r;
}

PetzReport petz_compare_all(const std::vector<PetzPoint>& points, double tie_tolerance,
                            std::size_t max_examples) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  pairs.reserve(points.size() * (points.size() - 1) / 2);
  for (std::size_t a = 0; a < points.size(); ++a) {
    for (std::size_t b = a + 1; b < points.size(); ++b) pairs.emplace_back(a, b);
  }
  return petz_compare(points, pairs, tie_tolerance, max_examples);
}

namespace {

enum class Method { Closed, Direct, Both };

const std::map<std::string, Method> method_names{
    {"closed", Method::Closed}, {"direct", Method::Direct}, {"both", Method::Both}};

json vector_json(const Vector& v) {
  json a = json::array();
  for (double x : v) a.push_back(x);
  return a;
}

Vector parse_nu_list(const std::vector<double>& xs) {
  if (xs.empty()) throw InvalidInput("empty --nu list");
  Vector nu(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) nu[i] = xs[i];
  return nu;
}

Matrix diagonal_covariance(const Vector& nu) {
  const int n = static_cast<int>(nu.size());
  Matrix v = Matrix::Zero(2 * n, 2 * n);
  for (int j = 0; j < n; ++j) v(j, j) = v(n + j, n + j) = nu[j];
  return v;
}

void check_method(Method m, int modes) {
  if (m != Method::Closed && modes > max_direct_modes) {
    throw InvalidInput("--method direct/both supports at most " +
                       std::to_string(max_direct_modes) + " modes");
  }
}

// Writes to --out if given, else to the command's stdout.
void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw InvalidInput("cannot write " + path);
  f << text;
}

std::string csv_row(std::initializer_list<std::string> cells) {
  std::string s;
  bool first = true;
  for (const auto& c : cells) {
    if (!first) s += ',';
    s += c;
    first = false;
  }
  return s + '\n';
}

std::string chain_csv(const std::vector<ChainScanRow>& rows) {
  std::string s = "N,omega_tilde,T_tilde,scal,ratio,entropy_nats\n";
  for (const auto& r : rows) {
    s += csv_row({std::to_string(r.modes), format_double(r.omega_tilde),
                  format_double(r.temperature), format_double(r.scal), format_double(r.ratio),
                  format_double(r.entropy_nats)});
  }
  return s;
}

struct Options {
  std::string file;
  std::string v1_file;
  std::string a0_file;
  std::vector<double> nu;
  std::string method = "closed";
  std::string format = "json";
  std::string out;
  int nodes = 0;
  std::uint64_t seed = 1;
  std::string ham = "mode-formula";
  double nu_min = 0.6;
  double nu_max = 5.0;
  int points = 50;
  int modes = 2;
  long long pairs = 0;
  double tie = 1e-12;
  std::size_t max_list = 10;
  std::vector<double> omegas{1.0, 2.0, 4.0};
  int chain_modes = 50;
  double t_min = 0.2;
  double t_max = 50.0;
  int t_points = 40;
  int n_min = 10;
  int n_max = 100;
  int n_step = 10;
  double sweep_omega = 1.0;
  double sweep_temperature = 0.5;
  int steps = 256;
};

int cmd_validate(const Options& o, std::ostream& out) {
  Matrix m = load_matrix_file(o.file);
  ValidityReport r = validate(m);
  json j;
  j["modes"] = r.modes;
  j["symmetric"] = r.symmetric;
  j["asymmetry"] = r.asymmetry;
  j["valid"] = r.valid;
  j["faithful"] = r.faithful;
  j["min_symplectic_eigenvalue"] = r.min_symplectic_eigenvalue;
  if (r.nu.size() > 0) {
    j["min_mode"] = r.min_mode;
    j["symplectic_eigenvalues"] = vector_json(r.nu);
  }
  out << j.dump(2) << '\n';
  if (!r.valid) return exit_invalid;
  return r.faithful ? exit_ok : exit_nonfaithful;
}

int cmd_curvature(const Options& o, std::ostream& out) {
  Method method = method_names.at(o.method);
  std::optional<CovarianceMatrix> v;
  Vector nu;
  if (!o.file.empty()) {
    v.emplace(load_matrix_file(o.file));
    nu = williamson(*v).nu;
  } else {
    nu = parse_nu_list(o.nu);
    check_spectrum(nu, tau_faith);
  }
  const int n = static_cast<int>(nu.size());
  check_method(method, n);

  double closed = 0.0, direct = 0.0;
  if (method != Method::Direct) closed = scalar_curvature(nu);
  if (method != Method::Closed) {
    if (!v) v.emplace(diagonal_covariance(nu));
    direct = scalar_curvature_direct(*v);
  }
  double scal = method == Method::Direct ? direct : closed;
  double entropy = von_neumann_entropy(nu);

  std::string text;
  if (o.format == "csv") {
    text = "method,scal,ratio,entropy_nats\n";
    if (method != Method::Direct) {
      text += csv_row({"closed", format_double(closed),
                       format_double(curvature_ratio(closed, n)), format_double(entropy)});
    }
    if (method != Method::Closed) {
      text += csv_row({"direct", format_double(direct),
                       format_double(curvature_ratio(direct, n)), format_double(entropy)});
    }
  } else {
    json j;
    j["modes"] = n;
    j["nu"] = vector_json(nu);
    j["method"] = o.method;
    j["scal"] = scal;
    j["ratio"] = curvature_ratio(scal, n);
    j["entropy_nats"] = entropy;
    if (method == Method::Both) {
      j["scal_closed"] = closed;
      j["scal_direct"] = direct;
      j["relative_difference"] = std::abs(direct - closed) / std::abs(closed);
    }
    if (o.nodes > 0) {
      if (!v) v.emplace(diagonal_covariance(nu));
      DeltaKernel k(*v);
      double worst = 0.0;
      for (const auto& x : orthonormal_basis(n)) {
        Matrix a = k.delta(x).matrix();
        Matrix b = delta_quadrature(*v, x, o.nodes).matrix();
        worst = std::max(worst, (a - b).norm() / a.norm());
      }
      j["quadrature_check"] = {{"nodes", o.nodes}, {"max_relative_difference", worst}};
    }
    text = j.dump(2) + "\n";
  }
  emit(text, o.out, out);
  return exit_ok;
}

int cmd_fig1(const Options& o, std::ostream& out) {
  if (o.points < 2) throw InvalidInput("--points must be at least 2");
  if (!(o.nu_min > 0.5 + tau_faith) || !(o.nu_max > o.nu_min)) {
    throw InvalidInput("grid must satisfy 1/2 < nu-min < nu-max");
  }
  std::vector<std::string> rows(o.points);
  parallel_for(rows.size(), [&](std::size_t a) {
    Vector nu(2);
    nu[0] = o.nu_min + (o.nu_max - o.nu_min) * static_cast<double>(a) / (o.points - 1);
    for (int b = 0; b < o.points; ++b) {
      nu[1] = o.nu_min + (o.nu_max - o.nu_min) * b / (o.points - 1);
      rows[a] += csv_row({format_double(nu[0]), format_double(nu[1]),
                          format_double(von_neumann_entropy(nu)),
                          format_double(scalar_curvature(nu))});
    }
  });
  std::string s = "nu1,nu2,entropy_nats,scal\n";
  for (const auto& r : rows) s += r;
  emit(s, o.out, out);
  return exit_ok;
}

ChainScanRow chain_row(const ChainParams& p, HamCoefficient coefficient, bool via_hamiltonian) {
  if (!via_hamiltonian) return chain_curvature_point(p);
  CovarianceMatrix v = covariance_from_hamiltonian(chain_hamiltonian(p, coefficient));
  Vector nu = williamson(v).nu;
  check_spectrum(nu, tau_faith);
  double scal = scalar_curvature(nu);
  return ChainScanRow{p.modes, p.omega_tilde, p.temperature, scal,
                      curvature_ratio(scal, p.modes), von_neumann_entropy(nu)};
}

int cmd_fig2(const Options& o, std::ostream& out) {
  bool as_printed = o.ham == "as-printed";
  HamCoefficient c = as_printed ? HamCoefficient::AsPrinted : HamCoefficient::ModeFormula;
  if (o.n_min < 1 || o.n_max < o.n_min || o.n_step < 1) throw InvalidInput("bad N sweep");

  std::vector<ChainParams> n_grid, t_grid;
  for (int n = o.n_min; n <= o.n_max; n += o.n_step) {
    n_grid.push_back({n, o.sweep_omega, o.sweep_temperature});
  }
  for (double w : o.omegas) {
    for (double t : log_grid(o.t_min, o.t_max, o.t_points)) t_grid.push_back({o.chain_modes, w, t});
  }
  auto scan = [&](const std::vector<ChainParams>& grid) {
    std::vector<ChainScanRow> rows(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) { rows[i] = chain_row(grid[i], c, as_printed); });
    return rows;
  };
  std::vector<ChainScanRow> n_rows = scan(n_grid);
  std::vector<ChainScanRow> t_rows = scan(t_grid);
  if (o.out.empty()) {
    out << "# n_sweep\n" << chain_csv(n_rows) << "\n# t_sweep\n" << chain_csv(t_rows);
  } else {
    emit(chain_csv(n_rows), o.out + "_n_sweep.csv", out);
    emit(chain_csv(t_rows), o.out + "_t_sweep.csv", out);
  }
  return exit_ok;
}

PetzPoint petz_point(const Vector& nu, Method method, double* gap) {
  PetzPoint p{nu, von_neumann_entropy(nu), 0.0};
  if (method == Method::Closed) {
    p.scal = scalar_curvature(nu);
    return p;
  }
  double direct = scalar_curvature_direct(CovarianceMatrix(diagonal_covariance(nu)));
  if (method == Method::Both) {
    double closed = scalar_curvature(nu);
    *gap = std::max(*gap, std::abs(direct - closed) / std::abs(closed));
  }
  p.scal = direct;
  return p;
}

std::vector<PetzPoint> petz_points(const std::vector<Vector>& spectra, Method method,
                                  double* gap) {
  std::vector<PetzPoint> pts(spectra.size());
  std::vector<double> gaps(spectra.size(), 0.0);
  parallel_for(spectra.size(), [&](std::size_t i) { pts[i] = petz_point(spectra[i], method, &gaps[i]); });
  for (double g : gaps) *gap = std::max(*gap, g);
  return pts;
}

int cmd_petz(const Options& o, std::ostream& out) {
  Method method = method_names.at(o.method);
  if (o.modes < 1) throw InvalidInput("--modes must be at least 1");
  check_method(method, o.modes);
  if (!(o.nu_min > 0.5 + tau_faith) || !(o.nu_max > o.nu_min)) {
    throw InvalidInput("range must satisfy 1/2 < nu-min < nu-max");
  }
  double gap = 0.0;
  std::vector<PetzPoint> pts;
  PetzReport r;
  json j;
  j["modes"] = o.modes;
  j["method"] = o.method;
  if (o.pairs > 0) {
    Random rng(o.seed);
    std::vector<std::pair<std::size_t, std::size_t>> idx;
    std::vector<Vector> spectra;
    for (long long i = 0; i < o.pairs; ++i) {
      for (int side = 0; side < 2; ++side) {
        Vector nu(o.modes);
        for (int k = 0; k < o.modes; ++k) nu[k] = rng.uniform(o.nu_min, o.nu_max);
        spectra.push_back(nu);
      }
      idx.emplace_back(spectra.size() - 2, spectra.size() - 1);
    }
    pts = petz_points(spectra, method, &gap);
    r = petz_compare(pts, idx, o.tie, o.max_list);
    j["sampling"] = "random";
    j["seed"] = o.seed;
  } else {
    if (o.points < 2) throw InvalidInput("--points must be at least 2");
    double total = std::pow(static_cast<double>(o.points), o.modes);
    if (total > 10000) throw InvalidInput("grid too large for all-pairs comparison");
    std::vector<int> digit(o.modes, 0);
    std::vector<Vector> spectra;
    for (long long c = 0; c < static_cast<long long>(total); ++c) {
      Vector nu(o.modes);
      for (int k = 0; k < o.modes; ++k) {
        nu[k] = o.nu_min + (o.nu_max - o.nu_min) * digit[k] / (o.points - 1);
      }
      spectra.push_back(nu);
      for (int k = o.modes - 1; k >= 0; --k) {
        if (++digit[k] < o.points) break;
        digit[k] = 0;
      }
    }
    pts = petz_points(spectra, method, &gap);
    r = petz_compare_all(pts, o.tie, o.max_list);
    j["sampling"] = "grid";
    j["points_per_axis"] = o.points;
  }
  j["nu_range"] = {o.nu_min, o.nu_max};
  j["pairs"] = r.pairs;
  j["agreements"] = r.agreements;
  j["violations"] = r.violations;
  j["dominance_pairs"] = r.dominance_pairs;
  j["dominance_violations"] = r.dominance_violations;
  if (method == Method::Both) j["max_method_relative_difference"] = gap;
  json ex = json::array();
  for (auto [a, b] : r.examples) {
    ex.push_back({{"nu_a", vector_json(pts[a].nu)},
                  {"entropy_a", pts[a].entropy},
                  {"scal_a", pts[a].scal},
                  {"nu_b", vector_json(pts[b].nu)},
                  {"entropy_b", pts[b].entropy},
                  {"scal_b", pts[b].scal}});
  }
  j["violating_examples"] = ex;
  emit(j.dump(2) + "\n", o.out, out);
  return r.violations == 0 ? exit_ok : exit_nonfaithful;
}

int cmd_geodesic(const Options& o, std::ostream& out) {
  CovarianceMatrix v0(load_matrix_file(o.file));
  if (o.v1_file.empty() == o.a0_file.empty()) {
    throw InvalidInput("give exactly one of --v1 or --a0");
  }
  json j;
  GeodesicPath path;
  if (!o.v1_file.empty()) {
    CovarianceMatrix v1(load_matrix_file(o.v1_file));
    ShootingControls c;
    c.steps = o.steps;
    ShootingResult r = shoot_to(v0, v1, c);
    j["mode"] = "boundary-value";
    j["length"] = r.length;
    j["residual"] = r.residual;
    j["iterations"] = r.iterations;
    path = std::move(r.path);
  } else {
    TangentMatrix a0(load_matrix_file(o.a0_file));
    path = geodesic_shoot(v0, a0, o.steps);
    j["mode"] = "initial-value";
    j["length"] = path_length(path);
    DeltaKernel k(v0);
    j["initial_speed"] = std::sqrt(std::max(0.0, k.metric(a0, a0)));
  }
  j["steps"] = o.steps;
  j["speed_drift"] = speed_drift(path);
  if (!o.out.empty()) {
    const int d = static_cast<int>(v0.matrix().rows());
    std::string s = "t";
    for (int a = 0; a < d; ++a) {
      for (int b = 0; b < d; ++b) s += ",V_" + std::to_string(a) + "_" + std::to_string(b);
    }
    for (int a = 0; a < d; ++a) {
      for (int b = 0; b < d; ++b) s += ",dV_" + std::to_string(a) + "_" + std::to_string(b);
    }
    s += '\n';
    for (std::size_t i = 0; i < path.times.size(); ++i) {
      s += format_double(path.times[i]);
      for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) s += "," + format_double(path.points[i].matrix()(a, b));
      }
      for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) s += "," + format_double(path.velocities[i].matrix()(a, b));
      }
      s += '\n';
    }
    emit(s, o.out, out);
    j["path_csv"] = o.out;
  }
  out << j.dump(2) << '\n';
  return exit_ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Information geometry of Gaussian states under the KMB metric", "kmbgeo"};
  app.require_subcommand(1);

  auto* validate_cmd = app.add_subcommand(
      "validate", "Check a covariance matrix. Exit 0 faithful, 2 valid but not faithful, 3 invalid.");
  validate_cmd->add_option("file", o.file, "Matrix JSON file")->required();

  auto* curv = app.add_subcommand(
      "curvature",
      "Scalar curvature, ratio and entropy. CSV columns: method,scal,ratio,entropy_nats");
  curv->add_option("file", o.file, "Matrix JSON file");
  curv->add_option("--nu", o.nu, "Symplectic spectrum, comma separated")->delimiter(',');
  curv->add_option("--method", o.method, "closed, direct or both")
      ->check(CLI::IsMember({"closed", "direct", "both"}));
  curv->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  curv->add_option("--out", o.out, "Output file");
  curv->add_option("--nodes", o.nodes,
                   "If positive, also compare Delta against Gauss-Legendre quadrature "
                   "with this many nodes over the basis");

  auto* fig1 = app.add_subcommand(
      "fig1", "Two-mode grid. CSV columns: nu1,nu2,entropy_nats,scal (nu1 major)");
  fig1->add_option("--nu-min", o.nu_min, "Smallest eigenvalue");
  fig1->add_option("--nu-max", o.nu_max, "Largest eigenvalue");
  fig1->add_option("--points", o.points, "Points per axis");
  fig1->add_option("--out", o.out, "Output file");

  auto* fig2 = app.add_subcommand(
      "fig2",
      "Chain scans: R against N and against temperature. CSV columns: "
      "N,omega_tilde,T_tilde,scal,ratio,entropy_nats. --out P writes P_n_sweep.csv "
      "and P_t_sweep.csv");
  fig2->add_option("--omegas", o.omegas, "omega_tilde values for the temperature sweep")
      ->delimiter(',');
  fig2->add_option("--modes", o.chain_modes, "Chain length for the temperature sweep");
  fig2->add_option("--t-min", o.t_min, "Lowest temperature");
  fig2->add_option("--t-max", o.t_max, "Highest temperature");
  fig2->add_option("--t-points", o.t_points, "Log-spaced temperatures");
  fig2->add_option("--n-min", o.n_min, "Shortest chain in the N sweep");
  fig2->add_option("--n-max", o.n_max, "Longest chain in the N sweep");
  fig2->add_option("--n-step", o.n_step, "Step of the N sweep");
  fig2->add_option("--sweep-omega", o.sweep_omega, "omega_tilde of the N sweep");
  fig2->add_option("--sweep-temperature", o.sweep_temperature, "Temperature of the N sweep");
  fig2->add_option("--ham-coefficient", o.ham,
                   "mode-formula (omega+2) or as-printed (omega^2+2); as-printed "
                   "reconstructs spectra from the chain Hamiltonian")
      ->check(CLI::IsMember({"mode-formula", "as-printed"}));
  fig2->add_option("--out", o.out, "Output prefix");

  auto* petz = app.add_subcommand(
      "petz-scan",
      "Compare curvature and entropy orderings. Exit 0 if no violations, 2 otherwise.");
  petz->add_option("--modes", o.modes, "Number of modes");
  petz->add_option("--nu-min", o.nu_min, "Smallest eigenvalue");
  petz->add_option("--nu-max", o.nu_max, "Largest eigenvalue");
  petz->add_option("--points", o.points, "Grid points per axis (all-pairs mode)");
  petz->add_option("--pairs", o.pairs, "Random pairs instead of a grid");
  petz->add_option("--seed", o.seed, "Seed for random pairs");
  petz->add_option("--method", o.method, "closed, direct or both")
      ->check(CLI::IsMember({"closed", "direct", "both"}));
  petz->add_option("--tie-tolerance", o.tie, "Relative tolerance for equal values");
  petz->add_option("--max-list", o.max_list, "Violating pairs to list");
  petz->add_option("--out", o.out, "Output file");

  auto* geo = app.add_subcommand(
      "geodesic",
      "Geodesic from V0 with --a0 velocity or to --v1. --out writes the path CSV "
      "(t, V entries, dV entries, row-major)");
  geo->add_option("file", o.file, "Start point JSON")->required();
  geo->add_option("--v1", o.v1_file, "End point JSON");
  geo->add_option("--a0", o.a0_file, "Initial velocity JSON");
  geo->add_option("--steps", o.steps, "Integration steps");
  geo->add_option("--out", o.out, "Path CSV file");


  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    if (validate_cmd->parsed()) return cmd_validate(o, out);
    if (curv->parsed()) {
      if (o.file.empty() == o.nu.empty()) {
        throw InvalidInput("give exactly one of a matrix file or --nu");
      }
      return cmd_curvature(o, out);
    }
    if (fig1->parsed()) return cmd_fig1(o, out);
    if (fig2->parsed()) return cmd_fig2(o, out);
    if (petz->parsed()) return cmd_petz(o, out);
    if (geo->parsed()) return cmd_geodesic(o, out);
  } catch (const MalformedInput& e) {
    err << "malformed input: " << e.what() << '\n';
    return exit_malformed;
  } catch (const BoundaryDegeneracy& e) {
    err << "boundary degeneracy: " << e.what() << '\n';
    return exit_boundary;
  } catch (const BoundaryExit& e) {
    err << "boundary exit: " << e.what() << '\n';
    return exit_boundary;
  } catch (const NoConvergence& e) {
    err << "no convergence: " << e.what() << " (residual " << e.residual() << " after "
        << e.iterations() << " iterations)\n";
    return exit_no_convergence;
  } catch (const Error& e) {
    err << "invalid input: " << e.what() << '\n';
    return exit_invalid;
  }
  return exit_usage;
}

}  // namespace kmb::cli
