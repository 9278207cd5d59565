#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "randmult/acceptance.hpp"
#include "randmult/analytic.hpp"
#include "randmult/arith.hpp"
#include "randmult/errors.hpp"
#include "randmult/exact_count.hpp"
#include "randmult/parallel.hpp"
#include "randmult/polytope.hpp"
#include "randmult/rmt.hpp"
#include "randmult/simulate.hpp"

namespace randmult::cli {

namespace {

using Json = nlohmann::ordered_json;

Json big(const BigInt& v) {
  if (v >= 0 && v <= std::numeric_limits<std::uint64_t>::max()) return v.convert_to<std::uint64_t>();
  if (v < 0 && v >= std::numeric_limits<std::int64_t>::min()) return v.convert_to<std::int64_t>();
  return v.str();
}

Json rational(const Rational& r) { return to_string(r); }

Json estimate(const MomentEstimate& e) {
  Json j;
  j["mean"] = e.mean;
  j["std_error"] = e.std_error;
  j["trials"] = e.trials;
  j["seed"] = e.seed;
  if (e.upper_bound) j["upper_bound"] = *e.upper_bound;
  return j;
}

std::uint64_t floor_x(double x) {
  require(std::isfinite(x) && x >= 1.0, "x must be >= 1");
  return static_cast<std::uint64_t>(std::floor(x));
}

struct Globals {
  std::string format = "json";
  unsigned threads = 0;
  std::uint64_t seed = kDefaultSeed;
  std::string output;
};

struct CountArgs {
  std::string model;
  int k = 1;
  double x = 1;
  double sigma = 0.0;
  std::uint64_t q = 0;
  std::string method = "auto";
};

struct ConstantsArgs {
  std::string name;
  double k = 1;
  double eps = 1e-8;
  std::uint64_t q = 0;
  double z = 2.0;
};

struct RmtArgs {
  std::string group = "unitary";
  std::string mode = "exact";
  int k = 1;
  int L = 1;
  int L_max = 10;
  double z = 2.0;
  int N = 0;
  std::uint64_t samples = 2000;
  std::vector<int> mu;
  std::vector<int> mu_tilde;
};

struct SimulateArgs {
  std::string model = "steinhaus";
  double x = 100;
  double sigma = 0.0;
  double two_k = 2.0;
  std::uint64_t trials = 1000;
  bool helson = false;
  std::vector<double> x_list{1e2, 1e3, 1e4, 1e5};
};

struct ConjectureArgs {
  double k = 0.5;
  double sigma = 0.0;
  double x = 1e6;
};

struct VerifyArgs {
  std::vector<std::string> only;
};

Json run_count(const CountArgs& a) {
  Json r;
  const std::uint64_t x = floor_x(a.x);
  if (a.model == "steinhaus") {
    const auto e = steinhaus_energy(a.k, x, a.sigma);
    if (a.sigma == 0.0)
      r["value"] = big(e.exact);
    else
      r["value"] = e.value;
    r["value_float"] = e.value;
    r["tuple_space_size"] = big(e.tuple_space_size);
    if (a.k <= 4 && a.sigma <= 0.5 && x > 1) {
      const double rhs = steinhaus_asymptotic_rhs(a.k, a.sigma)(static_cast<double>(x));
      r["asymptotic_rhs"] = rhs;
      r["ratio_to_rhs"] = e.value / rhs;
    }
  } else if (a.model == "rademacher") {
    std::string method = a.method;
    if (method == "auto") method = x < 97 ? "sign" : "tuple";
    BigInt v;
    if (method == "sign")
      v = rademacher_moment_sign_enum(a.k, x);
    else if (method == "tuple")
      v = rademacher_moment_tuple_count(a.k, x);
    else
      throw InvalidArgument("method must be auto, sign or tuple");
    r["value"] = big(v);
    r["method"] = method;
    if ((a.k == 2 || a.k == 3) && x > 1) {
      const double rhs = rademacher_asymptotic_rhs(a.k)(static_cast<double>(x));
      r["asymptotic_rhs"] = rhs;
      r["ratio_to_rhs"] = to_double(v) / rhs;
    }
  } else if (a.model == "char") {
    const auto c = char_moment_average(a.k, a.q, x);
    r["avg_all"] = c.avg_all;
    r["avg_all_error"] = c.avg_all_error;
    r["congruence_count"] = big(c.congruence_count);
    r["avg_nonprincipal"] = rational(c.avg_nonprincipal);
    r["avg_nonprincipal_float"] = to_double(c.avg_nonprincipal);
    r["nonprincipal_over_phi"] = rational(c.nonprincipal_over_phi);
    if (x > 1) r["asymptotic_rhs"] = char_asymptotic_rhs(a.k, factorize(a.q))(static_cast<double>(x));
  } else {
    throw InvalidArgument("model must be steinhaus, rademacher or char");
  }
  return r;
}

int integer_k(double k) {
  require(k == std::floor(k) && k >= 1 && k <= 64, "k must be a positive integer");
  return static_cast<int>(k);
}

Json run_constants(const ConstantsArgs& a) {
  Json r;
  r["name"] = a.name;
  auto euler = [&](const EulerProductResult& e) {
    r["value"] = e.value;
    r["truncation_prime"] = e.truncation_prime;
    r["tail_bound"] = e.tail_bound;
  };
  auto polytope = [&](const PolytopeSpec& spec, const Rational& value) {
    r["value"] = rational(value);
    r["value_float"] = to_double(value);
    Json p;
    p["polytope"] = spec.name();
    p["dimension"] = spec.dimension();
    p["ehrhart"] = ehrhart_polynomial(spec).to_string();
    p["relative_volume"] = rational(relative_volume(spec));
    p["constraint_gcd"] = big(constraint_gcd(spec));
    r["diagnostics"] = p;
  };
  if (a.name == "a") {
    require(a.k > 0.0, "k must be positive");
    euler(a_constant(a.k, a.eps));
  } else if (a.name == "b") {
    euler(b_constant(integer_k(a.k), a.eps));
  } else if (a.name == "beta") {
    const int k = integer_k(a.k);
    const auto b = beta_routes(k);
    r["value"] = rational(b.value);
    r["value_float"] = to_double(b.value);
    Json d;
    d["birkhoff_route"] = rational(b.birkhoff_route);
    d["direct_route"] = rational(b.direct_route);
    d["birkhoff_relative_volume"] = rational(b.birkhoff_relative_volume);
    d["birkhoff_euclidean_volume"] = rational(b.birkhoff_euclidean_volume);
    d["kernel_gram_determinant"] = big(b.kernel_gram_determinant);
    if (k >= 2) {
      d["direct_polytope"] = beta_mixed(k).name();
      d["direct_ehrhart"] = ehrhart_polynomial(beta_mixed(k)).to_string();
      d["direct_constraint_gcd"] = big(constraint_gcd(beta_mixed(k)));
    }
    r["diagnostics"] = d;
  } else if (a.name == "alpha") {
    const int k = integer_k(a.k);
    polytope(alpha_box(k), alpha_constant(k));
  } else if (a.name == "gamma") {
    const int k = integer_k(a.k);
    polytope(gamma_sym(k), gamma_constant(k));
  } else if (a.name == "char_local") {
    require(a.q >= 1, "--q is required");
    r["value"] = char_local_factor(integer_k(a.k), factorize(a.q));
  } else if (a.name == "F") {
    r["value"] = hyper_Fk_real(a.k, a.z);
    if (a.k == std::floor(a.k)) r["terminating_sum"] = hyper_Fk(static_cast<int>(a.k), a.z);
  } else {
    throw InvalidArgument("name must be a, b, alpha, beta, gamma, char_local or F");
  }
  return r;
}

MatrixGroup parse_group(const std::string& g) {
  if (g == "unitary") return MatrixGroup::Unitary;
  if (g == "so") return MatrixGroup::SpecialOrthogonal;
  throw InvalidArgument("group must be unitary or so");
}

TruncatedMoment exact_moment(MatrixGroup g, int k, int L, double z) {
  return g == MatrixGroup::Unitary ? unitary_truncated_moment_exact(k, L, z) : so_truncated_moment_exact(k, L, z);
}

double rhs_moment(MatrixGroup g, int k, int L, double z) {
  return g == MatrixGroup::Unitary ? unitary_asymptotic_rhs(k, L, z) : so_asymptotic_rhs(k, L, z);
}

Json run_rmt(const RmtArgs& a, std::uint64_t seed) {
  const MatrixGroup g = parse_group(a.group);
  Json r;
  if (a.mode == "exact") {
    const auto m = exact_moment(g, a.k, a.L, a.z);
    r["value"] = m.value;
    Json coeffs = Json::array();
    for (const auto& c : m.coefficients) coeffs.push_back(big(c));
    r["coefficients"] = coeffs;
    if (a.L >= 1 && a.z > 1.0) {
      const double rhs = rhs_moment(g, a.k, a.L, a.z);
      r["asymptotic_rhs"] = rhs;
      r["ratio_to_rhs"] = m.value / rhs;
    }
  } else if (a.mode == "mc") {
    if (g != MatrixGroup::Unitary) throw Unsupported("Monte Carlo sampling is implemented for U(N) only");
    const int N = a.N > 0 ? a.N : std::max(1, a.k * a.L);
    r["N"] = N;
    r["estimate"] = estimate(mc_truncated_moment(a.k, a.L, a.z, N, a.samples, seed));
  } else if (a.mode == "mixed") {
    if (g != MatrixGroup::Unitary) throw Unsupported("mixed secular moments are implemented for U(N) only");
    int weight = 0;
    for (std::size_t j = 0; j < a.mu.size(); ++j) weight += static_cast<int>(j + 1) * a.mu[j];
    int weight_tilde = 0;
    for (std::size_t j = 0; j < a.mu_tilde.size(); ++j) weight_tilde += static_cast<int>(j + 1) * a.mu_tilde[j];
    const int N = a.N > 0 ? a.N : std::max({1, weight, weight_tilde});
    const auto m = mc_secular_mixed_moment(a.mu, a.mu_tilde, N, a.samples, seed);
    r["N"] = N;
    r["real"] = estimate(m.real);
    r["imag"] = estimate(m.imag);
    if (a.mu.size() == a.mu_tilde.size() || weight == weight_tilde) {
      std::vector<int> rows, cols;
      for (std::size_t j = 0; j < a.mu.size(); ++j) rows.insert(rows.end(), a.mu[j], static_cast<int>(j + 1));
      for (std::size_t j = 0; j < a.mu_tilde.size(); ++j) cols.insert(cols.end(), a.mu_tilde[j], static_cast<int>(j + 1));
      if (weight == weight_tilde && !rows.empty()) r["magic_count"] = big(magic_count(rows, cols));
    }
  } else if (a.mode == "rhs") {
    r["value"] = rhs_moment(g, a.k, a.L, a.z);
  } else if (a.mode == "ratio") {
    Json rows = Json::array();
    for (int L = 1; L <= a.L_max; ++L) {
      const double exact = exact_moment(g, a.k, L, a.z).value;
      const double rhs = rhs_moment(g, a.k, L, a.z);
      Json row;
      row["L"] = L;
      row["exact"] = exact;
      row["asymptotic_rhs"] = rhs;
      row["ratio"] = exact / rhs;
      rows.push_back(row);
    }
    r["rows"] = rows;
  } else if (a.mode == "I1") {
    const auto v = I1_two_ways(a.k, a.z);
    r["residue"] = v.residue;
    r["closed_form"] = v.closed_form;
    r["F"] = hyper_Fk(a.k, a.z);
  } else {
    throw InvalidArgument("mode must be exact, mc, mixed, rhs, ratio or I1");
  }
  return r;
}

Model parse_model(const std::string& m) {
  if (m == "steinhaus") return Model::Steinhaus;
  if (m == "rademacher") return Model::Rademacher;
  throw InvalidArgument("model must be steinhaus or rademacher");
}

Json run_simulate(const SimulateArgs& a, std::uint64_t seed) {
  Json r;
  if (a.helson) {
    std::vector<std::uint64_t> xs;
    for (double x : a.x_list) xs.push_back(floor_x(x));
    Json rows = Json::array();
    for (const auto& h : helson_table(xs, a.trials, seed)) {
      Json row;
      row["x"] = h.x;
      row["mean_abs"] = h.first_moment.mean;
      row["std_error"] = h.first_moment.std_error;
      row["trials"] = h.first_moment.trials;
      row["seed"] = h.first_moment.seed;
      row["ratio_to_sqrt_x"] = h.ratio;
      row["conjectured_ratio"] = h.conjectured;
      row["cs_upper_bound"] = h.upper_bound;
      rows.push_back(row);
    }
    r["rows"] = rows;
    return r;
  }
  r = estimate(estimate_abs_moment(parse_model(a.model), floor_x(a.x), a.sigma, a.two_k, a.trials, seed));
  return r;
}

Json run_conjecture(const ConjectureArgs& a) {
  const auto c = conjectured_moment(a.k, a.sigma, a.x);
  Json r;
  r["coefficient"] = c.coefficient;
  r["coefficient_via_hughes"] = c.coefficient_via_hughes;
  r["arithmetic_factor"] = c.arithmetic_factor;
  r["inverse_Fk"] = c.inverse_Fk;
  r["log_factor"] = c.log_factor;
  r["value"] = c.value;
  if (a.k == 0.5) {
    const double z = std::exp(0.5 - a.sigma);
    const double w = 1.0 - 1.0 / (z * z);
    r["Fk_series"] = hyper_Fk_real(0.5, z);
    r["Fk_via_agm"] = 1.0 / agm(1.0, std::sqrt(1.0 - w));
    r["coefficient_fourth_root"] = std::pow(c.coefficient, 0.25);
  }
  return r;
}

Json run_bound() {
  const auto b = cs_bound_minimize();
  Json r;
  r["u_star"] = b.u_star;
  r["v_star"] = b.v_star;
  r["f_min"] = b.f_min;
  r["amplitude_bound"] = b.amplitude_bound;
  return r;
}

// Flattens nested objects into dotted column names.
void flatten(const Json& j, const std::string& prefix, std::vector<std::pair<std::string, const Json*>>& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
  } else {
    out.emplace_back(prefix, &j);
  }
}

std::string csv_cell(const Json& v) {
  if (v.is_number_float()) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v.get<double>());
    return buf;
  }
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char ch : s) {
      if (ch == '"') quoted += '"';
      quoted += ch;
    }
    return quoted + "\"";
  }
  if (v.is_array()) {
    std::string s;
    for (const auto& e : v) s += (s.empty() ? "" : " ") + csv_cell(e);
    return s;
  }
  return v.dump();
}

std::string to_csv(const Json& results) {
  std::vector<const Json*> rows;
  if (results.contains("rows") && results["rows"].is_array())
    for (const auto& r : results["rows"]) rows.push_back(&r);
  else
    rows.push_back(&results);
  std::string out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::vector<std::pair<std::string, const Json*>> cells;
    flatten(*rows[i], "", cells);
    std::string header, line;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (c > 0) {
        header += ",";
        line += ",";
      }
      header += cells[c].first;
      line += csv_cell(*cells[c].second);
    }
    if (i == 0) out += header + "\n";
    out += line + "\n";
  }
  return out;
}

void emit(const Globals& g, const std::string& text, std::ostream& out) {
  if (g.output.empty()) {
    out << text;
    return;
  }
  std::ofstream file(g.output);
  if (!file) throw InvalidArgument("cannot open output file " + g.output);
  file << text;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Moments of random multiplicative functions and characteristic polynomials", "randmult"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--threads", g.threads, "Worker threads (0 = auto, default from RANDMULT_THREADS)");
  app.add_option("--seed", g.seed, "Seed for Monte Carlo operations");
  app.add_option("--output", g.output, "Write output to this file");

  CountArgs count;
  auto* c = app.add_subcommand("count", "Exact moments by counting");
  c->add_option("--model", count.model)->required()->check(CLI::IsMember({"steinhaus", "rademacher", "char"}));
  c->add_option("--k", count.k)->required();
  c->add_option("--x", count.x)->required();
  c->add_option("--sigma", count.sigma);
  c->add_option("--q", count.q, "Prime modulus for --model char");
  c->add_option("--method", count.method, "Rademacher method")->check(CLI::IsMember({"auto", "sign", "tuple"}));

  ConstantsArgs constants;
  auto* k = app.add_subcommand("constants", "Arithmetic and geometric constants");
  k->add_option("--name", constants.name)
      ->required()
      ->check(CLI::IsMember({"a", "b", "alpha", "beta", "gamma", "char_local", "F"}));
  k->add_option("--k", constants.k)->required();
  k->add_option("--eps", constants.eps, "Tolerance for Euler products");
  k->add_option("--q", constants.q, "Modulus for char_local");
  k->add_option("--z", constants.z, "|z| for F");

  RmtArgs rmt;
  auto* m = app.add_subcommand("rmt", "Truncated characteristic polynomial moments");
  m->add_option("--group", rmt.group)->check(CLI::IsMember({"unitary", "so"}));
  m->add_option("--mode", rmt.mode)->check(CLI::IsMember({"exact", "mc", "mixed", "rhs", "ratio", "I1"}));
  m->add_option("--k", rmt.k);
  m->add_option("--L", rmt.L);
  m->add_option("--L-max", rmt.L_max, "Largest L for --mode ratio");
  m->add_option("--z", rmt.z, "|z|");
  m->add_option("--N", rmt.N, "Matrix size for Monte Carlo (default kL)");
  m->add_option("--samples", rmt.samples);
  m->add_option("--mu", rmt.mu, "Multiplicities of parts 1, 2, ... for --mode mixed")->delimiter(',');
  m->add_option("--mu-tilde", rmt.mu_tilde, "Conjugated multiplicities for --mode mixed")->delimiter(',');

  SimulateArgs sim;
  auto* s = app.add_subcommand("simulate", "Monte Carlo moments of random multiplicative sums");
  s->add_option("--model", sim.model)->check(CLI::IsMember({"steinhaus", "rademacher"}));
  s->add_option("--x", sim.x);
  s->add_option("--sigma", sim.sigma);
  s->add_option("--two-k", sim.two_k, "Moment exponent 2k");
  s->add_option("--trials", sim.trials);
  s->add_flag("--helson", sim.helson, "Table of E|S_x| / sqrt(x)");
  s->add_option("--x-list", sim.x_list, "x values for --helson")->delimiter(',');

  ConjectureArgs conj;
  auto* j = app.add_subcommand("conjecture", "Predicted fractional moments");
  j->add_option("--k", conj.k);
  j->add_option("--sigma", conj.sigma);
  j->add_option("--x", conj.x);

  auto* b = app.add_subcommand("bound", "Cauchy-Schwarz upper bound for the first moment");

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "Run the acceptance suite");
  v->add_option("--only", verify.only, "Criterion ids")->delimiter(',');

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    set_thread_count(g.threads);
    const auto start = std::chrono::steady_clock::now();
    Json params;
    Json results;
    std::string command;
    int code = kOk;

    if (*c) {
      command = "count";
      params = {{"model", count.model}, {"k", count.k}, {"x", count.x}, {"sigma", count.sigma}};
      if (count.model == "char") params["q"] = count.q;
      if (count.model == "rademacher") params["method"] = count.method;
      results = run_count(count);
    } else if (*k) {
      command = "constants";
      params = {{"name", constants.name}, {"k", constants.k}, {"eps", constants.eps}};
      if (constants.name == "char_local") params["q"] = constants.q;
      if (constants.name == "F") params["z"] = constants.z;
      results = run_constants(constants);
    } else if (*m) {
      command = "rmt";
      params = {{"group", rmt.group}, {"mode", rmt.mode}, {"k", rmt.k}, {"L", rmt.L}, {"z", rmt.z}};
      if (rmt.mode == "ratio") params["L_max"] = rmt.L_max;
      if (rmt.mode == "mc" || rmt.mode == "mixed") {
        params["N"] = rmt.N;
        params["samples"] = rmt.samples;
      }
      if (rmt.mode == "mixed") {
        params["mu"] = rmt.mu;
        params["mu_tilde"] = rmt.mu_tilde;
      }
      results = run_rmt(rmt, g.seed);
    } else if (*s) {
      command = "simulate";
      params = {{"model", sim.model}, {"sigma", sim.sigma}, {"two_k", sim.two_k}, {"trials", sim.trials}};
      if (sim.helson)
        params["x_list"] = sim.x_list;
      else
        params["x"] = sim.x;
      results = run_simulate(sim, g.seed);
    } else if (*j) {
      command = "conjecture";
      params = {{"k", conj.k}, {"sigma", conj.sigma}, {"x", conj.x}};
      results = run_conjecture(conj);
    } else if (*b) {
      command = "bound";
      params = Json::object();
      results = run_bound();
    } else if (*v) {
      command = "verify";
      const auto ids = verify.only.empty() ? acceptance_ids() : verify.only;
      params = {{"only", ids}};
      const bool text = app.get_option("--format")->count() == 0;
      results["rows"] = Json::array();
      bool any_failed = false;
      for (const auto& id : ids) {
        const auto res = run_criterion(id, g.seed);
        if (text) out << format_result(res) << "\n" << std::flush;
        any_failed = any_failed || res.status == Status::Fail;
        Json row;
        row["id"] = res.id;
        row["status"] = status_name(res.status);
        row["title"] = res.title;
        row["detail"] = res.detail;
        row["seconds"] = res.seconds;
        row["notes"] = res.notes;
        results["rows"].push_back(row);
      }
      code = any_failed ? kFailure : kOk;
      if (text) return code;
    }

    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (g.format == "csv") {
      emit(g, to_csv(results), out);
      return code;
    }
    Json doc;
    doc["command"] = command;
    doc["params"] = params;
    doc["results"] = results;
    doc["manifest"] = {{"command", command},
                       {"params", params},
                       {"seed", g.seed},
                       {"version", RANDMULT_VERSION},
                       {"threads", thread_count()},
                       {"wall_seconds", seconds}};
    emit(g, doc.dump(2) + "\n", out);
    return code;
  } catch (const ResourceError& e) {
    err << "resource limit: " << e.what() << "\n";
    return kResource;
  } catch (const InvalidArgument& e) {
    err << "invalid argument: " << e.what() << "\n";
    return kUsage;
  } catch (const OutOfRange& e) {
    err << "out of range: " << e.what() << "\n";
    return kUsage;
  } catch (const Unsupported& e) {
    err << "unsupported: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
}

}  // namespace randmult::cli
