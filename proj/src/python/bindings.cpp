#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "randmult/acceptance.hpp"
#include "randmult/analytic.hpp"
#include "randmult/arith.hpp"
#include "randmult/errors.hpp"
#include "randmult/exact_count.hpp"
#include "randmult/parallel.hpp"
#include "randmult/polytope.hpp"
#include "randmult/rmt.hpp"
#include "randmult/simulate.hpp"

namespace py = pybind11;
using namespace randmult;

namespace {

py::int_ to_py(const BigInt& v) {
  return py::reinterpret_steal<py::int_>(PyLong_FromString(v.str().c_str(), nullptr, 10));
}

py::object to_py(const Rational& r) {
  const py::object fraction = py::module_::import("fractions").attr("Fraction");
  const BigInt num = numerator(r);
  const BigInt den = denominator(r);
  return fraction(to_py(num), to_py(den));
}

py::list to_py(const std::vector<BigInt>& v) {
  py::list out;
  for (const auto& c : v) out.append(to_py(c));
  return out;
}

py::dict to_py(const MomentEstimate& e) {
  py::dict d;
  d["mean"] = e.mean;
  d["std_error"] = e.std_error;
  d["trials"] = e.trials;
  d["seed"] = e.seed;
  d["upper_bound"] = e.upper_bound ? py::cast(*e.upper_bound) : py::none();
  return d;
}

py::dict to_py(const EulerProductResult& e) {
  py::dict d;
  d["value"] = e.value;
  d["truncation_prime"] = e.truncation_prime;
  d["tail_bound"] = e.tail_bound;
  return d;
}

PolytopeSpec polytope_by_name(const std::string& family, int k) {
  if (family == "birkhoff") return birkhoff(k);
  if (family == "beta_mixed") return beta_mixed(k);
  if (family == "alpha_box") return alpha_box(k);
  if (family == "gamma_sym") return gamma_sym(k);
  throw InvalidArgument("family must be birkhoff, beta_mixed, alpha_box or gamma_sym");
}

Model model_by_name(const std::string& m) {
  if (m == "steinhaus") return Model::Steinhaus;
  if (m == "rademacher") return Model::Rademacher;
  throw InvalidArgument("model must be steinhaus or rademacher");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Moments of random multiplicative functions and truncated characteristic polynomials";
  m.attr("__version__") = RANDMULT_VERSION;
  m.attr("DEFAULT_SEED") = kDefaultSeed;

  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
  py::register_exception<OutOfRange>(m, "OutOfRange", PyExc_IndexError);
  py::register_exception<ResourceError>(m, "ResourceError", PyExc_RuntimeError);
  py::register_exception<Unsupported>(m, "Unsupported", PyExc_NotImplementedError);
  py::register_exception<InternalError>(m, "InternalError", PyExc_AssertionError);

  m.def("set_thread_count", &set_thread_count, py::arg("n"));
  m.def("thread_count", &thread_count);

  // arithmetic constants
  m.def("a_constant", [](double k, double eps) { return to_py(a_constant(k, eps)); }, py::arg("k"),
        py::arg("eps") = 1e-8);
  m.def("b_constant", [](int k, double eps) { return to_py(b_constant(k, eps)); }, py::arg("k"),
        py::arg("eps") = 1e-8);
  m.def("char_local_factor", [](int k, std::uint64_t q) { return char_local_factor(k, factorize(q)); },
        py::arg("k"), py::arg("q"));

  // exact counts
  m.def(
      "steinhaus_energy",
      [](int k, std::uint64_t x, double sigma) {
        const auto e = steinhaus_energy(k, x, sigma);
        py::dict d;
        d["exact"] = sigma == 0.0 ? py::object(to_py(e.exact)) : py::none();
        d["value"] = e.value;
        d["tuple_space_size"] = to_py(e.tuple_space_size);
        return d;
      },
      py::arg("k"), py::arg("x"), py::arg("sigma") = 0.0);
  m.def(
      "rademacher_moment",
      [](int k, std::uint64_t x, const std::string& method) {
        if (method == "sign") return to_py(rademacher_moment_sign_enum(k, x));
        if (method == "tuple") return to_py(rademacher_moment_tuple_count(k, x));
        throw InvalidArgument("method must be sign or tuple");
      },
      py::arg("k"), py::arg("x"), py::arg("method") = "tuple");
  m.def(
      "char_moment_average",
      [](int k, std::uint64_t q, std::uint64_t x) {
        const auto c = char_moment_average(k, q, x);
        py::dict d;
        d["avg_all"] = c.avg_all;
        d["avg_all_error"] = c.avg_all_error;
        d["avg_nonprincipal"] = to_py(c.avg_nonprincipal);
        d["nonprincipal_over_phi"] = to_py(c.nonprincipal_over_phi);
        d["congruence_count"] = to_py(c.congruence_count);
        return d;
      },
      py::arg("k"), py::arg("q"), py::arg("x"));

  // polytopes
  m.def("lattice_count", [](const std::string& f, int k, int t) { return to_py(lattice_count(polytope_by_name(f, k), t)); },
        py::arg("family"), py::arg("k"), py::arg("t"));
  m.def(
      "ehrhart_polynomial",
      [](const std::string& f, int k) {
        py::list out;
        const auto poly = ehrhart_polynomial(polytope_by_name(f, k));
        for (const auto& c : poly.coefficients()) out.append(to_py(c));
        return out;
      },
      py::arg("family"), py::arg("k"), "Coefficients, constant term first.");
  m.def("beta_constant", [](int k) { return to_py(beta_constant(k)); }, py::arg("k"));
  m.def("alpha_constant", [](int k) { return to_py(alpha_constant(k)); }, py::arg("k"));
  m.def("gamma_constant", [](int k) { return to_py(gamma_constant(k)); }, py::arg("k"));
  m.def("magic_count", [](const std::vector<int>& r, const std::vector<int>& c) { return to_py(magic_count(r, c)); },
        py::arg("row_sums"), py::arg("col_sums"));

  // random matrices
  m.def(
      "truncated_moment_exact",
      [](const std::string& group, int k, int L, double z_abs) {
        TruncatedMoment t;
        if (group == "unitary")
          t = unitary_truncated_moment_exact(k, L, z_abs);
        else if (group == "so")
          t = so_truncated_moment_exact(k, L, z_abs);
        else
          throw InvalidArgument("group must be unitary or so");
        py::dict d;
        d["coefficients"] = to_py(t.coefficients);
        d["value"] = t.value;
        return d;
      },
      py::arg("group"), py::arg("k"), py::arg("L"), py::arg("z_abs"));
  m.def("hyper_Fk", &hyper_Fk, py::arg("k"), py::arg("z_abs"));
  m.def(
      "I1_two_ways",
      [](int k, double z_abs) {
        const auto v = I1_two_ways(k, z_abs);
        return py::make_tuple(v.residue, v.closed_form);
      },
      py::arg("k"), py::arg("z_abs"));
  m.def(
      "mc_truncated_moment",
      [](int k, int L, double z_abs, int N, std::uint64_t samples, std::uint64_t seed) {
        MomentEstimate e;
        {
          py::gil_scoped_release release;
          e = mc_truncated_moment(k, L, z_abs, N, samples, seed);
        }
        return to_py(e);
      },
      py::arg("k"), py::arg("L"), py::arg("z_abs"), py::arg("N"), py::arg("samples") = 2000,
      py::arg("seed") = kDefaultSeed);
  m.def("unitary_asymptotic_rhs", &unitary_asymptotic_rhs, py::arg("k"), py::arg("L"), py::arg("z_abs"));
  m.def("so_asymptotic_rhs", &so_asymptotic_rhs, py::arg("k"), py::arg("L"), py::arg("z_abs"));

  // analytic
  m.def("hyper_2F1", &hyper_2F1_series, py::arg("a"), py::arg("b"), py::arg("c"), py::arg("w"),
        py::arg("eps") = 1e-15);
  m.def("agm", &agm, py::arg("a"), py::arg("b"));
  m.def("comparison_constant", &comparison_constant, py::arg("k"), py::arg("sigma"));
  m.def(
      "conjectured_moment",
      [](double k, double sigma, double x) {
        const auto c = conjectured_moment(k, sigma, x);
        py::dict d;
        d["coefficient"] = c.coefficient;
        d["coefficient_via_hughes"] = c.coefficient_via_hughes;
        d["arithmetic_factor"] = c.arithmetic_factor;
        d["inverse_Fk"] = c.inverse_Fk;
        d["log_factor"] = c.log_factor;
        d["value"] = c.value;
        return d;
      },
      py::arg("k") = 0.5, py::arg("sigma") = 0.0, py::arg("x") = 1e6);
  m.def("cs_bound", []() {
    const auto b = cs_bound_minimize();
    py::dict d;
    d["u_star"] = b.u_star;
    d["v_star"] = b.v_star;
    d["f_min"] = b.f_min;
    d["amplitude_bound"] = b.amplitude_bound;
    return d;
  });

  // simulation
  m.def(
      "estimate_abs_moment",
      [](const std::string& model, std::uint64_t x, double sigma, double two_k, std::uint64_t trials,
         std::uint64_t seed) {
        const Model md = model_by_name(model);
        MomentEstimate e;
        {
          py::gil_scoped_release release;
          e = estimate_abs_moment(md, x, sigma, two_k, trials, seed);
        }
        return to_py(e);
      },
      py::arg("model"), py::arg("x"), py::arg("sigma") = 0.0, py::arg("two_k") = 2.0, py::arg("trials") = 1000,
      py::arg("seed") = kDefaultSeed);

  // acceptance
  m.def("acceptance_ids", &acceptance_ids);
  m.def(
      "run_criterion",
      [](const std::string& id, std::uint64_t seed) {
        CriterionResult r;
        {
          py::gil_scoped_release release;
          r = run_criterion(id, seed);
        }
        py::dict d;
        d["id"] = r.id;
        d["title"] = r.title;
        d["status"] = status_name(r.status);
        d["detail"] = r.detail;
        d["notes"] = r.notes;
        d["seconds"] = r.seconds;
        return d;
      },
      py::arg("id"), py::arg("seed") = kDefaultSeed);
}
