// Python bindings for the main operations: numpy arrays map to dense
// matrices, results come back as plain dicts/tuples.
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "symsector/expansion.hpp"
#include "symsector/lagrangian.hpp"
#include "symsector/sequence.hpp"

namespace py = pybind11;
using namespace symsector;

namespace {

PhaseVector make_pv(const Vector& xi, const Vector& eta) { return {xi, eta}; }

py::dict expansion_dict(const ExpansionResult& er) {
  py::dict d;
  d["sigma"] = er.sigma;
  d["t1"] = er.t1;
  if (er.witness)
    d["witness"] = py::make_tuple(er.witness->xi, er.witness->eta);
  else
    d["witness"] = py::none();
  return d;
}

MapSequence sequence_from_list(const std::vector<Matrix>& maps) {
  MapSequence seq;
  for (const Matrix& m : maps) seq.maps.emplace_back(m);
  return seq;
}

Example69Spec spec_from_args(const std::vector<Matrix>& a_list,
                             const std::vector<Matrix>& p_list,
                             const std::vector<std::pair<double, double>>& tau,
                             double c_bound, std::uint64_t seed) {
  Example69Spec spec;
  spec.a_list = a_list;
  spec.p_list = p_list;
  spec.tau_list = tau;
  spec.c_bound = c_bound;
  spec.derive_r(seed);
  return spec;
}

}  // namespace

PYBIND11_MODULE(symsector, m) {
  m.doc() =
      "Sector calculus for linear symplectic maps: monotonicity, "
      "factorization, expansion coefficients and Lagrangian metrics";

  py::register_exception<Error>(m, "Error", PyExc_ValueError);

  m.def(
      "omega",
      [](const Vector& xi1, const Vector& eta1, const Vector& xi2,
         const Vector& eta2) {
        return omega(make_pv(xi1, eta1), make_pv(xi2, eta2));
      },
      py::arg("xi1"), py::arg("eta1"), py::arg("xi2"), py::arg("eta2"),
      "Standard symplectic form <xi1,eta2> - <xi2,eta1>");

  m.def(
      "q_standard",
      [](const Vector& xi, const Vector& eta) {
        return q_standard(make_pv(xi, eta));
      },
      py::arg("xi"), py::arg("eta"));

  m.def(
      "is_symplectic",
      [](const Matrix& l, double tol) {
        return is_symplectic(BlockMap(l), tol);
      },
      py::arg("map"), py::arg("tol") = Tol::kSymplectic);

  m.def(
      "classify_definiteness",
      [](const Matrix& mat, double tol) {
        auto rep = classify_definiteness(mat, tol);
        py::dict d;
        d["class"] = to_string(rep.cls);
        d["min_eig"] = rep.min_eig;
        d["max_eig"] = rep.max_eig;
        return d;
      },
      py::arg("matrix"), py::arg("tol") = Tol::kDefiniteness);

  m.def("psd_sqrt", [](const Matrix& mat) { return psd_sqrt(mat); },
        py::arg("matrix"));

  m.def(
      "monotonicity_class",
      [](const Matrix& l) {
        return std::string(to_string(monotonicity_class(BlockMap(l))));
      },
      py::arg("map"));

  m.def(
      "factor_qpr",
      [](const Matrix& l) {
        auto f = factor_qpr(BlockMap(l));
        py::dict d;
        d["A"] = f.a;
        d["P"] = f.p;
        d["R"] = f.r;
        d["p_class"] = to_string(f.p_class.cls);
        d["r_class"] = to_string(f.r_class.cls);
        d["condition_a"] = f.condition_a;
        return d;
      },
      py::arg("map"));

  m.def(
      "canonical_form",
      [](const Matrix& l) {
        auto cf = canonical_form(BlockMap(l));
        py::dict d;
        d["t"] = cf.t;
        d["left_iso"] = cf.left_iso.full();
        d["right_iso"] = cf.right_iso.full();
        d["core"] = cf.core.full();
        return d;
      },
      py::arg("map"));

  m.def("q_isometry", [](const Matrix& a) { return q_isometry(a).full(); },
        py::arg("a"));

  m.def(
      "beta",
      [](const Vector& xi, const Vector& eta, const Matrix& l) {
        return beta(make_pv(xi, eta), BlockMap(l));
      },
      py::arg("xi"), py::arg("eta"), py::arg("map"));

  m.def("sigma",
        [](const Matrix& l) { return expansion_dict(sigma(BlockMap(l))); },
        py::arg("map"));

  m.def("sigma_complementary",
        [](const Matrix& l) { return sigma_complementary(BlockMap(l)); },
        py::arg("map"));

  m.def("image_distance",
        [](const Matrix& l) { return image_distance(BlockMap(l)); },
        py::arg("map"));

  m.def(
      "mc_inf_beta",
      [](const Matrix& l, long samples, std::uint64_t seed) {
        return mc_inf_beta(BlockMap(l), samples, seed);
      },
      py::arg("map"), py::arg("samples") = 100000, py::arg("seed") = 0,
      "Monte-Carlo infimum of beta over the sector interior");

  m.def(
      "mobius",
      [](const Matrix& l, const Matrix& u) {
        return mobius(BlockMap(l), LagrangianSubspace::from_graph(u)).graph();
      },
      py::arg("map"), py::arg("u"),
      "Graph matrix of the image subspace (C + D U)(A + B U)^-1");

  m.def(
      "distance",
      [](const Matrix& ua, const Matrix& ub) {
        return distance(LagrangianSubspace::from_graph(ua),
                        LagrangianSubspace::from_graph(ub));
      },
      py::arg("ua"), py::arg("ub"));

  m.def(
      "general_sector_q",
      [](const Matrix& u1, const Matrix& u2, const Vector& xi,
         const Vector& eta) {
        GeneralSector s(LagrangianSubspace::from_graph(u1),
                        LagrangianSubspace::from_graph(u2));
        return s.q(make_pv(xi, eta));
      },
      py::arg("u1"), py::arg("u2"), py::arg("xi"), py::arg("eta"),
      "Quadratic form of the sector between two graph subspaces");

  m.def(
      "order_compare",
      [](const Matrix& ua, const Matrix& ub) {
        return std::string(
            to_string(order_compare(LagrangianSubspace::from_graph(ua),
                                    LagrangianSubspace::from_graph(ub))));
      },
      py::arg("ua"), py::arg("ub"));

  m.def(
      "z_subspace",
      [](double u, Index d) { return z_subspace(u, d).graph(); },
      py::arg("u"), py::arg("d"));

  m.def(
      "inclusion_predicates",
      [](const Matrix& u1, const Matrix& u2, const Matrix& u,
         std::uint64_t seed, int n_samples) {
        auto rep = inclusion_predicates(LagrangianSubspace::from_graph(u1),
                                        LagrangianSubspace::from_graph(u2),
                                        LagrangianSubspace::from_graph(u),
                                        seed, n_samples);
        py::dict d;
        d["order_less"] = rep.order_less;
        d["sector_in_c"] = rep.sector_in_c;
        d["e_between"] = rep.e_between;
        d["e_in_sector"] = rep.e_in_sector;
        return d;
      },
      py::arg("u1"), py::arg("u2"), py::arg("u"),
      py::arg("seed") = kInclusionSamplerSeed, py::arg("n_samples") = 10000);

  m.def(
      "normalize_to_rho",
      [](const Matrix& u1, const Matrix& u2, double rho) {
        return normalize_to_rho(LagrangianSubspace::from_graph(u1),
                                LagrangianSubspace::from_graph(u2), rho)
            .full();
      },
      py::arg("u1"), py::arg("u2"), py::arg("rho"));

  m.def(
      "analyze_sequence",
      [](const std::vector<Matrix>& maps, int n_max,
         const std::vector<std::pair<Vector, Vector>>& probes,
         double growth_threshold) {
        std::vector<PhaseVector> pv;
        for (const auto& [xi, eta] : probes) pv.push_back(make_pv(xi, eta));
        SequenceReport rep =
            analyze_sequence(sequence_from_list(maps), n_max, pv,
                             growth_threshold);
        py::list steps;
        for (const StepRecord& s : rep.per_step) {
          py::dict d;
          d["n"] = s.n;
          d["sigma_n"] = s.sigma_n;
          d["t1_n"] = s.t1_n;
          d["diameter_n"] = s.diameter_n;
          d["q_probes"] = s.probe_q;
          steps.append(std::move(d));
        }
        py::dict flags;
        flags["certified_growth"] = rep.flags.certified_growth;
        flags["certified_growth_prepended"] =
            rep.flags.certified_growth_prepended;
        flags["sigma_final"] = rep.flags.sigma_final;
        flags["strict_at_step"] = rep.flags.strict_at_step
                                      ? py::cast(*rep.flags.strict_at_step)
                                      : py::none();
        flags["conditioning_stop_at"] =
            rep.flags.conditioning_stop_at
                ? py::cast(*rep.flags.conditioning_stop_at)
                : py::none();
        if (rep.flags.limit_estimate) {
          flags["limit_estimate"] = rep.flags.limit_estimate->graph();
          flags["limit_diameter_bound"] = rep.flags.limit_diameter_bound;
        } else {
          flags["limit_estimate"] = py::none();
        }
        py::dict out;
        out["steps"] = std::move(steps);
        out["flags"] = std::move(flags);
        return out;
      },
      py::arg("maps"), py::arg("n_max"),
      py::arg("probes") = std::vector<std::pair<Vector, Vector>>{},
      py::arg("growth_threshold") = kGrowthThreshold);

  m.def(
      "limit_subspace",
      [](const std::vector<Matrix>& maps, int n_max) {
        LimitResult lim = limit_subspace(sequence_from_list(maps), n_max);
        return py::make_tuple(lim.estimate.graph(), lim.bound);
      },
      py::arg("maps"), py::arg("n_max"));

  m.def(
      "build_example69",
      [](const std::vector<Matrix>& a_list, const std::vector<Matrix>& p_list,
         const std::vector<std::pair<double, double>>& tau, double c_bound,
         std::uint64_t seed) {
        MapSequence seq =
            build_example69(spec_from_args(a_list, p_list, tau, c_bound, seed));
        std::vector<Matrix> out;
        for (const BlockMap& b : seq.maps) out.push_back(b.full());
        return out;
      },
      py::arg("a_list"), py::arg("p_list"), py::arg("tau"),
      py::arg("c_bound"), py::arg("seed") = 0);

  m.def(
      "check_criterion69",
      [](const std::vector<Matrix>& a_list, const std::vector<Matrix>& p_list,
         const std::vector<std::pair<double, double>>& tau, double c_bound,
         int horizon, const Vector& xi, const Vector& eta,
         std::uint64_t seed) {
        auto res = check_criterion69(
            spec_from_args(a_list, p_list, tau, c_bound, seed), horizon,
            make_pv(xi, eta));
        py::dict d;
        d["series_partial"] = res.series_partial;
        d["q_nondecreasing"] = res.q_nondecreasing;
        d["ratio_bounds_hold"] = res.ratio_bounds_hold;
        d["q_growth"] = res.q_growth;
        d["verdict"] = to_string(res.verdict);
        d["q_trajectory"] = res.q_trajectory;
        return d;
      },
      py::arg("a_list"), py::arg("p_list"), py::arg("tau"), py::arg("c_bound"),
      py::arg("horizon"), py::arg("xi"), py::arg("eta"), py::arg("seed") = 0);

  m.attr("__version__") = "0.1.0";
}
