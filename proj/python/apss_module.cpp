#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "apss/analysis.hpp"
#include "apss/dense.hpp"
#include "apss/io.hpp"
#include "apss/krylov.hpp"
#include "apss/problems.hpp"
#include "apss/saddle.hpp"
#include "apss/splitting.hpp"

namespace py = pybind11;
using namespace apss;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

Vector to_vec(const Array& a) {
  if (a.ndim() != 1) throw py::value_error("expected a one-dimensional array");
  return {a.data(), a.data() + a.size()};
}

Array to_array(const Vector& v) {
  Array out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

InnerOptions inner_from(const std::string& mode, double reduction, std::size_t maxit) {
  InnerOptions o;
  if (mode == "cg") o.mode = InnerSolver::cg;
  else if (mode == "exact") o.mode = InnerSolver::exact_dense;
  else throw py::value_error("inner must be 'cg' or 'exact'");
  o.reduction = reduction;
  o.maxit = maxit;
  return o;
}

py::dict report_dict(const Vector& x, const SolveReport& r) {
  py::dict d;
  d["x"] = to_array(x);
  d["iterations"] = r.iterations;
  d["converged"] = r.converged;
  d["reason"] = std::string(to_string(r.reason));
  d["history"] = to_array(r.residual_history);
  d["final_residual"] = r.final_residual;
  d["wall_seconds"] = r.wall_seconds;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "APSS splitting solvers for singular three-by-three saddle point systems.";

  py::register_exception<Error>(m, "Error", PyExc_ValueError);

  py::class_<SparseMatrix>(m, "SparseMatrix")
      .def_property_readonly("rows", &SparseMatrix::rows)
      .def_property_readonly("cols", &SparseMatrix::cols)
      .def_property_readonly("nnz", &SparseMatrix::nnz)
      .def("to_dense", [](const SparseMatrix& s) { return to_dense(s); })
      .def("csr", [](const SparseMatrix& s) {
        const auto rp = s.row_ptr();
        const auto ci = s.col_idx();
        const auto v = s.values();
        return py::make_tuple(py::array_t<std::size_t>(static_cast<py::ssize_t>(rp.size()), rp.data()),
                              py::array_t<std::size_t>(static_cast<py::ssize_t>(ci.size()), ci.data()),
                              py::array_t<double>(static_cast<py::ssize_t>(v.size()), v.data()));
      }, "(indptr, indices, data) arrays");

  m.def("from_dense", [](const DenseMatrix& d) {
    std::vector<Triplet> t;
    for (Eigen::Index i = 0; i < d.rows(); ++i)
      for (Eigen::Index j = 0; j < d.cols(); ++j)
        if (d(i, j) != 0.0)
          t.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(j), d(i, j)});
    return from_triplets(static_cast<std::size_t>(d.rows()), static_cast<std::size_t>(d.cols()), t);
  });

  py::class_<SaddleSystem>(m, "SaddleSystem")
      .def(py::init<SparseMatrix, SparseMatrix, SparseMatrix>(), py::arg("A"), py::arg("B"), py::arg("C"))
      .def_property_readonly("A", &SaddleSystem::A)
      .def_property_readonly("B", &SaddleSystem::B)
      .def_property_readonly("C", &SaddleSystem::C)
      .def_property_readonly("n", &SaddleSystem::n)
      .def_property_readonly("m", &SaddleSystem::m)
      .def_property_readonly("l", &SaddleSystem::l)
      .def_property_readonly("order", &SaddleSystem::order)
      .def("apply", [](const SaddleSystem& s, const Array& x) { return to_array(s.apply(to_vec(x))); })
      .def("full", [](const SaddleSystem& s) { return to_dense(assemble_full(s)); },
           "Dense assembled operator");

  m.def("gen_kron_example", [](std::size_t p, bool dup) { return gen_kron_example(p, {dup}); },
        py::arg("p"), py::arg("duplicate_row") = false);
  m.def("gen_random_singular", &gen_random_singular, py::arg("n"), py::arg("m"), py::arg("l"),
        py::arg("deficiency"), py::arg("seed"));
  m.def("scale_system", [](const SaddleSystem& s) {
    auto [scaled, rec] = scale_system(s);
    return py::make_tuple(scaled, to_array(rec.d));
  }, "Returns (scaled system, weights)");
  m.def("rhs_for_ones", [](const SaddleSystem& s) { return to_array(rhs_for_ones(s)); });
  m.def("residual_norm", [](const SaddleSystem& s, const Array& x, const Array& b) {
    return residual_norm(s, to_vec(x), to_vec(b));
  });
  m.def("estimate_alpha", &estimate_alpha);
  m.def("psi", &psi);
  m.def("load_system", [](const std::filesystem::path& p) { return load_system(p); });
  m.def("save_system", [](const SaddleSystem& s, const std::filesystem::path& dir) {
    return save_system(s, dir);
  });

  m.def("fgmres", [](const SaddleSystem& s, const Array& b, std::optional<double> alpha, double tol,
                     std::size_t maxit, std::size_t restart, const std::string& inner,
                     double inner_reduction, std::size_t inner_maxit) {
    const Vector rhs = to_vec(b);
    FgmresOptions o{tol, maxit, restart};
    const LinearMap op = [&](const Vector& v) { return s.apply(v); };
    Preconditioner pre;
    std::optional<ApssOperator> apss;
    if (alpha) {
      apss.emplace(s, *alpha, inner_from(inner, inner_reduction, inner_maxit));
      pre = apss->as_preconditioner();
    }
    std::pair<Vector, SolveReport> out;
    {
      py::gil_scoped_release release;
      out = fgmres(op, pre, rhs, Vector(s.order(), 0.0), o);
    }
    return report_dict(out.first, out.second);
  }, py::arg("sys"), py::arg("b"), py::arg("alpha") = py::none(), py::arg("tol") = 1e-7,
     py::arg("maxit") = 2000, py::arg("restart") = 0, py::arg("inner") = "cg",
     py::arg("inner_reduction") = 1e-3, py::arg("inner_maxit") = 200,
     "FGMRES from x0 = 0; alpha=None runs without preconditioning");

  m.def("apss_iterate", [](const SaddleSystem& s, const Array& b, double alpha, std::optional<Array> x0,
                           double tol, std::size_t maxit, const std::string& inner) {
    const ApssOperator op(s, alpha, inner_from(inner, 1e-3, 200));
    const Vector start = x0 ? to_vec(*x0) : Vector(s.order(), 0.0);
    IterateOptions o;
    o.tol = tol;
    o.maxit = maxit;
    auto [x, rep] = apss_iterate(op, to_vec(b), start, o);
    return report_dict(x, rep);
  }, py::arg("sys"), py::arg("b"), py::arg("alpha"), py::arg("x0") = py::none(), py::arg("tol") = 1e-7,
     py::arg("maxit") = 2000, py::arg("inner") = "exact");

  m.def("apply_preconditioner", [](const SaddleSystem& s, double alpha, const Array& r,
                                   const std::string& inner) {
    return to_array(ApssOperator(s, alpha, inner_from(inner, 1e-3, 200)).apply_preconditioner(to_vec(r)));
  }, py::arg("sys"), py::arg("alpha"), py::arg("r"), py::arg("inner") = "exact");

  m.def("iteration_matrix", [](const SaddleSystem& s, double a) { return build_iteration_matrix(s, a); });
  m.def("preconditioned_spectrum", [](const SaddleSystem& s, double a) {
    return preconditioned_spectrum(s, a);
  });
  m.def("certify", [](const SaddleSystem& s, double alpha, double unit_tol, double rank_tol) {
    AnalysisOptions o;
    o.unit_tol = unit_tol;
    o.rank_tol = rank_tol;
    const auto c = certify(s, alpha, o);
    py::dict d;
    d["alpha"] = c.alpha;
    d["eigenvalues"] = c.eigenvalues;
    d["unit_eigen_count"] = c.unit_eigen_count;
    d["pseudo_spectral_radius"] = c.pseudo_spectral_radius;
    d["index_one"] = c.index_one;
    d["kellogg_a1"] = c.kellogg_a1;
    d["kellogg_a2"] = c.kellogg_a2;
    d["semi_convergent"] = c.semi_convergent();
    return d;
  }, py::arg("sys"), py::arg("alpha"), py::arg("unit_tol") = 1e-6, py::arg("rank_tol") = 1e-12);
}
