#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "charvar/cli.hpp"
#include "charvar/errors.hpp"
#include "charvar/json_io.hpp"
#include "charvar/liegroup.hpp"
#include "charvar/matrixrep.hpp"
#include "charvar/montecarlo.hpp"
#include "charvar/presentation.hpp"
#include "charvar/theorems.hpp"
#include "charvar/zmodule.hpp"

namespace py = pybind11;
using namespace charvar;

namespace {

py::object to_python(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

py::int_ to_python(const Integer& v) {
  return py::reinterpret_steal<py::int_>(PyLong_FromString(v.get_str().c_str(), nullptr, 10));
}

py::list to_python(const IntMatrix& m) {
  py::list rows;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    py::list row;
    for (std::size_t c = 0; c < m.cols(); ++c) row.append(to_python(m(r, c)));
    rows.append(row);
  }
  return rows;
}

IntMatrix int_matrix(const py::sequence& rows, std::size_t cols_if_empty = 0) {
  const std::size_t nr = py::len(rows);
  const std::size_t nc = nr ? py::len(rows[0]) : cols_if_empty;
  IntMatrix m(nr, nc);
  for (std::size_t r = 0; r < nr; ++r) {
    const py::sequence row = rows[r];
    if (py::len(row) != nc) throw Error(ErrorKind::ShapeMismatch, "ragged integer matrix");
    for (std::size_t c = 0; c < nc; ++c) m(r, c) = Integer(py::str(row[c]).cast<std::string>());
  }
  return m;
}

Presentation group_arg(const std::string& text) {
  if (text.find("gens") != std::string::npos) return parse_presentation(text);
  return standard_group(GroupKind::parse(text));
}

ReductiveDescriptor target_arg(const std::string& text) {
  if (text.find('\n') != std::string::npos) return parse_descriptor(text);
  return named_group(text);
}

MatrixRep rep_arg(const std::vector<Matrix>& matrices, const std::string& target, double tol) {
  return MatrixRep(Target::parse(target), matrices, tol);
}

}  // namespace

PYBIND11_MODULE(_charvar, m) {
  m.doc() = "Bindings for the charvar C++ library";

  static py::handle error_type = py::exception<Error>(m, "CharvarError").release();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = error_type(e.what());
      exc.attr("kind") = std::string(to_string(e.kind()));
      PyErr_SetObject(error_type.ptr(), exc.ptr());
    }
  });

  // Integer algebra
  m.def(
      "smith_normal_form",
      [](const py::sequence& rows, std::size_t cols) {
        const SmithForm s = smith_normal_form(int_matrix(rows, cols));
        py::dict d;
        d["U"] = to_python(s.U);
        d["D"] = to_python(s.D);
        d["V"] = to_python(s.V);
        d["rank"] = s.rank;
        py::list diag;
        for (const auto& x : s.diagonal()) diag.append(to_python(x));
        d["diagonal"] = diag;
        return d;
      },
      py::arg("rows"), py::arg("cols") = 0);
  m.def(
      "cokernel", [](const py::sequence& rows, std::size_t cols) { return cokernel(int_matrix(rows, cols)).to_string(); },
      py::arg("rows"), py::arg("cols") = 0);
  m.def("hom_group", [](const std::string& a, const std::string& b) {
    return hom_group(FgAbelianGroup::parse(a), FgAbelianGroup::parse(b)).to_string();
  });

  // Presentations
  m.def("group_info", [](const std::string& text) {
    const Presentation p = group_arg(text);
    const ExponentCanceling ec = is_exponent_canceling(p);
    py::dict d;
    d["generators"] = p.generator_names();
    std::vector<std::string> rels;
    for (const auto& r : p.relators()) rels.push_back(p.word_to_text(r));
    d["relators"] = rels;
    d["abelianization"] = cokernel(abelianization_matrix(p)).to_string();
    d["exponent_canceling"] = ec.flag;
    d["rank"] = ec.rank ? py::cast(*ec.rank) : py::none();
    std::vector<std::string> classes;
    for (const auto& t : recognize_class(p)) classes.push_back(t.to_string());
    d["classes"] = classes;
    d["presentation"] = p.to_text();
    return d;
  });

  // Lie groups
  m.def("lie_info", [](const std::string& name) { return to_python(to_json(target_arg(name))); });
  m.def("pi1", [](const std::string& name) { return pi1(target_arg(name)).to_string(); });

  // Theorems
  m.def(
      "analyze",
      [](const std::string& group, const std::string& target, std::optional<std::string> cls) {
        std::optional<ClassTag> tag;
        if (cls) tag = ClassTag::parse(*cls);
        return to_python(to_json(analyze(group_arg(group), target_arg(target), group, target, tag)));
      },
      py::arg("group"), py::arg("target"), py::arg("gamma_class") = py::none());
  m.def("pi0_surface_rep_space", [](long genus, const std::string& target) {
    return to_python(to_json(pi0_surface_rep_space(genus, target_arg(target))));
  });
  m.def("stable_facts", [](const std::string& target, long genus) {
    return to_python(to_json(stable_moduli_facts(parse_stable_target(target), genus)));
  });

  // Numerics
  m.def(
      "check_representation",
      [](const std::vector<Matrix>& matrices, const std::string& target, const std::string& group, double tol) {
        const RelatorCheck c = check_representation(rep_arg(matrices, target, tol), group_arg(group));
        py::dict d;
        d["ok"] = c.ok;
        d["residuals"] = c.residuals;
        return d;
      },
      py::arg("matrices"), py::arg("target"), py::arg("group"), py::arg("tol") = kDefaultTolerance);
  m.def(
      "lift",
      [](const std::vector<Matrix>& matrices, const std::string& target, const std::string& group, double tol) {
        const MatrixRep rep = rep_arg(matrices, target, tol);
        const Presentation p = group_arg(group);
        const LiftedRep lift = lift_to_universal_cover(rep, p);
        const LiftDiagnostics diag = lift_diagnostics(lift, rep, p);
        py::dict d;
        d["real_parts"] = lift.real_parts();
        d["su_parts"] = lift.su_parts();
        d["sheets"] = lift.sheets();
        d["max_relator_residual"] = diag.max_relator_residual();
        d["roundtrip_residual"] = diag.roundtrip;
        return d;
      },
      py::arg("matrices"), py::arg("target"), py::arg("group"), py::arg("tol") = kDefaultTolerance);
  m.def(
      "obstruction_class",
      [](const std::vector<Matrix>& matrices, std::size_t genus, double tol) {
        const ObstructionClass c = obstruction_class(rep_arg(matrices, "PU " + std::to_string(matrices.at(0).rows()), tol), genus);
        return py::make_tuple(c.k, c.n, c.residual);
      },
      py::arg("matrices"), py::arg("genus"), py::arg("tol") = kDefaultTolerance);
  m.def(
      "simultaneous_eigenvalues",
      [](const Matrix& a, const Matrix& b, double tol) {
        const SimultaneousEigenbasis s = simultaneous_eigenvalues(a, b, tol);
        std::vector<std::pair<Complex, Complex>> pairs;
        for (const auto& p : s.pairs) pairs.emplace_back(p.a, p.b);
        py::dict d;
        d["pairs"] = pairs;
        d["basis"] = s.basis;
        d["residual"] = s.residual;
        d["ill_conditioned"] = s.ill_conditioned;
        return d;
      },
      py::arg("a"), py::arg("b"), py::arg("tol") = kDefaultTolerance);
  m.def(
      "su2_kappa",
      [](const Matrix& a, const Matrix& b, double tol) {
        const TraceCoordinates t = su2_commuting_invariant(a, b, tol);
        return py::make_tuple(t.x, t.y, t.z, t.kappa);
      },
      py::arg("a"), py::arg("b"), py::arg("tol") = kDefaultTolerance);

  // Suites and the command line
  m.def(
      "run_suite",
      [](const std::string& name, std::uint64_t seed, std::size_t count) {
        SuiteOptions opt;
        opt.seed = seed;
        opt.count = count;
        std::vector<SuiteResult> results;
        if (name == "all") results = run_all_suites(opt);
        else if (name == "obstruction") results.push_back(obstruction_suite(opt));
        else if (name == "lift") results.push_back(lift_suite(opt));
        else if (name == "deck") results.push_back(deck_suite(opt));
        else if (name == "canonical_form") results.push_back(canonical_form_suite(opt));
        else if (name == "su2_trace") results.push_back(su2_trace_suite(opt));
        else throw Error(ErrorKind::InvalidParameter, "unknown suite '" + name + "'");
        py::list out;
        for (const auto& r : results) {
          py::dict d;
          d["name"] = r.name;
          d["pass"] = r.pass;
          d["samples"] = r.samples;
          d["failures"] = r.failures;
          py::dict metrics;
          for (const auto& [k, v] : r.metrics) metrics[py::str(k)] = v;
          d["metrics"] = metrics;
          out.append(d);
        }
        return out;
      },
      py::arg("name"), py::arg("seed") = 0, py::arg("count") = 100);
  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  });
}
