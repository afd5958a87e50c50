#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "dhtsp/solver.hpp"

namespace py = pybind11;

namespace {

using dhtsp::Instance;

dhtsp::CostMatrix matrix_from_rows(const std::vector<std::vector<double>>& rows) {
  dhtsp::CostMatrix m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) throw dhtsp::StructureError("cost matrix must be square");
    for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

std::vector<std::vector<double>> rows_of(const dhtsp::CostMatrix& m) {
  std::vector<std::vector<double>> out(m.dim(), std::vector<double>(m.dim()));
  for (std::size_t i = 0; i < m.dim(); ++i) {
    for (std::size_t j = 0; j < m.dim(); ++j) out[i][j] = m(i, j);
  }
  return out;
}

Instance make_instance(const std::vector<std::vector<double>>& cost1, const std::vector<std::vector<double>>& cost2) {
  if (cost1.empty() || cost1.size() != cost2.size()) {
    throw dhtsp::StructureError("cost1 and cost2 must both be (n+1)x(n+1)");
  }
  Instance inst;
  inst.n_targets = cost1.size() - 1;
  inst.cost1 = matrix_from_rows(cost1);
  inst.cost2 = matrix_from_rows(cost2);
  return inst;
}

// Result documents are handed over as JSON text; the Python wrapper turns
// them into dicts.
std::pair<std::string, std::vector<std::string>> solve_json(const Instance& inst, bool exact, bool certificate,
                                                            bool check_invariants, bool full_scan) {
  dhtsp::SolveOptions opts;
  opts.certificate = certificate;
  opts.growth.check_invariants = check_invariants;
  opts.growth.scan = full_scan ? dhtsp::ScanMode::Full : dhtsp::ScanMode::Incremental;
  auto lines = [](const auto& events) {
    std::vector<std::string> out;
    for (const auto& ev : events) out.push_back(dhtsp::trace_line(ev));
    return out;
  };
  py::gil_scoped_release release;
  if (exact) {
    const auto r = dhtsp::solve<dhtsp::Rational>(inst, opts);
    return {dhtsp::to_json(r).dump(), lines(r.events)};
  }
  const auto r = dhtsp::solve<double>(inst, opts);
  return {dhtsp::to_json(r).dump(), lines(r.events)};
}

std::string exact_json(const Instance& inst, bool exact) {
  py::gil_scoped_release release;
  if (exact) return dhtsp::to_json(dhtsp::solve_exact<dhtsp::Rational>(inst)).dump();
  return dhtsp::to_json(dhtsp::solve_exact<double>(inst)).dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Two-depot heterogeneous TSP: primal-dual 2-approximation with dual certificates";

  py::register_exception<dhtsp::StructureError>(m, "StructureError", PyExc_ValueError);
  py::register_exception<dhtsp::ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<dhtsp::SizeGuardError>(m, "SizeGuardError", PyExc_ValueError);
  py::register_exception<dhtsp::InvariantViolation>(m, "InvariantViolation", PyExc_RuntimeError);

  py::class_<Instance>(m, "Instance")
      .def(py::init(&make_instance), py::arg("cost1"), py::arg("cost2"))
      .def_readonly("n_targets", &Instance::n_targets)
      .def_property_readonly("cost1", [](const Instance& i) { return rows_of(i.cost1); })
      .def_property_readonly("cost2", [](const Instance& i) { return rows_of(i.cost2); })
      .def("to_json", [](const Instance& i) { return dhtsp::to_json(i).dump(); })
      .def_static("from_json", [](const std::string& text) {
        nlohmann::json doc;
        try {
          doc = nlohmann::json::parse(text);
        } catch (const nlohmann::json::parse_error& e) {
          throw dhtsp::ParseError(e.what());
        }
        return dhtsp::instance_from_json(doc);
      })
      .def_static("read", [](const std::filesystem::path& p) { return dhtsp::read_json(p); })
      .def("write", [](const Instance& i, const std::filesystem::path& p) { dhtsp::write_json(i, p); })
      .def("__eq__", [](const Instance& a, const Instance& b) { return a == b; })
      .def("__repr__", [](const Instance& i) { return "<Instance n_targets=" + std::to_string(i.n_targets) + ">"; });

  py::class_<dhtsp::Violation>(m, "Violation")
      .def_property_readonly("rule", [](const dhtsp::Violation& v) { return std::string(dhtsp::rule_name(v.rule)); })
      .def_readonly("indices", &dhtsp::Violation::indices)
      .def_readonly("message", &dhtsp::Violation::message);

  py::class_<dhtsp::ValidationReport>(m, "ValidationReport")
      .def_property_readonly("ok", &dhtsp::ValidationReport::ok)
      .def_readonly("violations", &dhtsp::ValidationReport::violations)
      .def_readonly("truncated", &dhtsp::ValidationReport::truncated)
      .def("summary", &dhtsp::ValidationReport::summary);

  m.def("validate", [](const Instance& i) { return dhtsp::validate(i); }, py::arg("instance"));
  m.def("generate", &dhtsp::generate, py::arg("n"), py::arg("alpha"), py::arg("seed"), py::arg("box") = 100.0);
  m.def("_solve", &solve_json, py::arg("instance"), py::arg("exact"), py::arg("certificate"),
        py::arg("check_invariants"), py::arg("full_scan"));
  m.def("_solve_exact", &exact_json, py::arg("instance"), py::arg("exact"));
  m.attr("ORACLE_MAX_TARGETS") = dhtsp::kOracleMaxTargets;
}
