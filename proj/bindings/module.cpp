#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nilsol/actions.hpp"
#include "nilsol/algebra.hpp"
#include "nilsol/catalogue.hpp"
#include "nilsol/flow.hpp"
#include "nilsol/io.hpp"
#include "nilsol/moment.hpp"
#include "nilsol/soliton.hpp"

namespace py = pybind11;
using namespace nilsol;

namespace {

StructureTuple make_tuple(const std::vector<Eigen::MatrixXd>& matrices,
                          const std::string& label) {
  return StructureTuple(matrices, label);
}

}  // namespace

PYBIND11_MODULE(_nilsol, m) {
  m.doc() = "Moment-map certification of Ricci Yang-Mills solitons on 2-step "
            "nilpotent Lie groups";

  py::register_exception<StructuralError>(m, "StructuralError");
  py::register_exception<InvalidElementError>(m, "InvalidElementError");
  py::register_exception<DegenerateInputError>(m, "DegenerateInputError");
  py::register_exception<ParameterError>(m, "ParameterError");
  py::register_exception<SchemaError>(m, "SchemaError");

  py::class_<StructureTuple>(m, "StructureTuple")
      .def(py::init(&make_tuple), py::arg("matrices"), py::arg("label") = std::string())
      .def_static("zero", &StructureTuple::zero, py::arg("q"), py::arg("p"))
      .def_property_readonly("q", &StructureTuple::q)
      .def_property_readonly("p", &StructureTuple::p)
      .def_property_readonly("dim", &StructureTuple::dim)
      .def_property_readonly("label", &StructureTuple::label)
      .def("matrix", &StructureTuple::matrix, py::arg("k"))
      .def("matrices", &StructureTuple::matrices)
      .def("norm", &StructureTuple::norm)
      .def("squared_norm", &StructureTuple::squared_norm)
      .def("skewness_defect", &StructureTuple::skewness_defect)
      .def("with_label", &StructureTuple::with_label, py::arg("label"))
      .def("__add__", [](const StructureTuple& a, const StructureTuple& b) { return a + b; })
      .def("__sub__", [](const StructureTuple& a, const StructureTuple& b) { return a - b; })
      .def("__mul__", [](const StructureTuple& a, double c) { return a * c; })
      .def("__rmul__", [](const StructureTuple& a, double c) { return c * a; })
      .def("__repr__", [](const StructureTuple& t) {
        return "StructureTuple(p=" + std::to_string(t.p()) + ", q=" + std::to_string(t.q()) +
               (t.label().empty() ? "" : ", label='" + t.label() + "'") + ")";
      });

  py::class_<ValidationReport>(m, "ValidationReport")
      .def_readonly("is_skew", &ValidationReport::is_skew)
      .def_readonly("effective_p", &ValidationReport::effective_p)
      .def_readonly("is_regular", &ValidationReport::is_regular)
      .def_readonly("messages", &ValidationReport::messages);

  m.def("validate", &validate, py::arg("tuple"), py::arg("skew_tol") = kSkewTol,
        py::arg("rank_tol") = kRankTol);
  m.def("bracket", &bracket, py::arg("tuple"), py::arg("u"), py::arg("v"));
  m.def("algebra_type", &algebra_type, py::arg("tuple"));

  m.def("act_glq", &act_glq, py::arg("g"), py::arg("tuple"));
  m.def("act_glp", &act_glp, py::arg("h"), py::arg("tuple"));
  m.def(
      "act_lie",
      [](const std::optional<Eigen::MatrixXd>& X, const std::optional<Eigen::MatrixXd>& Y,
         const StructureTuple& c) { return act_lie({X, Y}, c); },
      py::arg("X"), py::arg("Y"), py::arg("tuple"));

  py::class_<Fingerprint>(m, "Fingerprint")
      .def_readonly("p", &Fingerprint::p)
      .def_readonly("q", &Fingerprint::q)
      .def_readonly("glq_spectrum", &Fingerprint::glq_spectrum)
      .def_readonly("glp_spectrum", &Fingerprint::glp_spectrum)
      .def_readonly("norm", &Fingerprint::norm);

  m.def("fingerprint", &fingerprint, py::arg("tuple"));
  m.def("fingerprint_distance", &fingerprint_distance, py::arg("a"), py::arg("b"));
  m.def("fingerprints_equal", &fingerprints_equal, py::arg("a"), py::arg("b"),
        py::arg("tol") = kFingerprintTol);

  py::enum_<Group>(m, "Group")
      .value("GLq", Group::GLq)
      .value("SLq", Group::SLq)
      .value("Full", Group::Full);

  m.def("inner", &inner, py::arg("c"), py::arg("d"));
  m.def("moment_glq", &moment_glq, py::arg("tuple"));
  m.def("moment_glp", &moment_glp, py::arg("tuple"));
  m.def("moment_slq", &moment_slq, py::arg("tuple"));
  py::class_<MomentValue>(m, "MomentValue")
      .def_readonly("glq", &MomentValue::glq)
      .def_readonly("glp", &MomentValue::glp)
      .def_readonly("slq", &MomentValue::slq);
  m.def("moment_full", &moment_full, py::arg("tuple"));
  m.def("moment_action", &moment_action, py::arg("tuple"), py::arg("group"));
  m.def("moment_norm", &moment_norm, py::arg("tuple"), py::arg("group"));
  m.attr("CURVATURE_SQUARE_SCALE") = kCurvatureSquareScale;

  py::enum_<CertMode>(m, "CertMode")
      .value("Rym", CertMode::Rym)
      .value("Ricci", CertMode::Ricci)
      .value("Gfi", CertMode::Gfi)
      .value("RicciGfi", CertMode::RicciGfi);

  py::class_<Certificate>(m, "Certificate")
      .def_readonly("mode", &Certificate::mode)
      .def_readonly("verdict", &Certificate::verdict)
      .def_readonly("r", &Certificate::r)
      .def_readonly("residual", &Certificate::residual)
      .def_readonly("tol", &Certificate::tol)
      .def_readonly("lambda_", &Certificate::lambda)
      .def_readonly("derivation", &Certificate::derivation)
      .def_readonly("s", &Certificate::s)
      .def("__repr__", [](const Certificate& c) {
        return std::string("Certificate(") + to_string(c.mode) +
               ", verdict=" + (c.verdict ? "True" : "False") +
               ", residual=" + std::to_string(c.residual) + ")";
      });

  m.def("best_r", &best_r, py::arg("tuple"), py::arg("group"));
  m.def("certify_rym", &certify_rym, py::arg("tuple"), py::arg("tol") = kCertifyTol);
  m.def("certify_ricci", &certify_ricci, py::arg("tuple"), py::arg("tol") = kCertifyTol);
  m.def("certify_gfi", &certify_gfi, py::arg("tuple"), py::arg("tol") = kCertifyTol);
  m.def("certify_ricci_gfi", &certify_ricci_gfi, py::arg("tuple"),
        py::arg("tol") = kCertifyTol);

  py::enum_<FlowOutcome>(m, "FlowOutcome")
      .value("ConvergedMinimal", FlowOutcome::ConvergedMinimal)
      .value("ConvergedDistinguished", FlowOutcome::ConvergedDistinguished)
      .value("Degenerated", FlowOutcome::Degenerated)
      .value("StepLimit", FlowOutcome::StepLimit);

  py::enum_<LimitClass>(m, "LimitClass")
      .value("Minimal", LimitClass::Minimal)
      .value("Distinguished", LimitClass::Distinguished)
      .value("Degenerated", LimitClass::Degenerated)
      .value("Inconclusive", LimitClass::Inconclusive);

  py::class_<FlowConfig>(m, "FlowConfig")
      .def(py::init<>())
      .def_readwrite("group", &FlowConfig::group)
      .def_readwrite("step", &FlowConfig::step)
      .def_readwrite("max_steps", &FlowConfig::max_steps)
      .def_readwrite("conv_tol", &FlowConfig::conv_tol)
      .def_readwrite("projected", &FlowConfig::projected)
      .def_readwrite("blowdown_tol", &FlowConfig::blowdown_tol)
      .def_readwrite("max_tuple_samples", &FlowConfig::max_tuple_samples);

  py::class_<FlowSample>(m, "FlowSample")
      .def_readonly("step", &FlowSample::step)
      .def_readonly("norm_c", &FlowSample::norm_c)
      .def_readonly("norm_moment", &FlowSample::norm_moment)
      .def_readonly("residual", &FlowSample::residual);

  py::class_<FlowTrace>(m, "FlowTrace")
      .def_readonly("outcome", &FlowTrace::outcome)
      .def_readonly("steps_taken", &FlowTrace::steps_taken)
      .def_readonly("initial_norm", &FlowTrace::initial_norm)
      .def_readonly("samples", &FlowTrace::samples)
      .def_readonly("tuple_samples", &FlowTrace::tuple_samples)
      .def_readonly("final_state", &FlowTrace::final_state);

  py::class_<LimitReport>(m, "LimitReport")
      .def_readonly("limit", &LimitReport::limit)
      .def_readonly("minimality_residual", &LimitReport::minimality_residual)
      .def_readonly("distinguished_residual", &LimitReport::distinguished_residual)
      .def_readonly("scalar_moment_residual", &LimitReport::scalar_moment_residual)
      .def_readonly("rank_preserved", &LimitReport::rank_preserved)
      .def_readonly("effective_p_start", &LimitReport::effective_p_start)
      .def_readonly("effective_p_end", &LimitReport::effective_p_end);

  m.def("gradient", &gradient, py::arg("tuple"), py::arg("group"));
  m.def("projected_gradient", &projected_gradient, py::arg("tuple"), py::arg("group"));
  m.def("integrate", &integrate, py::arg("tuple"), py::arg("config") = FlowConfig{});
  m.def("detect_limit", &detect_limit, py::arg("trace"), py::arg("tol") = 1e-8);
  m.def(
      "trace_csv",
      [](const FlowTrace& trace) {
        std::ostringstream out;
        write_trace_csv(trace, out);
        return out.str();
      },
      py::arg("trace"));

  m.def("basis_matrix", &basis_matrix, py::arg("name"));
  m.def("concat", &concat, py::arg("a"), py::arg("b"));
  m.def(
      "build_family",
      [](const std::string& name, const std::map<std::string, double>& parameters) {
        return build({name, parameters});
      },
      py::arg("name"), py::arg("parameters") = std::map<std::string, double>{});

  py::class_<TuneResult>(m, "TuneResult")
      .def_readonly("value", &TuneResult::value)
      .def_readonly("residual", &TuneResult::residual)
      .def_readonly("evaluations", &TuneResult::evaluations);

  m.def(
      "tune_parameter",
      [](const std::string& name, const std::map<std::string, double>& parameters,
         const std::string& free_name, double lo, double hi, double tol) {
        return tune_parameter({name, parameters}, free_name, lo, hi, tol);
      },
      py::arg("name"), py::arg("parameters"), py::arg("free"), py::arg("lo"), py::arg("hi"),
      py::arg("tol") = 1e-9);

  m.def("serialize_tuple", &serialize_tuple, py::arg("tuple"),
        py::arg("provenance") = std::string());
  m.def("parse_tuple", &parse_tuple, py::arg("text"));
  m.def("load_tuple", &load_tuple, py::arg("path"));
  m.def("save_tuple", &save_tuple, py::arg("tuple"), py::arg("path"),
        py::arg("provenance") = std::string());
}
