#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nsg/nsg.hpp"

namespace py = pybind11;
using namespace nsg;

namespace {

using CArray = py::array_t<Complex, py::array::c_style | py::array::forcecast>;

CVec to_cvec(const CArray& a) {
  if (a.ndim() != 1) throw DimensionError("expected a one-dimensional array");
  return CVec(a.data(), a.data() + a.size());
}

CArray to_array(const CVec& v) {
  CArray out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

py::list to_list(const Coefficients& c) {
  py::list out;
  for (const auto& row : c) out.append(to_array(row));
  return out;
}

Coefficients to_coefficients(const std::vector<CArray>& rows) {
  Coefficients c;
  for (const auto& r : rows) c.push_back(to_cvec(r));
  return c;
}

CArray dense_array(const DenseMatrix& D) {
  CArray out({D.rows(), D.cols()});
  auto v = out.mutable_unchecked<2>();
  for (Index r = 0; r < D.rows(); ++r) {
    for (Index c = 0; c < D.cols(); ++c) v(r, c) = D(r, c);
  }
  return out;
}

/// Reports cross the boundary as JSON text; the Python side decodes them.
template <typename Report>
std::string dump(const Report& r) {
  return io::to_json(r).dump();
}

BoundsMethod parse_bounds(const std::string& s) {
  if (s == "oracle") return BoundsMethod::oracle;
  if (s == "power") return BoundsMethod::power_iteration;
  if (s == "auto") return BoundsMethod::automatic;
  throw ParameterError("bounds must be 'auto', 'oracle' or 'power'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Nonstationary Gabor frames on Z_L";

  auto base = py::register_exception<Error>(m, "NsgError", PyExc_RuntimeError);
  py::register_exception<ParameterError>(m, "ParameterError", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<DimensionError>(m, "DimensionError", base.ptr());
  py::register_exception<PairingError>(m, "PairingError", base.ptr());
  py::register_exception<CompletenessError>(m, "CompletenessError", base.ptr());
  py::register_exception<NotAFrameError>(m, "NotAFrameError", base.ptr());
  py::register_exception<ConvergenceError>(m, "ConvergenceError", base.ptr());
  py::register_exception<ExistenceError>(m, "ExistenceError", base.ptr());
  py::register_exception<RegimeError>(m, "RegimeError", base.ptr());
  py::register_exception<LatticeError>(m, "LatticeError", base.ptr());

  py::class_<NsgSystem>(m, "System")
      .def(py::init([](Index L, const std::vector<std::tuple<Index, Index, CArray>>& windows,
                       bool require_coverage) {
             std::vector<Window> ws;
             for (const auto& [offset, channels, samples] : windows) {
               ws.push_back({offset, channels, to_cvec(samples)});
             }
             BuildOptions o;
             o.require_coverage = require_coverage;
             return build_system(L, std::move(ws), o);
           }),
           py::arg("L"), py::arg("windows"), py::arg("require_coverage") = true,
           "Windows are (offset, channels, samples) triples.")
      .def_static("gabor", [](const CArray& g, Index c, Index a, Index M, Index L) {
            return gabor_system(to_cvec(g), c, a, M, L);
          }, py::arg("g"), py::arg("c"), py::arg("a"), py::arg("M"), py::arg("L"))
      .def_static("from_json", [](const std::string& text) {
            io::json j;
            try {
              j = io::json::parse(text);
            } catch (const io::json::parse_error& e) {
              throw ParseError(e.what());
            }
            return io::parse_system(j);
          })
      .def_static("read", [](const std::string& path) { return io::read_system(path); })
      .def("to_json", [](const NsgSystem& s) { return io::system_to_json(s).dump(); })
      .def_property_readonly("L", &NsgSystem::L)
      .def("__len__", &NsgSystem::size)
      .def_property_readonly("total_channels", &NsgSystem::total_channels)
      .def("c", &NsgSystem::c)
      .def("d", &NsgSystem::d)
      .def("M", &NsgSystem::M)
      .def("window", [](const NsgSystem& s, Index n) { return to_array(s.window(n).samples); })
      .def("dense_window", [](const NsgSystem& s, Index n) { return to_array(s.dense_window(n)); })
      .def("element", [](const NsgSystem& s, Index n, Index m) { return to_array(s.element(n, m)); });

  py::class_<WalnutOperator>(m, "WalnutOperator")
      .def_property_readonly("L", &WalnutOperator::L)
      .def("offsets", &WalnutOperator::offsets)
      .def("band", [](const WalnutOperator& W, Index x) {
            const CVec* b = W.find(x);
            return b ? to_array(*b) : to_array(CVec(W.L(), Complex(0.0)));
          })
      .def("apply", [](const WalnutOperator& W, const CArray& f) {
            const CVec v = to_cvec(f);
            if (static_cast<Index>(v.size()) != W.L()) throw DimensionError("signal length differs from L");
            return to_array(W.apply(v));
          })
      .def("to_dense", [](const WalnutOperator& W) { return dense_array(to_dense(W)); });

  m.def("window", [](const std::string& name, Index length) {
    return to_array(windows::generate(name, length));
  }, py::arg("name"), py::arg("length"));

  m.def("classify", [](const NsgSystem& s) { return dump(classify(s)); });
  m.def("verify_interval_lemma", [](const NsgSystem& s) { return dump(verify_interval_lemma(s)); });
  m.def("painless_diagonal", [](const NsgSystem& s) { return painless_diagonal(s); });

  m.def("analyze", [](const NsgSystem& s, const CArray& f) { return to_list(analyze(s, to_cvec(f))); });
  m.def("synthesize", [](const NsgSystem& s, const std::vector<CArray>& c) {
    return to_array(synthesize(s, to_coefficients(c)));
  });
  m.def("frame_apply", [](const NsgSystem& G, const NsgSystem& H, const CArray& f) {
    return to_array(frame_apply(G, H, to_cvec(f)));
  });

  m.def("assemble", &assemble, py::arg("G"), py::arg("H"));
  m.def("frame_bounds", [](const NsgSystem& s, const std::string& method) {
    const FrameBounds fb = frame_bounds(s, parse_bounds(method));
    return std::make_pair(fb.A, fb.B);
  }, py::arg("system"), py::arg("method") = "auto");
  m.def("neumann_inverse", [](const WalnutOperator& S, double A, double B, double tol, Index max_terms) {
    NeumannOptions o;
    o.tol = tol;
    o.max_terms = max_terms;
    NeumannResult r = neumann_inverse(S, A, B, o);
    return std::make_pair(std::move(r.inverse), dump(r.report));
  }, py::arg("S"), py::arg("A"), py::arg("B"), py::arg("tol") = 1e-12, py::arg("max_terms") = 100000);
  m.def("structure_report", [](const WalnutOperator& Sinv, const NsgSystem& s, double A, double B) {
    return dump(structure_report(Sinv, s, A, B));
  });

  m.def("duality_defect", [](const NsgSystem& G, const NsgSystem& H) { return dump(duality_defect(G, H)); });
  m.def("short_support_dual", [](const NsgSystem& s) {
    ShortSupportDual r = construct_short_support_dual(s);
    return std::make_pair(std::move(r.dual), dump(r.defect));
  });
  m.def("short_support_existence", [](const NsgSystem& s) { return dump(short_support_existence(s)); });
  m.def("canonical_dual", [](const NsgSystem& s, const WalnutOperator& Sinv) {
    return canonical_dual_system(s, canonical_dual_windows(s, Sinv));
  });

  m.def("dense_synthesis", [](const NsgSystem& s) { return dense_array(dense_synthesis(s)); });
  m.def("dense_frame_operator", [](const NsgSystem& s) { return dense_array(dense_frame_operator(s)); });
}
