#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pcris/pipeline.hpp"

namespace py = pybind11;
using namespace pcris;

namespace {

std::string run_text(const std::string& text, bool toml) { return run_pipeline(parse_config_text(text, toml)).dump(); }

std::string run_file(const std::string& path) { return run_pipeline(load_config(path)).dump(); }

std::pair<int, int> preflight(const std::string& text, bool toml) {
  auto p = preflight_precision(parse_config_text(text, toml));
  return {p.M, p.N};
}

std::string suite(std::uint64_t seed, int trials) { return oracle_suite(SuiteOptions{seed, trials, false}).to_json().dump(); }

std::string characterize(const std::vector<i64>& v, const std::vector<i64>& w, i64 p, bool odd) {
  if (v.size() != w.size()) throw Error(ErrKind::InvalidArgument, "v and w differ in length");
  return char_desc_json(character_output(VW{v, w}, p, (int)v.size(), odd)).dump();
}

}  // namespace

PYBIND11_MODULE(_pcris, m) {
  m.doc() = "Mod-p reductions of two-dimensional crystalline representations";
  static py::handle err = py::exception<Error>(m, "PcrisError").release();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(err, (std::string(e.kind_str()) + ": " + e.what()).c_str());
    }
  });
  m.def("run_text", &run_text, py::arg("text"), py::arg("toml") = false, "run a job given as JSON or TOML text");
  m.def("run_file", &run_file, py::arg("path"));
  m.def("preflight", &preflight, py::arg("text"), py::arg("toml") = false);
  m.def("oracle_suite", &suite, py::arg("seed") = 1, py::arg("trials") = 100);
  m.def("characterize", &characterize, py::arg("v"), py::arg("w"), py::arg("p"), py::arg("odd"));
  m.def("gain_step", &gain_step, py::arg("h"), py::arg("k"), py::arg("p"));
  m.def("budget", [](const std::vector<int>& k, i64 p) {
    auto b = compute_budget(WeightData{k, std::vector<int>(k.size(), 0)}, p);
    return std::make_pair(b.c, b.cmax);
  }, py::arg("k"), py::arg("p"));
}
