// Python bindings: the command surface of the CLI, JSON-text in / out.

#include <pybind11/pybind11.h>

#include "skly/runner.hpp"

namespace py = pybind11;

namespace {

std::string run_checked(const std::string& command, const std::string& config_text) {
    try {
        return skly::run_command_text(command, config_text);
    } catch (const skly::ConfigError& e) {
        throw py::value_error(e.what());
    } catch (const skly::GenericityError& e) {
        throw std::runtime_error(std::string("genericity violation: ") + e.what());
    }
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Sklyanin algebras, Z-algebra windows and birational certificates";
    m.attr("__version__") = skly::kVersion;
    m.def("run_command", &run_checked, py::arg("command"), py::arg("config_json"),
          "Run a command (construct, hilbert, transform quadric-to-plane, "
          "transform cremona, witness, sweep) on a JSON config string; "
          "returns the JSON report.");
}
