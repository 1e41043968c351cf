#include "polycontract/commands.hpp"
#include "polycontract/demos.hpp"
#include "polycontract/expr.hpp"
#include "polycontract/picard.hpp"
#include "polycontract/version.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;

namespace {

using namespace polycontract;

py::object json_to_py(const report::Json& j) {
    switch (j.type()) {
        case nlohmann::detail::value_t::object: {
            py::dict out;
            for (const auto& [key, value] : j.items()) out[py::str(key)] = json_to_py(value);
            return out;
        }
        case nlohmann::detail::value_t::array: {
            py::list out;
            for (const auto& value : j) out.append(json_to_py(value));
            return out;
        }
        case nlohmann::detail::value_t::string: return py::str(j.get<std::string>());
        case nlohmann::detail::value_t::boolean: return py::bool_(j.get<bool>());
        case nlohmann::detail::value_t::number_integer: return py::int_(j.get<long long>());
        case nlohmann::detail::value_t::number_unsigned:
            return py::int_(j.get<unsigned long long>());
        case nlohmann::detail::value_t::number_float: return py::float_(j.get<double>());
        default: return py::none();
    }
}

py::dict result_to_py(const CommandResult& result) {
    py::dict out = py::cast<py::dict>(json_to_py(result.machine));
    out["exit_code"] = result.exit_code;
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "exact certificate toolkit for polynomial-type contraction conditions";
    m.attr("__version__") = std::string(kToolVersion);

    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);

    m.def(
        "validate", [](const std::string& doc) { return result_to_py(cmd_validate(parse_document(doc))); },
        py::arg("document"), "Check metric axioms and document well-formedness.");

    m.def(
        "verify", [](const std::string& doc) { return result_to_py(cmd_verify(parse_document(doc))); },
        py::arg("document"), "Verify the document's contraction condition.");

    m.def(
        "iterate",
        [](const std::string& doc, const std::string& start, const std::string& tolerance,
           std::size_t max_iter, bool bound_check) {
            IterateOptions opts;
            opts.start = start;
            opts.tolerance = parse_rational(tolerance);
            opts.max_iter = max_iter;
            opts.bound_check = bound_check;
            return result_to_py(cmd_iterate(parse_document(doc), opts));
        },
        py::arg("document"), py::arg("start"), py::arg("tolerance") = "0",
        py::arg("max_iter") = 100000, py::arg("bound_check") = false,
        "Run Picard iteration from a start point.");

    m.def(
        "search",
        [](const std::string& doc, unsigned k, const std::string& mode,
           const std::string& lambda_tol) {
            SearchOptions opts;
            opts.k = k;
            if (mode == "constant") {
                opts.mode = FamilyMode::constant;
            } else if (mode == "full") {
                opts.mode = FamilyMode::full;
            } else {
                throw InputError("mode must be 'constant' or 'full'");
            }
            if (!lambda_tol.empty()) opts.lambda_tol = parse_rational(lambda_tol);
            return result_to_py(cmd_search(parse_document(doc), opts));
        },
        py::arg("document"), py::arg("k") = 1, py::arg("mode") = "full",
        py::arg("lambda_tol") = "", "Synthesize a certificate on a finite space.");

    m.def(
        "demo", [](const std::string& name) { return result_to_py(cmd_demo(name)); },
        py::arg("name"), "Run a built-in demo problem.");

    m.def(
        "demo_document",
        [](const std::string& name) { return std::string(demos::document(name)); },
        py::arg("name"), "The embedded problem document of a demo.");

    m.def("demo_names", [] {
        std::vector<std::string> out;
        for (std::string_view name : demos::names()) out.emplace_back(name);
        return out;
    });

    m.def(
        "eval_expr",
        [](const std::string& source, const std::string& x, const py::object& y) {
            Expression e = parse_expression(source);
            if (y.is_none()) return to_string(e.evaluate(parse_rational(x)));
            return to_string(e.evaluate(parse_rational(x), parse_rational(py::cast<std::string>(y))));
        },
        py::arg("source"), py::arg("x"), py::arg("y") = py::none(),
        "Exactly evaluate an expression at rational arguments (strings in, string out).");

    m.def(
        "a_priori_bound",
        [](std::size_t n, unsigned j, const std::string& lambda, const std::string& sigma) {
            BoundValue b = a_priori_bound(n, j, parse_rational(lambda), parse_rational(sigma));
            if (b.exact) return py::object(py::str(to_string(b.value)));
            return py::object(py::make_tuple(to_string(b.lower), to_string(b.upper)));
        },
        py::arg("n"), py::arg("j"), py::arg("lambda_"), py::arg("sigma"),
        "Geometric tail bound; exact string for j = 1, enclosure tuple for j >= 2.");
}
