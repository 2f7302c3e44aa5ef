#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "geolrc/codeio.hpp"
#include "geolrc/config.hpp"
#include "geolrc/reproduce.hpp"

namespace py = pybind11;
using namespace geolrc;

namespace {

Config config_from(const std::string& source) {
  if (auto text = builtin_config_text(source)) return parse_config(*text, source);
  if (source.find('[') != std::string::npos) return parse_config(source);
  return load_config(source);
}

std::vector<std::vector<std::string>> literal_rows(const LinearCode& c, const Matrix& m) {
  std::vector<std::vector<std::string>> out(m.rows);
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) out[i].push_back(c.field->format(m.at(i, j)));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Locally recoverable codes from curves and surfaces";

  // Later registrations are tried first, so the base class goes first.
  auto base = py::register_exception<Error>(m, "GeolrcError", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<ConstructionError>(m, "ConstructionError", base.ptr());

  py::class_<Field, std::shared_ptr<Field>>(m, "Field")
      .def_property_readonly("p", &Field::characteristic)
      .def_property_readonly("m", &Field::degree)
      .def_property_readonly("q", &Field::order)
      .def_property_readonly("modulus", &Field::modulus)
      .def("parse", [](const Field& f, const std::string& s) { return f.parse_literal(s); })
      .def("format", &Field::format)
      .def("add", &Field::add)
      .def("sub", &Field::sub)
      .def("mul", &Field::mul)
      .def("div", &Field::div)
      .def("inv", &Field::inv)
      .def("pow", &Field::pow)
      .def("__repr__", &Field::name);

  m.def(
      "field",
      [](std::uint32_t p, std::uint32_t m_, const std::string& modulus) {
        auto f = make_field(p, m_, modulus.empty() ? std::vector<std::uint32_t>{} : parse_modulus(p, modulus));
        return std::const_pointer_cast<Field>(f);
      },
      py::arg("p"), py::arg("m") = 1, py::arg("modulus") = "");

  py::class_<LinearCode>(m, "Code")
      .def_property_readonly("field", [](const LinearCode& c) { return std::const_pointer_cast<Field>(c.field); })
      .def_property_readonly("family", [](const LinearCode& c) { return c.family; })
      .def_property_readonly("n", [](const LinearCode& c) { return c.n; })
      .def_property_readonly("k", [](const LinearCode& c) { return c.k; })
      .def_property_readonly("r", &LinearCode::locality)
      .def_property_readonly("raw_rows", &LinearCode::raw_rows)
      .def_property_readonly("kernel_dim", &LinearCode::kernel_dim)
      .def_property_readonly("designed_distance", &LinearCode::designed_distance)
      .def_property_readonly("column_labels", [](const LinearCode& c) { return c.column_labels; })
      .def_property_readonly("counts", [](const LinearCode& c) { return c.counts; })
      .def_property_readonly("generator", [](const LinearCode& c) { return literal_rows(c, c.generator); })
      .def_property_readonly("basis", [](const LinearCode& c) { return literal_rows(c, c.basis); })
      .def_property_readonly("partitions",
                             [](const LinearCode& c) {
                               std::vector<std::vector<std::vector<std::size_t>>> out;
                               for (const auto& p : c.partitions) {
                                 out.emplace_back();
                                 for (const auto& hs : p.sets) out.back().push_back(hs.columns);
                               }
                               return out;
                             })
      .def("encode",
           [](const LinearCode& c, const std::vector<std::string>& msg) {
             std::vector<Elem> v;
             for (const auto& s : msg) v.push_back(c.field->parse_literal(s));
             std::vector<std::string> out;
             for (Elem x : encode(c, v)) out.push_back(c.field->format(x));
             return out;
           })
      .def("is_codeword",
           [](const LinearCode& c, const std::vector<std::string>& word) {
             std::vector<Elem> v;
             for (const auto& s : word) v.push_back(c.field->parse_literal(s));
             return is_codeword(c, v);
           })
      .def("to_text", &code_to_string)
      .def("__repr__", [](const LinearCode& c) {
        return "<Code " + c.family + " n=" + std::to_string(c.n) + " k=" + std::to_string(c.k) + ">";
      });

  m.def(
      "build",
      [](const std::string& source, std::optional<int> t, bool force) {
        Config cfg = config_from(source);
        if (t) cfg.set("t", std::to_string(*t));
        return build_from_config(cfg, force);
      },
      py::arg("source"), py::arg("t") = py::none(), py::arg("force") = false,
      "Build from a built-in id, config text or config path.");

  m.def(
      "analyze_json",
      [](const LinearCode& c, std::uint64_t exact_budget, int low_weight) {
        py::gil_scoped_release release;
        return make_report(c, {exact_budget, low_weight}).to_json();
      },
      py::arg("code"), py::arg("exact_budget") = std::uint64_t{1} << 24, py::arg("low_weight") = 4);

  m.def(
      "recover",
      [](const LinearCode& c, const std::vector<std::optional<std::string>>& word, int partition) {
        Word w;
        for (const auto& s : word) {
          if (!s || *s == "?") w.push_back(std::nullopt);
          else w.push_back(c.field->parse_literal(*s));
        }
        if (w.size() != c.n) throw ConfigError("word length differs from n");
        std::vector<std::string> out;
        for (Elem x : recover_erasures(c, w, static_cast<std::size_t>(partition - 1))) out.push_back(c.field->format(x));
        return out;
      },
      py::arg("code"), py::arg("word"), py::arg("partition") = 1);

  m.def("code_from_text", &code_from_string);
  m.def("load_code", &load_code);
  m.def("save_code", &save_code);

  m.def("reproduce", [](const std::string& id) {
    std::vector<py::dict> out;
    for (const auto& r : reproduce(id)) {
      py::dict d;
      d["id"] = r.id;
      d["status"] = r.status;
      d["expected"] = r.expected;
      d["computed"] = r.computed;
      d["detail"] = r.detail;
      out.push_back(d);
    }
    return out;
  });
  m.def("builtin_ids", &builtin_config_ids);
  m.def("families", [] {
    std::vector<std::string> out;
    for (const auto& f : families()) out.push_back(f.tag);
    return out;
  });
}
