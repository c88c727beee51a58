#include <memory>
#include <sstream>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "jacring/cli.hpp"
#include "jacring/duality.hpp"
#include "jacring/geom.hpp"
#include "jacring/specfile.hpp"

namespace py = pybind11;
using namespace jacring;

namespace {

class PyRing {
 public:
  explicit PyRing(const RingSpec& spec) {
    if (spec.field.is_rational())
      ring_ = std::make_shared<JacobianRing<Rationals>>(spec, Rationals());
    else
      ring_ = std::make_shared<JacobianRing<PrimeField>>(spec, PrimeField(spec.field.prime));
  }

  template <class F>
  decltype(auto) visit(F&& f) const {
    return std::visit([&](const auto& r) -> decltype(auto) { return f(*r); }, ring_);
  }

  const RingSpec& spec() const {
    return visit([](const auto& r) -> const RingSpec& { return r.spec(); });
  }

 private:
  std::variant<std::shared_ptr<JacobianRing<Rationals>>, std::shared_ptr<JacobianRing<PrimeField>>> ring_;
};

py::dict pairing_dict(const PyRing& ring, int p, int l) {
  return ring.visit([&](const auto& r) {
    const auto rep = [&] {
      py::gil_scoped_release release;
      return pairing(r, p, l);
    }();
    py::dict d;
    d["p"] = rep.p;
    d["l"] = rep.l;
    d["left_dim"] = rep.left_dim;
    d["right_dim"] = rep.right_dim;
    d["rank"] = rep.rank;
    d["perfect"] = rep.perfect();
    d["injective"] = rep.injective();
    d["case"] = to_string(rep.pairing_case);
    return d;
  });
}

py::list hodge_list(const PyRing& ring, int l) {
  const HodgeTable t = ring.visit([&](const auto& r) {
    py::gil_scoped_release release;
    return hodge_table(r, l);
  });
  py::list rows;
  for (const auto& e : t.rows) {
    py::dict d;
    d["q"] = e.q;
    d["form_degree"] = e.form_degree;
    d["piece"] = std::make_tuple(e.piece.q, e.piece.l);
    d["primitive"] = e.primitive;
    d["full"] = e.full;
    rows.append(d);
  }
  return rows;
}

py::dict torelli_dict(const PyRing& ring, int q) {
  const TorelliReport rep = ring.visit([&](const auto& r) {
    py::gil_scoped_release release;
    return torelli_check(r, q);
  });
  py::dict d;
  d["q"] = rep.q;
  d["predicate"] = rep.predicate;
  d["identified"] = rep.identified;
  d["surjective"] = rep.surjective;
  d["rank"] = rep.rank;
  d["target_dim"] = rep.target_dim;
  d["violation"] = rep.violation();
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact Jacobian rings of open complete intersections";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);

  m.attr("EXIT_OK") = kExitOk;
  m.attr("EXIT_INPUT") = kExitInput;
  m.attr("EXIT_VIOLATION") = kExitViolation;

  m.def(
      "run",
      [](const std::vector<std::string>& args, const std::string& stdin_text) {
        std::istringstream in(stdin_text);
        std::ostringstream out, err;
        int code;
        {
          py::gil_scoped_release release;
          code = run_cli(args, in, out, err);
        }
        return std::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), py::arg("stdin") = "", "Runs the command-line front end; returns (exit code, stdout, stderr).");

  m.def("presets", [] {
    std::vector<std::tuple<std::string, std::string, bool>> out;
    for (const auto& p : preset_catalog()) out.emplace_back(p.name, p.description, p.smooth);
    return out;
  });
  m.def(
      "preset_spec", [](const std::string& name, std::uint64_t seed) { return emit_spec(make_preset(name, seed)); },
      py::arg("name"), py::arg("seed") = 0);
  m.def("canonical_spec", [](const std::string& text) { return emit_spec(parse_spec(text)); });
  m.def("spec_hash", [](const std::string& text) { return spec_hash(parse_spec(text)); });

  py::class_<PyRing>(m, "Ring")
      .def(py::init([](const std::string& text) { return PyRing(parse_spec(text)); }), py::arg("spec"))
      .def_static(
          "preset", [](const std::string& name, std::uint64_t seed) { return PyRing(make_preset(name, seed)); },
          py::arg("name"), py::arg("seed") = 0)
      .def_property_readonly("n", [](const PyRing& r) { return r.spec().n; })
      .def_property_readonly("r", [](const PyRing& r) { return r.spec().r(); })
      .def_property_readonly("s", [](const PyRing& r) { return r.spec().s(); })
      .def_property_readonly("field", [](const PyRing& r) { return r.spec().field.to_string(); })
      .def_property_readonly("spec", [](const PyRing& r) { return emit_spec(r.spec()); })
      .def_property_readonly("socle_degree",
                             [](const PyRing& r) { return std::make_tuple(r.spec().dim_x(), r.spec().socle_twist()); })
      .def(
          "dim",
          [](const PyRing& r, int q, int l) {
            py::gil_scoped_release release;
            return r.visit([&](const auto& ring) { return ring.dim(q, l); });
          },
          py::arg("q"), py::arg("l"))
      .def(
          "basis",
          [](const PyRing& r, int q, int l) {
            return r.visit([&](const auto& ring) {
              const auto piece = ring.piece(q, l);
              std::vector<std::string> out;
              for (std::size_t i = 0; i < piece->dim(); ++i) out.push_back(to_string(piece->standard_monomial(i)));
              return out;
            });
          },
          py::arg("q"), py::arg("l"))
      .def("transversal",
           [](const PyRing& r) {
             py::gil_scoped_release release;
             return r.visit([](const auto& ring) { return ring.transversality().pass; });
           })
      .def("pairing", &pairing_dict, py::arg("p"), py::arg("l"))
      .def("hodge", &hodge_list, py::arg("l") = 0)
      .def("torelli", &torelli_dict, py::arg("q"))
      .def(
          "verify",
          [](const PyRing& r, std::uint64_t seed) {
            std::vector<VerifyCheck> checks;
            {
              py::gil_scoped_release release;
              checks = verify_suite(r.spec(), r.spec().field, seed);
            }
            std::vector<std::tuple<std::string, bool, std::string>> out;
            for (const auto& c : checks) out.emplace_back(c.name, c.pass, c.detail);
            return out;
          },
          py::arg("seed") = 0);
}
