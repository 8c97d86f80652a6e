#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wesq/json_io.hpp"

namespace py = pybind11;
using namespace wesq;

namespace {

// Python ints are arbitrary precision; route them through decimal strings.
Int int_from_py(const py::int_& v) {
    return Int(py::str(static_cast<const py::object&>(v)).cast<std::string>());
}
py::int_ int_to_py(const Int& v) { return py::int_(py::str(v.str())); }

IntMatrix matrix_from_py(const py::object& obj) {
    if (py::isinstance<IntMatrix>(obj)) return obj.cast<IntMatrix>();
    auto rows = obj.cast<std::vector<std::vector<py::int_>>>();
    std::size_t cols = rows.empty() ? 0 : rows[0].size();
    IntMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw ValidationError("ragged matrix rows");
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = int_from_py(rows[i][j]);
    }
    return m;
}

py::list matrix_to_py(const IntMatrix& m) {
    py::list rows;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        py::list row;
        for (std::size_t j = 0; j < m.cols(); ++j) row.append(int_to_py(m(i, j)));
        rows.append(std::move(row));
    }
    return rows;
}

py::list vec_to_py(const IntVec& v) {
    py::list out;
    for (const auto& x : v) out.append(int_to_py(x));
    return out;
}

IntVec vec_from_py(const py::object& obj) {
    IntVec out;
    for (const auto& item : obj.cast<py::sequence>())
        out.push_back(int_from_py(item.cast<py::int_>()));
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact invariants of the Whitehead certain exact sequence";

    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<IntegrityError>(m, "IntegrityError", PyExc_RuntimeError);

    py::class_<IntMatrix>(m, "IntMatrix")
        .def(py::init([](const py::object& rows) { return matrix_from_py(rows); }),
             py::arg("rows"))
        .def(py::init([](std::size_t rows, std::size_t cols) { return IntMatrix(rows, cols); }),
             py::arg("rows"), py::arg("cols"))
        .def_property_readonly("rows", &IntMatrix::rows)
        .def_property_readonly("cols", &IntMatrix::cols)
        .def("tolist", &matrix_to_py)
        .def("__eq__", [](const IntMatrix& a, const IntMatrix& b) { return a == b; })
        .def("__repr__", [](const IntMatrix& m) { return "IntMatrix(" + m.to_string() + ")"; });

    m.def("smith_normal_form", [](const py::object& obj) {
        SnfResult s = smith_normal_form(matrix_from_py(obj));
        return py::make_tuple(s.u, s.d, s.v);
    });
    m.def("kernel_basis",
          [](const py::object& obj) { return kernel_basis(matrix_from_py(obj)); });
    m.def("solve", [](const py::object& mat, const py::object& rhs) -> py::object {
        auto x = solve(matrix_from_py(mat), vec_from_py(rhs));
        if (!x) return py::none();
        return vec_to_py(*x);
    });
    m.def("cokernel_invariants", [](const py::object& obj) {
        CokernelInvariants inv = cokernel_invariants(matrix_from_py(obj));
        return py::make_tuple(inv.free_rank, vec_to_py(inv.torsion));
    });

    py::class_<FgAbGroup>(m, "FgAbGroup")
        .def(py::init([](const py::object& torsion, std::size_t rank) {
                 std::vector<Int> t;
                 for (const auto& d : torsion.cast<py::sequence>())
                     t.push_back(int_from_py(d.cast<py::int_>()));
                 return FgAbGroup(std::move(t), rank);
             }),
             py::arg("torsion") = py::list(), py::arg("rank") = 0)
        .def_property_readonly("rank", &FgAbGroup::rank)
        .def_property_readonly("torsion",
                               [](const FgAbGroup& g) { return vec_to_py(g.torsion()); })
        .def("is_trivial", &FgAbGroup::is_trivial)
        .def("is_finite", &FgAbGroup::is_finite)
        .def("__eq__", [](const FgAbGroup& a, const FgAbGroup& b) { return a == b; })
        .def("__repr__", [](const FgAbGroup& g) { return g.to_string(); });

    m.def("cyclic", [](const py::int_& n) { return FgAbGroup::cyclic(int_from_py(n)); });
    m.def("free_group", &FgAbGroup::free_group);

    py::class_<Hom>(m, "Hom")
        .def(py::init([](const FgAbGroup& dom, const FgAbGroup& cod, const py::object& matrix) {
                 return Hom(dom, cod, matrix_from_py(matrix));
             }),
             py::arg("domain"), py::arg("codomain"), py::arg("matrix"))
        .def_property_readonly("domain", &Hom::domain)
        .def_property_readonly("codomain", &Hom::codomain)
        .def_property_readonly("matrix", [](const Hom& h) { return matrix_to_py(h.matrix()); })
        .def("apply",
             [](const Hom& h, const py::object& x) { return vec_to_py(h.apply(vec_from_py(x))); })
        .def("__eq__", [](const Hom& a, const Hom& b) { return a == b; })
        .def("__repr__", [](const Hom& h) {
            return "Hom(" + h.domain().to_string() + " -> " + h.codomain().to_string() + ")";
        });

    m.def("identity_hom", &Hom::identity);
    m.def("zero_hom", &Hom::zero);
    m.def("compose", &compose);
    m.def("from_presentation", [](std::size_t generators, const py::object& relations) {
        Presentation p = from_presentation(generators, matrix_from_py(relations));
        return py::make_tuple(p.group, p.to_canonical, p.lift);
    });
    m.def("direct_sum", [](const FgAbGroup& a, const FgAbGroup& b) {
        DirectSum s = direct_sum(a, b);
        return py::make_tuple(s.group, s.inj_a, s.inj_b, s.proj_a, s.proj_b);
    });
    m.def("kernel", [](const Hom& f) {
        Subobject s = kernel(f);
        return py::make_tuple(s.group, s.incl);
    });
    m.def("image", [](const Hom& f) {
        Subobject s = image(f);
        return py::make_tuple(s.group, s.incl);
    });
    m.def("cokernel", [](const Hom& f) {
        Quotient q = cokernel(f);
        return py::make_tuple(q.group, q.proj);
    });
    m.def("is_isomorphism", &is_isomorphism);
    m.def("are_isomorphic", &are_isomorphic);
    m.def(
        "enumerate_homs",
        [](const FgAbGroup& a, const FgAbGroup& b, const py::int_& bound) {
            HomStream hs(a, b, int_from_py(bound));
            py::list out;
            while (auto h = hs.next()) out.append(*h);
            return out;
        },
        py::arg("domain"), py::arg("codomain"), py::arg("free_bound") = 3);
    m.def(
        "enumerate_isos",
        [](const FgAbGroup& a, const FgAbGroup& b, const py::int_& bound) {
            IsoStream is(a, b, int_from_py(bound));
            py::list out;
            while (auto h = is.next()) out.append(*h);
            return out;
        },
        py::arg("domain"), py::arg("codomain"), py::arg("free_bound") = 3);

    m.def("tensor", &tensor);
    m.def("hom_group", &hom_group);
    m.def("ext1", [](const FgAbGroup& a, const FgAbGroup& b) { return ext1(a, b).group; });
    m.def("gamma_group", [](const FgAbGroup& a) { return gamma_group(a).group; });
    m.def(
        "gamma_oracle",
        [](const FgAbGroup& a, const py::int_& limit) {
            return gamma_oracle(a, int_from_py(limit));
        },
        py::arg("group"), py::arg("size_limit") = 64);
    m.def("gamma_eval", [](const FgAbGroup& a, const py::object& x) {
        GammaResult g = gamma_group(a);
        return vec_to_py(gamma_eval(g.basis, vec_from_py(x)));
    });
    m.def("bracket_eval", [](const FgAbGroup& a, const py::object& x, const py::object& y) {
        GammaResult g = gamma_group(a);
        return vec_to_py(bracket_eval(g.basis, vec_from_py(x), vec_from_py(y)));
    });
    m.def("gamma_hom", &gamma_hom);
    m.def("gamma_upper", &gamma_upper);

    // JSON entry points mirroring the CLI surface
    m.def("homology_json", [](const std::string& text) {
        ChainComplex c = complex_from_json(parse_json(text));
        Json out = Json::array();
        for (std::size_t n = 2; n <= c.top(); ++n)
            out.push_back(Json{{"n", n}, {"H", group_to_json(homology(c, n).group)}});
        return out.dump();
    });
    m.def("validate_system_json", [](const std::string& text) {
        GammaSystem s = system_from_json(parse_json(text));
        ValidationReport rep = validate_system(s);
        Json issues = Json::array();
        for (const auto& issue : rep.issues)
            issues.push_back(Json{{"degree", issue.degree},
                                  {"axiom", issue.axiom},
                                  {"detail", issue.detail}});
        return Json{{"valid", rep.ok()}, {"issues", issues}}.dump();
    });
    m.def("derive_wes_json", [](const std::string& text) {
        GammaSystem s = system_from_json(parse_json(text));
        WhiteheadSequence w = derive_wes(s);
        Json levels = Json::array();
        for (std::size_t n = 2; n <= w.top; ++n) {
            const WesLevel& lv = w.level(n);
            levels.push_back(Json{{"n", n},
                                  {"H", group_to_json(lv.H)},
                                  {"Gamma", group_to_json(lv.Gamma)},
                                  {"b_next", hom_to_json(lv.b_next)},
                                  {"coker_b", group_to_json(lv.coker_b.group)},
                                  {"ker_b", group_to_json(lv.ker_b.group)},
                                  {"pi_class", ext_class_to_json(lv.pi_class)}});
        }
        return Json{{"top", w.top}, {"levels", levels}}.dump();
    });
    m.def(
        "characteristic_extension_json",
        [](const std::string& text, std::size_t n, std::uint64_t seed) {
            GammaSystem s = system_from_json(parse_json(text));
            ExtClass c = characteristic_extension(s, n, choose_splitting(s, n, seed));
            return ext_class_to_json(c).dump();
        },
        py::arg("system"), py::arg("n"), py::arg("seed") = 0);
    m.def("check_strong_json", [](const std::string& x_text, const std::string& y_text,
                                  const std::string& l_text) {
        WhiteheadSequence wx = derive_wes(system_from_json(parse_json(x_text)));
        WhiteheadSequence wy = derive_wes(system_from_json(parse_json(y_text)));
        Ladder l = ladder_from_json(parse_json(l_text));
        StrongResult res = check_strong(wx, wy, l);
        return py::make_tuple(res.strong, res.detail);
    });

    py::class_<FourDimSystem>(m, "FourDimSystem")
        .def(py::init([](const FgAbGroup& h2, const FgAbGroup& h3, const FgAbGroup& h4,
                         const Hom& b4, const py::object& pi3) {
                 std::optional<Hom> cocycle;
                 if (!pi3.is_none()) {
                     Quotient q = cokernel(b4);
                     cocycle = Hom(FgAbGroup::free_group(h3.torsion_count()), q.group,
                                   matrix_from_py(pi3));
                 }
                 return FourDimSystem(h2, h3, h4, b4, std::move(cocycle));
             }),
             py::arg("h2"), py::arg("h3"), py::arg("h4"), py::arg("b4"),
             py::arg("pi3_cocycle") = py::none())
        .def_property_readonly("h2", &FourDimSystem::h2)
        .def_property_readonly("h3", &FourDimSystem::h3)
        .def_property_readonly("h4", &FourDimSystem::h4)
        .def_property_readonly("b4", &FourDimSystem::b4)
        .def_property_readonly("coker_b4",
                               [](const FourDimSystem& x) { return x.coker_b4().group; });

    m.def(
        "classify4",
        [](const FourDimSystem& x, const FourDimSystem& y, const py::int_& bound) {
            Classify4Result res = classify4(x, y, int_from_py(bound));
            const char* verdict = "no_witness_within_bound";
            if (res.verdict == Classify4Result::Verdict::equivalent) verdict = "equivalent";
            if (res.verdict == Classify4Result::Verdict::not_equivalent)
                verdict = "not_equivalent";
            py::object witness = py::none();
            if (res.witness)
                witness = py::make_tuple(res.witness->f2, res.witness->f3, res.witness->f4);
            return py::make_tuple(verdict, witness, res.reason);
        },
        py::arg("x"), py::arg("y"), py::arg("free_bound") = 3);
}
