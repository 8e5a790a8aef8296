#include "copos/compare.hpp"
#include "copos/io.hpp"
#include "copos/limits.hpp"
#include "copos/oracle.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace copos;

namespace
{

// Values cross the boundary as "p/q" strings; the Python layer turns them into Fractions.
Rational rational_of(const py::handle& h)
{
    if (py::isinstance<py::str>(h))
        return parse_rational(h.cast<std::string>());
    if (py::isinstance<py::int_>(h))
        return parse_rational(py::str(h).cast<std::string>());
    // fractions.Fraction and anything else with numerator/denominator
    if (py::hasattr(h, "numerator") && py::hasattr(h, "denominator"))
        return parse_rational(py::str(h.attr("numerator")).cast<std::string>() + "/" +
                              py::str(h.attr("denominator")).cast<std::string>());
    if (py::isinstance<py::float_>(h))
        return from_double(h.cast<double>());
    throw py::type_error("expected int, str, float or Fraction");
}

RationalPoint point_of(const py::iterable& xs)
{
    RationalPoint p;
    for (auto x : xs)
        p.push_back(rational_of(x));
    return p;
}

py::object as_python(const nlohmann::json& j)
{
    return py::module_::import("json").attr("loads")(j.dump());
}

SymTensor make_tensor(int n, int d, const py::object& default_value, const py::dict& entries)
{
    SymTensorBuilder b(n, d, rational_of(default_value));
    for (auto [k, v] : entries)
    {
        std::vector<int> idx = k.cast<std::vector<int>>();
        if (static_cast<int>(idx.size()) != d)
            throw py::value_error("index length differs from d");
        b.set(idx, rational_of(v));
    }
    return b.build();
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Copositivity of symmetric tensors";
    m.attr("__version__") = tool_version();

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<SizeLimitError>(m, "SizeLimitError", PyExc_MemoryError);

    py::class_<SymTensor>(m, "Tensor")
        .def(py::init(&make_tensor), py::arg("n"), py::arg("d"), py::arg("default") = py::int_(0),
             py::arg("entries") = py::dict(),
             "Symmetric tensor; entries maps 0-based index tuples (any order) to values.")
        .def_static("from_json", &parse_tensor, py::arg("text"))
        .def_property_readonly("n", &SymTensor::n)
        .def_property_readonly("d", &SymTensor::d)
        .def("get", [](const SymTensor& A, const std::vector<int>& idx) { return to_string(A.get(idx)); })
        .def("eval", [](const SymTensor& A, const py::iterable& x) {
            auto p = point_of(x);
            if (static_cast<int>(p.size()) != A.n())
                throw py::value_error("point dimension differs from n");
            return to_string(eval(A, p));
        })
        .def("to_json", [](const SymTensor& A, const std::string& name) { return emit_tensor(A, name); },
             py::arg("name") = "")
        .def("digest", &tensor_digest)
        .def("__eq__", &SymTensor::operator==)
        .def("__repr__", [](const SymTensor& A) {
            std::ostringstream s;
            s << "Tensor(n=" << A.n() << ", d=" << A.d() << ", default=" << to_string(A.default_value()) << ")";
            return s.str();
        });

    m.def("screen", [](const SymTensor& A) { return as_python(screen_certificate(A, necessary_screen(A)).to_json()); });

    m.def(
        "expand",
        [](const SymTensor& A, int r, const std::string& route) {
            PolyExpansion e;
            if (route == "direct")
                e = expand_Pr(A, r);
            else if (route == "closed")
                e = expand_Pr_closed_form(A, r);
            else if (route == "convolution")
                e = expand_Pr_convolution(A, r);
            else
                throw py::value_error("route must be direct, closed or convolution");
            py::dict out;
            for (const auto& [theta, c] : e.coeffs)
                out[py::tuple(py::cast(theta.alpha))] = to_string(c);
            return out;
        },
        py::arg("tensor"), py::arg("level"), py::arg("route") = "direct");

    m.def(
        "expand_bruteforce",
        [](const SymTensor& A, int r) {
            py::dict out;
            for (const auto& [gamma, c] : expand_bruteforce(A, r))
                out[py::tuple(py::cast(gamma.alpha))] = to_string(c);
            return out;
        },
        py::arg("tensor"), py::arg("level"));

    m.def(
        "check",
        [](const SymTensor& A, const std::string& method, int level, double eig_tol, double match_tol,
           std::size_t max_iters) {
            if (method == "coef")
                return as_python(coefficient_certificate(A, level, member_C_r(A, level)).to_json());
            if (method == "grid")
                return as_python(grid_certificate(A, level, member_O_r(A, level)).to_json());
            if (method == "sos")
            {
                SolveOptions o{eig_tol, match_tol, max_iters, true};
                CertificateDocument doc;
                {
                    py::gil_scoped_release release;
                    doc = sos_certificate(A, level, build_gram_problem(A, level), member_K_r(A, level, o), o);
                }
                return as_python(doc.to_json());
            }
            throw py::value_error("method must be coef, sos or grid");
        },
        py::arg("tensor"), py::arg("method"), py::arg("level") = 0, py::arg("eig_tol") = 1e-8,
        py::arg("match_tol") = 1e-8, py::arg("max_iters") = 20000);

    m.def(
        "certify",
        [](const SymTensor& A, int max_depth, std::size_t budget, unsigned threads, const std::string& order) {
            CertifyOptions o;
            o.max_depth = max_depth;
            o.simplex_budget = budget;
            o.threads = threads;
            o.order = order == "lifo" ? WorkOrder::Lifo : WorkOrder::Fifo;
            Certificate c;
            {
                py::gil_scoped_release release;
                c = certify_copositivity(A, o);
            }
            return as_python(partition_certificate(A, o, c).to_json());
        },
        py::arg("tensor"), py::arg("max_depth") = 32, py::arg("budget") = 1'000'000, py::arg("threads") = 1,
        py::arg("order") = "fifo");

    m.def(
        "grid_min",
        [](const SymTensor& A, int resolution) {
            auto r = simplex_grid_min(A, resolution);
            return py::make_tuple(to_string(r.min_value), to_strings(r.argmin));
        },
        py::arg("tensor"), py::arg("resolution") = 50);

    m.def(
        "sample_min",
        [](const SymTensor& A, std::size_t samples, std::uint64_t seed, const std::vector<std::vector<double>>& probes) {
            auto r = fullspace_sample_min(A, samples, seed, probes);
            return py::make_tuple(r.min_value, r.argmin);
        },
        py::arg("tensor"), py::arg("samples") = 10000, py::arg("seed") = kDefaultSeed,
        py::arg("probes") = std::vector<std::vector<double>>{});

    m.def(
        "compare",
        [](const SymTensor& A, int max_level) { return as_python(compare_to_json(compare_hierarchies(A, max_level))); },
        py::arg("tensor"), py::arg("max_level") = 2);

    m.def(
        "verify",
        [](const std::string& certificate, const SymTensor& A) {
            CertificateDocument doc;
            try
            {
                doc = CertificateDocument::from_json(nlohmann::json::parse(certificate));
            }
            catch (const nlohmann::json::exception& e)
            {
                throw py::value_error(e.what());
            }
            auto rep = verify_certificate(doc, A);
            return py::make_tuple(rep.ok, rep.messages);
        },
        py::arg("certificate"), py::arg("tensor"));

    m.attr("DEFAULT_SEED") = kDefaultSeed;
}
