// Python face of the toolkit. Field specs travel as strings, matrices as
// lists of rows holding integer codes (or element strings on the way in);
// counts come back as arbitrary-precision Python ints.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "mdsforge/counting.hpp"
#include "mdsforge/decomp.hpp"
#include "mdsforge/enumerate.hpp"
#include "mdsforge/gf.hpp"
#include "mdsforge/matlin.hpp"
#include "mdsforge/mdscheck.hpp"

namespace py = pybind11;
using namespace mdsforge;

namespace {

uint64_t code_of(const Field& f, const py::handle& cell) {
    if (py::isinstance<py::str>(cell)) return f.parse_element(cell.cast<std::string>());
    const uint64_t code = cell.cast<uint64_t>();
    if (code >= f.q()) throw std::invalid_argument("entry code out of field range");
    return code;
}

SquareMatrix to_matrix(const std::string& field, const py::sequence& rows) {
    auto f = make_field(field);
    const size_t n = py::len(rows);
    if (n == 0) throw std::invalid_argument("matrix has no rows");
    SquareMatrix m(f, n);
    for (size_t i = 0; i < n; ++i) {
        py::sequence row = rows[i].cast<py::sequence>();
        if (py::len(row) != n) throw std::invalid_argument("matrix must be square");
        for (size_t j = 0; j < n; ++j) m.set(i, j, code_of(*f, row[j]));
    }
    return m;
}

py::list from_matrix(const SquareMatrix& m) {
    py::list rows;
    for (size_t i = 0; i < m.n(); ++i) {
        py::list row;
        for (size_t j = 0; j < m.n(); ++j) row.append(m.at(i, j));
        rows.append(row);
    }
    return rows;
}

std::vector<uint64_t> to_codes(const Field& f, const py::sequence& xs) {
    std::vector<uint64_t> out;
    out.reserve(py::len(xs));
    for (const auto& x : xs) out.push_back(code_of(f, x));
    return out;
}

py::object py_u128(u128 v) {  // through the decimal form; 128 bits outgrow C longs
    return py::module_::import("builtins").attr("int")(u128_str(v));
}

EnumKind kind_of(const std::string& text) {
    if (text == "representatives") return EnumKind::Representatives;
    if (text == "mds") return EnumKind::AllMds;
    if (text == "involutory") return EnumKind::AllInvolutory;
    throw std::invalid_argument("unknown kind '" + text +
                                "' (expected representatives, mds or involutory)");
}

}  // namespace

PYBIND11_MODULE(_mdsforge, mod) {
    mod.doc() = "MDS and involutory MDS matrices over finite fields: predicates, the "
                "diagonal factorization, enumeration and closed-form counts";

    mod.def("field_info", [](const std::string& field) {
        auto f = make_field(field);
        py::dict d;
        d["spec"] = f->spec_string();
        d["p"] = f->p();
        d["m"] = f->m();
        d["q"] = f->q();
        return d;
    }, py::arg("field"));

    mod.def("parse_element",
            [](const std::string& field, const std::string& text) {
                return make_field(field)->parse_element(text);
            },
            py::arg("field"), py::arg("text"));
    mod.def("format_element",
            [](const std::string& field, uint64_t code) { return make_field(field)->format(code); },
            py::arg("field"), py::arg("code"));

    mod.def("is_mds",
            [](const std::string& field, const py::sequence& rows) {
                return is_mds(to_matrix(field, rows));
            },
            py::arg("field"), py::arg("rows"));
    mod.def("is_involutory",
            [](const std::string& field, const py::sequence& rows) {
                return is_involutory(to_matrix(field, rows));
            },
            py::arg("field"), py::arg("rows"));

    mod.def("check_representative",
            [](const std::string& field, const py::sequence& rows) {
                auto m = to_matrix(field, rows);
                py::list vios;
                if (!has_ones_border(m)) {
                    py::dict v;
                    v["kind"] = "NotRepresentativeForm";
                    v["rows"] = py::list();
                    v["cols"] = py::list();
                    v["detail"] = "first row and first column must be all ones";
                    vios.append(v);
                } else if (m.n() >= 2) {
                    const size_t k = m.n() - 1;
                    SquareMatrix r(m.field(), k);
                    for (size_t i = 0; i < k; ++i)
                        for (size_t j = 0; j < k; ++j) r.set(i, j, m.at(i + 1, j + 1));
                    for (const auto& v : check_R(r)) {
                        py::dict d;
                        d["kind"] = to_string(v.kind);
                        py::list ri, ci;
                        for (size_t x : v.rows) ri.append(x + 1);
                        for (size_t x : v.cols) ci.append(x + 1);
                        d["rows"] = ri;
                        d["cols"] = ci;
                        d["detail"] = v.detail;
                        vios.append(d);
                    }
                    if (py::len(vios) == 0 && !is_representative_mds(m)) {
                        py::dict v;
                        v["kind"] = "NotMds";
                        v["rows"] = py::list();
                        v["cols"] = py::list();
                        v["detail"] = "a minor of the bordered matrix vanishes";
                        vios.append(v);
                    }
                }
                py::dict out;
                out["holds"] = py::len(vios) == 0;
                out["violations"] = vios;
                return out;
            },
            py::arg("field"), py::arg("rows"));

    mod.def("decompose",
            [](const std::string& field, const py::sequence& rows) {
                auto t = decompose(to_matrix(field, rows));
                py::dict d;
                d["d1"] = py::cast(t.d1.diag());
                d["m1"] = from_matrix(t.m1);
                d["d2"] = py::cast(t.d2.diag());
                return d;
            },
            py::arg("field"), py::arg("rows"));

    mod.def("compose",
            [](const std::string& field, const py::sequence& d1, const py::sequence& m1,
               const py::sequence& d2) {
                auto m = to_matrix(field, m1);
                auto f = m.field();
                DecompositionTriple t{DiagonalMatrix(f, to_codes(*f, d1)), m,
                                      DiagonalMatrix(f, to_codes(*f, d2))};
                return from_matrix(compose(t));
            },
            py::arg("field"), py::arg("d1"), py::arg("m1"), py::arg("d2"));

    mod.def("involutory_certificate",
            [](const std::string& field, const py::sequence& rows) -> py::object {
                auto cert = involutory_certificate(to_matrix(field, rows));
                if (!cert) return py::none();
                return py::cast(cert->alphas);
            },
            py::arg("field"), py::arg("rows"));

    mod.def("involutory_member",
            [](const std::string& field, const py::sequence& m1_rows,
               const py::sequence& lambdas, const py::object& alphas) {
                auto m1 = to_matrix(field, m1_rows);
                auto f = m1.field();
                std::optional<InvolutoryCertificate> cert;
                if (alphas.is_none()) {
                    cert = involutory_certificate(m1);
                    if (!cert)
                        throw std::domain_error(
                            "no certificate exists for this representative; no diagonal "
                            "sandwich of it is involutory");
                } else {
                    cert = InvolutoryCertificate{f, to_codes(*f, alphas.cast<py::sequence>())};
                }
                return from_matrix(involutory_member(m1, *cert, to_codes(*f, lambdas)));
            },
            py::arg("field"), py::arg("m1"), py::arg("lambdas"), py::arg("alphas") = py::none());

    mod.def("enumerate_matrices",
            [](const std::string& field, uint32_t n, const std::string& kind, uint64_t limit) {
                EnumSpec spec;
                spec.field = FieldSpec::parse(field);
                spec.n = n;
                spec.kind = kind_of(kind);
                spec.mode = EnumMode::Stream;
                spec.stream_limit = limit;
                py::list out;
                enum_stream(spec, [&](const SquareMatrix& m) { out.append(from_matrix(m)); });
                return out;
            },
            py::arg("field"), py::arg("n"), py::arg("kind") = "representatives",
            py::arg("limit") = uint64_t(1'000'000));

    mod.def("count",
            [](const std::string& field, uint32_t n, const std::string& kind, unsigned jobs,
               const std::string& checkpoint) {
                EnumSpec spec;
                spec.field = FieldSpec::parse(field);
                spec.n = n;
                spec.kind = kind_of(kind);
                spec.mode = EnumMode::CountOnly;
                CountOptions opts;
                opts.workers = jobs;
                opts.checkpoint_path = checkpoint;
                CountOutcome oc = count(spec, opts);
                py::dict d;
                d["count"] = py_u128(oc.value);
                d["representatives"] = py_u128(oc.representatives);
                d["certified"] = py_u128(oc.certified);
                d["blocks_total"] = oc.blocks_total;
                d["blocks_done"] = oc.blocks_done;
                d["resumed"] = oc.resumed;
                d["complete"] = oc.complete;
                d["elapsed_seconds"] = oc.elapsed_seconds;
                return d;
            },
            py::arg("field"), py::arg("n"), py::arg("kind") = "representatives",
            py::arg("jobs") = 1, py::arg("checkpoint") = "");

    mod.def("rep3", [](uint32_t m) { return py_u128(formula_rep3(m)); }, py::arg("m"));
    mod.def("mds3", [](uint32_t m) { return py_u128(formula_mds3(m)); }, py::arg("m"));
    mod.def("inv3", [](uint32_t m) { return py_u128(formula_inv3(m)); }, py::arg("m"));
    mod.def("noninv3", [](uint32_t m) { return py_u128(formula_noninv3(m)); }, py::arg("m"));

    mod.def("verify",
            [](const std::string& field, uint32_t n, const std::string& kind, unsigned jobs) {
                CountOptions opts;
                opts.workers = jobs;
                CountReport rep = verify(FieldSpec::parse(field), n, kind_of(kind), opts);
                py::dict d;
                d["source"] = to_string(rep.source);
                d["formula"] = rep.formula_value ? py_u128(*rep.formula_value) : py::none();
                d["enumerated"] =
                    rep.enumerated_value ? py_u128(*rep.enumerated_value) : py::none();
                d["agrees"] = rep.agrees;
                return d;
            },
            py::arg("field"), py::arg("n"), py::arg("kind") = "representatives",
            py::arg("jobs") = 1);
}
