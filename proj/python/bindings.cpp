#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <random>

#include "kacmoody/env.hpp"
#include "kacmoody/errors.hpp"
#include "kacmoody/gcm.hpp"
#include "kacmoody/group.hpp"
#include "kacmoody/lie.hpp"
#include "kacmoody/loop.hpp"
#include "kacmoody/weyl.hpp"

namespace py = pybind11;
using namespace kacmoody;

namespace {

using Rows = std::vector<std::vector<int>>;

// Exact integers and rationals cross the boundary as strings; the package
// wraps them in int / Fraction.
struct Algebra {
  explicit Algebra(const Rows& rows) : lie(Gcm::validate(rows)) {}
  LieAlgebra lie;
};

py::list positive_roots(Algebra& a, int h) {
  py::list out;
  for (const auto& r : a.lie.positive_roots(h))
    out.append(py::make_tuple(r.root, r.mult, r.real));
  return out;
}

py::list commutator(Algebra& a, const RootVec& alpha, const RootVec& beta) {
  py::list out;
  for (const auto& e : commutator_constants(a.lie, alpha, beta).entries)
    out.append(py::make_tuple(e.gamma, e.i, e.j, to_string(e.c)));
  return out;
}

py::list ad_eval(Algebra& a, const std::string& word, const RootVec& root, const std::string& field) {
  FieldSpec f = parse_field(field);
  GroupWord w = parse_word(word, a.lie.rank(), f);
  LieElt v = a.lie.canonical_e(root);
  if (f.is_prime_field()) v = basis_to_lattice(a.lie, v);
  py::list out;
  for (const auto& [k, c] : ad_apply(a.lie, w, v, f))
    out.append(py::make_tuple(a.lie.degree_root(k.deg), k.idx, to_string(c)));
  return out;
}

py::dict oracle_run(int words, unsigned long long seed, int max_len, int h, const std::string& field) {
  FieldSpec f = parse_field(field);
  LieAlgebra lie(Gcm::validate({{2, -2}, {-2, 2}}));
  LoopOracle oracle(lie);
  std::mt19937_64 rng(seed);
  int failed = 0, checked = 0;
  for (int k = 0; k < words; ++k) {
    GroupWord w = random_word(lie, rng, 1 + static_cast<int>(rng() % max_len), f);
    auto rep = oracle.ad_compare(w, h, f);
    failed += rep.holds ? 0 : 1;
    checked += rep.checked;
  }
  py::dict d;
  d["words"] = words;
  d["checked"] = checked;
  d["failed"] = failed;
  return d;
}

std::string realize_word(const std::string& word, const std::string& field) {
  FieldSpec f = parse_field(field);
  LieAlgebra lie(Gcm::validate({{2, -2}, {-2, 2}}));
  LoopOracle oracle(lie);
  return to_string(oracle.realize_word(parse_word(word, 2, f), f));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "exact Kac-Moody algebra and group computations";

  py::register_exception<Error>(m, "KacMoodyError");

  m.def("classify", [](const Rows& rows) {
    Gcm g = Gcm::validate(rows);
    std::vector<std::pair<std::vector<int>, std::string>> out;
    for (const auto& block : components(g)) out.emplace_back(block, to_string(classify(g, block)));
    return out;
  });
  m.def("vinberg_classify", [](const Rows& rows) { return to_string(vinberg_classify(Gcm::validate(rows))); });
  m.def("reduced_word", [](const Rows& rows, const std::vector<int>& word) {
    return length(Gcm::validate(rows), word).reduced;
  });

  py::class_<Algebra>(m, "Algebra")
      .def(py::init<const Rows&>())
      .def("rank", [](Algebra& a) { return a.lie.rank(); })
      .def("positive_roots", &positive_roots, py::arg("height"))
      .def("multiplicity", [](Algebra& a, const RootVec& r) { return a.lie.multiplicity(r); })
      .def("commutator", &commutator, py::arg("alpha"), py::arg("beta"))
      .def("ad_eval", &ad_eval, py::arg("word"), py::arg("root"), py::arg("field") = "Q");

  m.def("iwahori_bruhat", [](const std::string& matrix, const std::string& field) {
    FieldSpec f = parse_field(field);
    return iwahori_bruhat(parse_laurent_mat(matrix, f), f);
  }, py::arg("matrix"), py::arg("field") = "Q");
  m.def("realize_word", &realize_word, py::arg("word"), py::arg("field") = "Q");
  m.def("oracle_run", &oracle_run, py::arg("words"), py::arg("seed"), py::arg("max_len") = 12,
        py::arg("height") = 6, py::arg("field") = "Fp:7");
}
