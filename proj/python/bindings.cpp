#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "cli.hpp"
#include "earring/charts.hpp"
#include "earring/corefree.hpp"
#include "earring/graph.hpp"
#include "earring/lifting.hpp"
#include "earring/words.hpp"

namespace py = pybind11;
using namespace earring;

namespace {

  // Python words are lists of non-zero ints: k for a_k, -k for a_k^-1.
  Word to_word(std::vector<int> const& xs) {
    Word w;
    w.reserve(xs.size());
    for (int x : xs) {
      w.emplace_back(x);
    }
    return w;
  }

  std::vector<int> from_word(std::span<Letter const> w) {
    std::vector<int> out;
    out.reserve(w.size());
    for (auto x : w) {
      out.push_back(x.value());
    }
    return out;
  }

  std::vector<int> from_word(ReducedWord const& w) {
    return from_word(w.letters());
  }

  py::dict trace_dict(LiftTrace const& t) {
    py::list steps;
    for (auto const& s : t.steps) {
      steps.append(py::make_tuple(s.letter.value(), to_string(s.kind), from_word(s.at.word())));
    }
    py::dict d;
    d["start"]    = from_word(t.start.word());
    d["steps"]    = steps;
    d["endpoint"] = from_word(t.endpoint.word());
    return d;
  }

  class Oracle {
   public:
    explicit Oracle(std::optional<std::size_t> cache_bytes)
        : g_(cache_bytes ? *cache_bytes : GraphOracle::kDefaultCacheBytes) {}

    bool survives(std::vector<int> const& v) const {
      return g_.survives(reduce(to_word(v)));
    }

    std::optional<Index> island(std::vector<int> const& v) const {
      return g_.island_of(reduce(to_word(v)));
    }

    std::vector<int> e_set(std::vector<int> const& v) const {
      return g_.e_set(g_.vertex(reduce(to_word(v)))).indices();
    }

    py::dict island_data(Index j) const {
      auto            isl = g_.island_data(j);
      py::list        path;
      for (auto const& z : isl->z_path) {
        path.append(from_word(z));
      }
      py::dict d;
      d["j"]      = j;
      d["word"]   = from_word(isl->word);
      d["anchor"] = from_word(isl->anchor);
      d["level"]  = isl->level;
      d["z_path"] = path;
      d["root"]   = from_word(isl->root);
      return d;
    }

    py::dict lift(std::vector<int> const& w, std::vector<int> const& start) const {
      return trace_dict(lift_word(g_, to_word(w), g_.vertex(reduce(to_word(start)))));
    }

    bool in_k(std::vector<int> const& w) const { return in_K(g_, to_word(w)); }

    py::dict witness(std::vector<int> const& w) const {
      auto     cert = witness_conjugator(g_, to_word(w));
      py::dict d;
      d["j"]              = cert.j;
      d["beta_length"]    = cert.beta.size();
      d["midpoint"]       = from_word(cert.midpoint.word());
      d["endpoint"]       = from_word(cert.conjugate_endpoint.word());
      d["verdict"]        = cert.verdict;
      d["midpoint_check"] = midpoint_structure_check(g_, cert).ok();
      return d;
    }

    py::dict scan(std::uint64_t max_weight, unsigned threads) const {
      ScanReport rep;
      {
        py::gil_scoped_release release;
        rep = core_free_scan(g_, max_weight, threads);
      }
      py::dict d;
      d["enumerated"]      = rep.enumerated;
      d["trivial_skipped"] = rep.trivial_skipped;
      d["checked"]         = rep.entries.size();
      d["in_K"]            = rep.in_K_count();
      d["out_of_K"]        = rep.out_of_K_count();
      d["failures"]        = rep.failures;
      d["ok"]              = rep.ok();
      return d;
    }

    py::dict crosscheck(Index j, int radius) const {
      auto     rep = g_.removal_cross_check(j, radius);
      py::list disagreements;
      for (auto const& x : rep.disagreements) {
        disagreements.append(from_word(x.vertex));
      }
      py::dict d;
      d["vertices_checked"]       = rep.vertices_checked;
      d["prefix_rule_removed"]    = rep.prefix_rule_removed;
      d["neighbour_rule_removed"] = rep.neighbour_rule_removed;
      d["disagreements"]          = disagreements;
      d["unreconciled"]           = rep.unreconciled();
      return d;
    }

    py::tuple q_point(std::string const& spec) const {
      auto x = earring::q_point(parse_point(g_, spec));
      return py::make_tuple(x.circle(), x.t());
    }

    std::vector<std::string> charts(std::string const& spec) const {
      std::vector<std::string> out;
      for (auto const& c : charts_containing(g_, parse_point(g_, spec))) {
        out.push_back(c.to_string());
      }
      return out;
    }

    bool atlas_check(std::size_t samples, std::uint64_t seed) const {
      return earring::atlas_check(g_, samples, seed).ok();
    }

   private:
    GraphOracle g_;
  };

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Graph oracles, lifting and core-freeness certificates for the Hawaiian Earring semicovering";

  m.def("reduce", [](std::vector<int> const& w) { return from_word(reduce(to_word(w))); });
  m.def("enumerate", [](Index j) { return from_word(enumerate(j)); });
  m.def("index_of", [](std::vector<int> const& w) { return index_of(to_word(w)); });
  m.def("anchor", [](Index j) { return from_word(anchor(j)); });
  m.def("anchor_length", &anchor_length);
  m.def("parse_word", [](std::string const& s) { return from_word(parse_word(s)); });
  m.def("format_word", [](std::vector<int> const& w) { return format_word(to_word(w)); });
  m.def("planar", [](int i, double t) {
    auto p = l(i, t);
    return py::make_tuple(p.x, p.y);
  });
  m.def(
      "run",
      [](std::vector<std::string> const& args) {
        auto r = cli::run(args);
        return py::make_tuple(static_cast<int>(r.exit), r.render());
      },
      "Run a command-line invocation; returns (exit code, output).");

  py::class_<Oracle>(m, "Oracle")
      .def(py::init<std::optional<std::size_t>>(), py::arg("cache_bytes") = py::none())
      .def("survives", &Oracle::survives)
      .def("island", &Oracle::island)
      .def("e_set", &Oracle::e_set)
      .def("island_data", &Oracle::island_data)
      .def("lift", &Oracle::lift, py::arg("word"), py::arg("start") = std::vector<int>{})
      .def("in_k", &Oracle::in_k)
      .def("witness", &Oracle::witness)
      .def("scan", &Oracle::scan, py::arg("max_weight"), py::arg("threads") = 0)
      .def("crosscheck", &Oracle::crosscheck)
      .def("q_point", &Oracle::q_point)
      .def("charts", &Oracle::charts)
      .def("atlas_check", &Oracle::atlas_check, py::arg("samples"), py::arg("seed") = 1);
}
