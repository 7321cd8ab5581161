#include "earring/charts.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

namespace earring {

  namespace {
    constexpr double kQuarter      = 0.25;
    constexpr double kThreeEighths = 0.375;
    constexpr double kFiveEighths  = 0.625;
    constexpr double kThreeQuarter = 0.75;

    std::string format_double(double t) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.17g", t);
      return buf;
    }

    bool in_U(int i, PointH const& x) {
      return !x.is_origin() && x.circle() == i && x.t() > kQuarter
             && x.t() < kThreeQuarter;
    }

    // U_{n+1}^inf
    bool in_U_inf(int n, PointH const& x) {
      return x.is_origin() || x.circle() > n || x.t() < kThreeEighths
             || x.t() > kFiveEighths;
    }
  }  // namespace

  Planar l(int i, double t) {
    double const a = 2 * std::numbers::pi * t;
    return Planar{std::sin(a) / i, (1 - std::cos(a)) / i};
  }

  ////////////////////////////////////////////////////////////////////////
  // PointH
  ////////////////////////////////////////////////////////////////////////

  PointH PointH::on_circle(int i, double t) {
    if (i < 1) {
      throw std::invalid_argument("circle index must be >= 1");
    }
    if (!(t >= 0.0 && t <= 1.0)) {
      throw std::invalid_argument("circle parameter must lie in [0, 1]");
    }
    if (t == 0.0 || t == 1.0) {
      return origin();
    }
    return PointH(i, t);
  }

  Planar PointH::planar() const {
    return is_origin() ? Planar{0.0, 0.0} : l(circle_, t_);
  }

  std::string PointH::to_string() const {
    if (is_origin()) {
      return "0";
    }
    return "l" + std::to_string(circle_) + "(" + format_double(t_) + ")";
  }

  ////////////////////////////////////////////////////////////////////////
  // PointHat
  ////////////////////////////////////////////////////////////////////////

  Vertex terminal(GraphOracle const& g, Edge const& e) {
    if (e.kind == StepKind::loop) {
      return e.base;
    }
    return g.vertex(e.base.word().times(Letter(e.label)));
  }

  PointHat PointHat::at_vertex(Vertex v) {
    return PointHat(std::move(v), std::nullopt, 0.0);
  }

  PointHat PointHat::on_edge(GraphOracle const& g,
                             Vertex const&      v,
                             int                label,
                             double             t) {
    if (label == 0) {
      throw std::invalid_argument("edge label must be non-zero");
    }
    if (!(t >= 0.0 && t <= 1.0)) {
      throw std::invalid_argument("edge parameter must lie in [0, 1]");
    }
    int const  i    = label < 0 ? -label : label;
    bool const tree = g.e_set(v).contains(i);
    Edge       e{v, i, tree ? StepKind::tree : StepKind::loop};
    if (tree && label < 0) {
      e.base = g.vertex(v.word().times(Letter(-i)));
    }
    if (t == 0.0) {
      return at_vertex(e.base);
    }
    if (t == 1.0) {
      return at_vertex(terminal(g, e));
    }
    Vertex base = e.base;
    return PointHat(std::move(base), std::move(e), t);
  }

  std::string PointHat::to_string() const {
    if (is_vertex()) {
      return "v:" + format_word(vertex_.word());
    }
    return "e:" + format_word(edge_->base.word()) + ":"
           + std::to_string(edge_->label) + ":" + format_double(t_) + " ("
           + earring::to_string(edge_->kind) + ")";
  }

  ////////////////////////////////////////////////////////////////////////
  // Charts
  ////////////////////////////////////////////////////////////////////////

  std::string ChartId::range() const {
    if (kind == ChartKind::edge) {
      return "U_" + std::to_string(edge->label);
    }
    return "U_" + std::to_string(n + 1) + "^inf";
  }

  std::string ChartId::to_string() const {
    if (kind == ChartKind::edge) {
      return "U_e[" + format_word(edge->base.word()) + ":"
             + std::to_string(edge->label) + " "
             + earring::to_string(edge->kind) + "] -> " + range();
    }
    return "U_v[" + format_word(owner.word()) + "] -> " + range();
  }

  int chart_level(GraphOracle const& g, Vertex const& v) {
    return std::max(2, g.e_set(v).max());
  }

  ChartId edge_chart(Edge e) {
    Vertex owner = e.base;
    return ChartId{ChartKind::edge, std::move(owner), std::move(e), 0};
  }

  ChartId vertex_chart(GraphOracle const& g, Vertex v) {
    int const n = chart_level(g, v);
    return ChartId{ChartKind::vertex, std::move(v), std::nullopt, n};
  }

  PointH q_point(PointHat const& p) {
    if (p.is_vertex()) {
      return PointH::origin();
    }
    return PointH::on_circle(p.edge().label, p.t());
  }

  bool in_range(ChartId const& c, PointH const& x) {
    if (c.kind == ChartKind::edge) {
      return in_U(c.edge->label, x);
    }
    return in_U_inf(c.n, x);
  }

  bool chart_contains(GraphOracle const& g, ChartId const& c, PointHat const& p) {
    if (c.kind == ChartKind::edge) {
      return !p.is_vertex() && p.edge() == *c.edge && p.t() > kQuarter
             && p.t() < kThreeQuarter;
    }
    if (p.is_vertex()) {
      return p.vertex() == c.owner;
    }
    auto const& e = p.edge();
    if (e.base == c.owner && p.t() < kThreeEighths) {
      return true;
    }
    if (p.t() > kFiveEighths && terminal(g, e) == c.owner) {
      return true;
    }
    return e.kind == StepKind::loop && e.base == c.owner && e.label > c.n;
  }

  std::vector<ChartId> charts_containing(GraphOracle const& g,
                                         PointHat const&    p) {
    if (p.is_vertex()) {
      return {vertex_chart(g, p.vertex())};
    }
    std::vector<ChartId> result;
    auto const&          e = p.edge();
    if (p.t() > kQuarter && p.t() < kThreeQuarter) {
      result.push_back(edge_chart(e));
    }
    for (auto const& v : {e.base, terminal(g, e)}) {
      auto c = vertex_chart(g, v);
      if (chart_contains(g, c, p)
          && std::find(result.begin(), result.end(), c) == result.end()) {
        result.push_back(std::move(c));
      }
    }
    return result;
  }

  PointHat local_inverse(GraphOracle const& g, ChartId const& c, PointH const& x) {
    if (!in_range(c, x)) {
      throw std::domain_error(x.to_string() + " is not in the range "
                              + c.range() + " of " + c.to_string());
    }
    if (c.kind == ChartKind::edge) {
      return PointHat::on_edge(g, c.edge->base, c.edge->label, x.t());
    }
    if (x.is_origin()) {
      return PointHat::at_vertex(c.owner);
    }
    int const i = x.circle();
    if (i > c.n || x.t() < kThreeEighths) {
      // whole loop (i > n) or the initial third of the edge leaving v
      return PointHat::on_edge(g, c.owner, i, x.t());
    }
    return PointHat::on_edge(g, c.owner, -i, x.t());
  }

  ////////////////////////////////////////////////////////////////////////
  // Point specs
  ////////////////////////////////////////////////////////////////////////

  namespace {
    double parse_parameter(std::string const& text) {
      auto parse_full = [](std::string const& s) {
        std::size_t pos = 0;
        double      v   = std::stod(s, &pos);
        if (pos != s.size()) {
          throw std::invalid_argument("malformed number `" + s + "`");
        }
        return v;
      };
      try {
        if (auto slash = text.find('/'); slash != std::string::npos) {
          double num = parse_full(text.substr(0, slash));
          double den = parse_full(text.substr(slash + 1));
          if (den == 0.0) {
            throw std::invalid_argument("zero denominator");
          }
          return num / den;
        }
        return parse_full(text);
      } catch (std::invalid_argument const&) {
        throw std::invalid_argument("malformed edge parameter `" + text + "`");
      } catch (std::out_of_range const&) {
        throw std::invalid_argument("edge parameter out of range `" + text
                                    + "`");
      }
    }

    std::vector<std::string> split(std::string_view s, char sep) {
      std::vector<std::string> parts;
      std::size_t              start = 0;
      while (true) {
        auto pos = s.find(sep, start);
        parts.emplace_back(s.substr(start, pos - start));
        if (pos == std::string_view::npos) {
          break;
        }
        start = pos + 1;
      }
      return parts;
    }
  }  // namespace

  PointHat parse_point(GraphOracle const& g, std::string_view spec) {
    auto parts = split(spec, ':');
    if (parts.size() == 2 && parts[0] == "v") {
      return PointHat::at_vertex(g.vertex(reduce(parse_word(parts[1]))));
    }
    if (parts.size() == 4 && parts[0] == "e") {
      Vertex      v     = g.vertex(reduce(parse_word(parts[1])));
      std::size_t pos   = 0;
      int         label = 0;
      try {
        label = std::stoi(parts[2], &pos);
      } catch (std::exception const&) {
        pos = 0;
      }
      if (pos == 0 || pos != parts[2].size() || label == 0) {
        throw std::invalid_argument("malformed edge label `" + parts[2] + "`");
      }
      return PointHat::on_edge(g, v, label, parse_parameter(parts[3]));
    }
    throw std::invalid_argument("point spec must be v:<word> or "
                                "e:<word>:<label>:<t>, got `"
                                + std::string(spec) + "`");
  }

  ////////////////////////////////////////////////////////////////////////
  // Atlas check
  ////////////////////////////////////////////////////////////////////////

  bool AtlasReport::ok() const noexcept {
    return round_trip_failures == 0 && planar_failures == 0
           && domain_failures == 0 && overlap_failures == 0
           && cover_failures == 0 && disjoint_failures == 0
           && range_failures == 0 && rejection_failures == 0;
  }

  namespace {
    class Sampler {
     public:
      Sampler(GraphOracle const& g, std::uint64_t seed) : g_(g), rng_(seed) {
        build_pool();
      }

      Vertex const& vertex() {
        return pool_[uniform_index(pool_.size())];
      }

      std::size_t uniform_index(std::size_t n) {
        return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_);
      }

      int uniform_int(int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(rng_);
      }

      bool coin(double p) {
        return std::bernoulli_distribution(p)(rng_);
      }

      double open_unit() {
        double t = 0.0;
        while (t == 0.0) {
          t = std::uniform_real_distribution<double>(0.0, 1.0)(rng_);
        }
        return t;
      }

      // Parameter in (0,1), biased towards the chart boundaries.
      double parameter() {
        static constexpr double kMarks[]
            = {kQuarter, kThreeEighths, 0.5, kFiveEighths, kThreeQuarter};
        if (coin(0.3)) {
          double m = kMarks[uniform_index(std::size(kMarks))];
          switch (uniform_int(0, 2)) {
            case 0:
              return std::nextafter(m, 0.0);
            case 1:
              return std::nextafter(m, 1.0);
            default:
              return m;
          }
        }
        if (coin(0.05)) {
          return coin(0.5) ? std::numeric_limits<double>::denorm_min()
                           : std::nextafter(1.0, 0.0);
        }
        return open_unit();
      }

      double between(double lo, double hi) {
        double t = lo;
        while (t <= lo || t >= hi) {
          t = std::uniform_real_distribution<double>(lo, hi)(rng_);
        }
        return t;
      }

     private:
      void build_pool() {
        pool_.push_back(g_.base());
        for (int walk = 0; walk < 24; ++walk) {
          Vertex at  = g_.base();
          int    len = uniform_int(1, 12);
          for (int k = 0; k < len; ++k) {
            LabelSet const labels = g_.e_set(at);
            int const      i = labels.indices()[uniform_index(labels.indices().size())];
            at = g_.neighbor(at, Letter::generator(i, coin(0.5) ? 1 : -1)).to;
            pool_.push_back(at);
          }
        }
        // Islands whose level exceeds 2 give vertices with larger E_v.
        for (Index j : {Index(9), Index(10), Index(31), Index(33), Index(45)}) {
          auto isl = g_.island_data(j);
          for (auto const& z : isl->z_set) {
            pool_.push_back(g_.vertex(z));
            for (int s = 1; s <= isl->level; ++s) {
              for (int sign : {+1, -1}) {
                ReducedWord w = z;
                for (int r = 0; r < 2; ++r) {
                  w.multiply_in_place(Letter::generator(s, sign));
                  pool_.push_back(g_.vertex(w));
                }
              }
            }
          }
        }
      }

      GraphOracle const&  g_;
      std::mt19937_64     rng_;
      std::vector<Vertex> pool_;
    };

    void check_point(GraphOracle const& g, PointHat const& p, AtlasReport& rep) {
      auto const charts = charts_containing(g, p);
      if (charts.empty()) {
        ++rep.cover_failures;
        return;
      }
      auto edges = std::count_if(charts.begin(), charts.end(), [](auto& c) {
        return c.kind == ChartKind::edge;
      });
      if (edges > 1 || static_cast<std::size_t>(edges) + 1 < charts.size()) {
        ++rep.disjoint_failures;
      }
      PointH const x = q_point(p);
      for (auto const& c : charts) {
        if (!chart_contains(g, c, p)) {
          ++rep.domain_failures;
        }
        // Every chart through p must map it to q(p) and invert back to p;
        // for a point in U_e and U_v this is q_e = q_v on the overlap.
        try {
          if (!in_range(c, x) || local_inverse(g, c, x) != p) {
            ++rep.overlap_failures;
          }
        } catch (std::exception const&) {
          ++rep.overlap_failures;
        }
      }
    }

    void check_chart(GraphOracle const& g,
                     ChartId const&     c,
                     PointH const&      x,
                     AtlasReport&       rep) {
      PointHat const p = local_inverse(g, c, x);
      PointH const   y = q_point(p);
      if (y != x) {
        ++rep.round_trip_failures;
      }
      Planar const a   = y.planar();
      Planar const b   = x.planar();
      double const err = std::hypot(a.x - b.x, a.y - b.y);
      rep.max_planar_error = std::max(rep.max_planar_error, err);
      if (err > 1e-12) {
        ++rep.planar_failures;
      }
      if (!chart_contains(g, c, p)) {
        ++rep.domain_failures;
      }
    }

    void expect_rejection(GraphOracle const& g,
                          ChartId const&     c,
                          PointH const&      x,
                          AtlasReport&       rep) {
      try {
        (void) local_inverse(g, c, x);
        ++rep.rejection_failures;
      } catch (std::domain_error const&) {
      }
    }
  }  // namespace

  AtlasReport atlas_check(GraphOracle const& g,
                          std::size_t        samples,
                          std::uint64_t      seed) {
    Sampler     rnd(g, seed);
    AtlasReport rep;
    rep.samples = samples;

    for (std::size_t k = 0; k < samples; ++k) {
      // A point of H-hat and every chart through it.
      {
        Vertex const& v     = rnd.vertex();
        int const     n     = chart_level(g, v);
        int const     label = rnd.uniform_int(1, n + 3) * (rnd.coin(0.5) ? 1 : -1);
        PointHat p = rnd.coin(0.1)
                         ? PointHat::at_vertex(v)
                         : PointHat::on_edge(g, v, label, rnd.parameter());
        check_point(g, p, rep);
      }

      // A chart and a point of its range.
      {
        Vertex const& v = rnd.vertex();
        int const     n = chart_level(g, v);
        if (rnd.coin(0.5)) {
          ChartId c = vertex_chart(g, v);
          PointH  x = PointH::origin();
          if (!rnd.coin(0.1)) {
            int const i = rnd.uniform_int(1, n + 4);
            double    t = 0.5;
            if (i > n) {
              t = rnd.parameter();
            } else {
              t = rnd.coin(0.5) ? rnd.between(0.0, kThreeEighths)
                                : rnd.between(kFiveEighths, 1.0);
            }
            x = PointH::on_circle(i, t);
          }
          check_chart(g, c, x, rep);
          int const i = rnd.uniform_int(1, n);
          double    t = rnd.coin(0.3) ? (rnd.coin(0.5) ? kThreeEighths
                                                       : kFiveEighths)
                                      : rnd.between(kThreeEighths, kFiveEighths);
          expect_rejection(g, c, PointH::on_circle(i, t), rep);
        } else {
          int const label = rnd.uniform_int(1, n + 3);
          auto      p = PointHat::on_edge(g, v, rnd.coin(0.5) ? label : -label, 0.5);
          ChartId   c = edge_chart(p.edge());
          check_chart(g, c, PointH::on_circle(label, rnd.between(kQuarter, kThreeQuarter)), rep);
          double t = rnd.coin(0.5) ? (rnd.coin(0.5) ? kQuarter : kThreeQuarter)
                                   : rnd.open_unit();
          int other = rnd.coin(0.5) ? label : label + rnd.uniform_int(1, 3);
          if (other != label || t <= kQuarter || t >= kThreeQuarter) {
            expect_rejection(g, c, PointH::on_circle(other, t), rep);
          }
        }
      }

      // The ranges in H: nesting, disjointness, and cover.
      {
        PointH x = rnd.coin(0.05)
                       ? PointH::origin()
                       : PointH::on_circle(rnd.uniform_int(1, 12), rnd.parameter());
        int const n = rnd.uniform_int(1, 10);
        int const m = rnd.uniform_int(1, n);
        if (in_U_inf(n, x) && !in_U_inf(m, x)) {
          ++rep.range_failures;
        }
        int const i = rnd.uniform_int(1, 12);
        int const j = rnd.uniform_int(1, 12);
        if (i != j && in_U(i, x) && in_U(j, x)) {
          ++rep.range_failures;
        }
        bool covered = in_U_inf(n, x);
        for (int s = 1; s <= n && !covered; ++s) {
          covered = in_U(s, x);
        }
        if (!covered) {
          ++rep.range_failures;
        }
      }
    }
    return rep;
  }

}  // namespace earring
