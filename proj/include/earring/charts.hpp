// Points of H and H-hat, the chart atlas {U_e, U_v}, and the map q.
//
// A point of H is the origin or l_i(t) with t in (0,1), kept symbolically
// as (i, t); the planar embedding is only used for display and tolerance
// checks. A point of H-hat is a vertex or psi_e(t) on an edge e. Edges are
// directed: a tree edge labelled a_i runs from u to reduce(u a_i), a loop
// labelled a_i starts and ends at its vertex.
//
// Chart domains:
//   U_e    psi_e((1/4, 3/4))
//   U_v    psi_e([0, 3/8)) for edges leaving v, psi_e((5/8, 1]) for edges
//          entering v, and every loop at v labelled a_i with i > n(v),
//          where n(v) >= 2 is minimal with E_v inside {1, ..., n(v)}
// q maps U_e onto U_i = l_i((1/4, 3/4)) and U_v onto U_{n+1}^inf.

#ifndef EARRING_CHARTS_HPP_
#define EARRING_CHARTS_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "earring/graph.hpp"

namespace earring {

  struct Planar {
    double x;
    double y;
  };

  // l_i(t) = (sin(2 pi t) / i, (1 - cos(2 pi t)) / i)
  Planar l(int i, double t);

  class PointH {
   public:
    static PointH origin() { return PointH(0, 0.0); }
    // t = 0 and t = 1 give the origin; t outside [0, 1] or i < 1 throws.
    static PointH on_circle(int i, double t);

    bool   is_origin() const noexcept { return circle_ == 0; }
    int    circle() const noexcept { return circle_; }
    double t() const noexcept { return t_; }
    Planar planar() const;

    std::string to_string() const;

    friend bool operator==(PointH const&, PointH const&) = default;

   private:
    PointH(int i, double t) : circle_(i), t_(t) {}
    int    circle_;
    double t_;
  };

  struct Edge {
    Vertex   base;  // initial vertex
    int      label;
    StepKind kind;

    friend bool operator==(Edge const&, Edge const&) = default;
  };

  Vertex terminal(GraphOracle const& g, Edge const& e);

  class PointHat {
   public:
    static PointHat at_vertex(Vertex v);
    // The point psi_e(t) on the edge labelled a_|label| leaving `v` (label
    // > 0) or entering `v` (label < 0). Loop or tree is decided by E_v;
    // t = 0 and t = 1 give the end vertices.
    static PointHat on_edge(GraphOracle const& g,
                            Vertex const&      v,
                            int                label,
                            double             t);

    bool          is_vertex() const noexcept { return !edge_; }
    Vertex const& vertex() const { return vertex_; }  // the vertex, or edge base
    Edge const&   edge() const { return *edge_; }
    double        t() const noexcept { return t_; }

    std::string to_string() const;

    friend bool operator==(PointHat const&, PointHat const&) = default;

   private:
    PointHat(Vertex v, std::optional<Edge> e, double t)
        : vertex_(std::move(v)), edge_(std::move(e)), t_(t) {}
    Vertex              vertex_;
    std::optional<Edge> edge_;
    double              t_;
  };

  enum class ChartKind { edge, vertex };

  struct ChartId {
    ChartKind           kind;
    Vertex              owner;  // the vertex of U_v, or the base of e
    std::optional<Edge> edge;   // set for edge charts
    int                 n;      // range U_{n+1}^inf of a vertex chart

    std::string range() const;
    std::string to_string() const;

    friend bool operator==(ChartId const&, ChartId const&) = default;
  };

  // max(2, max E_v)
  int chart_level(GraphOracle const& g, Vertex const& v);

  ChartId edge_chart(Edge e);
  ChartId vertex_chart(GraphOracle const& g, Vertex v);

  PointH q_point(PointHat const& p);

  bool in_range(ChartId const& c, PointH const& x);
  bool chart_contains(GraphOracle const& g, ChartId const& c, PointHat const& p);

  // Edge chart first (if any), then the vertex chart (if any).
  std::vector<ChartId> charts_containing(GraphOracle const& g,
                                         PointHat const&    p);

  // Unique preimage of x inside c; throws std::domain_error when x is not in
  // the range of c.
  PointHat local_inverse(GraphOracle const& g, ChartId const& c, PointH const& x);

  // Point spec: `v:<word>` or `e:<word>:<label>:<t>`; t may be a decimal or
  // a fraction p/q.
  PointHat parse_point(GraphOracle const& g, std::string_view spec);

  struct AtlasReport {
    std::size_t samples              = 0;
    std::size_t round_trip_failures  = 0;  // q(local_inverse(c, x)) != x
    std::size_t planar_failures      = 0;  // |l(q(...)) - l(x)| > 1e-12
    std::size_t domain_failures      = 0;  // local_inverse(c, q(p)) != p
    std::size_t overlap_failures     = 0;  // charts disagree on a point
    std::size_t cover_failures       = 0;  // point in no chart
    std::size_t disjoint_failures    = 0;  // point in two charts of a kind
    std::size_t range_failures       = 0;  // nesting / disjointness of ranges
    std::size_t rejection_failures   = 0;  // out-of-range x not rejected
    double      max_planar_error     = 0.0;

    bool ok() const noexcept;
  };

  AtlasReport atlas_check(GraphOracle const& g,
                          std::size_t        samples,
                          std::uint64_t      seed);

}  // namespace earring

#endif  // EARRING_CHARTS_HPP_
