#include "cli.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>

#include "CLI11.hpp"

#include "earring/charts.hpp"
#include "earring/corefree.hpp"
#include "earring/graph.hpp"
#include "earring/lifting.hpp"
#include "earring/words.hpp"

namespace earring::cli {

  using json = nlohmann::json;

  namespace {

    std::string join(std::vector<std::string> const& tokens) {
      std::string out;
      for (auto const& t : tokens) {
        if (!out.empty()) {
          out += ' ';
        }
        out += t;
      }
      return out;
    }

    std::string str(bool b) {
      return b ? "true" : "false";
    }

    json word_json(std::span<Letter const> w) {
      json arr = json::array();
      for (auto x : w) {
        arr.push_back(x.value());
      }
      return arr;
    }

    json word_json(ReducedWord const& w) {
      return word_json(w.letters());
    }

    json labels_json(LabelSet const& s) {
      return s.indices();
    }

    json point_json(PointH const& x) {
      auto p = x.planar();
      json j = {{"origin", x.is_origin()}, {"planar", {p.x, p.y}}};
      if (!x.is_origin()) {
        j["circle"] = x.circle();
        j["t"]      = x.t();
      }
      return j;
    }

    json point_hat_json(GraphOracle const& g, PointHat const& p) {
      if (p.is_vertex()) {
        return {{"vertex", word_json(p.vertex().word())}};
      }
      auto const& e = p.edge();
      return {{"edge",
               {{"base", word_json(e.base.word())},
                {"label", e.label},
                {"kind", to_string(e.kind)},
                {"terminal", word_json(terminal(g, e).word())}}},
              {"t", p.t()}};
    }

    json chart_json(ChartId const& c) {
      json j = {{"kind", c.kind == ChartKind::edge ? "edge" : "vertex"},
                {"owner", word_json(c.owner.word())},
                {"range", c.range()}};
      if (c.edge) {
        j["label"]     = c.edge->label;
        j["edge_kind"] = to_string(c.edge->kind);
      } else {
        j["n"] = c.n;
      }
      return j;
    }

    // Shared payload of the graph queries.
    void graph_payload(GraphOracle const& g,
                       ReducedWord const& v,
                       bool               verdict,
                       CommandResult&     r) {
      auto const island = g.island_of(v);
      bool const alive  = g.survives(v);
      r.output["query"]   = word_json(v);
      r.output["verdict"] = verdict;
      r.output["island"]  = island ? json(*island) : json(nullptr);
      r.output["e_set"]
          = alive ? labels_json(g.e_set(g.vertex(v))) : json(nullptr);
      r.output["details"] = {{"survives", alive},
                             {"length", v.size()},
                             {"alternating_prefix",
                              v.alternating_prefix_length()}};
      r.text.push_back(
          "query=" + format_word(v) + " verdict=" + str(verdict) + " island="
          + (island ? std::to_string(*island) : std::string("none"))
          + " e_set="
          + (alive ? g.e_set(g.vertex(v)).to_string() : std::string("none")));
    }

    json trace_json(LiftTrace const& t) {
      json steps = json::array();
      for (auto const& s : t.steps) {
        steps.push_back({{"letter", s.letter.value()},
                         {"kind", to_string(s.kind)},
                         {"at", word_json(s.at.word())}});
      }
      return {{"start", word_json(t.start.word())},
              {"steps", steps},
              {"endpoint", word_json(t.endpoint.word())}};
    }

    void trace_text(LiftTrace const& t, CommandResult& r) {
      for (auto const& s : t.steps) {
        r.text.push_back(std::to_string(s.letter.value()) + " "
                         + to_string(s.kind) + " " + format_word(s.at.word()));
      }
    }

  }  // namespace

  std::string CommandResult::render() const {
    if (json) {
      nlohmann::json j = {{"command", command},
                          {"input", input},
                          {"status", exit == Exit::ok ? "ok" : "error"}};
      if (exit != Exit::usage) {
        j["output"] = output;
      }
      if (!message.empty()) {
        j["message"] = message;
      }
      return j.dump() + "\n";
    }
    std::string out;
    for (auto const& line : text) {
      out += line;
      out += '\n';
    }
    if (!message.empty()) {
      out += (exit == Exit::ok ? "" : "error: ") + message + "\n";
    }
    return out;
  }

  CommandResult run(std::vector<std::string> const& args) {
    CLI::App app{"Symbolic semicovering of the Hawaiian Earring", "earring"};
    app.require_subcommand(1);
    app.fallthrough();

    bool json_mode = false;
    app.add_flag("--json", json_mode, "Print one JSON object");

    std::vector<std::string> word_tokens;
    std::vector<std::string> start_tokens;
    std::string              spec;
    bool                     trace   = false;
    Index                    j       = 0;
    int                      radius  = 0;
    std::uint64_t            weight  = 0;
    std::size_t              samples = 1000;
    std::uint64_t            seed    = 1;
    unsigned                 threads = 0;

    auto add_word = [&](CLI::App* sub) {
      sub->add_option("word", word_tokens, "Word, e.g. `1 2 -1` or `1,2,-1` or `e`")
          ->required()
          ->expected(1, -1)
          ->allow_extra_args();
    };

    auto* reduce_cmd = app.add_subcommand("reduce", "Freely reduce a word");
    add_word(reduce_cmd);
    auto* enum_cmd = app.add_subcommand("enumerate", "The j-th enumerated word");
    enum_cmd->add_option("j", j)->required();
    auto* index_cmd = app.add_subcommand("index-of", "Enumeration index of a word");
    add_word(index_cmd);
    auto* anchor_cmd = app.add_subcommand("anchor", "The anchor word of island j");
    anchor_cmd->add_option("j", j)->required();

    auto* survives_cmd = app.add_subcommand("survives", "Is the word a vertex of Gamma*");
    add_word(survives_cmd);
    auto* island_cmd = app.add_subcommand("island", "Island containing the word");
    add_word(island_cmd);
    auto* ev_cmd = app.add_subcommand("ev", "Tree-label set E_v of a vertex");
    add_word(ev_cmd);
    auto* zpath_cmd = app.add_subcommand("zpath", "Z_j path of island j");
    zpath_cmd->add_option("j", j)->required();
    auto* cross_cmd = app.add_subcommand(
        "crosscheck", "Compare the two island-pruning rules around island j");
    cross_cmd->add_option("j", j)->required();
    cross_cmd->add_option("radius", radius)->required();

    auto* lift_cmd = app.add_subcommand("lift", "Lift an edge-word");
    add_word(lift_cmd);
    lift_cmd->add_option("--start", start_tokens, "Start vertex (default e)")
        ->expected(1, -1);
    lift_cmd->add_flag("--trace", trace, "Print one line per step");
    auto* ink_cmd = app.add_subcommand("in-k", "Is the class of the word in K");
    add_word(ink_cmd);

    auto* witness_cmd = app.add_subcommand("witness", "Conjugation certificate");
    add_word(witness_cmd);
    witness_cmd->add_flag("--trace", trace, "Print the full lift");
    auto* scan_cmd = app.add_subcommand("scan", "Certify all essential words up to a weight");
    scan_cmd->add_option("--max-weight", weight)->required();
    scan_cmd->add_option("--threads", threads, "0 = hardware concurrency");

    auto* qpoint_cmd = app.add_subcommand("q-point", "Image of a point under q");
    qpoint_cmd->add_option("spec", spec, "v:<word> or e:<word>:<label>:<t>")
        ->required();
    auto* charts_cmd = app.add_subcommand("charts", "Charts containing a point");
    charts_cmd->add_option("spec", spec, "v:<word> or e:<word>:<label>:<t>")
        ->required();
    auto* atlas_cmd = app.add_subcommand("atlas-check", "Randomized atlas checks");
    atlas_cmd->add_option("--samples", samples)->required();
    atlas_cmd->add_option("--seed", seed);

    CommandResult r;
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
      app.parse(std::move(reversed));
    } catch (CLI::CallForHelp const&) {
      r.command = "help";
      r.text.push_back(app.help());
      return r;
    } catch (CLI::ParseError const& e) {
      r.json    = std::find(args.begin(), args.end(), "--json") != args.end();
      r.command = app.get_subcommands().empty()
                      ? std::string()
                      : app.get_subcommands().front()->get_name();
      r.exit    = Exit::usage;
      r.message = e.what();
      return r;
    }

    auto* sub  = app.get_subcommands().front();
    r.command  = sub->get_name();
    r.json     = json_mode;
    auto const name = r.command;

    try {
      auto const g = GraphOracle::from_environment();

      auto parsed_word = [&] {
        auto text        = join(word_tokens);
        r.input["word"] = text;
        return parse_word(text);
      };

      if (name == "reduce") {
        auto w        = reduce(parsed_word());
        r.output["reduced"] = word_json(w);
        r.text.push_back(format_word(w));
      } else if (name == "enumerate") {
        r.input["j"] = j;
        auto w       = enumerate(j);
        r.output = {{"word", word_json(w)}, {"weight", earring::weight(w)}};
        r.text.push_back(format_word(w));
      } else if (name == "index-of") {
        auto w = parsed_word();
        auto k = index_of(w);
        r.output["j"] = k;
        r.text.push_back(std::to_string(k));
      } else if (name == "anchor") {
        r.input["j"] = j;
        auto a       = anchor(j);
        r.output     = {{"length", a.size()}, {"word", word_json(a)}};
        r.text.push_back(format_word(a));
      } else if (name == "survives") {
        auto v = reduce(parsed_word());
        graph_payload(g, v, g.survives(v), r);
      } else if (name == "island") {
        auto v = reduce(parsed_word());
        graph_payload(g, v, g.island_of(v).has_value(), r);
      } else if (name == "ev") {
        auto v = reduce(parsed_word());
        (void) g.vertex(v);
        graph_payload(g, v, true, r);
      } else if (name == "zpath") {
        r.input["j"] = j;
        auto isl     = g.island_data(j);
        json path    = json::array();
        std::string  line;
        for (auto const& z : isl->z_path) {
          path.push_back(word_json(z));
          line += (line.empty() ? "" : " | ") + format_word(z);
        }
        r.output = {{"j", j},
                    {"word", word_json(isl->word)},
                    {"level", isl->level},
                    {"anchor_length", isl->anchor.size()},
                    {"z_path", path},
                    {"root", word_json(isl->root)}};
        r.text.push_back("j=" + std::to_string(j) + " w=" + format_word(isl->word)
                         + " level=" + std::to_string(isl->level)
                         + " anchor_length=" + std::to_string(isl->anchor.size())
                         + " z_path=[" + line + "]");
      } else if (name == "crosscheck") {
        r.input = {{"j", j}, {"radius", radius}};
        auto rep = g.removal_cross_check(j, radius);
        json details = json::array();
        for (auto const& d : rep.disagreements) {
          details.push_back({{"vertex", word_json(d.vertex)},
                             {"prefix_rule_removes", d.prefix_rule_removes},
                             {"neighbour_rule_removes", d.neighbour_rule_removes},
                             {"final_agree", d.final_agree}});
        }
        r.output = {{"j", j},
                    {"radius", radius},
                    {"length_cap", rep.length_cap},
                    {"vertices_checked", rep.vertices_checked},
                    {"prefix_rule_removed", rep.prefix_rule_removed},
                    {"neighbour_rule_removed", rep.neighbour_rule_removed},
                    {"disagreements", rep.disagreements.size()},
                    {"unreconciled", rep.unreconciled()},
                    {"verdict", rep.disagreements.empty()},
                    {"details", details}};
        r.text.push_back(
            "j=" + std::to_string(j) + " radius=" + std::to_string(radius)
            + " checked=" + std::to_string(rep.vertices_checked)
            + " prefix_rule_removed=" + std::to_string(rep.prefix_rule_removed)
            + " neighbour_rule_removed=" + std::to_string(rep.neighbour_rule_removed)
            + " disagreements=" + std::to_string(rep.disagreements.size())
            + " unreconciled=" + std::to_string(rep.unreconciled()));
        for (auto const& d : rep.disagreements) {
          r.text.push_back("disagree " + format_word(d.vertex)
                           + " prefix_rule=" + str(d.prefix_rule_removes)
                           + " neighbour_rule=" + str(d.neighbour_rule_removes)
                           + " final_agree=" + str(d.final_agree));
        }
        if (!rep.disagreements.empty()) {
          r.exit    = Exit::violation;
          r.message = std::to_string(rep.disagreements.size())
                      + " disagreement(s) between the removal rules";
        }
      } else if (name == "lift") {
        auto w = parsed_word();
        Vertex start = g.base();
        if (!start_tokens.empty()) {
          r.input["start"] = join(start_tokens);
          start = g.vertex(reduce(parse_word(join(start_tokens))));
        }
        auto t = lift_word(g, w, start);
        r.output = trace_json(t);
        if (trace) {
          trace_text(t, r);
        }
        r.text.push_back("endpoint " + format_word(t.endpoint.word()));
      } else if (name == "in-k") {
        auto w       = parsed_word();
        bool verdict = in_K(g, w);
        r.output     = {{"verdict", verdict}};
        r.text.push_back(str(verdict));
      } else if (name == "witness") {
        auto w    = parsed_word();
        auto cert = witness_conjugator(g, w, trace);
        auto mid  = midpoint_structure_check(g, cert);
        r.output  = {{"j", cert.j},
                     {"beta_length", cert.beta.size()},
                     {"midpoint", word_json(cert.midpoint.word())},
                     {"endpoint", word_json(cert.conjugate_endpoint.word())},
                     {"verdict", cert.verdict},
                     {"midpoint_check", mid.ok()}};
        if (trace) {
          r.output["trace"] = trace_json(*cert.trace);
          trace_text(*cert.trace, r);
        }
        r.text.push_back("j=" + std::to_string(cert.j) + " beta_length="
                         + std::to_string(cert.beta.size()) + " endpoint="
                         + format_word(cert.conjugate_endpoint.word())
                         + " verdict=" + str(cert.verdict)
                         + " midpoint_check=" + str(mid.ok()));
        if (!cert.verdict || !mid.ok()) {
          r.exit    = Exit::violation;
          r.message = "certificate failed";
        }
      } else if (name == "scan") {
        r.input["max_weight"] = weight;
        auto rep              = core_free_scan(g, weight, threads);
        json entries          = json::array();
        for (auto const& e : rep.entries) {
          entries.push_back({{"j", e.j},
                             {"word", word_json(e.w)},
                             {"in_K", e.w_in_K},
                             {"verdict", e.verdict},
                             {"beta_length", e.beta_length},
                             {"endpoint_length", e.conjugate_endpoint.size()}});
        }
        r.output = {{"max_weight", weight},
                    {"enumerated", rep.enumerated},
                    {"trivial_skipped", rep.trivial_skipped},
                    {"checked", rep.entries.size()},
                    {"in_K", rep.in_K_count()},
                    {"out_of_K", rep.out_of_K_count()},
                    {"failures", rep.failures},
                    {"verdict", rep.ok()},
                    {"entries", entries}};
        r.text.push_back(
            "max_weight=" + std::to_string(weight) + " enumerated="
            + std::to_string(rep.enumerated) + " checked="
            + std::to_string(rep.entries.size()) + " trivial_skipped="
            + std::to_string(rep.trivial_skipped) + " in_K="
            + std::to_string(rep.in_K_count()) + " out_of_K="
            + std::to_string(rep.out_of_K_count()) + " failures="
            + std::to_string(rep.failures.size()));
        for (auto const& e : rep.entries) {
          r.text.push_back(std::to_string(e.j) + " " + format_word(e.w)
                           + " in_K=" + str(e.w_in_K)
                           + " verdict=" + str(e.verdict));
        }
        if (!rep.ok()) {
          r.exit    = Exit::violation;
          r.message = std::to_string(rep.failures.size())
                      + " word(s) without a certificate";
        }
      } else if (name == "q-point") {
        r.input["spec"] = spec;
        auto p          = parse_point(g, spec);
        auto x          = q_point(p);
        r.output = {{"point", point_hat_json(g, p)}, {"image", point_json(x)}};
        r.text.push_back(x.to_string());
      } else if (name == "charts") {
        r.input["spec"] = spec;
        auto p          = parse_point(g, spec);
        json arr        = json::array();
        for (auto const& c : charts_containing(g, p)) {
          arr.push_back(chart_json(c));
          r.text.push_back(c.to_string());
        }
        r.output = {{"point", point_hat_json(g, p)}, {"charts", arr}};
      } else if (name == "atlas-check") {
        r.input  = {{"samples", samples}, {"seed", seed}};
        auto rep = atlas_check(g, samples, seed);
        r.output = {{"samples", rep.samples},
                    {"round_trip_failures", rep.round_trip_failures},
                    {"planar_failures", rep.planar_failures},
                    {"max_planar_error", rep.max_planar_error},
                    {"domain_failures", rep.domain_failures},
                    {"overlap_failures", rep.overlap_failures},
                    {"cover_failures", rep.cover_failures},
                    {"disjoint_failures", rep.disjoint_failures},
                    {"range_failures", rep.range_failures},
                    {"rejection_failures", rep.rejection_failures},
                    {"verdict", rep.ok()}};
        r.text.push_back(
            "samples=" + std::to_string(rep.samples) + " round_trip="
            + std::to_string(rep.round_trip_failures) + " planar="
            + std::to_string(rep.planar_failures) + " domain="
            + std::to_string(rep.domain_failures) + " overlap="
            + std::to_string(rep.overlap_failures) + " cover="
            + std::to_string(rep.cover_failures) + " disjoint="
            + std::to_string(rep.disjoint_failures) + " range="
            + std::to_string(rep.range_failures) + " rejection="
            + std::to_string(rep.rejection_failures) + " verdict="
            + str(rep.ok()));
        if (!rep.ok()) {
          r.exit    = Exit::violation;
          r.message = "atlas check failed";
        }
      }
    } catch (std::exception const& e) {
      r.exit    = Exit::usage;
      r.message = e.what();
      r.output  = json::object();
      r.text.clear();
    }
    return r;
  }

}  // namespace earring::cli
