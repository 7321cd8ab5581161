#include <array>
#include <cstdio>
#include <cstdlib>
#include <sys/wait.h>

#include "catch2/catch_amalgamated.hpp"

#include "cli.hpp"

using earring::cli::Exit;
using earring::cli::run;
using nlohmann::json;

namespace {
  json run_json(std::vector<std::string> args) {
    args.insert(args.begin(), "--json");
    auto r = run(args);
    return json::parse(r.render());
  }

  struct Process {
    int         status;
    std::string out;
  };

  Process spawn(std::string const& args, std::string const& env = "") {
    std::string cmd = env + " " + EARRING_EXE + " " + args + " 2>&1";
    FILE*       pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string          out;
    std::array<char, 4096> buf;
    for (std::size_t n; (n = fread(buf.data(), 1, buf.size(), pipe)) > 0;) {
      out.append(buf.data(), n);
    }
    int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
  }
}  // namespace

TEST_CASE("in-k", "[cli]") {
  CHECK(run_json({"in-k", "3"})["output"]["verdict"] == true);
  CHECK(run_json({"in-k", "1"})["output"]["verdict"] == false);
  auto bad = run({"in-k", "0"});
  CHECK(bad.exit == Exit::usage);
  CHECK(json::parse(run({"--json", "in-k", "0"}).render())["status"] == "error");
  CHECK(run({"in-k", "1", "x"}).exit == Exit::usage);
}

TEST_CASE("word commands", "[cli]") {
  CHECK(run({"reduce", "1", "2", "-2", "3"}).render() == "1 3\n");
  CHECK(run({"reduce", "1,-1"}).render() == "e\n");
  CHECK(run({"enumerate", "9"}).render() == "3\n");
  CHECK(run({"index-of", "-1"}).render() == "2\n");
  CHECK(run({"anchor", "1"}).render() == "1 2 1 2\n");
  CHECK(run({"enumerate", "0"}).exit == Exit::usage);
}

TEST_CASE("graph commands", "[cli]") {
  CHECK(run({"ev", "e"}).render()
        == "query=e verdict=true island=none e_set={1,2}\n");
  auto j = run_json({"ev", "e"});
  CHECK(j["command"] == "ev");
  CHECK(j["status"] == "ok");
  CHECK(j["output"]["e_set"] == json::array({1, 2}));
  CHECK(j["output"]["island"].is_null());
  CHECK(run_json({"survives", "3"})["output"]["verdict"] == false);
  CHECK(run({"ev", "3"}).exit == Exit::usage);
  CHECK(run_json({"island", "1", "2", "1", "2"})["output"]["island"] == 1);
  auto z = run_json({"zpath", "1"});
  CHECK(z["output"]["z_path"] == json::parse("[[1,2,1,2],[1,2,1,2,1]]"));
  CHECK(z["output"]["level"] == 2);
}

TEST_CASE("crosscheck reports disagreements as a violation", "[cli]") {
  auto r = run({"crosscheck", "1", "2"});
  auto j = run_json({"crosscheck", "1", "2"});
  CHECK(j["output"]["unreconciled"] == 0);
  if (j["output"]["disagreements"] == 0) {
    CHECK(r.exit == Exit::ok);
  } else {
    CHECK(r.exit == Exit::violation);
    CHECK(j["status"] == "error");
    CHECK(j["output"]["disagreements"] > 0);
  }
}

TEST_CASE("lift", "[cli]") {
  CHECK(run({"lift", "1", "2"}).render() == "endpoint 1 2\n");
  CHECK(run({"lift", "3", "--trace"}).render() == "3 loop e\nendpoint e\n");
  CHECK(run({"lift", "-1", "--start", "1"}).render() == "endpoint e\n");
  auto j = run_json({"lift", "1", "3"});
  CHECK(j["output"]["steps"].size() == 2);
  CHECK(j["output"]["steps"][1]["kind"] == "loop");
}

TEST_CASE("witness and scan", "[cli]") {
  auto w = run_json({"witness", "3"});
  CHECK(w["output"]["j"] == 9);
  CHECK(w["output"]["beta_length"] == 52);
  CHECK(w["output"]["verdict"] == true);
  CHECK(run({"witness", "1", "-1"}).exit == Exit::usage);
  auto t = run({"witness", "1", "--trace"});
  CHECK(t.text.size() == 2 * 4 + 1 + 1);

  auto s = run_json({"scan", "--max-weight", "3"});
  CHECK(s["output"]["enumerated"] == 8);
  CHECK(s["output"]["checked"] == 6);
  CHECK(s["output"]["failures"].empty());
  CHECK(s["output"]["verdict"] == true);
}

TEST_CASE("chart commands", "[cli]") {
  CHECK(run({"q-point", "e:e:3:0.5"}).render() == "l3(0.5)\n");
  CHECK(run({"q-point", "v:1 2"}).render() == "0\n");
  auto c = run_json({"charts", "e:e:1:0.3"});
  CHECK(c["output"]["charts"].size() == 2);
  auto a = run_json({"atlas-check", "--samples", "100", "--seed", "3"});
  CHECK(a["output"]["verdict"] == true);
  CHECK(run({"q-point", "nonsense"}).exit == Exit::usage);
}

TEST_CASE("usage errors", "[cli]") {
  CHECK(run({}).exit == Exit::usage);
  CHECK(run({"bogus"}).exit == Exit::usage);
  CHECK(run({"scan"}).exit == Exit::usage);
  CHECK(run({"--help"}).exit == Exit::ok);
}

TEST_CASE("executable", "[cli]") {
  auto a = spawn("--json in-k 3");
  CHECK(a.status == 0);
  CHECK(json::parse(a.out)["output"]["verdict"] == true);
  CHECK(spawn("--json in-k 3").out == a.out);
  CHECK(spawn("in-k 0").status == 1);
  CHECK(spawn("crosscheck 1 1").status != 1);
  CHECK(spawn("ev e").out == "query=e verdict=true island=none e_set={1,2}\n");
  CHECK(spawn("ev -1 -2").status == 0);
  auto plain   = spawn("scan --max-weight 4");
  auto serial  = spawn("scan --max-weight 4 --threads 1");
  auto nocache = spawn("scan --max-weight 4", "EARRING_CACHE_BYTES=0");
  CHECK(plain.status == 0);
  CHECK(plain.out == serial.out);
  CHECK(plain.out == nocache.out);
  CHECK(spawn("survives 1 2 1 2 1", "EARRING_CACHE_BYTES=junk").status == 1);
}
