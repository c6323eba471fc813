#include <catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <fstream>
#include <memory>

#include "outaut/corpus.hpp"

using namespace outaut;

namespace {

struct Run {
  int code;
  std::string out;
};

Run cli(const std::string& args) {
  std::string cmd = std::string(OUTAUT_CLI_PATH) + " " + args + " 2>/dev/null";
  std::unique_ptr<FILE, int (*)(FILE*)> p(popen(cmd.c_str(), "r"), pclose);
  std::string out;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p.get())) > 0) out.append(buf.data(), n);
  int status = pclose(p.release());
  return {WEXITSTATUS(status), out};
}

}  // namespace

TEST_CASE("corpus loads and passes", "[cli]") {
  auto es = load_corpus(OUTAUT_CORPUS_PATH);
  REQUIRE(es.size() >= 30);
  for (std::size_t i = 1; i < es.size(); ++i) CHECK(es[i - 1].id < es[i].id);
  for (auto& e : es) CHECK((e.origin == "asserted-claim" || e.origin == "independent-check"));
  auto rep = CorpusRunner().run_all(es);
  CHECK(rep.ok());
  CHECK(rep.asserted() == 2);
  for (auto& o : rep.outcomes) {
    INFO(o.id << " " << o.error);
    CHECK(o.error.empty());
  }
}

TEST_CASE("corpus errors", "[cli]") {
  CHECK_THROWS_AS(load_corpus("/nonexistent/corpus.jsonl"), PreconditionError);
  std::string path = "corpus_bad.jsonl";
  {
    std::ofstream f(path);
    f << "{\"id\": \"x\", \"kind\": \"identity\", \"origin\": \"independent-check\", \"expected\": true}\n{oops\n";
  }
  CHECK_THROWS_AS(load_corpus(path), ParseError);
  {
    std::ofstream f(path);
    f << "{\"id\": \"x\", \"kind\": \"nosuch\", \"origin\": \"independent-check\", \"expected\": true}\n";
  }
  auto rep = CorpusRunner().run_all(load_corpus(path));
  REQUIRE(rep.outcomes.size() == 1);
  CHECK_FALSE(rep.outcomes[0].pass);
  CHECK_FALSE(rep.ok());
  std::remove(path.c_str());
}

TEST_CASE("cli exit codes", "[cli]") {
  CHECK(cli("symbol -a -1 -b -1 --place 2").out == "-1\n");
  CHECK(cli("symbol -a -1 -b -1 --place 2").code == 0);
  CHECK(cli("symbol -a -1 -b -1 --place 4").code == 1);
  CHECK(cli("quat -a 1 -b 2 --element '1+'").code == 1);
  CHECK(cli("outness --tower 'Q(i)[a1,a2][r,s,t]' --squares a1,a2,a3 --n 4 --even").out ==
        "Out1: holds\nOut2: fails\nOut3: fails\n");
  auto d = cli("--json descend -a -1 -b -1 -d 5 --entry '1;i' --entry '2;j+k' --entry '0;i-k'");
  CHECK(d.code == 0);
  auto j = json::parse(d.out);
  for (auto& [k, v] : j["checks"].items()) {
    if (v.is_array())
      for (auto& b : v) CHECK(b == true);
    else
      CHECK(v == true);
  }
  // an undecidable search budget yields exit 2
  CHECK(cli("--budget 1 --height 1 isotropy --tower 'Q[x]' --form '1,1,-(x^2+1)'").code == 2);
}

TEST_CASE("json output is deterministic and round-trips", "[cli][property]") {
  for (auto args : {"--json outness --odd --tower 'Q(i)[a1,a2]'", "--json outness --unitary --k Q --m 1",
                    "--json isotropy --form 1,1,1,-7", "--json quat -a -1 -b -1", "--json verify-paper"}) {
    auto a = cli(args), b = cli(args);
    INFO(args);
    CHECK(a.out == b.out);
    json j = json::parse(a.out);
    CHECK(json::parse(j.dump()) == j);
    CHECK(j.dump(2) + "\n" == a.out);
  }
}
