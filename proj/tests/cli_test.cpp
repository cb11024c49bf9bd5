#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "documents.hpp"
#include "effdiff/errors.hpp"

using namespace effdiff;
using namespace effdiff::cli;

namespace {

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

Document input_doc(const char* file) { return parse_document(slurp(std::filesystem::path(EFFDIFF_INPUTS) / file)); }

std::string bound(std::string name, std::vector<std::string> args, std::vector<std::string> fns = {}, bool eval = false,
                  bool symbolic = false) {
    BoundRequest r;
    r.name = std::move(name);
    r.args = std::move(args);
    r.functions = std::move(fns);
    r.eval = eval;
    r.symbolic = symbolic;
    return bound_command(r);
}

}  // namespace

TEST_CASE("document headers") {
    Document d = parse_document("effdiff/1 input dickson\n{\"n\": 2}\n");
    CHECK(d.kind == "input");
    CHECK(d.proc == "dickson");
    CHECK(d.body["n"] == 2);
    CHECK(parse_document(write_document(d)).body == d.body);
    CHECK_THROWS_AS(parse_document("effdiff/2 input dickson\n{}"), DomainError);
    CHECK_THROWS_AS(parse_document("effdiff/1 input\n{}"), DomainError);
    CHECK_THROWS_AS(parse_document("effdiff/1 input dickson\n{"), DomainError);
    CHECK(parse_document("effdiff/1 config\n").body.empty());
}

TEST_CASE("run config") {
    RunConfig c = RunConfig::from_json(Json{{"budget_bits", 64}, {"seed", 9}, {"ranking", "orderly"}});
    CHECK(c.budget_bits == 64);
    CHECK(c.seed == 9);
    CHECK(c.scan_cap == 4096);
    CHECK(RunConfig::from_json(c.to_json()).to_json() == c.to_json());
    CHECK_THROWS_AS(RunConfig::from_json(Json{{"ranking", "elimination"}}), DomainError);
    CHECK_THROWS_AS(RunConfig::from_json(Json{{"colour", 1}}), DomainError);
    CHECK_THROWS_AS(RunConfig::from_json(Json{{"scan_cap", 0}}), DomainError);
}

TEST_CASE("bound command") {
    CHECK(bound("g", {"2", "3"}, {}, true) == "81\n");
    CHECK(bound("g", {"2", "3"}) == "(g 2 3)\n");
    CHECK(bound("m", {"0", "2"}, {"i+2"}, true) == "10\n");
    CHECK(bound("m", {"i+2", "0", "2"}, {}, true) == "10\n");
    std::string star = bound("m_star", {"1"}, {"i+2"}, true);
    CHECK(star.find_first_not_of("0123456789\n") == std::string::npos);
    CHECK(bound("p_n", {"2", "2"}, {}, false, true) == bound("p_n", {"2", "2"}, {}, false, true));
    CHECK(bound("p_n", {"2", "2"}, {}, false, true).front() == '(');
    BoundRequest big;
    big.name = "e";
    big.args = {"4", "9"};
    big.eval = true;
    big.budget_bits = 64;
    CHECK(bound_command(big).rfind("RESIDUE ", 0) == 0);
    CHECK_THROWS_AS(bound("nope", {"1"}), DomainError);
    CHECK_THROWS_AS(bound("g", {"1"}), DomainError);
    CHECK_THROWS_AS(bound("g", {"1", "2", "3"}), DomainError);
    CHECK_THROWS_AS(bound("g", {"1", "x"}), DomainError);
    CHECK_THROWS_AS(bound("g", {"1", "2"}, {"i+1"}), DomainError);
}

TEST_CASE("every shipped input runs and replays") {
    std::size_t runs = 0;
    for (const auto& entry : std::filesystem::directory_iterator(EFFDIFF_INPUTS)) {
        Document in = parse_document(slurp(entry.path()));
        CAPTURE(entry.path().filename().string());
        if (entry.path().filename() == "charset_inconsistent.txt") {
            CHECK_THROWS_AS(run_procedure(in.proc, in.body, {}), Aborted);
            continue;
        }
        Json result = run_procedure(in.proc, in.body, {});
        Document out{"result", in.proc, result};
        Document back = parse_document(write_document(out));
        auto fails = verify_result(back.proc, back.body);
        CHECK_MESSAGE(fails.empty(), (fails.empty() ? "" : fails.front()));
        ++runs;
    }
    CHECK(runs == 11);
}

TEST_CASE("worked example remainders") {
    Document in = input_doc("pseudodivide_step.txt");
    Json res = run_procedure(in.proc, in.body, {})["result"];
    CHECK(res["steps"][0]["display"] == "S_g1*(z + T_f) - x*(d1 d2 y + 1)*(d1 x)^2");
    CHECK(res["steps"][1]["display"] == "I_g2*(z + T_f) - x^2");
}

TEST_CASE("dickson and membership outputs") {
    Document d = input_doc("dickson.txt");
    CHECK(run_procedure(d.proc, d.body, {})["result"]["pair"] == "(1,7)");
    Document m = input_doc("membership.txt");
    Json res = run_procedure(m.proc, m.body, {})["result"];
    CHECK(res["status"] == "found");
    CHECK(res["certificate"]["cofactors"].size() == 1);
    CHECK(res["certificate"]["cofactors"][0]["cofactor"] == "1");
}

TEST_CASE("tampered results are rejected") {
    Document m = input_doc("membership.txt");
    Json res = run_procedure(m.proc, m.body, {});
    res["result"]["certificate"]["cofactors"][0]["cofactor"] = "2";
    CHECK_FALSE(verify_result("membership", res).empty());

    Document p = input_doc("pseudodivide_full.txt");
    Json pr = run_procedure(p.proc, p.body, {});
    pr["result"]["certificate"]["remainder"] = "u";
    CHECK_FALSE(verify_result("pseudodivide", pr).empty());

    Document d = input_doc("dickson.txt");
    Json dr = run_procedure(d.proc, d.body, {});
    dr["result"]["j"] = 6;
    CHECK_FALSE(verify_result("dickson", dr).empty());

    Document c = input_doc("charset_split.txt");
    Json cr = run_procedure(c.proc, c.body, {});
    cr["result"]["sigma"] = Json::array({"v"});
    CHECK_FALSE(verify_result("charset", cr).empty());
}

TEST_CASE("malformed inputs") {
    CHECK_THROWS_AS(run_procedure("nope", Json::object(), {}), DomainError);
    CHECK_THROWS_AS(run_procedure("dickson", Json{{"D", "i+2"}}, {}), DomainError);
    CHECK_THROWS_AS(run_procedure("membership", Json{{"n", 2}, {"h", 3}, {"gens", Json::array()}, {"D", 1}}, {}),
                    DomainError);
    CHECK_THROWS_AS(run_procedure("autoreduce", Json{{"ring", {{"n", 1}, {"m", 1}}}, {"set", {"x9"}}}, {}), DomainError);
}

TEST_CASE("identical inputs give identical documents") {
    for (const char* f : {"autoreduce.txt", "charset_split.txt", "hilbert_chain.txt", "syzygy.txt"}) {
        Document in = input_doc(f);
        CHECK(write_document({"result", in.proc, run_procedure(in.proc, in.body, {})}) ==
              write_document({"result", in.proc, run_procedure(in.proc, in.body, {})}));
    }
}
