#include <catch2/catch_amalgamated.hpp>

#include "justness/corpus.hpp"
#include "justness/io.hpp"

using namespace justness;

TEST_CASE("LTS as JSON and DOT")
{
    auto lts = explore(named_example("broadcast_discard"));
    Json j = to_json(lts);
    CHECK(j["dialect"] == "abcd");
    CHECK(j["states"].size() == lts.states().size());
    CHECK(j["derivations"].size() == lts.derivations().size());
    for (const auto& d : j["derivations"]) {
        CHECK(d.contains("name"));
        CHECK(d.contains("class"));
        CHECK(d["source"].get<std::size_t>() < lts.states().size());
    }
    std::string dot = to_dot(lts);
    CHECK(dot.rfind("digraph", 0) == 0);
    CHECK(dot.find("dashed") != std::string::npos);
    CHECK(dot.back() == '\n');
}

TEST_CASE("concurrency matrix")
{
    auto lts = explore(named_example("broadcast"));
    auto m = conc_matrix(lts, ConcVariant::Dyn);
    REQUIRE(m.size() == lts.derivations().size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        bool domain = in_tr_sbullet(lts.derivations()[i]);
        for (int x : m[i]) CHECK((domain ? x >= 0 : x == -1));
    }
    std::string csv = matrix_csv(m);
    CHECK(std::count(csv.begin(), csv.end(), '\n') >= static_cast<long>(m.size()));
    Json mj = matrix_json(lts, m, ConcVariant::Dyn);
    CHECK(mj["variant"] == "dyn");
}

TEST_CASE("lasso files")
{
    auto lts = explore(named_example("alice_cataline"));
    Lasso pi = lasso_from_json(Json::parse(R"({"stem": ["t"], "cycle": ["call"]})"), lts);
    CHECK(pi.stem().size() == 1);
    CHECK(pi.cycle().size() == 1);
    Json back = to_json(pi);
    Lasso again = lasso_from_json(back, lts);
    CHECK(again.str() == pi.str());

    Lasso by_index = lasso_from_json(Json::parse(R"({"cycle": [0]})"), lts);
    CHECK(by_index.cycle().front().step == lts.derivations()[0]);
    CHECK_THROWS(lasso_from_json(Json::parse(R"({"stem": ["nosuch"]})"), lts));

    Json v = to_json(is_just(pi, {}));
    CHECK(v["holds"] == true);
    Json w = to_json(is_just(lasso_from_json(Json::parse(R"({"cycle": ["call"]})"), lts), {}));
    CHECK(w["holds"] == false);
    CHECK(w.contains("witness"));
}

TEST_CASE("abstract lasso and task files")
{
    auto lts = explore(named_example("alice_cataline"));
    AbstractLasso rho = abstract_lasso_from_json(Json::parse(R"({"cycle": ["call"]})"), lts);
    CHECK(rho.cycle.size() == 1);
    CHECK_FALSE(abstract_is_just(rho, {}).holds);
    TaskFamily t = tasks_from_json(Json::parse(R"({"calls": [0], "all": [0, 1]})"), lts);
    CHECK(t.size() == 2);
    CHECK_THROWS_AS(read_json_file("/nonexistent/file.json"), Error);
}
