// Leader elections: joint-law validation, the (f, alpha) summary parameters,
// schedule determinism, and the one-time model's no-repeat guarantee.
#include <doctest.h>

#include <lcsim/leaders.hpp>
#include <lcsim/stats.hpp>

#include <set>

using namespace lcsim;

namespace {

LeaderConfig iid_cfg(std::vector<JointLawEntry> law, int population) {
    LeaderConfig cfg;
    cfg.model = LeaderModel::kIid;
    cfg.population = population;
    cfg.joint_law = std::move(law);
    return cfg;
}

}  // namespace

TEST_CASE("joint law validation") {
    CHECK_NOTHROW(iid_cfg({{1, false, 1.0}}, 1).validate());
    CHECK_THROWS(iid_cfg({{1, false, 0.7}}, 1).validate());           // mass missing
    CHECK_THROWS(iid_cfg({{2, false, 1.0}}, 1).validate());           // seats > population
    CHECK_THROWS(iid_cfg({{-1, false, 0.5}, {0, false, 0.5}}, 1).validate());
}

TEST_CASE("leader params hand examples") {
    SUBCASE("0.9 empty / 0.08 unique / 0.02 adversary") {
        LeaderParams p = leader_params(
            iid_cfg({{0, false, 0.9}, {1, false, 0.08}, {0, true, 0.02}}, 2));
        CHECK(p.f == doctest::Approx(0.1));
        CHECK(p.alpha == doctest::Approx(0.8));
    }
    SUBCASE("always uniquely honest") {
        LeaderParams p = leader_params(iid_cfg({{1, false, 1.0}}, 1));
        CHECK(p.f == doctest::Approx(1.0));
        CHECK(p.alpha == doctest::Approx(1.0));
    }
    SUBCASE("adversary-only leaders") {
        LeaderParams p = leader_params(iid_cfg({{0, true, 0.3}, {0, false, 0.7}}, 1));
        CHECK(p.f == doctest::Approx(0.3));
        CHECK(p.alpha == doctest::Approx(0.0));
    }
}

TEST_CASE("schedule is deterministic and draws distinct seats") {
    LeaderConfig cfg = iid_cfg({{1, false, 0.4}, {0, true, 0.1}, {2, false, 0.1}, {0, false, 0.4}}, 5);
    auto a = build_leader_schedule(cfg, 991, 500);
    auto b = build_leader_schedule(cfg, 991, 500);
    REQUIRE(a.size() == 500);
    for (size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].honest == b[i].honest);
        CHECK(a[i].adversary == b[i].adversary);
        // honest seats are distinct parties inside the population
        std::set<int> uniq(a[i].honest.begin(), a[i].honest.end());
        CHECK(uniq.size() == a[i].honest.size());
        for (int h : a[i].honest) {
            CHECK(h >= 0);
            CHECK(h < cfg.population);
        }
    }
}

TEST_CASE("leader symbols follow the slot classification") {
    SlotLeaders empty{};
    SlotLeaders unique{};
    unique.honest = {3};
    SlotLeaders pair{};
    pair.honest = {1, 2};
    SlotLeaders adv{};
    adv.adversary = true;
    SlotLeaders mixed{};
    mixed.honest = {1};
    mixed.adversary = true;
    CHECK(leader_symbol(empty) == TriSym::kBot);
    CHECK(leader_symbol(unique) == TriSym::kZero);
    CHECK(leader_symbol(pair) == TriSym::kOne);
    CHECK(leader_symbol(adv) == TriSym::kOne);
    CHECK(leader_symbol(mixed) == TriSym::kOne);
}

TEST_CASE("empirical f and alpha over 1e6 slots (3 SE)") {
    LeaderConfig cfg = iid_cfg({{0, false, 0.9}, {1, false, 0.08}, {0, true, 0.02}}, 3);
    auto sched = build_leader_schedule(cfg, 314159, 1000000);
    long long nonempty = 0, unique_honest = 0;
    for (const auto& L : sched) {
        if (!L.honest.empty() || L.adversary) ++nonempty;
        if (L.honest.size() == 1 && !L.adversary) ++unique_honest;
    }
    double f_hat = static_cast<double>(nonempty) / 1e6;
    double a_hat = static_cast<double>(unique_honest) / static_cast<double>(nonempty);
    CHECK(f_hat == doctest::Approx(0.099914).epsilon(1e-4));  // frozen at this seed
    CHECK(std::fabs(f_hat - 0.1) < 3.0 * binomial_se(0.1, 1000000));
    CHECK(std::fabs(a_hat - 0.8) < 3.0 * binomial_se(0.8, nonempty));
}

TEST_CASE("one-time model never re-elects an honest identity") {
    LeaderConfig cfg;
    cfg.model = LeaderModel::kOneTime;
    cfg.observers = 2;
    cfg.joint_law = {{1, false, 0.3}, {0, true, 0.1}, {2, false, 0.05}, {0, false, 0.55}};
    auto sched = build_leader_schedule(cfg, 77, 400);
    std::set<int> seen;
    for (const auto& L : sched) {
        for (int h : L.honest) {
            CHECK(h >= cfg.observers);  // observers are never elected
            CHECK(seen.insert(h).second);
        }
    }
    CHECK(!seen.empty());
}
