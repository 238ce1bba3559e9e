// Ternary strings, renewal indexing, and the compressed-clock view.
#include <doctest.h>

#include <lcsim/tristring.hpp>

using namespace lcsim;

TEST_CASE("parse/print round trip and 1-based access") {
    TriString w("0.1");
    CHECK(w.size() == 3);
    CHECK(w.at(1) == TriSym::kZero);
    CHECK(w.at(2) == TriSym::kBot);
    CHECK(w.at(3) == TriSym::kOne);
    CHECK(w.text() == "0.1");
    CHECK(TriString("").empty());
    CHECK_THROWS(TriString("0x1"));
}

TEST_CASE("symbol counting over closed slot ranges") {
    TriString w("0.110.0");
    CHECK(w.count_zero(1, 7) == 3);
    CHECK(w.count_one(1, 7) == 2);
    CHECK(w.count_nonempty(1, 7) == 5);
    CHECK(w.count_zero(2, 4) == 0);
    CHECK(w.count_one(3, 4) == 2);
    CHECK(w.count_zero(5, 3) == 0);  // empty range
}

TEST_CASE("nonempty_slots and slots_of") {
    TriString w("0.110.0");
    CHECK(w.nonempty_slots() == std::vector<int>{1, 3, 4, 5, 7});
    CHECK(w.slots_of(TriSym::kZero) == std::vector<int>{1, 5, 7});
    CHECK(w.slots_of(TriSym::kOne) == std::vector<int>{3, 4});
}

TEST_CASE("prefix keeps 1-based semantics") {
    TriString w("0.110.0");
    CHECK(w.prefix(4).text() == "0.11");
    CHECK(w.prefix(0).empty());
    CHECK(w.prefix(7).text() == w.text());
}

TEST_CASE("RenewalIndex walks non-empty slots") {
    TriString w("0.110.0");
    RenewalIndex r(w);
    CHECK(r.count() == 5);
    CHECK(r.slots() == std::vector<int>{1, 3, 4, 5, 7});
    CHECK(r.count_after(0) == 5);
    CHECK(r.count_after(1) == 4);
    CHECK(r.count_after(4) == 2);
    CHECK(r.count_after(7) == 0);
}

TEST_CASE("compress_process: entry 0 at s, then values at renewals after s") {
    // identity process with renewals at 3, 5, 9 from s = 0: (0, 3, 5, 9)
    TriString w("..0.0...0");
    RenewalIndex r(w);
    auto got = compress_process<int>([](int slot) { return slot; }, r, 0, -1);
    CHECK(got == std::vector<int>{0, 3, 5, 9});

    SUBCASE("base on a renewal slot excludes it from the tail") {
        auto from3 = compress_process<int>([](int slot) { return slot; }, r, 3, -1);
        CHECK(from3 == std::vector<int>{3, 5, 9});
    }
    SUBCASE("max_terms caps the tail length") {
        auto capped = compress_process<int>([](int slot) { return slot; }, r, 0, 2);
        CHECK(capped == std::vector<int>{0, 3, 5});
    }
}
