#include <set>

#include "doctest.h"
#include "hsle/error.hpp"
#include "hsle/link_patterns.hpp"

using namespace hsle;

TEST_SUITE("link_patterns") {
    TEST_CASE("Catalan counts") {
        const long long cat[] = {1, 1, 2, 5, 14, 42, 132, 429};
        for (int n = 0; n < 8; ++n) CHECK(catalan(n) == cat[n]);
        for (int n = 1; n <= 6; ++n) {
            const auto all = enumerate(n);
            CHECK(static_cast<long long>(all.size()) == catalan(n));
            std::set<std::string> seen;
            for (const auto& a : all) {
                CHECK(a.valid());
                seen.insert(a.str());
            }
            CHECK(seen.size() == all.size());
        }
    }

    TEST_CASE("parse and print") {
        const LinkPattern a = LinkPattern::parse("1-4,2-3");
        CHECK(a.N == 2);
        CHECK(a.str() == "1-4,2-3");
        CHECK(a.partner(1) == 4);
        CHECK(a.partner(3) == 2);
        CHECK(LinkPattern::parse("2-1, 4-3") == LinkPattern::from_links({{1, 2}, {3, 4}}));
        CHECK_THROWS_AS(LinkPattern::parse("1-3,2-4"), Error);
        CHECK_THROWS_AS(LinkPattern::parse("1-2,1-3"), Error);
        CHECK_THROWS_AS(LinkPattern::parse("1-x"), Error);
    }

    TEST_CASE("crossing links") {
        CHECK(links_cross({1, 3}, {2, 4}));
        CHECK_FALSE(links_cross({1, 4}, {2, 3}));
        CHECK_FALSE(links_cross({1, 2}, {3, 4}));
    }

    TEST_CASE("removing a link relabels the rest") {
        const LinkPattern a = LinkPattern::parse("1-6,2-3,4-5");
        CHECK(remove_link(a, {2, 3}).str() == "1-4,2-3");
        CHECK(remove_link(a, {1, 6}).str() == "1-2,3-4");
        CHECK_THROWS_AS(remove_link(a, {1, 2}), Error);
    }

    TEST_CASE("split at a link") {
        const LinkPattern a = LinkPattern::parse("1-6,2-3,4-5");
        const Split s = split(a, {1, 6});
        CHECK(s.right.str() == "1-2,3-4");
        CHECK(s.left.N == 0);
        const Split t = split(a, {2, 3});
        CHECK(t.right.N == 0);
        CHECK(t.left.str() == "1-4,2-3");
    }
}
