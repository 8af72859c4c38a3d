#pragma once

#include <string>
#include <utility>
#include <vector>

namespace hsle {

using Link = std::pair<int, int>;

// Noncrossing pair partition of {1..2N}; links stored as (min,max) sorted by first index.
struct LinkPattern {
    int N = 0;
    std::vector<Link> links;

    static LinkPattern from_links(std::vector<Link> links);
    static LinkPattern parse(const std::string& text);  // "1-4,2-3"
    std::string str() const;
    bool valid() const;
    int partner(int i) const;
    bool contains(Link l) const;
    bool operator==(const LinkPattern&) const = default;
};

bool links_cross(Link x, Link y);
long long catalan(int n);

std::vector<LinkPattern> enumerate(int N);
LinkPattern remove_link(const LinkPattern& alpha, Link link);

struct Split {
    LinkPattern right;  // links nested strictly inside (a, b)
    LinkPattern left;   // links in the complementary arc
};
Split split(const LinkPattern& alpha, Link link);

}  // namespace hsle
