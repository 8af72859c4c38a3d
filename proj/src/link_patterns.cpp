#include "hsle/link_patterns.hpp"

#include <algorithm>
#include <sstream>

#include "hsle/error.hpp"

namespace hsle {

namespace {

Link canon(Link l) { return l.first < l.second ? l : Link{l.second, l.first}; }

void build(int lo, int hi, std::vector<Link>& cur, std::vector<std::vector<Link>>& out) {
    // pairs up lo..hi (inclusive), hi - lo + 1 even; callback via out when done
    if (lo > hi) {
        out.push_back(cur);
        return;
    }
    for (int m = lo + 1; m <= hi; m += 2) {
        cur.emplace_back(lo, m);
        std::vector<std::vector<Link>> inner;
        std::vector<Link> tmp;
        build(lo + 1, m - 1, tmp, inner);
        for (auto& in : inner) {
            const size_t mark = cur.size();
            cur.insert(cur.end(), in.begin(), in.end());
            build(m + 1, hi, cur, out);
            cur.resize(mark);
        }
        cur.pop_back();
    }
}

LinkPattern relabel(const std::vector<Link>& links, const std::vector<int>& keep) {
    // keep: sorted original indices that survive; position in keep is the new label - 1
    std::vector<Link> out;
    for (const Link& l : links) {
        const int a = static_cast<int>(std::lower_bound(keep.begin(), keep.end(), l.first) - keep.begin()) + 1;
        const int b = static_cast<int>(std::lower_bound(keep.begin(), keep.end(), l.second) - keep.begin()) + 1;
        out.emplace_back(a, b);
    }
    return LinkPattern::from_links(out);
}

}  // namespace

bool links_cross(Link x, Link y) {
    x = canon(x);
    y = canon(y);
    return (x.first < y.first && y.first < x.second && x.second < y.second) ||
           (y.first < x.first && x.first < y.second && y.second < x.second);
}

long long catalan(int n) {
    long long c = 1;
    for (int k = 0; k < n; ++k) c = c * 2 * (2 * k + 1) / (k + 2);
    return c;
}

LinkPattern LinkPattern::from_links(std::vector<Link> links) {
    for (auto& l : links) l = canon(l);
    std::sort(links.begin(), links.end());
    LinkPattern p;
    p.N = static_cast<int>(links.size());
    p.links = std::move(links);
    return p;
}

LinkPattern LinkPattern::parse(const std::string& text) {
    std::vector<Link> links;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.find_first_not_of(" \t") == std::string::npos) continue;
        const auto dash = item.find('-');
        if (dash == std::string::npos) fail(ErrorKind::Usage, "link pattern: expected a-b, got '" + item + "'");
        try {
            links.emplace_back(std::stoi(item.substr(0, dash)), std::stoi(item.substr(dash + 1)));
        } catch (const std::exception&) {
            fail(ErrorKind::Usage, "link pattern: bad integer in '" + item + "'");
        }
    }
    LinkPattern p = from_links(links);
    if (!p.valid()) fail(ErrorKind::Usage, "link pattern '" + text + "' is not a noncrossing pairing of 1..2N");
    return p;
}

std::string LinkPattern::str() const {
    std::string s;
    for (size_t i = 0; i < links.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(links[i].first) + '-' + std::to_string(links[i].second);
    }
    return s;
}

bool LinkPattern::valid() const {
    if (static_cast<int>(links.size()) != N) return false;
    std::vector<int> seen(2 * N + 1, 0);
    for (const Link& l : links) {
        if (l.first < 1 || l.second > 2 * N || l.first >= l.second) return false;
        if (seen[l.first]++ || seen[l.second]++) return false;
    }
    for (size_t i = 0; i < links.size(); ++i)
        for (size_t j = i + 1; j < links.size(); ++j)
            if (links_cross(links[i], links[j])) return false;
    return true;
}

int LinkPattern::partner(int i) const {
    for (const Link& l : links) {
        if (l.first == i) return l.second;
        if (l.second == i) return l.first;
    }
    fail(ErrorKind::NotFound, "index not covered by the pattern");
}

bool LinkPattern::contains(Link l) const {
    l = canon(l);
    return std::find(links.begin(), links.end(), l) != links.end();
}

std::vector<LinkPattern> enumerate(int N) {
    if (N < 0) fail(ErrorKind::Parameter, "enumerate: negative N");
    if (N > 12) fail(ErrorKind::Capacity, "enumerate: N > 12");
    std::vector<std::vector<Link>> raw;
    std::vector<Link> cur;
    build(1, 2 * N, cur, raw);
    std::vector<LinkPattern> out;
    out.reserve(raw.size());
    for (auto& r : raw) out.push_back(LinkPattern::from_links(r));
    return out;
}

LinkPattern remove_link(const LinkPattern& alpha, Link link) {
    link = canon(link);
    if (!alpha.contains(link)) fail(ErrorKind::NotFound, "remove_link: link not in pattern");
    std::vector<Link> rest;
    for (const Link& l : alpha.links)
        if (l != link) rest.push_back(l);
    std::vector<int> keep;
    for (int i = 1; i <= 2 * alpha.N; ++i)
        if (i != link.first && i != link.second) keep.push_back(i);
    return relabel(rest, keep);
}

Split split(const LinkPattern& alpha, Link link) {
    link = canon(link);
    if (!alpha.contains(link)) fail(ErrorKind::NotFound, "split: link not in pattern");
    const auto [a, b] = link;
    std::vector<Link> inside, outside;
    for (const Link& l : alpha.links) {
        if (l == link) continue;
        const bool in1 = a < l.first && l.first < b;
        const bool in2 = a < l.second && l.second < b;
        if (in1 != in2) fail(ErrorKind::Invariant, "split: link straddles the splitting link");
        (in1 ? inside : outside).push_back(l);
    }
    std::vector<int> keep_in, keep_out;
    for (int i = 1; i <= 2 * alpha.N; ++i) {
        if (i == a || i == b) continue;
        (a < i && i < b ? keep_in : keep_out).push_back(i);
    }
    return {relabel(inside, keep_in), relabel(outside, keep_out)};
}

}  // namespace hsle
