#include "hsle/ising.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "hsle/error.hpp"
#include "hsle/mc.hpp"

namespace hsle {

namespace {

int spin_of(Boundary b) { return b == Boundary::Plus ? 1 : (b == Boundary::Minus ? -1 : 0); }

const char* name_of(Boundary b) { return b == Boundary::Plus ? "plus" : (b == Boundary::Minus ? "minus" : "free"); }

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

[[noreturn]] void bad_line(int line, const std::string& field, const std::string& msg) {
    fail(ErrorKind::Parameter, "domain line " + std::to_string(line) + ", field '" + field + "': " + msg);
}

int parse_int(const std::string& v, int line, const std::string& field) {
    try {
        size_t pos = 0;
        const int x = std::stoi(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        bad_line(line, field, "expected an integer, got '" + v + "'");
    }
}

// ring index of a site just outside the rectangle, -1 for the four corner sites and anything further out
int ring_index(int W, int H, int i, int j) {
    if (j == -1 && i >= 0 && i < W) return i;
    if (i == W && j >= 0 && j < H) return W + j;
    if (j == H && i >= 0 && i < W) return W + H + (W - 1 - i);
    if (i == -1 && j >= 0 && j < H) return 2 * W + H + (H - 1 - j);
    return -1;
}

struct Ghosts {
    std::vector<signed char> ring;  // spin per ring index, 0 on free arcs
};

Ghosts ghosts_of(const LatticeDomain& dom) {
    Ghosts g;
    g.ring.resize(dom.ring_size());
    for (int r = 0; r < dom.ring_size(); ++r) g.ring[r] = static_cast<signed char>(spin_of(dom.ring_condition(r)));
    return g;
}

class Wolff {
public:
    Wolff(const LatticeDomain& dom, double beta) : W_(dom.width), H_(dom.height), g_(ghosts_of(dom)) {
        p_ = 1.0 - std::exp(-2.0 * beta);
        stamp_.assign(static_cast<size_t>(W_) * H_, 0);
    }

    // returns true when the cluster flipped
    bool step(SpinConfig& c, Rng& rng) {
        std::uniform_int_distribution<int> pick(0, W_ * H_ - 1);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        const int s0 = pick(rng);
        const signed char spin = c.spins[s0];
        ++gen_;
        stack_.clear();
        stack_.push_back(s0);
        stamp_[s0] = gen_;
        size_t head = 0;
        while (head < stack_.size()) {
            const int s = stack_[head++];
            const int i = s % W_, j = s / W_;
            const int ni[4] = {i + 1, i - 1, i, i};
            const int nj[4] = {j, j, j + 1, j - 1};
            for (int k = 0; k < 4; ++k) {
                if (ni[k] < 0 || ni[k] >= W_ || nj[k] < 0 || nj[k] >= H_) {
                    const int r = ring_index(W_, H_, ni[k], nj[k]);
                    if (g_.ring[r] == spin && u(rng) < p_) return false;
                    continue;
                }
                const int t = nj[k] * W_ + ni[k];
                if (stamp_[t] == gen_ || c.spins[t] != spin) continue;
                if (u(rng) < p_) {
                    stamp_[t] = gen_;
                    stack_.push_back(t);
                }
            }
        }
        for (int s : stack_) c.spins[s] = static_cast<signed char>(-spin);
        return true;
    }

private:
    int W_, H_;
    Ghosts g_;
    double p_;
    std::vector<unsigned> stamp_;
    unsigned gen_ = 0;
    std::vector<int> stack_;
};

SpinConfig random_start(const LatticeDomain& dom, Rng& rng) {
    SpinConfig c;
    c.width = dom.width;
    c.height = dom.height;
    c.spins.resize(static_cast<size_t>(dom.width) * dom.height);
    std::bernoulli_distribution coin(0.5);
    for (auto& s : c.spins) s = coin(rng) ? 1 : -1;
    return c;
}

}  // namespace

std::pair<int, int> LatticeDomain::ring_site(int r) const {
    const int W = width, H = height, P = ring_size();
    r = ((r % P) + P) % P;
    if (r < W) return {r, -1};
    if (r < W + H) return {W, r - W};
    if (r < 2 * W + H) return {W - 1 - (r - W - H), H};
    return {-1, H - 1 - (r - 2 * W - H)};
}

Boundary LatticeDomain::ring_condition(int r) const {
    const int P = ring_size();
    int off = (((r - start) % P) + P) % P;
    for (const Arc& a : arcs) {
        if (off < a.length) return a.condition;
        off -= a.length;
    }
    fail(ErrorKind::Invariant, "LatticeDomain: arcs do not cover the ring");
}

std::vector<int> LatticeDomain::marks() const {
    std::vector<int> m;
    int r = start;
    for (const Arc& a : arcs) {
        m.push_back(((r % ring_size()) + ring_size()) % ring_size());
        r += a.length;
    }
    return m;
}

std::pair<int, int> LatticeDomain::mark_vertex(int k) const {
    const auto ms = marks();
    if (k < 0 || k >= static_cast<int>(ms.size())) fail(ErrorKind::Parameter, "mark_vertex: mark index out of range");
    const int m = ms[k];
    const int W = width, H = height;
    if (m > 0 && m < W) return {m, 0};
    if (m > W && m < W + H) return {W, m - W};
    if (m > W + H && m < 2 * W + H) return {2 * W + H - m, H};
    if (m > 2 * W + H) return {0, 2 * W + 2 * H - m};
    fail(ErrorKind::Parameter, "mark_vertex: mark " + std::to_string(k) + " sits at a corner");
}

void LatticeDomain::validate() const {
    if (width < 2 || height < 2) fail(ErrorKind::Parameter, "LatticeDomain: width and height must be at least 2");
    if (arcs.size() != 2 && arcs.size() != 4) fail(ErrorKind::Parameter, "LatticeDomain: expected 2 or 4 arcs");
    long total = 0;
    for (const Arc& a : arcs) {
        if (a.length < 1) fail(ErrorKind::Parameter, "LatticeDomain: arc lengths must be positive");
        total += a.length;
    }
    if (total != ring_size())
        fail(ErrorKind::Parameter, "LatticeDomain: arc lengths sum to " + std::to_string(total) + ", ring has " +
                                       std::to_string(ring_size()) + " sites");
    for (size_t k = 0; k < arcs.size(); ++k) mark_vertex(static_cast<int>(k));
}

LatticeDomain LatticeDomain::parse(const std::string& text) {
    LatticeDomain d;
    bool have_w = false, have_h = false, have_arcs = false;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto hash = raw.find('#');
        const std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (s.empty()) continue;
        const auto eq = s.find('=');
        if (eq == std::string::npos) bad_line(line, s, "expected key = value");
        const std::string key = trim(s.substr(0, eq)), val = trim(s.substr(eq + 1));
        if (key == "width") {
            d.width = parse_int(val, line, key);
            have_w = true;
        } else if (key == "height") {
            d.height = parse_int(val, line, key);
            have_h = true;
        } else if (key == "start") {
            d.start = parse_int(val, line, key);
        } else if (key == "arcs") {
            std::istringstream items(val);
            std::string item;
            while (items >> item) {
                const auto colon = item.find(':');
                if (colon == std::string::npos) bad_line(line, key, "expected length:condition, got '" + item + "'");
                Arc a;
                a.length = parse_int(item.substr(0, colon), line, key);
                const std::string c = item.substr(colon + 1);
                if (c == "plus" || c == "+")
                    a.condition = Boundary::Plus;
                else if (c == "minus" || c == "-")
                    a.condition = Boundary::Minus;
                else if (c == "free")
                    a.condition = Boundary::Free;
                else
                    bad_line(line, key, "unknown condition '" + c + "' (plus, minus or free)");
                d.arcs.push_back(a);
            }
            have_arcs = true;
        } else {
            bad_line(line, key, "unknown key");
        }
    }
    if (!have_w) fail(ErrorKind::Parameter, "domain: missing field 'width'");
    if (!have_h) fail(ErrorKind::Parameter, "domain: missing field 'height'");
    if (!have_arcs) fail(ErrorKind::Parameter, "domain: missing field 'arcs'");
    d.validate();
    return d;
}

LatticeDomain LatticeDomain::load(const std::string& path) {
    std::ifstream f(path);
    if (!f) fail(ErrorKind::Usage, "cannot open domain file " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse(ss.str());
}

std::string LatticeDomain::to_string() const {
    std::ostringstream o;
    o << "width = " << width << "\nheight = " << height << "\nstart = " << start << "\narcs =";
    for (const Arc& a : arcs) o << ' ' << a.length << ':' << name_of(a.condition);
    o << '\n';
    return o.str();
}

LatticeDomain LatticeDomain::dobrushin(int width, int height) {
    if (width < 2 || height < 2) fail(ErrorKind::Parameter, "dobrushin: width and height must be at least 2");
    LatticeDomain d;
    d.width = width;
    d.height = height;
    const int a = width / 2;
    const int b = 2 * width + height - a;  // top vertex (a, height)
    d.start = a;
    d.arcs = {{b - a, Boundary::Minus}, {d.ring_size() - (b - a), Boundary::Plus}};
    d.validate();
    return d;
}

LatticeDomain LatticeDomain::quad(int width, int height, Boundary bottom, Boundary right, Boundary top, Boundary left) {
    LatticeDomain d;
    d.width = width;
    d.height = height;
    d.start = 1;
    d.arcs = {{width, bottom}, {height, right}, {width, top}, {height, left}};
    d.validate();
    return d;
}

long thermalization_floor(const LatticeDomain& dom) { return 100L * std::max(dom.width, dom.height); }

SpinConfig sample_critical(const LatticeDomain& dom, std::uint64_t seed, const SamplerOptions& opt) {
    dom.validate();
    Rng rng = make_stream(seed, 0x49534e47ULL);
    SpinConfig c = random_start(dom, rng);
    Wolff w(dom, opt.beta);
    const long steps = std::max(opt.steps, thermalization_floor(dom));
    for (long s = 0; s < steps; ++s) w.step(c, rng);
    return c;
}

double energy(const SpinConfig& c, const LatticeDomain& dom) {
    const Ghosts g = ghosts_of(dom);
    const int W = c.width, H = c.height;
    double e = 0.0;
    for (int j = 0; j < H; ++j) {
        for (int i = 0; i < W; ++i) {
            const int s = c.at(i, j);
            if (i + 1 < W) e -= s * c.at(i + 1, j);
            if (j + 1 < H) e -= s * c.at(i, j + 1);
            if (i == 0) e -= s * g.ring[ring_index(W, H, -1, j)];
            if (i == W - 1) e -= s * g.ring[ring_index(W, H, W, j)];
            if (j == 0) e -= s * g.ring[ring_index(W, H, i, -1)];
            if (j == H - 1) e -= s * g.ring[ring_index(W, H, i, H)];
        }
    }
    return e / (static_cast<double>(W) * H);
}

double energy_autocorrelation(const LatticeDomain& dom, std::uint64_t seed, long lag, long n_samples, double beta) {
    dom.validate();
    if (lag < 1 || n_samples < 10) fail(ErrorKind::Parameter, "energy_autocorrelation: need lag >= 1, n >= 10");
    Rng rng = make_stream(seed, 0x41434f52ULL);
    SpinConfig c = random_start(dom, rng);
    Wolff w(dom, beta);
    for (long s = 0; s < thermalization_floor(dom); ++s) w.step(c, rng);
    std::vector<double> e;
    e.reserve(n_samples);
    for (long k = 0; k < n_samples; ++k) {
        for (long s = 0; s < lag; ++s) w.step(c, rng);
        e.push_back(energy(c, dom));
    }
    double mean = 0.0;
    for (double x : e) mean += x;
    mean /= static_cast<double>(e.size());
    double v = 0.0, cov = 0.0;
    for (size_t k = 0; k < e.size(); ++k) {
        v += (e[k] - mean) * (e[k] - mean);
        if (k + 1 < e.size()) cov += (e[k] - mean) * (e[k + 1] - mean);
    }
    return v > 0.0 ? cov / v : 0.0;
}

InterfacePath trace_interface(const SpinConfig& cfg, const LatticeDomain& dom, int start_mark, Chirality chirality) {
    const int W = dom.width, H = dom.height;
    if (cfg.width != W || cfg.height != H) fail(ErrorKind::Parameter, "trace_interface: configuration size mismatch");
    const Ghosts g = ghosts_of(dom);
    auto face = [&](int i, int j) -> int {
        if (i >= 0 && i < W && j >= 0 && j < H) return cfg.at(i, j);
        const int r = ring_index(W, H, i, j);
        return r < 0 ? 0 : g.ring[r];
    };
    // face whose center is v + (ox, oy) / 2 for ox, oy in {-1, 1}
    auto face_at = [&](int vx, int vy, int ox, int oy) { return face(vx + (ox > 0 ? 0 : -1), vy + (oy > 0 ? 0 : -1)); };

    const auto [x0, y0] = dom.mark_vertex(start_mark);
    int dx = 0, dy = 0;  // inward normal
    if (y0 == 0)
        dy = 1;
    else if (x0 == W)
        dx = -1;
    else if (y0 == H)
        dy = -1;
    else
        dx = 1;
    const int n_marks = static_cast<int>(dom.arcs.size());
    std::vector<std::pair<int, int>> mark_v(n_marks);
    for (int k = 0; k < n_marks; ++k) mark_v[k] = dom.mark_vertex(k);

    InterfacePath p;
    p.start_mark = start_mark;
    const int s = face_at(x0, y0, -dx - dy, -dy + dx);  // behind-left: -d + rot(d)
    const int sr = face_at(x0, y0, -dx + dy, -dy - dx);
    if (s == 0 || sr != -s) fail(ErrorKind::Parameter, "trace_interface: mark is not a plus/minus junction");
    p.left_spin = s;
    p.vertices.push_back({x0, y0});
    int x = x0, y = y0;
    const long cap = 4L * (W + 1) * (H + 1) + 8;
    for (long step = 0; step < cap; ++step) {
        const int rx = -dy, ry = dx;  // rot(d)
        const int fl = face_at(x, y, dx + rx, dy + ry);
        const int fr = face_at(x, y, dx - rx, dy - ry);
        const bool left_ok = fl == -s;
        const bool straight_ok = fl == s && fr == -s;
        const bool right_ok = fr == s;
        int ex, ey;
        if (chirality == Chirality::TurnLeft ? left_ok : right_ok) {
            ex = chirality == Chirality::TurnLeft ? rx : -rx;
            ey = chirality == Chirality::TurnLeft ? ry : -ry;
        } else if (straight_ok) {
            ex = dx;
            ey = dy;
        } else if (chirality == Chirality::TurnLeft ? right_ok : left_ok) {
            ex = chirality == Chirality::TurnLeft ? -rx : rx;
            ey = chirality == Chirality::TurnLeft ? -ry : ry;
        } else {
            return p;  // next to a free arc
        }
        x += ex;
        y += ey;
        dx = ex;
        dy = ey;
        if (x < 0 || x > W || y < 0 || y > H) fail(ErrorKind::Invariant, "trace_interface: path left the domain");
        p.vertices.push_back({x, y});
        for (int k = 0; k < n_marks; ++k) {
            if (k != start_mark && mark_v[k] == std::make_pair(x, y)) {
                p.end_mark = k;
                return p;
            }
        }
    }
    fail(ErrorKind::Invariant, "trace_interface: step budget exhausted");
}

CrossingEvents crossing_events(const SpinConfig& cfg, const LatticeDomain& dom) {
    if (dom.arcs.size() != 4) fail(ErrorKind::Parameter, "crossing_events: needs four marked points");
    const int W = cfg.width, H = cfg.height;
    if (W != dom.width || H != dom.height) fail(ErrorKind::Parameter, "crossing_events: configuration size mismatch");
    // arc index seen by each interior boundary site
    std::vector<int> arc_of(static_cast<size_t>(W) * H, -1);
    const auto ms = dom.marks();
    for (int k = 0; k < 4; ++k) {
        for (int t = 0; t < dom.arcs[k].length; ++t) {
            auto [i, j] = dom.ring_site(ms[k] + t);
            i = std::clamp(i, 0, W - 1);
            j = std::clamp(j, 0, H - 1);
            arc_of[static_cast<size_t>(j) * W + i] = k;
        }
    }
    auto connects = [&](int spin, int from, int to, bool star) {
        std::vector<char> seen(static_cast<size_t>(W) * H, 0);
        std::vector<int> queue;
        for (int s = 0; s < W * H; ++s) {
            if (arc_of[s] == from && cfg.spins[s] == spin) {
                seen[s] = 1;
                queue.push_back(s);
            }
        }
        for (size_t h = 0; h < queue.size(); ++h) {
            const int s = queue[h];
            if (arc_of[s] == to) return true;
            const int i = s % W, j = s / W;
            for (int di = -1; di <= 1; ++di) {
                for (int dj = -1; dj <= 1; ++dj) {
                    if ((di == 0 && dj == 0) || (!star && di != 0 && dj != 0)) continue;
                    const int a = i + di, b = j + dj;
                    if (a < 0 || a >= W || b < 0 || b >= H) continue;
                    const int t = b * W + a;
                    if (seen[t] || cfg.spins[t] != spin) continue;
                    seen[t] = 1;
                    queue.push_back(t);
                }
            }
        }
        return false;
    };
    CrossingEvents ev;
    ev.v_minus = connects(-1, 0, 2, false);
    ev.h_plus = connects(1, 1, 3, false);
    ev.h_plus_star = connects(1, 1, 3, true);
    return ev;
}

}  // namespace hsle
