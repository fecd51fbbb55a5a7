#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "splash/curve.hpp"

namespace splash {

namespace {

struct Seg {
    Vec2 a, b;  // original coordinates
};

int index_dist(int i, int j, int n) {
    int d = std::abs(i - j) % n;
    return std::min(d, n - d);
}

bool transversal(const Seg& s, const Seg& t) {
    const auto orient = [](const Vec2& u, const Vec2& v, const Vec2& w) {
        return (v - u).cross(w - u);
    };
    const double d1 = orient(s.a, s.b, t.a);
    const double d2 = orient(s.a, s.b, t.b);
    const double d3 = orient(t.a, t.b, s.a);
    const double d4 = orient(t.a, t.b, s.b);
    // Endpoint touches (a vanishing orientation) are contacts, not crossings.
    if (d1 == 0.0 || d2 == 0.0 || d3 == 0.0 || d4 == 0.0) return false;
    return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0));
}

SegmentCrossing make_crossing(int i, int j, const Seg& s, const Seg& t) {
    SegmentCrossing c;
    c.seg_a = i;
    c.seg_b = j;
    const Vec2 r = s.b - s.a;
    const Vec2 q = t.b - t.a;
    const double den = r.cross(q);
    c.ta = (t.a - s.a).cross(q) / den;
    c.tb = (t.a - s.a).cross(r) / den;
    c.point = s.a + c.ta * r;
    return c;
}

// Bentley-Ottmann sweep on a slightly rotated copy of the polyline. The
// rotation removes vertical segments and endpoint x-ties from generic input;
// all reported quantities are computed from the original coordinates.
class Sweep {
public:
    explicit Sweep(std::vector<Seg> segs) : segs_(std::move(segs)), n_(static_cast<int>(segs_.size())) {
        const double ang = 1e-3;  // fixed shear angle, deterministic
        cs_ = std::cos(ang);
        sn_ = std::sin(ang);
        rot_.resize(segs_.size());
        double scale = 0.0;
        for (size_t i = 0; i < segs_.size(); ++i) {
            Vec2 a = rotate(segs_[i].a);
            Vec2 b = rotate(segs_[i].b);
            if (b.x < a.x || (b.x == a.x && b.y < a.y)) std::swap(a, b);
            rot_[i] = {a, b};
            scale = std::max({scale, std::abs(a.x), std::abs(b.x), std::abs(a.y), std::abs(b.y)});
        }
        delta_ = 1e-12 * std::max(scale, 1.0);
    }

    std::vector<SegmentCrossing> run() {
        for (int i = 0; i < n_; ++i) {
            queue_.insert({rot_[i].a.x, rot_[i].a.y, kLeft, i, -1});
            queue_.insert({rot_[i].b.x, rot_[i].b.y, kRight, i, -1});
        }
        while (!queue_.empty()) {
            const Event ev = *queue_.begin();
            queue_.erase(queue_.begin());
            sweep_x_ = ev.x;
            eval_x_ = ev.type == kCross ? sweep_x_ + delta_ : sweep_x_;
            switch (ev.type) {
                case kLeft: handle_left(ev.a); break;
                case kRight: handle_right(ev.a); break;
                case kCross: handle_cross(ev.a, ev.b); break;
            }
        }
        std::vector<SegmentCrossing> out;
        out.reserve(found_.size());
        for (const auto& [i, j] : found_) {
            out.push_back(make_crossing(i, j, segs_[i], segs_[j]));
        }
        std::sort(out.begin(), out.end(), [](const SegmentCrossing& u, const SegmentCrossing& v) {
            return std::tie(u.seg_a, u.seg_b) < std::tie(v.seg_a, v.seg_b);
        });
        return out;
    }

private:
    enum EventType { kLeft = 0, kCross = 1, kRight = 2 };

    struct Event {
        double x, y;
        int type;
        int a, b;
        bool operator<(const Event& o) const {
            return std::tie(x, type, y, a, b) < std::tie(o.x, o.type, o.y, o.a, o.b);
        }
    };

    struct StatusCmp {
        const Sweep* sw;
        bool operator()(int u, int v) const {
            const double yu = sw->y_at(u), yv = sw->y_at(v);
            if (yu != yv) return yu < yv;
            const double su = sw->slope(u), sv = sw->slope(v);
            if (su != sv) return su < sv;
            return u < v;
        }
    };
    using Status = std::set<int, StatusCmp>;

    Vec2 rotate(const Vec2& p) const { return {cs_ * p.x - sn_ * p.y, sn_ * p.x + cs_ * p.y}; }

    double slope(int i) const {
        const Seg& s = rot_[i];
        const double dx = s.b.x - s.a.x;
        return dx == 0.0 ? 1e300 : (s.b.y - s.a.y) / dx;
    }

    double y_at(int i) const {
        const Seg& s = rot_[i];
        const double dx = s.b.x - s.a.x;
        if (dx == 0.0) return s.a.y;
        const double t = std::clamp((eval_x_ - s.a.x) / dx, 0.0, 1.0);
        return s.a.y + t * (s.b.y - s.a.y);
    }

    void schedule(int u, int v) {
        if (u < 0 || v < 0) return;
        if (index_dist(u, v, n_) <= 1) return;  // adjacent along the polyline
        if (!transversal(segs_[u], segs_[v])) return;
        const int i = std::min(u, v), j = std::max(u, v);
        found_.insert({i, j});
        const SegmentCrossing c = make_crossing(i, j, segs_[i], segs_[j]);
        const Vec2 pr = rotate(c.point);
        if (pr.x <= sweep_x_) return;  // swap already in effect
        if (!scheduled_.insert({i, j}).second) return;
        queue_.insert({pr.x, pr.y, kCross, i, j});
    }

    void handle_left(int u) {
        auto [it, ok] = status_.insert(u);
        handles_[u] = it;
        if (it != status_.begin()) schedule(*std::prev(it), u);
        if (std::next(it) != status_.end()) schedule(u, *std::next(it));
    }

    void handle_right(int u) {
        auto hit = handles_.find(u);
        if (hit == handles_.end()) return;
        auto it = hit->second;
        const int below = (it == status_.begin()) ? -1 : *std::prev(it);
        auto nx = std::next(it);
        const int above = (nx == status_.end()) ? -1 : *nx;
        status_.erase(it);
        handles_.erase(hit);
        schedule(below, above);
    }

    void handle_cross(int u, int v) {
        auto hu = handles_.find(u);
        auto hv = handles_.find(v);
        if (hu == handles_.end() || hv == handles_.end()) return;
        status_.erase(hu->second);
        status_.erase(hv->second);
        // Reinsert just past the crossing abscissa (eval_x_ carries the nudge)
        // so the comparator sees the post-crossing order.
        auto iu = status_.insert(u).first;
        auto iv = status_.insert(v).first;
        handles_[u] = iu;
        handles_[v] = iv;
        const int lo = StatusCmp{this}(u, v) ? u : v;
        const int hi = lo == u ? v : u;
        auto ilo = handles_[lo], ihi = handles_[hi];
        if (ilo != status_.begin()) schedule(*std::prev(ilo), lo);
        if (std::next(ihi) != status_.end()) schedule(hi, *std::next(ihi));
    }

    std::vector<Seg> segs_;
    int n_;
    double cs_ = 1.0, sn_ = 0.0;
    std::vector<Seg> rot_;
    std::set<Event> queue_;
    Status status_{StatusCmp{this}};
    std::map<int, Status::iterator> handles_;
    std::set<std::pair<int, int>> found_;
    std::set<std::pair<int, int>> scheduled_;
    double sweep_x_ = -1e300;
    double eval_x_ = -1e300;
    double delta_ = 1e-12;
};

std::vector<Seg> polyline_segments(const ClosedCurve& c) {
    std::vector<Seg> segs(c.size());
    for (int i = 0; i < c.size(); ++i) segs[i] = {c[i], c[(i + 1) % c.size()]};
    return segs;
}

}  // namespace

std::vector<SegmentCrossing> self_intersections(const ClosedCurve& c) {
    Sweep sweep(polyline_segments(c));
    return sweep.run();
}

std::vector<SegmentCrossing> self_intersections_brute(const ClosedCurve& c) {
    const auto segs = polyline_segments(c);
    const int n = static_cast<int>(segs.size());
    std::vector<SegmentCrossing> out;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (index_dist(i, j, n) <= 1) continue;
            if (transversal(segs[i], segs[j])) out.push_back(make_crossing(i, j, segs[i], segs[j]));
        }
    }
    return out;
}

}  // namespace splash
