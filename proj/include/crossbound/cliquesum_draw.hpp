#pragma once

#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "crossbound/cliquesum.hpp"
#include "crossbound/geometry.hpp"
#include "crossbound/planar.hpp"

namespace crossbound {

// ---------------------------------------------------------------------------------------------
// Per-piece drawings

enum class SegClass { Planar, Vortex, Hub, Apex, Vertical };

inline std::string to_string(SegClass c) {
    switch (c) {
        case SegClass::Planar: return "planar";
        case SegClass::Vortex: return "vortex";
        case SegClass::Hub: return "hub";
        case SegClass::Apex: return "apex";
        case SegClass::Vertical: return "vertical";
    }
    return "planar";
}

struct SegTag {
    SegClass cls = SegClass::Planar;
    int sub = -1;  ///< vortex index (Vortex) or child piece (Hub, Vertical)
    friend bool operator==(const SegTag&, const SegTag&) = default;
};

/// Square hanging below a hub: x in [hub.x - half, hub.x + half], y in [hub.y - 2 half, hub.y].
struct HubSquare {
    int child = -1;
    Point hub;
    Rational half;

    bool contains(const Point& p) const {
        return hub.x - half <= p.x && p.x <= hub.x + half && hub.y - 2 * half <= p.y && p.y <= hub.y;
    }
    std::vector<Point> corners() const {
        Rational l = hub.x - half, r = hub.x + half, b = hub.y - 2 * half;
        return {Point(l, hub.y), Point(r, hub.y), Point(l, b), Point(r, b)};
    }
};

struct KiDrawing {
    AuxiliaryGraph aux;
    Drawing drawing;
    std::vector<std::vector<SegTag>> tags;  ///< per aux edge, per segment
    std::vector<HubSquare> squares;
    std::map<int, int> hub_vortex;          ///< child -> vortex it sits in, -1 when it sits on G0
    std::map<int, std::vector<int>> sigma;  ///< child -> subdivision vertices, left to right (ties refined)
    std::map<std::string, Rational> budgets;
    std::map<std::string, long> counts;
    CrossingReport report;
    int salt = 0;

    Rational budget() const {
        Rational s = 0;
        for (const auto& [k, v] : budgets) s += v;
        return s;
    }
};

namespace detail {

/// Largest power of two not above q (q > 0).
inline Rational pow2_below(const Rational& q) {
    if (q <= 0) throw GeometryError("pow2_below: non-positive input");
    Rational r = 1;
    while (r > q) r /= 2;
    while (r * 2 <= q) r *= 2;
    return r;
}

inline void min_into(Rational& cur, const Rational& q) {
    if (cur < 0 || q < cur) cur = q;
}

struct Clearance {
    std::vector<Rational> vertex, edge;  ///< squared; -1 when unconstrained
};

inline Clearance clearance_of(const Graph& g, const std::vector<Point>& p) {
    Clearance c;
    c.vertex.assign(static_cast<std::size_t>(g.n()), Rational(-1));
    c.edge.assign(g.edges().size(), Rational(-1));
    const auto& es = g.edges();
    for (Vertex v = 0; v < g.n(); ++v) {
        for (Vertex u = v + 1; u < g.n(); ++u) {
            Rational q = dist2(p[u], p[v]);
            min_into(c.vertex[v], q);
            min_into(c.vertex[u], q);
        }
        for (std::size_t e = 0; e < es.size(); ++e) {
            auto [a, b] = es[e];
            if (a == v || b == v) continue;
            Rational q = point_segment_dist2(p[v], p[a], p[b]);
            min_into(c.vertex[v], q);
            min_into(c.edge[e], q);
        }
    }
    for (std::size_t e = 0; e < es.size(); ++e)
        for (std::size_t f = e + 1; f < es.size(); ++f) {
            auto [a, b] = es[e];
            auto [x, y] = es[f];
            if (a == x || a == y || b == x || b == y) continue;
            Rational q = segment_segment_dist2({p[a], p[b]}, {p[x], p[y]});
            min_into(c.edge[e], q);
            min_into(c.edge[f], q);
        }
    return c;
}

/// Radius of a disc around L-vertex v small enough to keep its neighbourhood private.
inline Rational private_radius(const Graph& g, const Clearance& c, Vertex v, int div) {
    Rational m = c.vertex[v];
    const auto& es = g.edges();
    for (std::size_t e = 0; e < es.size(); ++e)
        if (es[e].first == v || es[e].second == v)
            if (c.edge[e] >= 0) min_into(m, c.edge[e]);
    if (m < 0) return Rational(1, 1);
    if (m == 0) throw GeometryError("layout has touching features");
    return pow2_below(sqrt_lower(m) / div);
}

inline double wrap_angle(double a) {
    const double two_pi = 2 * std::numbers::pi;
    a = std::fmod(a, two_pi);
    if (a <= -std::numbers::pi) a += two_pi;
    if (a > std::numbers::pi) a -= two_pi;
    return a;
}

inline Point rotate(const Point& p, const Point& cs) {
    return {cs.x * p.x - cs.y * p.y, cs.y * p.x + cs.x * p.y};
}

inline std::string hub_name(int j) { return "hub_" + std::to_string(j); }

/// Which budget pays for a crossing between two segments of the same piece.
inline std::string crossing_category(const SegTag& a, const SegTag& b, const std::map<int, int>& hub_vortex) {
    if (a.cls == SegClass::Vertical || b.cls == SegClass::Vertical) return "vertical";
    if (a.cls == SegClass::Apex || b.cls == SegClass::Apex) return "apex";
    if (a.cls == SegClass::Hub && b.cls == SegClass::Hub) {
        if (a.sub == b.sub) return hub_name(a.sub);
        int va = hub_vortex.at(a.sub), vb = hub_vortex.at(b.sub);
        if (va >= 0 && va == vb) return hub_name(std::min(a.sub, b.sub));
        return "separation";
    }
    if (a.cls == SegClass::Hub || b.cls == SegClass::Hub) {
        const SegTag& h = a.cls == SegClass::Hub ? a : b;
        const SegTag& o = a.cls == SegClass::Hub ? b : a;
        if (o.cls == SegClass::Vortex && hub_vortex.at(h.sub) == o.sub) return hub_name(h.sub);
        return "separation";
    }
    if (a.cls == SegClass::Vortex && b.cls == SegClass::Vortex && a.sub == b.sub)
        return "vortex_" + std::to_string(a.sub);
    if (a.cls == SegClass::Planar && b.cls == SegClass::Planar) return "planar";
    return "separation";
}

enum class Role { G0, Interior, Apex };

/// Intersections among polylines that all start at the same point, that point excluded.
inline long strand_crossings(const std::vector<std::vector<Point>>& rts) {
    long n = 0;
    for (std::size_t a = 0; a < rts.size(); ++a)
        for (std::size_t b = a + 1; b < rts.size(); ++b)
            for (std::size_t x = 0; x + 1 < rts[a].size(); ++x)
                for (std::size_t y = 0; y + 1 < rts[b].size(); ++y) {
                    if (x == 0 && y == 0) {
                        if (orientation(rts[a][0], rts[a][1], rts[b][1]) == 0) ++n;
                        continue;
                    }
                    if (segments_intersect({rts[a][x], rts[a][x + 1]}, {rts[b][y], rts[b][y + 1]})) ++n;
                }
    return n;
}

inline KiDrawing draw_Ki_once(const CliqueSumTree& t, const Composition& c, const AuxiliaryGraph& k,
                              const std::map<int, std::vector<int>>& sigmas, int salt) {
    const int i = k.piece;
    const auto& p = t.pieces[i];
    const auto& glob = c.global[i];
    const int na = k.graph.n();
    std::string at = "piece " + std::to_string(i);

    std::map<Vertex, Vertex> local_of;
    for (Vertex l = 0; l < p.n; ++l) local_of[glob[l]] = l;
    auto owned = [&](Vertex l) { return c.owner[glob[l]] == i; };
    std::set<Edge> planar_local;
    for (auto [a, b] : p.planar_edges) planar_local.insert(make_edge(a, b));

    // Roles of the aux vertices that come from the piece.
    std::vector<Role> role(static_cast<std::size_t>(na), Role::G0);
    std::vector<int> vortex(static_cast<std::size_t>(na), -1);
    std::vector<Vertex> local(static_cast<std::size_t>(na), -1);
    for (int a = 0; a < na; ++a) {
        if (k.vertices[a].kind != AuxKind::Original) continue;
        Vertex l = local_of.at(k.vertices[a].original);
        local[a] = l;
        vortex[a] = p.vortex_of(l);
        if (p.is_apex(l)) role[a] = Role::Apex;
        else if (vortex[a] >= 0 && !p.is_face_vertex(l)) role[a] = Role::Interior;
    }

    const auto& aes = k.graph.edges();
    std::vector<SegTag> edge_tag(aes.size());
    for (std::size_t e = 0; e < aes.size(); ++e) {
        auto [a, b] = aes[e];
        const auto &xa = k.vertices[a], &xb = k.vertices[b];
        if (xa.kind == AuxKind::Hub || xb.kind == AuxKind::Hub) {
            edge_tag[e] = {SegClass::Hub, xa.kind == AuxKind::Hub ? xa.child : xb.child};
            continue;
        }
        if (xa.kind == AuxKind::Subdivision || xb.kind == AuxKind::Subdivision) {
            int orig = xa.kind == AuxKind::Original ? a : b;
            int sub = xa.kind == AuxKind::Subdivision ? a : b;
            edge_tag[e] = role[orig] == Role::Apex ? SegTag{SegClass::Apex, -1}
                                                   : SegTag{SegClass::Hub, k.vertices[sub].child};
            continue;
        }
        if (role[a] == Role::Apex || role[b] == Role::Apex) edge_tag[e] = {SegClass::Apex, -1};
        else if (role[a] == Role::G0 && role[b] == Role::G0 && planar_local.count(make_edge(local[a], local[b])))
            edge_tag[e] = {SegClass::Planar, -1};
        else if (vortex[a] >= 0 && vortex[a] == vortex[b])
            edge_tag[e] = {SegClass::Vortex, vortex[a]};
        else
            throw CertificateError(at + ": edge outside the planar part, vortices and apex edges");
    }

    // Layout graph: owned G0 vertices, one centre per vortex, one vertex per hub.
    std::vector<int> l_of(static_cast<std::size_t>(na), -1);
    std::vector<int> aux_of_l;
    for (int a = 0; a < na; ++a)
        if (k.vertices[a].kind == AuxKind::Original && role[a] == Role::G0) {
            l_of[a] = static_cast<int>(aux_of_l.size());
            aux_of_l.push_back(a);
        }
    const int nv = static_cast<int>(p.vortices.size());
    std::vector<std::vector<int>> members(static_cast<std::size_t>(nv));
    for (int a = 0; a < na; ++a)
        if (k.vertices[a].kind == AuxKind::Original && role[a] != Role::Apex && vortex[a] >= 0)
            members[vortex[a]].push_back(a);
    int nl = static_cast<int>(aux_of_l.size());
    std::vector<int> centre(static_cast<std::size_t>(nv), -1);
    for (int v = 0; v < nv; ++v)
        if (!members[v].empty()) centre[v] = nl++;
    std::map<int, int> hub_l;
    for (auto [j, h] : k.hub_of) hub_l[j] = nl++;

    std::vector<Edge> les;
    for (std::size_t e = 0; e < aes.size(); ++e)
        if (edge_tag[e].cls == SegClass::Planar) les.push_back(make_edge(l_of[aes[e].first], l_of[aes[e].second]));
    std::vector<std::vector<int>> owned_face(static_cast<std::size_t>(nv));
    for (int v = 0; v < nv; ++v) {
        if (centre[v] < 0) continue;
        for (Vertex l : p.vortices[v].face)
            if (owned(l)) owned_face[v].push_back(k.index_of.at(glob[l]));
        const auto& f = owned_face[v];
        for (int a : f) les.push_back(make_edge(centre[v], l_of[a]));
        if (f.size() == 2) les.push_back(make_edge(l_of[f[0]], l_of[f[1]]));
        if (f.size() >= 3)
            for (std::size_t q = 0; q < f.size(); ++q) les.push_back(make_edge(l_of[f[q]], l_of[f[(q + 1) % f.size()]]));
    }
    KiDrawing out;
    out.aux = k;
    out.salt = salt;
    std::map<int, std::vector<int>> hub_anchor_l;
    for (auto [j, h] : k.hub_of) {
        std::vector<Vertex> cl;
        for (auto [lc, pv] : t.pieces[j].parent_clique)
            if (owned(pv) && !p.is_apex(pv)) cl.push_back(pv);
        int vx = -1;
        for (Vertex l : cl)
            if (p.vortex_of(l) >= 0 && !p.is_face_vertex(l)) vx = p.vortex_of(l);
        out.hub_vortex[j] = vx;
        std::vector<int> anchors;
        if (vx >= 0) {
            for (Vertex l : cl)
                if (p.vortex_of(l) != vx)
                    throw CertificateError(at + ": join clique of child " + std::to_string(j) +
                                           " leaves its vortex");
            anchors.push_back(centre[vx]);
            for (Vertex l : cl)
                if (p.is_face_vertex(l)) anchors.push_back(l_of[k.index_of.at(glob[l])]);
        } else {
            if (cl.size() > 3)
                throw CertificateError(at + ": join clique of child " + std::to_string(j) +
                                       " has more than 3 planar vertices");
            for (Vertex l : cl) anchors.push_back(l_of[k.index_of.at(glob[l])]);
        }
        for (int x : anchors) les.push_back(make_edge(hub_l[j], x));
        hub_anchor_l[j] = anchors;
    }
    Graph L = Graph::from_edge_set(nl, les);
    if (!is_planar(L))
        throw CertificateError(at + ": planar part, vortex faces and join cliques do not embed in the plane");
    Drawing lay = straight_line_layout(L, true);
    const auto& lp = lay.positions;
    auto clear = clearance_of(L, lp);

    std::vector<std::optional<Point>> pos(static_cast<std::size_t>(na));
    for (int a = 0; a < na; ++a)
        if (l_of[a] >= 0) pos[a] = lp[l_of[a]];
    for (auto [j, h] : k.hub_of) pos[h] = lp[hub_l[j]];
    std::vector<std::vector<Point>> route(aes.size());
    std::vector<Point> extra;  // bend points that take part in the bounding box

    // Vortices: members on a small circle around the centre in first-bag order.
    std::vector<long> vortex_segments(static_cast<std::size_t>(nv), 0);
    const double two_pi = 2 * std::numbers::pi;
    for (int v = 0; v < nv; ++v) {
        if (centre[v] < 0) continue;
        const auto& vx = p.vortices[v];
        auto first_bag = [&](int a) {
            for (std::size_t b = 0; b < vx.bags.size(); ++b)
                if (std::find(vx.bags[b].begin(), vx.bags[b].end(), local[a]) != vx.bags[b].end())
                    return static_cast<int>(b);
            return static_cast<int>(vx.bags.size());
        };
        auto face_index = [&](int a) {
            auto it = std::find(vx.face.begin(), vx.face.end(), local[a]);
            return it == vx.face.end() ? static_cast<int>(vx.face.size()) : static_cast<int>(it - vx.face.begin());
        };
        std::vector<int> order = members[v];
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            return std::tuple{first_bag(a), face_index(a), k.vertices[a].original} <
                   std::tuple{first_bag(b), face_index(b), k.vertices[b].original};
        });
        const int N = static_cast<int>(order.size());
        std::map<int, int> idx;
        for (int q = 0; q < N; ++q) idx[order[q]] = q;
        const auto& fo = owned_face[v];
        if (fo.size() >= 3) {
            int descents = 0;
            for (std::size_t q = 0; q < fo.size(); ++q)
                if (idx[fo[(q + 1) % fo.size()]] < idx[fo[q]]) ++descents;
            if (descents > 1)
                throw CertificateError(at + ": vortex " + std::to_string(v) +
                                       " face vertices are not in first-bag order");
        }
        // Restricted width and degree for the budget.
        int width = 0;
        for (const auto& b : vx.bags) {
            int cnt = 0;
            for (Vertex l : b)
                if (owned(l)) ++cnt;
            width = std::max(width, cnt - 1);
        }
        std::map<int, std::vector<std::size_t>> inc;
        for (std::size_t e = 0; e < aes.size(); ++e)
            if (edge_tag[e].cls == SegClass::Vortex && edge_tag[e].sub == v) {
                inc[aes[e].first].push_back(e);
                inc[aes[e].second].push_back(e);
            }
        std::int64_t deg = 0;
        for (const auto& [a, es] : inc) deg = std::max<std::int64_t>(deg, static_cast<std::int64_t>(es.size()));
        out.budgets["vortex_" + std::to_string(v)] =
            Rational(static_cast<long>(std::int64_t{width} * width * deg * N));

        const Point f = lp[centre[v]];
        auto angle_of = [&](const Point& q) {
            return std::atan2(to_double(q.y - f.y), to_double(q.x - f.x));
        };
        int dir = 1;
        if (fo.size() >= 3) {
            double turn = 0;
            for (std::size_t q = 0; q < fo.size(); ++q)
                turn += wrap_angle(angle_of(*pos[fo[(q + 1) % fo.size()]]) - angle_of(*pos[fo[q]]));
            dir = turn > 0 ? 1 : -1;
        }
        // Unwrapped item angles in traversal order starting at the first face vertex.
        std::vector<int> R;
        int start = 0;
        for (int q = 0; q < N; ++q)
            if (role[order[q]] == Role::G0) {
                start = q;
                break;
            }
        for (int q = 0; q < N; ++q) R.push_back(order[(start + q) % N]);
        std::map<int, int> ridx;
        for (int q = 0; q < N; ++q) ridx[R[q]] = q;
        std::vector<double> U(static_cast<std::size_t>(N));
        std::vector<int> faces;
        for (int q = 0; q < N; ++q)
            if (role[R[q]] == Role::G0) faces.push_back(q);
        if (faces.empty()) {
            for (int q = 0; q < N; ++q) U[q] = 0.37 * salt + dir * two_pi * q / N;
        } else {
            double base = angle_of(*pos[R[faces[0]]]);
            double acc = base;
            for (std::size_t fi = 0; fi < faces.size(); ++fi) {
                int qa = faces[fi];
                int qb = fi + 1 < faces.size() ? faces[fi + 1] : N;
                double span;
                if (faces.size() == 1) {
                    span = two_pi;
                } else {
                    double tb = angle_of(*pos[R[qb % N]]), ta = angle_of(*pos[R[qa]]);
                    span = std::fmod(dir * (tb - ta) + 2 * two_pi, two_pi);
                    if (span <= 0) span += two_pi;
                }
                for (int q = qa; q < qb; ++q) U[q] = acc + dir * span * (q - qa) / (qb - qa);
                acc += dir * span;
            }
        }
        double gmin = two_pi;
        for (int q = 0; q < N; ++q) {
            double g = q + 1 < N ? std::abs(U[q + 1] - U[q]) : two_pi - std::abs(U[N - 1] - U[0]);
            if (N > 1) gmin = std::min(gmin, g);
        }
        std::size_t M = 1;
        for (const auto& [a, es] : inc) M = std::max(M, es.size());
        const double gamma = gmin / (4.0 * static_cast<double>(M + 1));

        // Angles of every circle point: interior members and one proxy per face-vertex edge.
        std::vector<double> phis;
        std::map<std::pair<int, std::size_t>, std::size_t> proxy_slot;
        std::map<int, std::size_t> member_slot;
        for (int q = 0; q < N; ++q) {
            int a = R[q];
            if (role[a] == Role::Interior) {
                member_slot[a] = phis.size();
                phis.push_back(U[q]);
                continue;
            }
            auto es = inc[a];
            auto fd = [&](std::size_t e) {
                int y = aes[e].first == a ? aes[e].second : aes[e].first;
                return (ridx[y] - q + N) % N;
            };
            std::sort(es.begin(), es.end(), [&](std::size_t x, std::size_t y) { return fd(x) > fd(y); });
            double m = static_cast<double>(es.size());
            for (std::size_t s = 0; s < es.size(); ++s) {
                proxy_slot[{a, es[s]}] = phis.size();
                phis.push_back(U[q] + dir * (static_cast<double>(s) - (m - 1) / 2) * gamma);
            }
        }
        if (phis.empty()) continue;
        // A salt-dependent twist far below the cluster spacing breaks accidental x-collisions.
        for (double& x : phis) x += dir * gamma * (salt % 17) / 64.0;
        std::vector<double> sorted;
        for (double x : phis) sorted.push_back(std::fmod(std::fmod(x, two_pi) + two_pi, two_pi));
        std::sort(sorted.begin(), sorted.end());
        double seam = sorted[0] - 0.5 * two_pi / 2;
        double best = -1;
        for (std::size_t q = 0; q < sorted.size(); ++q) {
            double nxt = q + 1 < sorted.size() ? sorted[q + 1] : sorted[0] + two_pi;
            if (nxt - sorted[q] > best) {
                best = nxt - sorted[q];
                seam = (nxt + sorted[q]) / 2;
            }
        }
        double tau_d = std::tan(wrap_angle(seam + std::numbers::pi) / 2);
        if (!std::isfinite(tau_d) || std::abs(tau_d) > 1e6) tau_d = tau_d < 0 ? -1e6 : 1e6;
        Rational tau(tau_d);
        Point cs = circle_point(tau);
        double beta = 2 * std::atan(tau.get_d());
        const Rational rho = private_radius(L, clear, centre[v], 8);
        std::vector<Point> cpts;
        std::set<Point> seen;
        for (double phi : phis) {
            double rel = wrap_angle(phi - beta);
            Point q = f + rho * rotate(circle_point(Rational(std::tan(rel / 2))), cs);
            if (!seen.insert(q).second) throw GeometryError("vortex circle points collide");
            cpts.push_back(q);
        }
        for (auto [a, s] : member_slot) pos[a] = cpts[s];
        for (std::size_t e = 0; e < aes.size(); ++e) {
            if (edge_tag[e].cls != SegClass::Vortex || edge_tag[e].sub != v) continue;
            auto [a, b] = aes[e];
            std::vector<Point> r{*pos[a]};
            if (role[a] == Role::G0) r.push_back(cpts[proxy_slot.at({a, e})]);
            if (role[b] == Role::G0) r.push_back(cpts[proxy_slot.at({b, e})]);
            r.push_back(*pos[b]);
            vortex_segments[v] += static_cast<long>(r.size()) - 1;
            route[e] = std::move(r);
        }
        extra.insert(extra.end(), cpts.begin(), cpts.end());
    }

    // Hubs: subdivision vertices in a row just above the hub, left to right in sigma order.
    struct HubGeom {
        Point H;
        Rational rho;
        int r;
    };
    std::map<int, HubGeom> hg;
    for (auto [j, h] : k.hub_of) {
        std::vector<int> subs = k.subdivisions.at(j);
        if (auto it = sigmas.find(j); it != sigmas.end()) {
            std::vector<int> a = it->second, b = subs;
            std::sort(a.begin(), a.end());
            std::sort(b.begin(), b.end());
            if (a != b) throw InvalidArgument(at + ": sigma for child " + std::to_string(j) + " is not a permutation");
            subs = it->second;
        }
        out.sigma[j] = subs;
        const Point H = *pos[h];
        const Rational rho = private_radius(L, clear, hub_l[j], 16);
        const int r = static_cast<int>(subs.size());
        hg[j] = {H, rho, r};
        // Room for the detour points around the hub.
        extra.push_back(Point(H.x - 2 * rho, H.y - 2 * rho));
        extra.push_back(Point(H.x + 2 * rho, H.y + 2 * rho));
    }

    // Apices above everything else.
    std::vector<int> apx;
    for (int a = 0; a < na; ++a)
        if (k.vertices[a].kind == AuxKind::Original && role[a] == Role::Apex) apx.push_back(a);
    if (!apx.empty()) {
        std::vector<Point> all = extra;
        for (const auto& q : pos)
            if (q) all.push_back(*q);
        all.insert(all.end(), lp.begin(), lp.end());
        Rational x0 = 0, x1 = 0, y1 = 0, y0 = 0;
        if (!all.empty()) {
            x0 = x1 = all[0].x;
            y0 = y1 = all[0].y;
        }
        for (const auto& q : all) {
            x0 = std::min(x0, q.x);
            x1 = std::max(x1, q.x);
            y0 = std::min(y0, q.y);
            y1 = std::max(y1, q.y);
        }
        Rational w = x1 - x0, hgt = y1 - y0;
        Rational span = std::max({w, hgt, Rational(1)});
        const int A = static_cast<int>(apx.size());
        for (int q = 0; q < A; ++q) {
            Rational x = x0 + span * make_rational(2 * q + 1, 2 * A) + span * make_rational(salt, 1009);
            Rational y = y1 + span * (q + 1) + span * make_rational(salt * (q + 1), 101);
            pos[apx[q]] = Point(x, y);
        }
    }

    // Routes from each clique vertex to its subdivision vertex. A strand leaves its anchor towards
    // the hub and enters the subdivision row from above, after a detour to the side when it
    // arrives from below. Strands sharing an anchor take the nesting with fewest crossings.
    for (auto& [j, g] : hg) {
        // Entries with the same target are ordered by the x-coordinate of v, then by v.
        auto& subs = out.sigma[j];
        auto vx_of = [&](int s) -> const Rational& { return pos[k.index_of.at(k.vertices[s].v)]->x; };
        for (std::size_t a = 0; a < subs.size();) {
            std::size_t b = a;
            while (b < subs.size() && k.vertices[subs[b]].w == k.vertices[subs[a]].w) ++b;
            std::stable_sort(subs.begin() + static_cast<long>(a), subs.begin() + static_cast<long>(b),
                             [&](int x, int y) {
                                 if (vx_of(x) != vx_of(y)) return vx_of(x) < vx_of(y);
                                 return k.vertices[x].v < k.vertices[y].v;
                             });
            a = b;
        }
        Rational sfac = make_rational(32, 32 + salt % 16);
        for (int q = 0; q < g.r; ++q) {
            Rational off = g.rho * make_rational(4 * q + 1 - 2 * g.r, 8 * g.r) * sfac;
            pos[subs[q]] = Point(g.H.x + off, g.H.y + g.rho / 2);
            route[k.graph.edge_index(k.hub_of.at(j), subs[q])] = {g.H, *pos[subs[q]]};
        }
        std::vector<int> anchors;
        std::map<int, std::vector<int>> group;
        for (int q = 0; q < g.r; ++q) {
            int v = k.index_of.at(k.vertices[subs[q]].v);
            if (!group.count(v)) anchors.push_back(v);
            group[v].push_back(q);
        }
        int slot = 0;
        for (int v : anchors) {
            const auto& qs = group[v];
            const long z_n = static_cast<long>(qs.size());
            const Point A = *pos[v];
            Rational dx = A.x - g.H.x, dy = A.y - g.H.y;
            Rational adx = abs(dx), ady = abs(dy);
            Rational m = std::max(adx, ady);
            if (m == 0) throw GeometryError("anchor on its hub");
            Rational lam = g.rho / m;
            std::vector<std::vector<Point>> best;
            long best_cross = -1;
            for (int combo = 0; combo < 4; ++combo) {
                std::vector<std::vector<Point>> rts;
                for (long z = 0; z < z_n; ++z) {
                    long off = (combo & 1) ? z + 1 : z_n - z;
                    long hq = slot + ((combo & 2) ? z : z_n - 1 - z);
                    Rational perp = lam * make_rational(off * (16 + salt % 8), 16L * 32 * (g.r + 8));
                    Point P(g.H.x + lam * dx + perp * dy, g.H.y + lam * dy - perp * dx);
                    std::vector<Point> rt{A, P};
                    if (P.y <= g.H.y + g.rho / 2) {
                        int sgn = P.x >= g.H.x ? 1 : -1;
                        rt.push_back(Point(g.H.x + sgn * g.rho * (make_rational(5, 4) + make_rational(hq, 4 * g.r)),
                                           g.H.y + g.rho * (make_rational(5, 8) + make_rational(hq, 8 * g.r))));
                    }
                    rt.push_back(*pos[subs[qs[z]]]);
                    rts.push_back(std::move(rt));
                }
                long cr = strand_crossings(rts);
                if (best_cross < 0 || cr < best_cross) {
                    best_cross = cr;
                    best = std::move(rts);
                }
            }
            for (long z = 0; z < z_n; ++z) route[k.graph.edge_index(v, subs[qs[z]])] = std::move(best[z]);
            slot += static_cast<int>(z_n);
        }
    }

    // Straight edges for everything not routed yet.
    for (std::size_t e = 0; e < aes.size(); ++e)
        if (route[e].empty()) route[e] = {*pos[aes[e].first], *pos[aes[e].second]};

    Drawing d;
    d.graph = k.graph;
    d.style = DrawingStyle::Polyline;
    for (int a = 0; a < na; ++a) {
        if (!pos[a]) throw Error(at + ": aux vertex left unplaced");
        d.positions.push_back(*pos[a]);
    }
    d.routes = std::move(route);
    {
        std::map<Rational, int> xs;
        for (int a = 0; a < na; ++a)
            if (auto [it, fresh] = xs.emplace(d.positions[a].x, a); !fresh)
                throw GeometryError("aux vertices " + std::to_string(it->second) + " and " + std::to_string(a) +
                                    " share an x-coordinate");
    }
    out.report = count_crossings(d);
    out.tags.resize(aes.size());
    for (std::size_t e = 0; e < aes.size(); ++e)
        out.tags[e].assign(d.routes[e].size() - 1, edge_tag[e]);

    // Squares below the hubs.
    for (auto& [j, g] : hg) {
        int h = k.hub_of.at(j);
        Rational d2 = -1, gx = -1;
        for (int a = 0; a < na; ++a) {
            if (a == h) continue;
            min_into(d2, dist2(d.positions[a], g.H));
            min_into(gx, abs(d.positions[a].x - g.H.x));
        }
        for (std::size_t e = 0; e < aes.size(); ++e) {
            if (aes[e].first == h || aes[e].second == h) continue;
            const auto& r = d.routes[e];
            for (std::size_t q = 0; q + 1 < r.size(); ++q) min_into(d2, point_segment_dist2(g.H, r[q], r[q + 1]));
        }
        Rational half = g.rho / 8;
        if (d2 >= 0) half = std::min(half, Rational(sqrt_lower(d2) / 4));
        if (gx >= 0) half = std::min(half, Rational(gx / 4));
        if (half <= 0) throw GeometryError("no room for the square of child " + std::to_string(j));
        out.squares.push_back({j, g.H, pow2_below(half)});
    }

    // Budgets and per-category counts.
    long total_segments = d.segment_count(), apex_segments = 0;
    std::map<int, long> hub_segments;
    for (std::size_t e = 0; e < aes.size(); ++e) {
        long s = static_cast<long>(d.routes[e].size()) - 1;
        if (edge_tag[e].cls == SegClass::Apex) apex_segments += s;
        if (edge_tag[e].cls == SegClass::Hub) hub_segments[edge_tag[e].sub] += s;
    }
    out.budgets["planar"] = 0;
    out.budgets["separation"] = 0;
    out.budgets["apex"] = Rational(apex_segments) * Rational(total_segments);
    for (auto [j, h] : k.hub_of) {
        Rational sj = hub_segments[j];
        Rational b = sj * (sj - 1) / 2;
        int vx = out.hub_vortex[j];
        if (vx >= 0) {
            b += sj * Rational(vortex_segments[vx]);
            for (auto [j2, h2] : k.hub_of)
                if (j2 != j && out.hub_vortex[j2] == vx) b += sj * Rational(hub_segments[j2]);
        }
        out.budgets[hub_name(j)] = b;
    }
    for (const auto& [name, b] : out.budgets) out.counts[name] = 0;
    for (const auto& pr : out.report.pairs)
        ++out.counts[crossing_category(out.tags[pr.edge_a][pr.segment_a], out.tags[pr.edge_b][pr.segment_b],
                                       out.hub_vortex)];
    for (const auto& [name, b] : out.budgets) out.report.add_bound(name, b, Rational(out.counts[name]));
    out.report.add_bound("total", out.budget(), Rational(out.report.total));
    out.drawing = std::move(d);
    return out;
}

}  // namespace detail

/// Draws the auxiliary graph of one piece: planar part straight, vortices on small circles in
/// first-bag order, hub stars in the given left-to-right orders, apices above. Squares hang below
/// the hubs. Geometric degeneracies are retried with a fresh salt.
inline KiDrawing draw_Ki(const CliqueSumTree& t, const Composition& c, const AuxiliaryGraph& k,
                         const std::map<int, std::vector<int>>& sigmas = {}, int salt = 0) {
    std::string last;
    for (int s = salt; s < salt + 32; ++s) {
        try {
            return detail::draw_Ki_once(t, c, k, sigmas, s);
        } catch (const GeometryError& e) {
            last = e.what();
        }
    }
    throw GeometryError("draw_Ki: no admissible drawing for piece " + std::to_string(k.piece) + ": " + last);
}


// ---------------------------------------------------------------------------------------------
// Joining

struct RegionReport {
    int piece = 0;
    long crossings = 0;
    long verticals = 0;  ///< vertical segments passing through the region
    int ki_edges = 0;
    int ki_segments = 0;
    Rational budget;
    Rational constant;  ///< budget / (max degree * |E(K_i)|)
    std::map<std::string, long> counts;
};

struct JoinResult {
    Composition composition;
    Drawing drawing;
    CrossingReport report;
    std::vector<std::vector<SegTag>> tags;  ///< per edge, per segment
    std::vector<std::vector<int>> owner;    ///< piece of each segment (-1 for verticals)
    std::vector<HubSquare> squares;
    std::vector<RegionReport> regions;
    long vertical_pairs = 0;
    int max_degree = 0;
    Rational constant;  ///< largest region constant
    Rational ratio;     ///< crossings / (max degree * n)
    int salt = 0;
};

namespace detail {

struct Placed {
    struct Route {
        std::vector<Point> pts;
        std::vector<SegTag> tags;
        std::vector<int> owner;
    };
    std::map<Vertex, Point> pos;
    std::map<Edge, Route> routes;
    std::vector<HubSquare> squares;

    template <class F>
    void each_point(F&& f) const {
        for (const auto& [v, q] : pos) f(q);
        for (const auto& [e, r] : routes)
            for (const auto& q : r.pts) f(q);
        for (const auto& s : squares)
            for (const auto& q : s.corners()) f(q);
    }
    void transform(const Rational& scale, const Point& shift) {
        auto map = [&](Point& q) { q = Point(q.x * scale + shift.x, q.y * scale + shift.y); };
        for (auto& [v, q] : pos) map(q);
        for (auto& [e, r] : routes)
            for (auto& q : r.pts) map(q);
        for (auto& s : squares) {
            map(s.hub);
            s.half *= scale;
        }
    }
};

/// Adds a route for composed edge uv given as points from u to v.
inline void put_route(Placed& pl, Vertex u, Vertex v, Placed::Route r) {
    if (u > v) {
        std::reverse(r.pts.begin(), r.pts.end());
        std::reverse(r.tags.begin(), r.tags.end());
        std::reverse(r.owner.begin(), r.owner.end());
    }
    if (!pl.routes.emplace(make_edge(u, v), std::move(r)).second) throw Error("join: edge routed twice");
}

inline JoinResult join_once(const CliqueSumTree& t, int salt) {
    JoinResult out;
    out.salt = salt;
    out.composition = compose(t);
    const Composition& c = out.composition;
    const int P = static_cast<int>(t.pieces.size());
    std::vector<Placed> placed(static_cast<std::size_t>(P));
    std::vector<KiDrawing> kis(static_cast<std::size_t>(P));
    std::vector<long> verticals(static_cast<std::size_t>(P), 0);
    std::map<Vertex, int> rank;

    for (int m = P - 1; m >= 0; --m) {
        AuxiliaryGraph aux = build_Ki(t, c, m);
        std::map<int, std::vector<int>> sigmas;
        for (auto& [j, subs] : aux.subdivisions) {
            std::vector<int> s = subs;
            std::stable_sort(s.begin(), s.end(), [&](int a, int b) {
                const auto &xa = aux.vertices[a], &xb = aux.vertices[b];
                const Rational &pa = placed[j].pos.at(xa.w).x, &pb = placed[j].pos.at(xb.w).x;
                if (pa != pb) return pa < pb;
                return xa.v < xb.v;
            });
            sigmas[j] = std::move(s);
        }
        KiDrawing ki = draw_Ki(t, c, aux, sigmas, salt);
        const auto& d = ki.drawing;
        const auto& aes = aux.graph.edges();
        Placed cur;
        for (int a = 0; a < aux.graph.n(); ++a)
            if (aux.vertices[a].kind == AuxKind::Original) cur.pos[aux.vertices[a].original] = d.positions[a];
        for (std::size_t e = 0; e < aes.size(); ++e) {
            const auto &xa = aux.vertices[aes[e].first], &xb = aux.vertices[aes[e].second];
            if (xa.kind != AuxKind::Original || xb.kind != AuxKind::Original) continue;
            put_route(cur, xa.original, xb.original,
                      {d.routes[e], ki.tags[e], std::vector<int>(ki.tags[e].size(), m)});
        }
        for (const auto& sq : ki.squares) {
            int j = sq.child;
            Placed sub = std::move(placed[j]);
            bool any = false;
            Rational x0, x1, y0, y1;
            sub.each_point([&](const Point& q) {
                if (!any) {
                    x0 = x1 = q.x;
                    y0 = y1 = q.y;
                    any = true;
                }
                x0 = std::min(x0, q.x);
                x1 = std::max(x1, q.x);
                y0 = std::min(y0, q.y);
                y1 = std::max(y1, q.y);
            });
            const Rational& a = sq.half;
            Rational w = x1 - x0, h = y1 - y0;
            Rational ext = std::max(w, h);
            Rational scale = ext > 0 ? pow2_below(3 * a / 2 / ext) : Rational(1);
            // Centre the scaled box inside the square, a/4 away from every side.
            Point shift(sq.hub.x - (x0 + x1) / 2 * scale, sq.hub.y - a - (y0 + y1) / 2 * scale);
            sub.transform(scale, shift);

            // Landing offsets stay below the x-gap around every target.
            std::set<Rational> xs;
            sub.each_point([&](const Point& q) { xs.insert(q.x); });
            xs.insert(sq.hub.x - a);
            xs.insert(sq.hub.x + a);
            const auto& subs = ki.sigma.at(j);
            std::map<Vertex, int> here;
            Rational gap = -1;
            for (int s : subs) {
                Vertex w = aux.vertices[s].w;
                ++here[w];
                const Rational& xw = sub.pos.at(w).x;
                auto it = xs.upper_bound(xw);
                if (it != xs.end()) min_into(gap, *it - xw);
                auto lo = xs.lower_bound(xw);
                if (lo != xs.begin()) min_into(gap, xw - *std::prev(lo));
            }
            int maxrank = 1;
            for (auto [w, n] : here) maxrank = std::max(maxrank, rank[w] + n);
            Rational delta = gap > 0 ? pow2_below(gap / (maxrank + 1)) : Rational(1);

            for (auto& [v, q] : sub.pos) cur.pos.emplace(v, q);
            for (auto& [e, r] : sub.routes) cur.routes.emplace(e, std::move(r));
            cur.squares.insert(cur.squares.end(), sub.squares.begin(), sub.squares.end());
            cur.squares.push_back(sq);

            for (int s : subs) {
                const auto& x = aux.vertices[s];
                int va = aux.index_of.at(x.v);
                int e = aux.graph.edge_index(va, s);
                const Point& wp = cur.pos.at(x.w);
                Point land(wp.x + delta * ++rank[x.w], sq.hub.y);
                Placed::Route r{d.routes[e], ki.tags[e], std::vector<int>(ki.tags[e].size(), m)};
                r.pts.push_back(land);
                r.tags.push_back({SegClass::Hub, j});
                r.owner.push_back(m);
                r.pts.push_back(wp);
                r.tags.push_back({SegClass::Vertical, j});
                r.owner.push_back(-1);
                put_route(cur, x.v, x.w, std::move(r));
                for (int q : x.path) ++verticals[q];
            }
        }
        placed[m] = std::move(cur);
        kis[m] = std::move(ki);
    }

    const Graph& g = c.graph;
    Drawing dr;
    dr.graph = g;
    dr.style = DrawingStyle::Polyline;
    for (Vertex v = 0; v < g.n(); ++v) dr.positions.push_back(placed[0].pos.at(v));
    for (const auto& e : g.edges()) {
        auto& r = placed[0].routes.at(e);
        dr.routes.push_back(r.pts);
        out.tags.push_back(r.tags);
        out.owner.push_back(r.owner);
    }
    if (placed[0].routes.size() != g.edges().size()) throw Error("join: routed edges differ from the composed graph");
    out.squares = placed[0].squares;
    out.report = count_crossings(dr);
    out.drawing = std::move(dr);

    out.max_degree = g.max_degree();
    const Rational D(out.max_degree);
    out.regions.resize(static_cast<std::size_t>(P));
    for (int m = 0; m < P; ++m) {
        auto& r = out.regions[m];
        r.piece = m;
        r.verticals = verticals[m];
        r.ki_edges = kis[m].aux.graph.m();
        r.ki_segments = kis[m].drawing.segment_count();
        r.budget = kis[m].budget() + Rational(verticals[m]) * Rational(r.ki_segments);
        r.constant = r.ki_edges > 0 && out.max_degree > 0 ? Rational(r.budget / (D * r.ki_edges)) : Rational(0);
        for (const auto& [name, b] : kis[m].budgets) r.counts[name] = 0;
        r.counts["vertical"] = 0;
    }
    std::map<std::pair<int, std::string>, long> by_piece;
    for (const auto& pr : out.report.pairs) {
        const SegTag &ta = out.tags[pr.edge_a][pr.segment_a], &tb = out.tags[pr.edge_b][pr.segment_b];
        int region = 0, depth = -1;
        for (const auto& sq : out.squares)
            if (c.depth[sq.child] > depth && sq.contains(pr.point)) {
                depth = c.depth[sq.child];
                region = sq.child;
            }
        ++out.regions[region].crossings;
        bool va = ta.cls == SegClass::Vertical, vb = tb.cls == SegClass::Vertical;
        if (va && vb) {
            ++out.vertical_pairs;
        } else if (va || vb) {
            ++out.regions[region].counts["vertical"];
        } else {
            int oa = out.owner[pr.edge_a][pr.segment_a], ob = out.owner[pr.edge_b][pr.segment_b];
            std::string cat = oa == ob ? crossing_category(ta, tb, kis[oa].hub_vortex) : "separation";
            ++out.regions[oa].counts[cat];
        }
    }
    out.report.add_bound("vertical_pairs", 0, Rational(out.vertical_pairs));
    Rational total_budget = 0;
    out.constant = 0;
    for (auto& r : out.regions) {
        std::string at = "region_" + std::to_string(r.piece);
        for (const auto& [name, b] : kis[r.piece].budgets)
            out.report.add_bound(at + ":" + name, b, Rational(r.counts[name]));
        out.report.add_bound(at + ":vertical", Rational(r.verticals) * Rational(r.ki_segments),
                             Rational(r.counts["vertical"]));
        out.report.add_bound(at, r.budget, Rational(r.crossings));
        total_budget += r.budget;
        out.constant = std::max(out.constant, r.constant);
    }
    out.report.add_bound("join_total", total_budget, Rational(out.report.total));
    out.ratio = out.max_degree > 0 && g.n() > 0 ? Rational(Rational(out.report.total) / (D * g.n())) : Rational(0);
    return out;
}

}  // namespace detail

/// Draws the composed graph: pieces bottom-up, each child's drawing scaled into the square below
/// its hub, hubs removed and cross edges dropped vertically onto their targets.
inline JoinResult join(const CliqueSumTree& t) {
    std::string last;
    for (int attempt = 0; attempt < 8; ++attempt) {
        try {
            return detail::join_once(t, 32 * attempt);
        } catch (const GeometryError& e) {
            last = e.what();
        }
    }
    throw GeometryError("join: no admissible drawing: " + last);
}

}  // namespace crossbound
