#pragma once

#include <cstdio>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "crossbound/cliquesum.hpp"
#include "crossbound/decomposition.hpp"
#include "crossbound/geometry.hpp"
#include "crossbound/graph.hpp"

namespace crossbound {

using Json = nlohmann::json;

/// Malformed or schema-violating input.
class ParseError : public Error {
  public:
    using Error::Error;
};

namespace detail {

template <typename F>
auto parsing(const std::string& what, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const ParseError&) {
        throw;
    } catch (const Json::exception& e) {
        throw ParseError(what + ": " + e.what());
    } catch (const InvalidArgument& e) {
        throw ParseError(what + ": " + e.what());
    }
}

inline Json edges_json(std::span<const Edge> es) {
    Json a = Json::array();
    for (auto [u, v] : es) a.push_back({u, v});
    return a;
}

inline std::vector<Edge> edges_from(const Json& j) {
    std::vector<Edge> es;
    for (const auto& e : j) {
        if (!e.is_array() || e.size() != 2) throw ParseError("edge must be a pair");
        es.push_back(make_edge(e[0].get<Vertex>(), e[1].get<Vertex>()));
    }
    return es;
}

inline Json point_json(const Point& p) { return {to_string(p.x), to_string(p.y)}; }

inline Point point_from(const Json& j) {
    if (!j.is_array() || j.size() != 2) throw ParseError("point must be a pair");
    auto coord = [](const Json& c) -> Rational {
        if (c.is_string()) return parse_rational(c.get<std::string>());
        if (c.is_number_integer()) return Rational(c.get<long>());
        throw ParseError("coordinate must be a \"num/den\" string or an integer");
    };
    return {coord(j[0]), coord(j[1])};
}

}  // namespace detail

// ---------------------------------------------------------------------------------------------
// Graphs

inline Json to_json(const Graph& g) { return {{"n", g.n()}, {"edges", detail::edges_json(g.edges())}}; }

inline Graph graph_from_json(const Json& j) {
    return detail::parsing("graph", [&] {
        int n = j.at("n").get<int>();
        auto es = detail::edges_from(j.at("edges"));
        return Graph(n, std::span<const Edge>(es));
    });
}

/// Plain edge list: one "u v" pair per line, '#' starts a comment, and an optional "n <count>"
/// line fixes the vertex count (default: largest id + 1).
inline Graph read_edge_list(std::istream& in) {
    std::vector<Edge> es;
    int n = -1, top = -1;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        std::istringstream ss(line);
        std::string a;
        if (!(ss >> a)) continue;
        std::string b, extra;
        if (!(ss >> b) || (ss >> extra)) throw ParseError("edge list line " + std::to_string(lineno) + ": expected two fields");
        try {
            if (a == "n") {
                n = std::stoi(b);
                continue;
            }
            Vertex u = std::stoi(a), v = std::stoi(b);
            top = std::max({top, u, v});
            es.push_back(make_edge(u, v));
        } catch (const std::logic_error&) {
            throw ParseError("edge list line " + std::to_string(lineno) + ": not an integer");
        }
    }
    if (n < 0) n = top + 1;
    return detail::parsing("edge list", [&] { return Graph(n, std::span<const Edge>(es)); });
}

// ---------------------------------------------------------------------------------------------
// Decompositions and orders

inline Json to_json(const Decomposition& d) {
    return {{"bags", d.bags}, {"host_edges", detail::edges_json(d.host.edges())}};
}

inline Decomposition decomposition_from_json(const Json& j) {
    return detail::parsing("decomposition", [&] {
        Decomposition d;
        d.bags = j.at("bags").get<std::vector<std::vector<Vertex>>>();
        auto es = detail::edges_from(j.at("host_edges"));
        d.host = Graph(static_cast<int>(d.bags.size()), std::span<const Edge>(es));
        return d;
    });
}

// ---------------------------------------------------------------------------------------------
// Drawings and reports

inline Json to_json(const Drawing& d) {
    Json pos = Json::array(), routes = Json::array();
    for (const auto& p : d.positions) pos.push_back(detail::point_json(p));
    for (const auto& r : d.routes) {
        Json route = Json::array();
        for (const auto& p : r) route.push_back(detail::point_json(p));
        routes.push_back(std::move(route));
    }
    return {{"style", to_string(d.style)}, {"graph", to_json(d.graph)}, {"positions", pos}, {"routes", routes}};
}

/// Structural checks only; geometric validity is left to validate_drawing.
inline Drawing drawing_from_json(const Json& j) {
    return detail::parsing("drawing", [&] {
        Drawing d;
        d.style = parse_style(j.at("style").get<std::string>());
        d.graph = graph_from_json(j.at("graph"));
        for (const auto& p : j.at("positions")) d.positions.push_back(detail::point_from(p));
        for (const auto& r : j.at("routes")) {
            std::vector<Point> route;
            for (const auto& p : r) route.push_back(detail::point_from(p));
            d.routes.push_back(std::move(route));
        }
        if (static_cast<int>(d.positions.size()) != d.graph.n()) throw ParseError("drawing: one position per vertex required");
        if (d.routes.size() != d.graph.edges().size()) throw ParseError("drawing: one route per edge required");
        return d;
    });
}

inline Json to_json(const CrossingReport& r) {
    Json bounds = Json::array();
    for (const auto& b : r.bounds)
        bounds.push_back({{"name", b.name}, {"value", to_string(b.value)}, {"actual", to_string(b.actual)},
                          {"satisfied", b.satisfied}});
    return {{"total", r.total}, {"non_adjacent", r.non_adjacent}, {"per_edge", r.per_edge}, {"bounds", bounds}};
}

inline CrossingReport report_from_json(const Json& j) {
    return detail::parsing("report", [&] {
        CrossingReport r;
        r.total = j.at("total").get<long>();
        r.non_adjacent = j.at("non_adjacent").get<long>();
        r.per_edge = j.at("per_edge").get<std::vector<long>>();
        for (const auto& b : j.at("bounds"))
            r.bounds.push_back({b.at("name").get<std::string>(), parse_rational(b.at("value").get<std::string>()),
                                parse_rational(b.at("actual").get<std::string>()), b.at("satisfied").get<bool>()});
        return r;
    });
}

/// Same counts; bound checks are not compared.
inline bool same_counts(const CrossingReport& a, const CrossingReport& b) {
    return a.total == b.total && a.non_adjacent == b.non_adjacent && a.per_edge == b.per_edge;
}

// ---------------------------------------------------------------------------------------------
// Clique-sum trees

inline Json to_json(const CliqueSumTree& t) {
    Json pieces = Json::array();
    for (const auto& p : t.pieces) {
        Json vortices = Json::array();
        for (const auto& vx : p.vortices)
            vortices.push_back({{"face", vx.face}, {"edges", detail::edges_json(vx.edges)}, {"bags", vx.bags}});
        Json clique = Json::array();
        for (auto [l, pv] : p.parent_clique) clique.push_back({l, pv});
        pieces.push_back({{"n", p.n},
                          {"planar_edges", detail::edges_json(p.planar_edges)},
                          {"apices", p.apices},
                          {"apex_edges", detail::edges_json(p.apex_edges)},
                          {"vortices", vortices},
                          {"parent", p.parent},
                          {"parent_clique", clique},
                          {"dropped_edges", detail::edges_json(p.dropped_edges)}});
    }
    return {{"kind", "cliquesum"}, {"h", t.h}, {"pieces", pieces}};
}

inline CliqueSumTree cliquesum_from_json(const Json& j) {
    return detail::parsing("clique-sum tree", [&] {
        CliqueSumTree t;
        t.h = j.at("h").get<int>();
        for (const auto& pj : j.at("pieces")) {
            AlmostEmbeddablePiece p;
            p.n = pj.at("n").get<int>();
            p.planar_edges = detail::edges_from(pj.value("planar_edges", Json::array()));
            p.apices = pj.value("apices", std::vector<Vertex>{});
            p.apex_edges = detail::edges_from(pj.value("apex_edges", Json::array()));
            for (const auto& vj : pj.value("vortices", Json::array())) {
                Vortex vx;
                vx.face = vj.at("face").get<std::vector<Vertex>>();
                vx.edges = detail::edges_from(vj.at("edges"));
                vx.bags = vj.at("bags").get<std::vector<std::vector<Vertex>>>();
                p.vortices.push_back(std::move(vx));
            }
            p.parent = pj.value("parent", -1);
            for (const auto& c : pj.value("parent_clique", Json::array())) {
                if (!c.is_array() || c.size() != 2) throw ParseError("parent_clique entries are (local, parent) pairs");
                p.parent_clique.emplace_back(c[0].get<Vertex>(), c[1].get<Vertex>());
            }
            p.dropped_edges = detail::edges_from(pj.value("dropped_edges", Json::array()));
            t.pieces.push_back(std::move(p));
        }
        return t;
    });
}

// ---------------------------------------------------------------------------------------------
// Files

inline Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const Json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
}

inline void write_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << j.dump(1) << '\n';
}

/// Reads a graph from JSON, or from a plain edge list when the file does not start with '{'.
inline Graph read_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    in >> std::ws;
    if (in.peek() == '{') return graph_from_json(read_json_file(path));
    return read_edge_list(in);
}

// ---------------------------------------------------------------------------------------------
// SVG

namespace detail {

inline std::string fixed6(const Rational& q) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", to_double(q));
    return buf;
}

}  // namespace detail

/// SVG 1.1 rendering. Coordinates are rounded to 6 decimals for display; the exact crossing count
/// is stamped in the title and a comment.
inline std::string to_svg(const Drawing& d, long crossings) {
    Rational x0 = 0, x1 = 1, y0 = 0, y1 = 1;
    bool first = true;
    auto grow = [&](const Point& p) {
        if (first) {
            x0 = x1 = p.x;
            y0 = y1 = p.y;
            first = false;
        }
        x0 = std::min(x0, p.x);
        x1 = std::max(x1, p.x);
        y0 = std::min(y0, p.y);
        y1 = std::max(y1, p.y);
    };
    for (const auto& p : d.positions) grow(p);
    for (const auto& r : d.routes)
        for (const auto& p : r) grow(p);
    Rational w = x1 - x0, h = y1 - y0;
    Rational side = std::max(Rational(std::max(w, h)), Rational(1, 1000000));
    Rational pad = side / 20;
    Rational r = side / 150;
    // y grows downwards in SVG, so flip.
    auto sx = [&](const Rational& x) { return detail::fixed6(Rational(x - x0 + pad)); };
    auto sy = [&](const Rational& y) { return detail::fixed6(Rational(y1 - y + pad)); };

    std::ostringstream o;
    o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    o << "<!-- exact crossings: " << crossings << " -->\n";
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"0 0 "
      << detail::fixed6(Rational(w + 2 * pad)) << ' ' << detail::fixed6(Rational(h + 2 * pad)) << "\">\n";
    o << "<title>crossings=" << crossings << " n=" << d.graph.n() << " m=" << d.graph.m() << "</title>\n";
    o << "<g fill=\"none\" stroke=\"black\" stroke-width=\"" << detail::fixed6(Rational(r / 4)) << "\">\n";
    for (const auto& route : d.routes) {
        o << "<polyline points=\"";
        for (std::size_t k = 0; k < route.size(); ++k) o << (k ? " " : "") << sx(route[k].x) << ',' << sy(route[k].y);
        o << "\"/>\n";
    }
    o << "</g>\n<g fill=\"black\">\n";
    for (Vertex v = 0; v < d.graph.n(); ++v)
        o << "<circle cx=\"" << sx(d.positions[v].x) << "\" cy=\"" << sy(d.positions[v].y) << "\" r=\""
          << detail::fixed6(r) << "\"><title>" << v << "</title></circle>\n";
    o << "</g>\n</svg>\n";
    return o.str();
}

}  // namespace crossbound
