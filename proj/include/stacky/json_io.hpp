// JSON serialization for the file formats: fans, support functions, cylinder
// graphs, frame sequences and site configurations. Exact rationals travel as
// "p/q" strings (integers as plain numbers).
#pragma once

#include <json.hpp>

#include "stacky/cylgraph.hpp"
#include "stacky/fan.hpp"
#include "stacky/transport.hpp"

namespace stacky {

using Json = nlohmann::json;

inline Json rat_to_json(const Rat& q) {
    if (is_integer(q)) {
        Int n = num(q);
        if (n >= Int(std::numeric_limits<long long>::min()) && n <= Int(std::numeric_limits<long long>::max()))
            return Json(n.convert_to<long long>());
    }
    return Json(rat_to_string(q));
}

inline Rat rat_from_json(const Json& j) {
    if (j.is_string()) return parse_rat(j.get<std::string>());
    if (j.is_number_integer()) return Rat(Int(j.get<long long>()));
    if (j.is_number_float()) return parse_rat(std::to_string(j.get<double>()));
    throw DomainError("BadJson", "expected a rational (number or \"p/q\" string)");
}

inline Json int_to_json(const Int& n) {
    if (n >= Int(std::numeric_limits<long long>::min()) && n <= Int(std::numeric_limits<long long>::max()))
        return Json(n.convert_to<long long>());
    return Json(n.str());
}

inline Int int_from_json(const Json& j) {
    if (j.is_string()) return Int(j.get<std::string>());
    if (j.is_number_integer()) return Int(j.get<long long>());
    throw DomainError("BadJson", "expected an integer");
}

// {"rank": n, "rays": [[..]], "b": [..], "max_cones": [[ray indices]]}
inline StackyFan fan_from_json(const Json& j) {
    std::size_t rank = j.at("rank").get<std::size_t>();
    std::vector<std::vector<Int>> rays;
    for (const auto& row : j.at("rays")) {
        std::vector<Int> u;
        for (const auto& x : row) u.push_back(int_from_json(x));
        rays.push_back(std::move(u));
    }
    std::vector<Int> mult;
    for (const auto& x : j.at("b")) mult.push_back(int_from_json(x));
    std::vector<Cone> cones;
    for (const auto& c : j.at("max_cones")) {
        Cone cone;
        for (const auto& x : c) cone.push_back(x.get<std::size_t>());
        cones.push_back(std::move(cone));
    }
    return validate_fan(rank, std::move(rays), std::move(mult), cones);
}

inline Json fan_to_json(const StackyFan& fan) {
    Json j;
    j["rank"] = fan.rank;
    j["rays"] = Json::array();
    for (const auto& u : fan.rays) {
        Json row = Json::array();
        for (const auto& x : u) row.push_back(int_to_json(x));
        j["rays"].push_back(row);
    }
    j["b"] = Json::array();
    for (const auto& b : fan.mult) j["b"].push_back(int_to_json(b));
    j["max_cones"] = Json::array();
    for (const auto& c : fan.max_cones) j["max_cones"].push_back(c);
    return j;
}

// {"R": [R-, R+], "vertices": [[r, q2]..], "edges": [{"v": [a,b],
//  "polyline": [[r, q2lift]..]}..], "marked": index | null}
inline Json graph_to_json(const CylinderGraph& g) {
    Json j;
    j["R"] = Json::array({rat_to_json(g.r_min), rat_to_json(g.r_max)});
    j["vertices"] = Json::array();
    for (const auto& v : g.vertices)
        j["vertices"].push_back(Json::array({rat_to_json(v.r), rat_to_json(v.q)}));
    j["edges"] = Json::array();
    for (const auto& e : g.edges) {
        Json je;
        je["v"] = Json::array({e.from, e.to});
        je["polyline"] = Json::array();
        for (const auto& p : e.polyline)
            je["polyline"].push_back(Json::array({rat_to_json(p.r), rat_to_json(p.q)}));
        j["edges"].push_back(je);
    }
    if (g.marked)
        j["marked"] = *g.marked;
    else
        j["marked"] = nullptr;
    return j;
}

inline CylinderGraph graph_from_json(const Json& j) {
    CylinderGraph g;
    g.r_min = rat_from_json(j.at("R").at(0));
    g.r_max = rat_from_json(j.at("R").at(1));
    for (const auto& v : j.at("vertices"))
        g.vertices.push_back({rat_from_json(v.at(0)), rat_from_json(v.at(1))});
    for (const auto& e : j.at("edges")) {
        CylEdge edge;
        edge.from = e.at("v").at(0).get<std::size_t>();
        edge.to = e.at("v").at(1).get<std::size_t>();
        for (const auto& p : e.at("polyline"))
            edge.polyline.push_back({rat_from_json(p.at(0)), rat_from_json(p.at(1))});
        g.edges.push_back(std::move(edge));
    }
    if (j.contains("marked") && !j.at("marked").is_null()) {
        const auto& m = j.at("marked");
        if (m.is_object()) {
            // Edge point {"edge": e, "breakpoint": k}: subdivide there and mark
            // the new vertex.
            std::size_t e = m.at("edge").get<std::size_t>();
            std::size_t k = m.at("breakpoint").get<std::size_t>();
            if (e >= g.edges.size() || k == 0 || k + 1 >= g.edges[e].polyline.size())
                throw DomainError("BadJson", "marked edge point out of range");
            CylEdge& edge = g.edges[e];
            CylPoint split = edge.polyline[k];
            CylEdge tail;
            tail.from = g.vertices.size();
            tail.to = edge.to;
            tail.polyline.assign(edge.polyline.begin() + long(k), edge.polyline.end());
            edge.to = g.vertices.size();
            edge.polyline.resize(k + 1);
            g.vertices.push_back({split.r, mod1(split.q)});
            g.edges.push_back(std::move(tail));
            g.marked = g.vertices.size() - 1;
        } else {
            g.marked = m.get<std::size_t>();
        }
    }
    return g;
}

inline Json frames_to_json(const std::vector<CylinderGraph>& frames) {
    Json j;
    j["frames"] = Json::array();
    for (const auto& f : frames) j["frames"].push_back(graph_to_json(f));
    return j;
}

inline std::vector<CylinderGraph> frames_from_json(const Json& j) {
    std::vector<CylinderGraph> out;
    for (const auto& f : j.at("frames")) out.push_back(graph_from_json(f));
    return out;
}

// {"R": [R-, R+], "sites": [[r, q2]..], "targets": [..]?,
//  "boundary_targets": [north, south]?, "tol": x?}
inline TransportProblem transport_from_json(const Json& j) {
    TransportProblem p;
    p.r_min = j.at("R").at(0).get<double>();
    p.r_max = j.at("R").at(1).get<double>();
    for (const auto& s : j.at("sites"))
        p.sites.push_back({s.at(0).get<double>(), s.at(1).get<double>()});
    if (j.contains("targets")) {
        for (const auto& t : j.at("targets")) p.targets.push_back(t.get<double>());
    } else {
        p.targets.assign(p.sites.size(), 1.0);
    }
    if (j.contains("boundary_targets")) {
        p.target_north = j.at("boundary_targets").at(0).get<double>();
        p.target_south = j.at("boundary_targets").at(1).get<double>();
    } else {
        double used = 0;
        for (double t : p.targets) used += t;
        p.target_north = p.target_south = (p.r_max - p.r_min - used) / 2;
    }
    if (j.contains("tol")) p.tolerance = j.at("tol").get<double>();
    return p;
}

}  // namespace stacky
