#pragma once

#include "tropjac/covers.hpp"
#include "tropjac/jacobian.hpp"
#include "tropjac/metric_graph.hpp"
#include "tropjac/point.hpp"

#include <json.hpp>

#include <string>

namespace tropjac {

using Json = nlohmann::json;

/// Parses JSON text; syntax errors become InvalidInput naming the line.
Json parse_json(const std::string& text, const std::string& source = "input");
/// Reads and parses a file. Throws InvalidInput if it cannot be read.
Json read_json_file(const std::string& path);

Json to_json(const MetricGraph& g);
Json to_json(const Divisor& d);
Json to_json(const Point& p);
Json to_json(const CycleZ2& c);
Json to_json(const DoubleCover& c);
/// Coordinates together with the spanning tree defining the basis.
Json to_json(const JacobianPoint& p, const MetricGraph& g, const PeriodLattice& lattice);

/// Schema violations throw InvalidInput with the offending field path.
/// With `check` unset, structurally sound but invalid graphs (for
/// example disconnected ones) are returned as is.
MetricGraph graph_from_json(const Json& j, bool check = true);
Divisor divisor_from_json(const Json& j);
Point point_from_json(const Json& j, const std::string& path = "at");
CycleZ2 cycle_from_json(const Json& j);
DoubleCover cover_from_json(const Json& j);

/// Layout-free DOT; divisor coefficients appear as vertex labels and as
/// point nodes splitting the edges they sit on.
std::string to_dot(const MetricGraph& g, const Divisor& d = {});
std::string to_dot(const DoubleCover& c);
/// TikZ picture with vertices on a circle and divisor labels at edge points.
std::string to_tikz(const MetricGraph& g, const Divisor& d = {});

}  // namespace tropjac
