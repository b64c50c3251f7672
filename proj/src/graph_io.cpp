#include <fstream>
#include <iomanip>
#include <sstream>

#include "gsamp/errors.hpp"
#include "gsamp/graph.hpp"

namespace gsamp {

namespace {

bool blank_or_comment(const std::string& line) {
  const auto pos = line.find_first_not_of(" \t\r");
  return pos == std::string::npos || line[pos] == '#';
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  return in;
}

}  // namespace

Graph read_edge_list(std::istream& in) {
  std::string line;
  int line_no = 0;
  int n = -1;
  std::vector<Edge> edges;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank_or_comment(line)) continue;
    std::istringstream fields(line);
    if (n < 0) {
      std::string extra;
      if (!(fields >> n) || n < 0 || (fields >> extra)) throw ParseError(line_no, "expected node count");
      continue;
    }
    long long i = 0, j = 0;
    double w = 1.0;
    if (!(fields >> i >> j)) throw ParseError(line_no, "expected 'i j [w]'");
    if (!(fields >> w)) {
      if (!fields.eof()) throw ParseError(line_no, "malformed weight");
      w = 1.0;
    } else {
      std::string extra;
      if (fields >> extra) throw ParseError(line_no, "trailing fields");
    }
    if (i < 0 || j < 0 || i >= n || j >= n)
      throw ParseError(line_no, "node index outside [0, " + std::to_string(n) + ")");
    if (i == j) throw ParseError(line_no, "self-loop");
    if (!(w > 0.0)) throw ParseError(line_no, "weight must be positive");
    edges.push_back({static_cast<int>(i), static_cast<int>(j), w});
  }
  if (n < 0) throw ParseError(line_no, "missing node count");
  try {
    return Graph(n, std::move(edges));
  } catch (const InvalidArgument& e) {
    throw ParseError(line_no, e.what());
  }
}

Graph load_edge_list(const std::string& path) {
  auto in = open_input(path);
  return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << g.size() << '\n';
  const auto old = out.precision(17);
  for (const auto& e : g.edges()) {
    out << e.u << ' ' << e.v;
    if (g.weighted()) out << ' ' << e.w;
    out << '\n';
  }
  out.precision(old);
}

void save_edge_list(const std::string& path, const Graph& g) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  write_edge_list(out, g);
}

Graph read_positions(std::istream& in, const Graph& g) {
  std::vector<Point> pos;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank_or_comment(line)) continue;
    std::istringstream fields(line);
    Point p;
    if (!(fields >> p.x >> p.y)) throw ParseError(line_no, "expected 'x y'");
    if (p.x < 0.0 || p.x > 1.0 || p.y < 0.0 || p.y > 1.0)
      throw ParseError(line_no, "position outside the unit square");
    pos.push_back(p);
  }
  if (pos.size() != static_cast<std::size_t>(g.size()))
    throw ParseError(line_no, "expected " + std::to_string(g.size()) + " positions, found " +
                                  std::to_string(pos.size()));
  return Graph(g.size(), {g.edges().begin(), g.edges().end()}, std::move(pos));
}

Graph load_positions(const std::string& path, const Graph& g) {
  auto in = open_input(path);
  return read_positions(in, g);
}

void write_positions(std::ostream& out, const Graph& g) {
  const auto old = out.precision(17);
  for (const auto& p : g.positions()) out << p.x << ' ' << p.y << '\n';
  out.precision(old);
}

}  // namespace gsamp
