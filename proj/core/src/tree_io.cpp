#include "rrt/tree_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace rrt {

std::string to_edge_list(const IncreasingTree& t) {
  std::ostringstream os;
  write_edge_list(os, t);
  return os.str();
}

void write_edge_list(std::ostream& os, const IncreasingTree& t) {
  os << "# n=" << t.n() << '\n';
  const auto parent = t.parent_array();
  for (Vertex v = 2; v <= t.n(); ++v) os << parent[v] << ' ' << v << '\n';
}

UnrootedTree read_unrooted_tree(std::istream& is) {
  std::string line;
  UnrootedTree t;
  bool have_header = false;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (!have_header) {
      Vertex n = 0;
      if (std::sscanf(line.c_str(), "# n=%u", &n) != 1 || n < 1) {
        throw std::runtime_error("tree file: expected header '# n=<n>' on line " +
                                 std::to_string(lineno));
      }
      t.n = n;
      have_header = true;
      continue;
    }
    Vertex u = 0;
    Vertex v = 0;
    if (std::sscanf(line.c_str(), "%u %u", &u, &v) != 2) {
      throw std::runtime_error("tree file: malformed edge on line " + std::to_string(lineno));
    }
    t.edges.emplace_back(u, v);
  }
  if (!have_header) throw std::runtime_error("tree file: missing '# n=<n>' header");
  if (t.edges.size() != static_cast<std::size_t>(t.n) - 1) {
    throw std::runtime_error("tree file: expected " + std::to_string(t.n - 1) + " edges, got " +
                             std::to_string(t.edges.size()));
  }
  // Adjacency construction validates labels; a BFS validates connectivity.
  const Adjacency adj(t);
  std::vector<bool> seen(t.n + 1, false);
  std::vector<Vertex> queue{1};
  seen[1] = true;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (Vertex u : adj.neighbors(queue[i])) {
      if (!seen[u]) {
        seen[u] = true;
        queue.push_back(u);
      }
    }
  }
  if (queue.size() != t.n) throw std::runtime_error("tree file: edges do not form a tree");
  return t;
}

UnrootedTree read_unrooted_tree_file(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open " + path.string());
  return read_unrooted_tree(is);
}

IncreasingTree to_increasing_tree(const UnrootedTree& t) {
  const Adjacency adj(t);
  std::vector<Vertex> parent_of(static_cast<std::size_t>(t.n) + 1, 0);
  std::vector<bool> seen(t.n + 1, false);
  std::vector<Vertex> queue{1};
  seen[1] = true;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const Vertex v = queue[i];
    for (Vertex u : adj.neighbors(v)) {
      if (!seen[u]) {
        seen[u] = true;
        parent_of[u] = v;
        queue.push_back(u);
      }
    }
  }
  if (queue.size() != t.n) throw std::runtime_error("to_increasing_tree: not connected");
  for (Vertex v = 2; v <= t.n; ++v) {
    if (parent_of[v] >= v) {
      throw std::runtime_error("to_increasing_tree: labels do not increase away from vertex 1");
    }
  }
  return IncreasingTree(std::move(parent_of));
}

IncreasingTree read_increasing_tree(std::istream& is) {
  return to_increasing_tree(read_unrooted_tree(is));
}

IncreasingTree read_increasing_tree_file(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open " + path.string());
  return read_increasing_tree(is);
}

std::string embedding_dump(const IncreasingTree& t, const Embedding& phi) {
  std::ostringstream os;
  for (Vertex v = 1; v <= t.n(); ++v) {
    const UlamNode& u = phi.node(v);
    const std::string bits = u.is_root() ? "-" : ell(u).to_string();
    os << v << '\t' << u.to_string() << '\t' << bits << '\n';
  }
  return os.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    os.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!os) throw std::runtime_error("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace rrt
