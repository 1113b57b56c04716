#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "rrt/tree.hpp"
#include "rrt/ulam.hpp"

namespace rrt {

// Edge-list text format: header line "# n=<n>", then one "u v" pair per
// line with 1-based labels, parent listed first.
std::string to_edge_list(const IncreasingTree& t);
void write_edge_list(std::ostream& os, const IncreasingTree& t);

// Readers validate labels, edge count and connectivity; the increasing-tree
// reader additionally requires that vertex 1 roots the tree with
// parent(v) < v everywhere.
UnrootedTree read_unrooted_tree(std::istream& is);
UnrootedTree read_unrooted_tree_file(const std::filesystem::path& path);
IncreasingTree read_increasing_tree(std::istream& is);
IncreasingTree read_increasing_tree_file(const std::filesystem::path& path);

// Orients an unrooted tree from vertex 1; throws if any oriented parent
// exceeds its child (not an increasing tree).
IncreasingTree to_increasing_tree(const UnrootedTree& t);

// Embedding dump: one line per vertex, ascending, "v<TAB>digits<TAB>bits"
// with digits joined by '.'; the root prints "-" for both fields.
std::string embedding_dump(const IncreasingTree& t, const Embedding& phi);

// Writes content to path via a temp file in the same directory plus rename.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace rrt
