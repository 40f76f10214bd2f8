#pragma once

#include <cstdint>
#include <vector>

namespace pst {

struct Edge;

// Partitions of small integer ground sets. Canonical form everywhere:
// each block sorted ascending, blocks ordered by their minimum element.
using Block = std::vector<int>;
using Partition = std::vector<Block>;

Partition canonical_partition(Partition p);
Partition singleton_partition(const std::vector<int>& elems);
Partition one_block_partition(const std::vector<int>& elems);
std::vector<int> partition_ground(const Partition& p);  // sorted union of blocks

// Finest common coarsening over the union of the two ground sets.
Partition partition_join(const Partition& a, const Partition& b);

// Restriction to `keep` (sorted or not); empty blocks vanish.
Partition partition_project(const Partition& p, const std::vector<int>& keep);

bool same_block(const Partition& p, int u, int v);

// All partitions of `elems`, in restricted-growth-string order.
std::vector<Partition> all_partitions(const std::vector<int>& elems);

// All coarsenings of p (partitions of its block set, merged), RGS order over
// block indices. The identity coarsening is included.
std::vector<Partition> coarsenings_of(const Partition& p);

// Partition induced on `ground` by connectivity of the chosen edges in a
// graph with n vertices.
Partition induced_partition(int n, const std::vector<Edge>& edges,
                            const std::vector<int>& chosen_edges,
                            const std::vector<int>& ground);

unsigned long long bell_number(int n);

}  // namespace pst
