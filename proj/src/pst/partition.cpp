#include "pst/partition.hpp"

#include "pst/graph.hpp"
#include "pst/unionfind.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace pst {

Partition canonical_partition(Partition p) {
    std::vector<int> all;
    for (auto& b : p) {
        if (b.empty()) throw std::invalid_argument("partition has an empty block");
        std::sort(b.begin(), b.end());
        all.insert(all.end(), b.begin(), b.end());
    }
    std::sort(all.begin(), all.end());
    if (std::adjacent_find(all.begin(), all.end()) != all.end())
        throw std::invalid_argument("partition blocks are not disjoint");
    std::sort(p.begin(), p.end(),
              [](const Block& a, const Block& b) { return a[0] < b[0]; });
    return p;
}

Partition singleton_partition(const std::vector<int>& elems) {
    Partition p;
    for (int e : elems) p.push_back({e});
    return canonical_partition(std::move(p));
}

Partition one_block_partition(const std::vector<int>& elems) {
    if (elems.empty()) return {};
    Partition p{elems};
    return canonical_partition(std::move(p));
}

std::vector<int> partition_ground(const Partition& p) {
    std::vector<int> g;
    for (const auto& b : p) g.insert(g.end(), b.begin(), b.end());
    std::sort(g.begin(), g.end());
    return g;
}

Partition partition_join(const Partition& a, const Partition& b) {
    std::vector<int> ground = partition_ground(a);
    std::vector<int> gb = partition_ground(b);
    ground.insert(ground.end(), gb.begin(), gb.end());
    std::sort(ground.begin(), ground.end());
    ground.erase(std::unique(ground.begin(), ground.end()), ground.end());

    std::map<int, int> idx;
    for (size_t i = 0; i < ground.size(); ++i) idx[ground[i]] = static_cast<int>(i);

    UnionFind uf(static_cast<int>(ground.size()));
    for (const Partition* p : {&a, &b})
        for (const auto& blk : *p)
            for (size_t i = 1; i < blk.size(); ++i) uf.unite(idx[blk[0]], idx[blk[i]]);

    std::map<int, Block> groups;
    for (size_t i = 0; i < ground.size(); ++i)
        groups[uf.find(static_cast<int>(i))].push_back(ground[i]);
    Partition out;
    for (auto& [root, blk] : groups) out.push_back(std::move(blk));
    return canonical_partition(std::move(out));
}

Partition partition_project(const Partition& p, const std::vector<int>& keep) {
    std::vector<int> k = keep;
    std::sort(k.begin(), k.end());
    Partition out;
    for (const auto& blk : p) {
        Block nb;
        for (int e : blk)
            if (std::binary_search(k.begin(), k.end(), e)) nb.push_back(e);
        if (!nb.empty()) out.push_back(std::move(nb));
    }
    return canonical_partition(std::move(out));
}

bool same_block(const Partition& p, int u, int v) {
    for (const auto& blk : p) {
        bool hu = std::find(blk.begin(), blk.end(), u) != blk.end();
        bool hv = std::find(blk.begin(), blk.end(), v) != blk.end();
        if (hu || hv) return hu && hv;
    }
    return false;
}

namespace {

// Restricted growth strings: f[0] = 0 and f[i] <= 1 + max(f[0..i-1]).
// Lexicographic successor enumeration.
std::vector<std::vector<int>> all_rgs(int n) {
    std::vector<std::vector<int>> out;
    if (n == 0) {
        out.push_back({});
        return out;
    }
    std::vector<int> f(n, 0), maxf(n, 0);
    for (;;) {
        out.push_back(f);
        int i = n - 1;
        while (i > 0 && f[i] == maxf[i - 1] + 1) --i;
        if (i == 0) break;
        f[i]++;
        maxf[i] = std::max(maxf[i - 1], f[i]);
        for (int j = i + 1; j < n; ++j) {
            f[j] = 0;
            maxf[j] = maxf[j - 1];
        }
    }
    return out;
}

}  // namespace

std::vector<Partition> all_partitions(const std::vector<int>& elems) {
    std::vector<int> e = elems;
    std::sort(e.begin(), e.end());
    if (std::adjacent_find(e.begin(), e.end()) != e.end())
        throw std::invalid_argument("duplicate elements");
    int n = static_cast<int>(e.size());
    std::vector<Partition> out;
    for (const auto& f : all_rgs(n)) {
        int blocks = n == 0 ? 0 : 1 + *std::max_element(f.begin(), f.end());
        Partition p(blocks);
        for (int i = 0; i < n; ++i) p[f[i]].push_back(e[i]);
        out.push_back(canonical_partition(std::move(p)));
    }
    return out;
}

std::vector<Partition> coarsenings_of(const Partition& p) {
    int m = static_cast<int>(p.size());
    std::vector<Partition> out;
    for (const auto& f : all_rgs(m)) {
        int groups = m == 0 ? 0 : 1 + *std::max_element(f.begin(), f.end());
        Partition c(groups);
        for (int i = 0; i < m; ++i)
            c[f[i]].insert(c[f[i]].end(), p[i].begin(), p[i].end());
        out.push_back(canonical_partition(std::move(c)));
    }
    return out;
}

Partition induced_partition(int n, const std::vector<Edge>& edges,
                            const std::vector<int>& chosen_edges,
                            const std::vector<int>& ground) {
    UnionFind uf(n);
    for (int e : chosen_edges) uf.unite(edges[e].u, edges[e].v);
    std::map<int, Block> groups;
    for (int g : ground) groups[uf.find(g)].push_back(g);
    Partition out;
    for (auto& [root, blk] : groups) out.push_back(std::move(blk));
    return canonical_partition(std::move(out));
}

unsigned long long bell_number(int n) {
    // Bell triangle; n stays tiny here.
    std::vector<std::vector<unsigned long long>> tri{{1}};
    for (int i = 1; i <= n; ++i) {
        std::vector<unsigned long long> row{tri.back().back()};
        for (unsigned long long x : tri.back()) row.push_back(row.back() + x);
        tri.push_back(std::move(row));
    }
    return tri[n][0];
}

}  // namespace pst
