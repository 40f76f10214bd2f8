#pragma once

#include <numeric>
#include <vector>

namespace pst {

struct UnionFind {
    std::vector<int> parent;

    explicit UnionFind(int n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0);
    }

    int find(int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }

    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (a > b) std::swap(a, b);  // smaller root wins, keeps ids stable
        parent[b] = a;
        return true;
    }

    bool same(int a, int b) { return find(a) == find(b); }
};

}  // namespace pst
