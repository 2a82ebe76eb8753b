#include "saddle/ordering.hpp"

#include "saddle/errors.hpp"

#include <algorithm>
#include <numeric>

namespace saddle {

namespace {

// Intrusive doubly linked degree buckets. head[d] is the first node of
// degree d; nodes are pushed to the front, so picks are deterministic.
struct DegreeLists {
    std::vector<index_t> head, next, prev, deg;
    index_t mindeg = 0;

    explicit DegreeLists(index_t n)
        : head(static_cast<std::size_t>(n), -1),
          next(static_cast<std::size_t>(n), -1),
          prev(static_cast<std::size_t>(n), -1),
          deg(static_cast<std::size_t>(n), 0) {}

    void insert(index_t i, index_t d) {
        deg[static_cast<std::size_t>(i)] = d;
        const index_t h = head[static_cast<std::size_t>(d)];
        next[static_cast<std::size_t>(i)] = h;
        prev[static_cast<std::size_t>(i)] = -1;
        if (h >= 0) prev[static_cast<std::size_t>(h)] = i;
        head[static_cast<std::size_t>(d)] = i;
        mindeg = std::min(mindeg, d);
    }

    void remove(index_t i) {
        const index_t p = prev[static_cast<std::size_t>(i)];
        const index_t nx = next[static_cast<std::size_t>(i)];
        if (p >= 0)
            next[static_cast<std::size_t>(p)] = nx;
        else
            head[static_cast<std::size_t>(deg[static_cast<std::size_t>(i)])] = nx;
        if (nx >= 0) prev[static_cast<std::size_t>(nx)] = p;
    }

    index_t pop_min(index_t n) {
        while (mindeg < n && head[static_cast<std::size_t>(mindeg)] < 0) ++mindeg;
        const index_t i = head[static_cast<std::size_t>(mindeg)];
        remove(i);
        return i;
    }
};

} // namespace

std::vector<index_t> natural_order(index_t n) {
    std::vector<index_t> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), index_t{0});
    return p;
}

std::vector<index_t> amd_order(const CsrMatrix& pattern) {
    if (pattern.nrows != pattern.ncols)
        throw DimensionError("amd_order: pattern must be square");
    const index_t n = pattern.nrows;
    if (n == 0) return {};

    // Symmetrized adjacency without the diagonal.
    std::vector<std::vector<index_t>> adjvar(static_cast<std::size_t>(n));
    {
        std::vector<index_t> stamp(static_cast<std::size_t>(n), -1);
        const CsrMatrix T = transpose(pattern);
        for (index_t i = 0; i < n; ++i) {
            auto& row = adjvar[static_cast<std::size_t>(i)];
            for (index_t k = pattern.row_offsets[i]; k < pattern.row_offsets[i + 1]; ++k) {
                const index_t j = pattern.col_indices[static_cast<std::size_t>(k)];
                if (j != i && stamp[static_cast<std::size_t>(j)] != i) {
                    stamp[static_cast<std::size_t>(j)] = i;
                    row.push_back(j);
                }
            }
            for (index_t k = T.row_offsets[i]; k < T.row_offsets[i + 1]; ++k) {
                const index_t j = T.col_indices[static_cast<std::size_t>(k)];
                if (j != i && stamp[static_cast<std::size_t>(j)] != i) {
                    stamp[static_cast<std::size_t>(j)] = i;
                    row.push_back(j);
                }
            }
            std::sort(row.begin(), row.end());
        }
    }

    // Quotient graph. Eliminated node p becomes element p whose variable
    // list elvars[p] is the pivot's merged neighborhood; elements adjacent
    // to p are absorbed, so live elements only reference live variables.
    std::vector<std::vector<index_t>> adjel(static_cast<std::size_t>(n));
    std::vector<std::vector<index_t>> elvars(static_cast<std::size_t>(n));
    std::vector<char> alive(static_cast<std::size_t>(n), 1);
    std::vector<char> el_alive(static_cast<std::size_t>(n), 0);

    DegreeLists lists(n);
    for (index_t i = n; i-- > 0;)
        lists.insert(i, static_cast<index_t>(adjvar[static_cast<std::size_t>(i)].size()));

    std::vector<index_t> mark(static_cast<std::size_t>(n), -1);
    std::vector<index_t> wstamp(static_cast<std::size_t>(n), -1);
    std::vector<index_t> w(static_cast<std::size_t>(n), 0);
    std::vector<index_t> lp;
    std::vector<index_t> perm;
    perm.reserve(static_cast<std::size_t>(n));

    for (index_t nelim = 0; nelim < n; ++nelim) {
        const index_t p = lists.pop_min(n);
        alive[static_cast<std::size_t>(p)] = 0;
        perm.push_back(p);

        // Lp = live neighborhood of p through variables and elements.
        lp.clear();
        mark[static_cast<std::size_t>(p)] = nelim;
        for (index_t v : adjvar[static_cast<std::size_t>(p)]) {
            if (alive[static_cast<std::size_t>(v)] && mark[static_cast<std::size_t>(v)] != nelim) {
                mark[static_cast<std::size_t>(v)] = nelim;
                lp.push_back(v);
            }
        }
        for (index_t e : adjel[static_cast<std::size_t>(p)]) {
            if (!el_alive[static_cast<std::size_t>(e)]) continue;
            for (index_t v : elvars[static_cast<std::size_t>(e)]) {
                if (alive[static_cast<std::size_t>(v)] &&
                    mark[static_cast<std::size_t>(v)] != nelim) {
                    mark[static_cast<std::size_t>(v)] = nelim;
                    lp.push_back(v);
                }
            }
            el_alive[static_cast<std::size_t>(e)] = 0; // absorbed into p
        }
        adjvar[static_cast<std::size_t>(p)].clear();
        adjel[static_cast<std::size_t>(p)].clear();

        if (lp.empty()) continue;

        elvars[static_cast<std::size_t>(p)] = lp;
        el_alive[static_cast<std::size_t>(p)] = 1;

        // Prune each i in Lp: variable neighbors now covered by element p
        // are dropped, dead elements are dropped, p is appended.
        for (index_t i : lp) {
            auto& av = adjvar[static_cast<std::size_t>(i)];
            av.erase(std::remove_if(av.begin(), av.end(),
                                    [&](index_t v) {
                                        return !alive[static_cast<std::size_t>(v)] ||
                                               mark[static_cast<std::size_t>(v)] == nelim;
                                    }),
                     av.end());
            auto& ae = adjel[static_cast<std::size_t>(i)];
            ae.erase(std::remove_if(ae.begin(), ae.end(),
                                    [&](index_t e) {
                                        return !el_alive[static_cast<std::size_t>(e)];
                                    }),
                     ae.end());
            ae.push_back(p);
        }

        // One pass computes w[e] = |Le \ Lp| for every live element e that
        // touches Lp.
        for (index_t i : lp) {
            for (index_t e : adjel[static_cast<std::size_t>(i)]) {
                if (e == p) continue;
                if (wstamp[static_cast<std::size_t>(e)] != nelim) {
                    wstamp[static_cast<std::size_t>(e)] = nelim;
                    w[static_cast<std::size_t>(e)] =
                        static_cast<index_t>(elvars[static_cast<std::size_t>(e)].size());
                }
                --w[static_cast<std::size_t>(e)];
            }
        }

        const index_t lp_size = static_cast<index_t>(lp.size());
        for (index_t i : lp) {
            index_t d = static_cast<index_t>(adjvar[static_cast<std::size_t>(i)].size()) +
                        (lp_size - 1);
            for (index_t e : adjel[static_cast<std::size_t>(i)])
                if (e != p) d += w[static_cast<std::size_t>(e)];
            d = std::min(d, n - 1 - (nelim + 1));
            d = std::min(d, lists.deg[static_cast<std::size_t>(i)] + lp_size - 1);
            d = std::max<index_t>(d, 0);
            lists.remove(i);
            lists.insert(i, d);
        }
    }

    return perm;
}

} // namespace saddle
