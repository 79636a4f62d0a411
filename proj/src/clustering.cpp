#include "metnet/clustering.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

#include "metnet/error.hpp"

namespace metnet {

double lance_williams_ward(double d_ik, double d_jk, double d_ij, std::size_t n_i, std::size_t n_j, std::size_t n_k) {
    const double ni = static_cast<double>(n_i);
    const double nj = static_cast<double>(n_j);
    const double nk = static_cast<double>(n_k);
    return ((ni + nk) * d_ik + (nj + nk) * d_jk - nk * d_ij) / (ni + nj + nk);
}

namespace {

// Hash-consed binary trees. Ids below the atom count are leaves; an internal
// node stores its children ordered by smallest atom, so equal structures share an id.
class TreePool {
public:
    explicit TreePool(std::size_t atoms) {
        nodes_.reserve(atoms);
        for (std::size_t i = 0; i < atoms; ++i)
            nodes_.push_back({-1, -1, static_cast<std::uint32_t>(i), 1});
    }

    struct Node {
        int left;
        int right;
        std::uint32_t min_atom;
        std::uint32_t size;
    };

    int join(int a, int b) {
        if (nodes_[b].min_atom < nodes_[a].min_atom) std::swap(a, b);
        const std::uint64_t key = (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
        auto [it, inserted] = index_.try_emplace(key, static_cast<int>(nodes_.size()));
        if (inserted)
            nodes_.push_back({a, b, nodes_[a].min_atom, nodes_[a].size + nodes_[b].size});
        return it->second;
    }

    const Node& operator[](int id) const { return nodes_[id]; }
    bool is_leaf(int id) const { return nodes_[id].left < 0; }

private:
    std::vector<Node> nodes_;
    std::unordered_map<std::uint64_t, int> index_;
};

struct VectorHash {
    template <class T>
    std::size_t operator()(const std::vector<T>& v) const noexcept {
        std::uint64_t h = 1469598103934665603ull;
        for (auto x : v) {
            h ^= static_cast<std::uint64_t>(x) + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
        }
        return static_cast<std::size_t>(h);
    }
};

// Enumerates Ward dendrograms over the partition lattice. The distances between
// clusters depend only on their leaf sets, so the set of completions from a
// partition is computed once and reused. Completions are trees whose leaves are
// the blocks of that partition, indexed by rank of their smallest leaf.
class WardEnumerator {
public:
    WardEnumerator(const RoleDistanceMatrix& dist, const WardOptions& options)
        : n_(dist.size()),
          d_(n_ * n_),
          size_(n_, 1),
          alive_(n_, 1),
          members_(n_),
          owner_(n_),
          scratch_(n_, -1),
          pool_(n_),
          cap_(options.cap + 1),
          eps_(options.tie_epsilon) {
        for (std::size_t i = 0; i < n_; ++i) {
            members_[i] = {static_cast<std::uint32_t>(i)};
            owner_[i] = static_cast<std::uint32_t>(i);
            for (std::size_t j = 0; j < n_; ++j) d_[i * n_ + j] = dist(i, j);
        }
    }

    std::vector<int> run() { return future(); }
    const TreePool& pool() const { return pool_; }

private:
    struct Saved {
        std::uint32_t i;
        std::uint32_t j;
        std::vector<double> row;
        std::uint32_t size_i;
        std::size_t members_i;
    };

    struct Outcome {
        std::vector<std::pair<std::uint32_t, std::uint32_t>> sequence;
        std::vector<std::vector<std::pair<std::uint32_t, int>>> variants;  // slot -> tree
    };

    double dist(std::size_t i, std::size_t j) const { return d_[i * n_ + j]; }

    bool ties(double x, double m) const { return x - m <= eps_ * std::abs(m); }

    void merge(std::uint32_t i, std::uint32_t j) {
        Saved s{i, j, std::vector<double>(d_.begin() + i * n_, d_.begin() + (i + 1) * n_), size_[i],
                members_[i].size()};
        const double h = dist(i, j);
        for (std::size_t k = 0; k < n_; ++k) {
            if (!alive_[k] || k == i || k == j) continue;
            const double v = lance_williams_ward(dist(i, k), dist(j, k), h, size_[i], size_[j], size_[k]);
            d_[i * n_ + k] = v;
            d_[k * n_ + i] = v;
        }
        size_[i] += size_[j];
        alive_[j] = 0;
        for (auto leaf : members_[j]) owner_[leaf] = i;
        members_[i].insert(members_[i].end(), members_[j].begin(), members_[j].end());
        undo_.push_back(std::move(s));
    }

    void undo() {
        Saved s = std::move(undo_.back());
        undo_.pop_back();
        for (std::size_t k = 0; k < n_; ++k) {
            d_[s.i * n_ + k] = s.row[k];
            d_[k * n_ + s.i] = s.row[k];
        }
        size_[s.i] = s.size_i;
        members_[s.i].resize(s.members_i);
        for (auto leaf : members_[s.j]) owner_[leaf] = s.j;
        alive_[s.j] = 1;
    }

    std::vector<std::uint32_t> alive_slots() const {
        std::vector<std::uint32_t> out;
        for (std::uint32_t i = 0; i < n_; ++i)
            if (alive_[i]) out.push_back(i);
        return out;
    }

    // Every way a tied component can finish merging at level m, grouped by the
    // partition it leaves behind.
    std::vector<Outcome> enumerate_component(const std::vector<std::uint32_t>& comp, double m,
                                             const std::vector<std::uint32_t>& rank) {
        std::vector<Outcome> outcomes;
        std::unordered_map<std::vector<std::uint32_t>, std::size_t, VectorHash> by_partition;
        std::unordered_set<std::vector<int>, VectorHash> visited;
        std::vector<std::uint32_t> current = comp;
        std::vector<std::pair<std::uint32_t, std::uint32_t>> sequence;
        std::size_t variants = 0;
        bool stop = false;

        for (auto s : comp) scratch_[s] = static_cast<int>(rank[s]);

        std::function<void()> dfs = [&] {
            std::vector<int> key;
            key.reserve(current.size());
            for (auto s : current) key.push_back(scratch_[s]);
            std::sort(key.begin(), key.end());
            if (!visited.insert(std::move(key)).second) return;

            std::vector<std::pair<std::uint32_t, std::uint32_t>> tied;
            for (std::size_t a = 0; a < current.size(); ++a)
                for (std::size_t b = a + 1; b < current.size(); ++b)
                    if (ties(dist(current[a], current[b]), m)) tied.emplace_back(current[a], current[b]);

            if (tied.empty()) {
                std::vector<std::uint32_t> pkey;
                pkey.reserve(comp.size());
                for (auto s : comp) pkey.push_back(owner_[s]);
                auto [it, inserted] = by_partition.try_emplace(std::move(pkey), outcomes.size());
                if (inserted) outcomes.push_back({sequence, {}});
                std::vector<std::pair<std::uint32_t, int>> variant;
                for (auto s : current) variant.emplace_back(s, scratch_[s]);
                outcomes[it->second].variants.push_back(std::move(variant));
                if (++variants >= cap_) stop = true;
                return;
            }

            for (auto [i, j] : tied) {
                const int saved = scratch_[i];
                scratch_[i] = pool_.join(scratch_[i], scratch_[j]);
                merge(i, j);
                auto pos = std::find(current.begin(), current.end(), j);
                current.erase(pos);
                sequence.emplace_back(i, j);
                dfs();
                sequence.pop_back();
                current.insert(std::lower_bound(current.begin(), current.end(), j), j);
                undo();
                scratch_[i] = saved;
                if (stop) return;
            }
        };
        dfs();
        for (auto s : comp) scratch_[s] = -1;
        return outcomes;
    }

    // Rewrite a completion over the next partition's blocks as a tree over the
    // current partition's blocks.
    int substitute(int tree, const std::vector<int>& inner, std::unordered_map<int, int>& memo) {
        if (pool_.is_leaf(tree)) return inner[tree];
        if (auto it = memo.find(tree); it != memo.end()) return it->second;
        const auto node = pool_[tree];
        const int left = substitute(node.left, inner, memo);
        const int right = substitute(node.right, inner, memo);
        const int out = pool_.join(left, right);
        memo.emplace(tree, out);
        return out;
    }

    std::vector<int> future() {
        if (auto it = memo_.find(owner_); it != memo_.end()) return it->second;
        const auto slots = alive_slots();
        std::vector<int> result;
        if (slots.size() <= 1) {
            result.push_back(0);
            memo_.emplace(owner_, result);
            return result;
        }

        std::vector<std::uint32_t> rank(n_, 0);
        for (std::uint32_t r = 0; r < slots.size(); ++r) rank[slots[r]] = r;

        double m = dist(slots[0], slots[1]);
        for (std::size_t a = 0; a < slots.size(); ++a)
            for (std::size_t b = a + 1; b < slots.size(); ++b) m = std::min(m, dist(slots[a], slots[b]));

        std::vector<std::uint32_t> parent(slots.size());
        std::iota(parent.begin(), parent.end(), 0u);
        std::function<std::uint32_t(std::uint32_t)> find = [&](std::uint32_t x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        for (std::size_t a = 0; a < slots.size(); ++a)
            for (std::size_t b = a + 1; b < slots.size(); ++b)
                if (ties(dist(slots[a], slots[b]), m)) parent[find(b)] = find(a);
        std::map<std::uint32_t, std::vector<std::uint32_t>> groups;
        for (std::uint32_t r = 0; r < slots.size(); ++r) groups[find(r)].push_back(slots[r]);

        std::vector<std::vector<Outcome>> components;
        for (auto& [root, comp] : groups)
            if (comp.size() >= 2) components.push_back(enumerate_component(comp, m, rank));

        std::unordered_set<int> seen;
        std::vector<std::size_t> choice(components.size(), 0);
        bool done = false;
        while (!done && !truncated_cap(result)) {
            std::size_t applied = 0;
            for (std::size_t c = 0; c < components.size(); ++c)
                for (auto [i, j] : components[c][choice[c]].sequence) {
                    merge(i, j);
                    ++applied;
                }
            const std::vector<int> next = future();
            const auto next_slots = alive_slots();
            for (std::size_t k = 0; k < applied; ++k) undo();

            std::vector<std::size_t> variant(components.size(), 0);
            bool variants_done = false;
            while (!variants_done && !truncated_cap(result)) {
                std::vector<int> inner(next_slots.size());
                for (std::size_t k = 0; k < next_slots.size(); ++k) inner[k] = static_cast<int>(rank[next_slots[k]]);
                for (std::size_t c = 0; c < components.size(); ++c)
                    for (auto [slot, tree] : components[c][choice[c]].variants[variant[c]]) {
                        auto pos = std::lower_bound(next_slots.begin(), next_slots.end(), slot);
                        inner[pos - next_slots.begin()] = tree;
                    }
                std::unordered_map<int, int> memo;
                for (int t : next) {
                    const int tree = substitute(t, inner, memo);
                    if (seen.insert(tree).second) result.push_back(tree);
                    if (truncated_cap(result)) break;
                }
                variants_done = !advance(variant, [&](std::size_t c) {
                    return components[c][choice[c]].variants.size();
                });
            }
            done = !advance(choice, [&](std::size_t c) { return components[c].size(); });
        }
        memo_.emplace(owner_, result);
        return result;
    }

    bool truncated_cap(const std::vector<int>& result) const { return result.size() >= cap_; }

    template <class Limit>
    static bool advance(std::vector<std::size_t>& odometer, Limit limit) {
        for (std::size_t c = 0; c < odometer.size(); ++c) {
            if (++odometer[c] < limit(c)) return true;
            odometer[c] = 0;
        }
        return false;
    }

    std::size_t n_;
    std::vector<double> d_;
    std::vector<std::uint32_t> size_;
    std::vector<char> alive_;
    std::vector<std::vector<std::uint32_t>> members_;
    std::vector<std::uint32_t> owner_;  // leaf -> slot of its cluster (= smallest leaf)
    std::vector<int> scratch_;
    TreePool pool_;
    std::size_t cap_;
    double eps_;
    std::vector<Saved> undo_;
    std::unordered_map<std::vector<std::uint32_t>, std::vector<int>, VectorHash> memo_;
};

// Replays a tree with Lance-Williams updates to obtain merge heights.
Dendrogram materialize(const TreePool& pool, int root, const RoleDistanceMatrix& dist) {
    const std::size_t n = dist.size();
    std::vector<double> d(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) d[i * n + j] = dist(i, j);
    std::vector<std::uint32_t> size(n, 1);
    std::vector<char> alive(n, 1);

    struct Raw {
        int left;  // leaf id, or -(raw index + 1)
        int right;
        double height;
        std::uint32_t size;
        std::uint32_t min_leaf;
    };
    std::vector<Raw> raw;

    // returns (slot, ref)
    std::function<std::pair<std::uint32_t, int>(int)> visit = [&](int id) -> std::pair<std::uint32_t, int> {
        if (pool.is_leaf(id)) return {static_cast<std::uint32_t>(id), id};
        const auto node = pool[id];
        auto [a, ra] = visit(node.left);
        auto [b, rb] = visit(node.right);
        const double h = d[a * n + b];
        for (std::size_t k = 0; k < n; ++k) {
            if (!alive[k] || k == a || k == b) continue;
            const double v = lance_williams_ward(d[a * n + k], d[b * n + k], h, size[a], size[b], size[k]);
            d[a * n + k] = v;
            d[k * n + a] = v;
        }
        size[a] += size[b];
        alive[b] = 0;
        raw.push_back({ra, rb, h, size[a], a});
        return {a, -static_cast<int>(raw.size())};
    };
    visit(root);

    // order merges by height, keeping every child ahead of its parent
    std::vector<int> parent(raw.size(), -1);
    std::vector<int> pending(raw.size(), 0);
    for (std::size_t k = 0; k < raw.size(); ++k)
        for (int ref : {raw[k].left, raw[k].right})
            if (ref < 0) {
                parent[-ref - 1] = static_cast<int>(k);
                ++pending[k];
            }
    auto later = [&](std::size_t x, std::size_t y) {
        return std::tie(raw[x].height, raw[x].size, raw[x].min_leaf) >
               std::tie(raw[y].height, raw[y].size, raw[y].min_leaf);
    };
    std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(later)> ready(later);
    for (std::size_t k = 0; k < raw.size(); ++k)
        if (pending[k] == 0) ready.push(k);
    std::vector<std::uint32_t> id_of(raw.size());
    Dendrogram out;
    out.leaves = n;
    auto resolve = [&](int ref) {
        return ref >= 0 ? static_cast<std::uint32_t>(ref) : id_of[-ref - 1];
    };
    while (!ready.empty()) {
        const std::size_t k = ready.top();
        ready.pop();
        id_of[k] = static_cast<std::uint32_t>(n + out.merges.size());
        out.merges.push_back({resolve(raw[k].left), resolve(raw[k].right), raw[k].height, raw[k].size});
        if (parent[k] >= 0 && --pending[parent[k]] == 0) ready.push(static_cast<std::size_t>(parent[k]));
    }
    return out;
}

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string newick_name(const std::string& name) {
    const bool plain = !name.empty() && name.find_first_of(" ()[]':;,\t\n") == std::string::npos;
    if (plain) return name;
    std::string out = "'";
    for (char c : name) {
        if (c == '\'') out += '\'';
        out += c;
    }
    return out + "'";
}

}  // namespace

std::vector<std::uint32_t> Dendrogram::members(std::uint32_t id) const {
    std::vector<std::uint32_t> out;
    std::vector<std::uint32_t> stack{id};
    while (!stack.empty()) {
        const auto x = stack.back();
        stack.pop_back();
        if (x < leaves) {
            out.push_back(x);
        } else {
            const auto& m = merges.at(x - leaves);
            stack.push_back(m.left);
            stack.push_back(m.right);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string Dendrogram::canonical() const {
    if (leaves == 0) return "";
    if (merges.empty()) return "0";
    std::function<std::string(std::uint32_t)> rec = [&](std::uint32_t x) {
        if (x < leaves) return std::to_string(x);
        const auto& m = merges[x - leaves];
        return "(" + rec(m.left) + "," + rec(m.right) + ")";
    };
    return rec(static_cast<std::uint32_t>(leaves + merges.size() - 1));
}

std::string Dendrogram::newick(const std::vector<std::string>& names) const {
    if (names.size() != leaves) throw ArgumentError("newick export needs one name per leaf");
    if (leaves == 0) return ";";
    auto height = [&](std::uint32_t x) { return x < leaves ? 0.0 : merges[x - leaves].height; };
    std::function<std::string(std::uint32_t)> rec = [&](std::uint32_t x) {
        if (x < leaves) return newick_name(names[x]);
        const auto& m = merges[x - leaves];
        return "(" + rec(m.left) + ":" + format_double(m.height - height(m.left)) + "," + rec(m.right) + ":" +
               format_double(m.height - height(m.right)) + ")";
    };
    if (merges.empty()) return rec(0) + ";";
    return rec(static_cast<std::uint32_t>(leaves + merges.size() - 1)) + ";";
}

DendrogramSet ward_hca_all(const RoleDistanceMatrix& dist, const WardOptions& options) {
    if (options.cap == 0) throw ArgumentError("dendrogram cap must be positive");
    if (!(options.tie_epsilon >= 0.0)) throw ArgumentError("tie tolerance must be non-negative");
    DendrogramSet set;
    set.leaves = dist.size();
    set.cap = options.cap;
    if (dist.size() == 0) return set;

    WardEnumerator engine(dist, options);
    // the engine stops one past the cap, which is enough to tell truncation apart
    std::vector<int> roots = engine.run();
    if (roots.size() > options.cap) {
        set.truncated = true;
        roots.resize(options.cap);
    }
    for (int root : roots) set.dendrograms.push_back(materialize(engine.pool(), root, dist));

    std::vector<std::pair<std::string, std::size_t>> keys;
    for (std::size_t k = 0; k < set.dendrograms.size(); ++k) keys.emplace_back(set.dendrograms[k].canonical(), k);
    std::sort(keys.begin(), keys.end());
    std::vector<Dendrogram> sorted;
    sorted.reserve(keys.size());
    for (auto& [key, k] : keys) sorted.push_back(std::move(set.dendrograms[k]));
    set.dendrograms = std::move(sorted);
    return set;
}

std::vector<ClusterStability> cluster_stability(const DendrogramSet& set) {
    const std::size_t n = set.leaves;
    TreePool pool(n);
    std::map<int, std::size_t> subtree_count;
    std::map<std::vector<std::uint32_t>, std::size_t> leafset_count;
    std::map<int, std::vector<std::uint32_t>> members_of;

    for (const auto& dg : set.dendrograms) {
        std::vector<int> canon(dg.merges.size());
        auto ref = [&](std::uint32_t x) { return x < n ? static_cast<int>(x) : canon[x - n]; };
        for (std::size_t k = 0; k < dg.merges.size(); ++k) {
            canon[k] = pool.join(ref(dg.merges[k].left), ref(dg.merges[k].right));
            ++subtree_count[canon[k]];
            auto members = dg.members(static_cast<std::uint32_t>(n + k));
            ++leafset_count[members];
            members_of.try_emplace(canon[k], std::move(members));
        }
    }

    std::function<std::string(int)> text = [&](int id) {
        if (pool.is_leaf(id)) return std::to_string(id);
        return "(" + text(pool[id].left) + "," + text(pool[id].right) + ")";
    };

    const double total = static_cast<double>(set.dendrograms.size());
    std::vector<ClusterStability> rows;
    for (const auto& [id, count] : subtree_count) {
        ClusterStability row;
        row.members = members_of.at(id);
        row.subtree_fraction = static_cast<double>(count) / total;
        row.leafset_fraction = static_cast<double>(leafset_count.at(row.members)) / total;
        row.subtree = text(id);
        rows.push_back(std::move(row));
    }
    std::sort(rows.begin(), rows.end(), [](const ClusterStability& a, const ClusterStability& b) {
        if (a.members.size() != b.members.size()) return a.members.size() < b.members.size();
        if (a.subtree_fraction != b.subtree_fraction) return a.subtree_fraction > b.subtree_fraction;
        if (a.leafset_fraction != b.leafset_fraction) return a.leafset_fraction > b.leafset_fraction;
        if (a.members != b.members) return a.members < b.members;
        return a.subtree < b.subtree;
    });
    return rows;
}

}  // namespace metnet
