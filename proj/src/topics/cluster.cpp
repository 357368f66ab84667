#include "crisislens/topics/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <fmt/format.h>

#include "crisislens/common/errors.hpp"
#include "crisislens/common/parallel.hpp"

namespace crisislens::topics {

namespace {

// Stand-in for 1/0 so stability sums stay finite.
constexpr double kMaxLambda = 1e200;

double distance(const Matrix& m, std::size_t a, std::size_t b) {
  double ss = 0.0;
  const auto ra = m.row(a);
  const auto rb = m.row(b);
  for (std::size_t i = 0; i < ra.size(); ++i) {
    const double d = ra[i] - rb[i];
    ss += d * d;
  }
  return std::sqrt(ss);
}

double lambda_of(double dist) { return dist > 0.0 ? std::min(kMaxLambda, 1.0 / dist) : kMaxLambda; }

struct Edge {
  std::size_t a;
  std::size_t b;
  double weight;
  double raw;  // euclidean distance, breaks ties in weight
};

bool lighter(double w1, double r1, double w2, double r2) { return w1 < w2 || (w1 == w2 && r1 < r2); }

std::vector<double> core_distances(const Matrix& points, std::size_t k, unsigned workers) {
  const std::size_t n = points.rows();
  std::vector<double> core(n);
  parallel_for(n, workers, [&](std::size_t i) {
    std::vector<double> d(n);
    for (std::size_t j = 0; j < n; ++j) d[j] = j == i ? 0.0 : distance(points, i, j);
    std::nth_element(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(k - 1), d.end());
    core[i] = d[k - 1];
  });
  return core;
}

// Prim over the dense mutual-reachability graph. Core distances flatten many
// weights to the same value; ties go to the shorter raw distance so a point
// on the rim attaches to its actual neighbours.
std::vector<Edge> spanning_tree(const Matrix& points, const std::vector<double>& core) {
  const std::size_t n = points.rows();
  std::vector<Edge> edges;
  edges.reserve(n - 1);
  std::vector<bool> in_tree(n, false);
  std::vector<double> best(n, std::numeric_limits<double>::infinity());
  std::vector<double> best_raw(n, std::numeric_limits<double>::infinity());
  std::vector<std::size_t> from(n, 0);
  std::size_t current = 0;
  in_tree[0] = true;
  for (std::size_t step = 1; step < n; ++step) {
    std::size_t next = n;
    for (std::size_t j = 0; j < n; ++j) {
      if (in_tree[j]) continue;
      const double raw = distance(points, current, j);
      const double mr = std::max({core[current], core[j], raw});
      if (lighter(mr, raw, best[j], best_raw[j])) {
        best[j] = mr;
        best_raw[j] = raw;
        from[j] = current;
      }
      if (next == n || lighter(best[j], best_raw[j], best[next], best_raw[next])) next = j;
    }
    in_tree[next] = true;
    edges.push_back({std::min(from[next], next), std::max(from[next], next), best[next], best_raw[next]});
    current = next;
  }
  std::stable_sort(edges.begin(), edges.end(), [](const Edge& x, const Edge& y) {
    if (x.weight != y.weight) return x.weight < y.weight;
    if (x.raw != y.raw) return x.raw < y.raw;
    if (x.a != y.a) return x.a < y.a;
    return x.b < y.b;
  });
  return edges;
}

// Single-linkage dendrogram: node n + i is the i-th merge.
struct Dendrogram {
  std::vector<std::size_t> left;
  std::vector<std::size_t> right;
  std::vector<double> dist;
  std::vector<std::size_t> size;
};

Dendrogram single_linkage(std::size_t n, const std::vector<Edge>& edges) {
  std::vector<std::size_t> parent(2 * n - 1);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&parent](std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  Dendrogram d;
  std::vector<std::size_t> sizes(2 * n - 1, 1);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::size_t ra = find(edges[i].a);
    const std::size_t rb = find(edges[i].b);
    const std::size_t node = n + i;
    d.left.push_back(ra);
    d.right.push_back(rb);
    d.dist.push_back(edges[i].weight);
    sizes[node] = sizes[ra] + sizes[rb];
    d.size.push_back(sizes[node]);
    parent[ra] = node;
    parent[rb] = node;
  }
  return d;
}

// Condensed tree. Clusters are numbered from 0 (the root); a child always
// has a larger number than its parent.
struct CondensedTree {
  std::vector<std::size_t> cluster_parent;  // per cluster; root points at itself
  std::vector<double> birth_lambda;         // per cluster
  std::vector<std::vector<std::size_t>> children;
  std::vector<double> stability;
  std::vector<std::size_t> point_cluster;  // cluster each point falls out of
};

CondensedTree condense(std::size_t n, const Dendrogram& d, std::size_t min_size) {
  CondensedTree t;
  t.point_cluster.assign(n, 0);
  t.cluster_parent.push_back(0);
  t.birth_lambda.push_back(0.0);
  t.children.emplace_back();
  t.stability.push_back(0.0);

  auto node_size = [&](std::size_t node) { return node < n ? std::size_t{1} : d.size[node - n]; };

  // Every point below `node` leaves cluster c at `lambda`.
  auto drop_all = [&](std::size_t node, std::size_t c, double lambda) {
    std::vector<std::size_t> stack{node};
    while (!stack.empty()) {
      const std::size_t x = stack.back();
      stack.pop_back();
      if (x < n) {
        t.point_cluster[x] = c;
        t.stability[c] += lambda - t.birth_lambda[c];
      } else {
        stack.push_back(d.right[x - n]);
        stack.push_back(d.left[x - n]);
      }
    }
  };

  auto new_cluster = [&](std::size_t parent, double lambda, std::size_t size) {
    const std::size_t id = t.cluster_parent.size();
    t.cluster_parent.push_back(parent);
    t.birth_lambda.push_back(lambda);
    t.children.emplace_back();
    t.stability.push_back(0.0);
    t.children[parent].push_back(id);
    t.stability[parent] += (lambda - t.birth_lambda[parent]) * static_cast<double>(size);
    return id;
  };

  // Breadth-first so cluster numbers increase with depth.
  std::vector<std::pair<std::size_t, std::size_t>> queue{{2 * n - 2, 0}};
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const auto [node, c] = queue[qi];
    if (node < n) {
      // Only reachable when n == 1.
      t.point_cluster[node] = c;
      continue;
    }
    const std::size_t l = d.left[node - n];
    const std::size_t r = d.right[node - n];
    const double lambda = lambda_of(d.dist[node - n]);
    const bool big_l = node_size(l) >= min_size;
    const bool big_r = node_size(r) >= min_size;
    if (big_l && big_r) {
      queue.emplace_back(l, new_cluster(c, lambda, node_size(l)));
      queue.emplace_back(r, new_cluster(c, lambda, node_size(r)));
    } else {
      for (const auto& [child, big] : {std::pair{l, big_l}, std::pair{r, big_r}}) {
        if (big) {
          queue.emplace_back(child, c);
        } else {
          drop_all(child, c, lambda);
        }
      }
    }
  }
  return t;
}

// Excess-of-mass selection, root excluded.
std::vector<bool> select_clusters(CondensedTree& t) {
  const std::size_t m = t.cluster_parent.size();
  std::vector<bool> selected(m, false);
  std::vector<double> subtree(t.stability);
  for (std::size_t c = m; c-- > 1;) {
    double child_sum = 0.0;
    for (const std::size_t k : t.children[c]) child_sum += subtree[k];
    if (!t.children[c].empty() && child_sum > t.stability[c]) {
      subtree[c] = child_sum;
    } else {
      selected[c] = true;
      std::vector<std::size_t> stack(t.children[c].begin(), t.children[c].end());
      while (!stack.empty()) {
        const std::size_t k = stack.back();
        stack.pop_back();
        selected[k] = false;
        stack.insert(stack.end(), t.children[k].begin(), t.children[k].end());
      }
    }
  }
  return selected;
}

std::vector<int> renumber(const std::vector<long>& raw) {
  std::vector<int> out(raw.size(), -1);
  std::vector<std::pair<long, int>> seen;
  int next = 0;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i] < 0) continue;
    auto it = std::find_if(seen.begin(), seen.end(), [&](const auto& p) { return p.first == raw[i]; });
    if (it == seen.end()) {
      seen.emplace_back(raw[i], next++);
      it = seen.end() - 1;
    }
    out[i] = it->second;
  }
  return out;
}

}  // namespace

std::vector<int> cluster(const Matrix& points, const ClusterOptions& options) {
  const std::size_t n = points.rows();
  const std::size_t min_size = std::max<std::size_t>(1, options.min_cluster_size);
  if (n == 0 || n < min_size) {
    throw TooFewPoints(fmt::format("cluster: {} points, min_cluster_size {}", n, min_size));
  }
  bool identical = true;
  for (std::size_t r = 1; r < n && identical; ++r) {
    for (std::size_t c = 0; c < points.cols(); ++c) {
      if (points(r, c) != points(0, c)) {
        identical = false;
        break;
      }
    }
  }
  if (identical) return std::vector<int>(n, 0);

  const std::size_t k =
      std::min(n, std::max<std::size_t>(1, options.min_samples ? options.min_samples : min_size));
  const auto core = core_distances(points, k, options.workers);
  const auto edges = spanning_tree(points, core);
  const auto dendrogram = single_linkage(n, edges);
  auto tree = condense(n, dendrogram, min_size);
  const auto selected = select_clusters(tree);

  std::vector<long> raw(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t c = tree.point_cluster[i];
    while (c != 0 && !selected[c]) c = tree.cluster_parent[c];
    if (c != 0) raw[i] = static_cast<long>(c);
  }
  return renumber(raw);
}

}  // namespace crisislens::topics
