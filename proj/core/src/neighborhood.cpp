#include "minrev/neighborhood.hpp"

#include <algorithm>
#include <array>
#include <numeric>

#include "minrev/errors.hpp"

namespace minrev {

int locality_radius(int q) {
  if (q < 0) throw Error("round count must be nonnegative");
  if (q > 19) throw CapError("locality radius overflows practical bounds beyond q = 19");
  std::int64_t power = 1;
  for (int i = 0; i < q; ++i) power *= 3;
  return static_cast<int>((power - 1) / 2);
}

GameParameters GameParameters::derive(int q, int ell) {
  if (ell < 0) throw Error("extension color count must be nonnegative");
  GameParameters p;
  p.q = q;
  p.ell = ell;
  p.r = locality_radius(q);
  std::uint64_t exponent =
      static_cast<std::uint64_t>(ell) * (2 * static_cast<std::uint64_t>(p.r) + 1) + 1;
  p.type_budget = exponent >= 64 ? ~0ull : 1ull << exponent;
  return p;
}

DynBitset ball(const RelationalStructure& g, int v, int r) {
  if (v < 0 || v >= g.m) throw Error("vertex index out of range");
  if (r < 0) throw Error("radius must be nonnegative");
  DynBitset seen(static_cast<std::size_t>(g.m));
  seen.set(v);
  DynBitset frontier = seen;
  for (int step = 0; step < r && frontier.any(); ++step) {
    DynBitset next(static_cast<std::size_t>(g.m));
    for (int u : frontier.elements()) next |= g.undirected_neighbors(u);
    next.and_not(seen);
    seen |= next;
    frontier = std::move(next);
  }
  return seen;
}

RootedStructure r_neighborhood(const RelationalStructure& g, int v, int r) {
  DynBitset inside = ball(g, v, r);
  std::vector<int> verts;
  verts.push_back(v);
  for (int u : inside.elements())
    if (u != v) verts.push_back(u);

  const int k = static_cast<int>(verts.size());
  std::vector<int> local(static_cast<std::size_t>(g.m), -1);
  for (int i = 0; i < k; ++i) local[static_cast<std::size_t>(verts[i])] = i;

  RootedStructure out;
  out.root = 0;
  out.original = verts;
  out.s.m = k;
  out.s.directed = g.directed;
  out.s.adj.assign(static_cast<std::size_t>(k), DynBitset(static_cast<std::size_t>(k)));
  for (int i = 0; i < k; ++i)
    for (int u : g.adj[verts[i]].elements())
      if (local[static_cast<std::size_t>(u)] >= 0)
        out.s.adj[i].set(local[static_cast<std::size_t>(u)]);
  out.s.color_names = g.color_names;
  for (const DynBitset& c : g.colors) {
    DynBitset bits(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i)
      if (c.test(verts[i])) bits.set(i);
    out.s.colors.push_back(std::move(bits));
  }
  return out;
}

namespace {

constexpr int kMaxCanonVertices = 12;
constexpr std::uint64_t kNodeBudget = 1u << 20;

/// Lexicographically least encoding over orderings rooted at `root` that
/// grow by adjacency. Position i contributes the vertex's color word, its
/// adjacency word against positions 0..i (bit i is the self-loop), and for
/// directed structures the reverse adjacency word. Only vertices whose word
/// tuple is minimal at a position can start a lex-least completion, so the
/// search branches solely on such ties.
struct CanonSearch {
  const RelationalStructure& s;
  int k;
  int root;
  int stride;
  std::vector<DynBitset> undirected;
  std::vector<int> chosen;
  DynBitset chosen_bits;
  std::vector<std::uint32_t> cur;
  std::vector<std::uint32_t> best;
  bool have_best = false;
  std::uint64_t nodes = 0;

  CanonSearch(const RelationalStructure& str, int root_vertex)
      : s(str),
        k(str.m),
        root(root_vertex),
        stride(str.directed ? 3 : 2),
        chosen_bits(static_cast<std::size_t>(str.m)) {
    undirected.reserve(static_cast<std::size_t>(k));
    for (int v = 0; v < k; ++v) undirected.push_back(s.undirected_neighbors(v));
    chosen.reserve(static_cast<std::size_t>(k));
    cur.reserve(static_cast<std::size_t>(stride) * static_cast<std::size_t>(k));
  }

  std::array<std::uint32_t, 3> words_for(int v) const {
    std::array<std::uint32_t, 3> w{0, 0, 0};
    for (std::size_t c = 0; c < s.colors.size(); ++c)
      if (s.colors[c].test(v)) w[0] |= 1u << c;
    const int i = static_cast<int>(chosen.size());
    for (int j = 0; j < i; ++j) {
      if (s.adj[static_cast<std::size_t>(v)].test(chosen[j])) w[1] |= 1u << j;
      if (s.adj[static_cast<std::size_t>(chosen[j])].test(v)) w[2] |= 1u << j;
    }
    if (s.adj[static_cast<std::size_t>(v)].test(v)) w[1] |= 1u << i;
    return w;
  }

  void rec() {
    if (++nodes > kNodeBudget)
      throw CapError("neighborhood canonicalization search budget exceeded");
    if (static_cast<int>(chosen.size()) == k) {
      if (!have_best || cur < best) {
        best = cur;
        have_best = true;
      }
      return;
    }

    DynBitset cand(static_cast<std::size_t>(k));
    if (chosen.empty()) {
      cand.set(root);
    } else {
      for (int u : chosen) cand |= undirected[static_cast<std::size_t>(u)];
      cand.and_not(chosen_bits);
    }

    std::vector<int> options = cand.elements();
    std::vector<std::array<std::uint32_t, 3>> words(options.size());
    std::array<std::uint32_t, 3> least{};
    for (std::size_t i = 0; i < options.size(); ++i) {
      words[i] = words_for(options[i]);
      if (i == 0 || words[i] < least) least = words[i];
    }

    for (std::size_t i = 0; i < options.size(); ++i) {
      if (words[i] != least) continue;
      chosen.push_back(options[i]);
      chosen_bits.set(options[i]);
      cur.insert(cur.end(), words[i].begin(), words[i].begin() + stride);
      rec();
      cur.resize(cur.size() - static_cast<std::size_t>(stride));
      chosen_bits.reset(options[i]);
      chosen.pop_back();
    }
  }
};

}  // namespace

namespace {

std::uint32_t color_word(const RelationalStructure& s, int v) {
  std::uint32_t w = 0;
  for (std::size_t c = 0; c < s.colors.size(); ++c)
    if (s.colors[c].test(v)) w |= 1u << c;
  return w;
}

/// Exact canonical form of a rooted colored path or cycle: the shape admits
/// only two readings once the root is pinned, so take the lexicographically
/// least. Shape tag 1 = path (root position recorded), 2 = cycle (root at
/// position 0).
TypeCode arc_code(const RelationalStructure& s, int root) {
  const int k = s.m;
  std::vector<int> degree(static_cast<std::size_t>(k));
  for (int v = 0; v < k; ++v)
    degree[static_cast<std::size_t>(v)] = static_cast<int>(s.adj[v].count());

  const bool is_cycle =
      k >= 3 && std::all_of(degree.begin(), degree.end(), [](int d) { return d == 2; });

  auto walk = [&](int start, int toward) {
    std::vector<int> seq{start};
    int prev = start;
    int cur = toward;
    while (cur != start && static_cast<int>(seq.size()) < k) {
      seq.push_back(cur);
      for (int nb : s.adj[static_cast<std::size_t>(cur)].elements()) {
        if (nb != prev) {
          prev = cur;
          cur = nb;
          break;
        }
      }
      if (prev != seq.back()) break;  // path endpoint reached
    }
    return seq;
  };

  std::vector<std::vector<std::uint32_t>> readings;
  if (is_cycle) {
    std::vector<int> nbs = s.adj[static_cast<std::size_t>(root)].elements();
    for (int first : nbs) {
      std::vector<int> seq = walk(root, first);
      std::vector<std::uint32_t> t;
      for (int v : seq) t.push_back(color_word(s, v));
      readings.push_back(std::move(t));
    }
  } else {
    std::vector<int> seq;
    if (k == 1) {
      seq.push_back(root);
    } else {
      int endpoint = 0;
      while (degree[static_cast<std::size_t>(endpoint)] != 1) ++endpoint;
      seq = walk(endpoint, s.adj[static_cast<std::size_t>(endpoint)].find_first());
    }
    for (int pass = 0; pass < 2; ++pass) {
      std::vector<std::uint32_t> t;
      t.push_back(static_cast<std::uint32_t>(
          std::find(seq.begin(), seq.end(), root) - seq.begin()));
      for (int v : seq) t.push_back(color_word(s, v));
      readings.push_back(std::move(t));
      std::reverse(seq.begin(), seq.end());
    }
  }

  TypeCode code;
  code.push_back(is_cycle ? 2u : 1u);
  code.push_back(static_cast<std::uint32_t>(k));
  const auto& least = *std::min_element(readings.begin(), readings.end());
  code.insert(code.end(), least.begin(), least.end());
  return code;
}

}  // namespace

TypeCode canonical_code(const RelationalStructure& s, int root) {
  if (root < 0 || root >= s.m) throw Error("root index out of range");
  if (s.colors.size() > 31) throw Error("too many colors for canonicalization");

  DynBitset reach(static_cast<std::size_t>(s.m));
  reach.set(root);
  DynBitset frontier = reach;
  while (frontier.any()) {
    DynBitset next(static_cast<std::size_t>(s.m));
    for (int u : frontier.elements()) next |= s.undirected_neighbors(u);
    next.and_not(reach);
    reach |= next;
    frontier = std::move(next);
  }
  if (static_cast<int>(reach.count()) != s.m)
    throw Error("canonical_code expects a connected structure");

  if (!s.directed) {
    bool low_degree = true;
    for (int v = 0; v < s.m && low_degree; ++v)
      if (s.adj[static_cast<std::size_t>(v)].count() > 2) low_degree = false;
    if (low_degree) return arc_code(s, root);
  }

  if (s.m > kMaxCanonVertices)
    throw CapError("general neighborhood canonicalization is capped at 12 vertices");
  CanonSearch search(s, root);
  search.rec();
  TypeCode code;
  code.push_back(0u);
  code.push_back(static_cast<std::uint32_t>(s.m));
  code.insert(code.end(), search.best.begin(), search.best.end());
  return code;
}

TypeCode neighborhood_type(const RelationalStructure& g, int v, int r) {
  RootedStructure local = r_neighborhood(g, v, r);
  return canonical_code(local.s, local.root);
}

std::optional<std::vector<int>> hanf_check(const RelationalStructure& s1,
                                           const RelationalStructure& s2, int r) {
  if (!s1.same_signature(s2)) throw ValidationError("signature mismatch between structures");
  if (s1.m != s2.m) throw ValidationError("size mismatch: no bijection possible");

  std::vector<TypeCode> t1(static_cast<std::size_t>(s1.m));
  std::vector<TypeCode> t2(static_cast<std::size_t>(s2.m));
  for (int v = 0; v < s1.m; ++v) t1[static_cast<std::size_t>(v)] = neighborhood_type(s1, v, r);
  for (int v = 0; v < s2.m; ++v) t2[static_cast<std::size_t>(v)] = neighborhood_type(s2, v, r);

  std::vector<int> by1(static_cast<std::size_t>(s1.m));
  std::vector<int> by2(static_cast<std::size_t>(s2.m));
  std::iota(by1.begin(), by1.end(), 0);
  std::iota(by2.begin(), by2.end(), 0);
  auto order1 = [&](int a, int b) { return t1[a] < t1[b] || (t1[a] == t1[b] && a < b); };
  auto order2 = [&](int a, int b) { return t2[a] < t2[b] || (t2[a] == t2[b] && a < b); };
  std::sort(by1.begin(), by1.end(), order1);
  std::sort(by2.begin(), by2.end(), order2);

  for (int i = 0; i < s1.m; ++i)
    if (t1[by1[static_cast<std::size_t>(i)]] != t2[by2[static_cast<std::size_t>(i)]])
      return std::nullopt;

  std::vector<int> bijection(static_cast<std::size_t>(s1.m));
  for (int i = 0; i < s1.m; ++i)
    bijection[static_cast<std::size_t>(by1[static_cast<std::size_t>(i)])] =
        by2[static_cast<std::size_t>(i)];
  return bijection;
}

}  // namespace minrev
