#include "minrev/ef.hpp"

#include <algorithm>
#include <string>
#include <unordered_map>
#include <utility>

#include "minrev/errors.hpp"

namespace minrev {

namespace {

struct SideData {
  const RelationalStructure* s = nullptr;
  std::vector<DynBitset> rows;
  std::vector<DynBitset> cols;
  DynBitset diag;

  void init(const RelationalStructure& str) {
    s = &str;
    rows = str.adj;
    cols.assign(static_cast<std::size_t>(str.m), DynBitset(static_cast<std::size_t>(str.m)));
    diag = DynBitset(static_cast<std::size_t>(str.m));
    for (int u = 0; u < str.m; ++u) {
      for (int v : str.adj[static_cast<std::size_t>(u)].elements())
        cols[static_cast<std::size_t>(v)].set(u);
      if (str.adj[static_cast<std::size_t>(u)].test(u)) diag.set(u);
    }
  }
};

struct GameSolver {
  SideData side[2];
  int q = 0;
  std::vector<std::pair<int, int>> pairs;  // (left, right), kept sorted by left
  DynBitset picked[2];
  std::vector<std::unordered_map<std::string, bool>> memo;

  GameSolver(const RelationalStructure& s1, const RelationalStructure& s2, int rounds)
      : q(rounds), memo(static_cast<std::size_t>(rounds) + 1) {
    side[0].init(s1);
    side[1].init(s2);
    picked[0] = DynBitset(static_cast<std::size_t>(s1.m));
    picked[1] = DynBitset(static_cast<std::size_t>(s2.m));
  }

  std::string encode_pairs() const {
    std::string key;
    key.reserve(pairs.size() * 4);
    for (auto [l, r] : pairs) {
      key.push_back(static_cast<char>(l & 0xff));
      key.push_back(static_cast<char>((l >> 8) & 0xff));
      key.push_back(static_cast<char>(r & 0xff));
      key.push_back(static_cast<char>((r >> 8) & 0xff));
    }
    return key;
  }

  /// Fresh replies on the other side consistent with u: same colors, same
  /// self-loop, and the same relation pattern in both directions against
  /// every picked pair.
  DynBitset candidates(int ps, int u) const {
    const int os = 1 - ps;
    const SideData& a = side[ps];
    const SideData& b = side[os];
    DynBitset c = picked[os].complement();
    for (std::size_t k = 0; k < a.s->colors.size(); ++k) {
      if (a.s->colors[k].test(u))
        c &= b.s->colors[k];
      else
        c.and_not(b.s->colors[k]);
    }
    if (a.diag.test(u))
      c &= b.diag;
    else
      c.and_not(b.diag);
    for (auto [l, r] : pairs) {
      const int x = ps == 0 ? l : r;
      const int y = ps == 0 ? r : l;
      if (a.rows[static_cast<std::size_t>(u)].test(x))
        c &= b.cols[static_cast<std::size_t>(y)];
      else
        c.and_not(b.cols[static_cast<std::size_t>(y)]);
      if (a.cols[static_cast<std::size_t>(u)].test(x))
        c &= b.rows[static_cast<std::size_t>(y)];
      else
        c.and_not(b.rows[static_cast<std::size_t>(y)]);
    }
    return c;
  }

  void push_pair(int ps, int u, int v) {
    const int l = ps == 0 ? u : v;
    const int r = ps == 0 ? v : u;
    auto pos = std::lower_bound(pairs.begin(), pairs.end(), std::make_pair(l, r));
    pairs.insert(pos, {l, r});
    picked[0].set(l);
    picked[1].set(r);
  }

  void pop_pair(int ps, int u, int v) {
    const int l = ps == 0 ? u : v;
    const int r = ps == 0 ? v : u;
    auto pos = std::lower_bound(pairs.begin(), pairs.end(), std::make_pair(l, r));
    pairs.erase(pos);
    picked[0].reset(l);
    picked[1].reset(r);
  }

  bool duplicator_wins(int rl) {
    if (rl == 0) return true;
    std::string key = encode_pairs();
    auto& table = memo[static_cast<std::size_t>(rl)];
    if (auto it = table.find(key); it != table.end()) return it->second;

    bool win = true;
    for (int ps = 0; ps < 2 && win; ++ps) {
      DynBitset fresh = picked[ps].complement();
      for (int u : fresh.elements()) {
        DynBitset cand = candidates(ps, u);
        bool answered = false;
        if (rl == 1) {
          answered = cand.any();
        } else {
          for (int v : cand.elements()) {
            push_pair(ps, u, v);
            const bool w = duplicator_wins(rl - 1);
            pop_pair(ps, u, v);
            if (w) {
              answered = true;
              break;
            }
          }
        }
        if (!answered) {
          win = false;
          break;
        }
      }
    }
    table.emplace(std::move(key), win);
    return win;
  }

  /// Replays a Spoiler-won position, recording the first winning Spoiler
  /// pick (left side first, ascending) and the least doomed reply.
  void extract_trace(int rl, std::vector<EFMove>& out) {
    for (int ps = 0; ps < 2; ++ps) {
      DynBitset fresh = picked[ps].complement();
      for (int u : fresh.elements()) {
        DynBitset cand = candidates(ps, u);
        if (cand.none()) {
          out.push_back({q - rl + 1, ps, ps == 0 ? u : -1, ps == 0 ? -1 : u});
          return;
        }
        if (rl == 1) continue;
        bool all_lose = true;
        for (int v : cand.elements()) {
          push_pair(ps, u, v);
          const bool w = duplicator_wins(rl - 1);
          pop_pair(ps, u, v);
          if (w) {
            all_lose = false;
            break;
          }
        }
        if (all_lose) {
          const int v = cand.find_first();
          out.push_back({q - rl + 1, ps, ps == 0 ? u : v, ps == 0 ? v : u});
          push_pair(ps, u, v);
          extract_trace(rl - 1, out);
          return;
        }
      }
    }
  }
};

}  // namespace

EFResult ef_game(const RelationalStructure& s1, const RelationalStructure& s2, int q,
                 bool want_trace) {
  if (!s1.same_signature(s2)) throw ValidationError("signature mismatch between structures");
  if (q < 0) throw Error("round count must be nonnegative");
  if (q >= 4) throw CapError("exact game solver is capped at q = 3");
  const int largest = std::max(s1.m, s2.m);
  if (q == 3 && largest > 64) throw CapError("q = 3 games are capped at 64 elements per side");
  if ((q == 1 || q == 2) && largest > 300)
    throw CapError("q <= 2 games are capped at 300 elements per side");

  EFResult result;
  result.rounds = q;
  if (q == 0) return result;

  GameSolver solver(s1, s2, q);
  if (solver.duplicator_wins(q)) return result;

  result.winner = Winner::Spoiler;
  if (want_trace) solver.extract_trace(q, result.trace);
  return result;
}

bool q_equivalent(const RelationalStructure& s1, const RelationalStructure& s2, int q) {
  return ef_game(s1, s2, q, false).winner == Winner::Duplicator;
}

}  // namespace minrev
