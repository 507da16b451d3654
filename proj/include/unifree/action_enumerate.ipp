// Template definitions for action.hpp; not meant to be included directly.
#pragma once

#include <algorithm>
#include <deque>

namespace unifree {

namespace detail {

// Submonoid generated by gens, as window indices reachable from the identity
// by left multiplication, each with one factorization e = g * rest.
struct Factorization {
  std::vector<std::size_t> order;  // BFS order, starting with the identity
  std::vector<std::size_t> head;   // generator index into gens, per element (kNone for identity)
  std::vector<std::size_t> rest;   // element index, per element
};

inline Factorization factorize(const MonoidWindow& w, const std::vector<std::size_t>& gens) {
  Factorization f;
  f.head.assign(w.size(), kNone);
  f.rest.assign(w.size(), kNone);
  std::vector<bool> seen(w.size(), false);
  std::deque<std::size_t> queue{0};
  seen[0] = true;
  while (!queue.empty()) {
    std::size_t e = queue.front();
    queue.pop_front();
    f.order.push_back(e);
    for (std::size_t gi = 0; gi < gens.size(); ++gi) {
      std::size_t next = w.product(gens[gi], e);
      if (next == kNone || seen[next]) continue;
      seen[next] = true;
      f.head[next] = gi;
      f.rest[next] = e;
      queue.push_back(next);
    }
  }
  return f;
}

}  // namespace detail

template <class Endo, class Compose, class Equal>
std::vector<std::vector<Endo>> enumerate_window_actions(const MonoidWindow& window,
                                                        const std::vector<Endo>& candidates,
                                                        const Endo& identity, Compose compose, Equal equal) {
  if (!window.closed()) fail(ErrorCode::PreconditionViolated, "action enumeration needs a closed window");
  const std::size_t n = window.size();

  // Greedy generating sequence; level k sees the submonoid of gens[0..k].
  std::vector<std::size_t> gens;
  std::vector<detail::Factorization> levels;
  {
    std::vector<bool> reached(n, false);
    reached[0] = true;
    for (std::size_t e = 1; e < n; ++e) {
      if (reached[e]) continue;
      gens.push_back(e);
      levels.push_back(detail::factorize(window, gens));
      std::fill(reached.begin(), reached.end(), false);
      for (auto x : levels.back().order) reached[x] = true;
    }
  }

  std::vector<std::vector<Endo>> out;
  std::vector<Endo> image(n, identity);
  std::vector<Endo> gen_image(gens.size(), identity);

  std::function<void(std::size_t)> descend = [&](std::size_t k) {
    if (k == gens.size()) {
      out.push_back(image);
      return;
    }
    const auto& level = levels[k];
    for (const auto& candidate : candidates) {
      gen_image[k] = candidate;
      for (std::size_t i = 1; i < level.order.size(); ++i) {
        std::size_t e = level.order[i];
        image[e] = compose(gen_image[level.head[e]], image[level.rest[e]]);
      }
      bool consistent = true;
      for (std::size_t a : level.order) {
        for (std::size_t b : level.order) {
          if (!equal(image[window.product(a, b)], compose(image[a], image[b]))) {
            consistent = false;
            break;
          }
        }
        if (!consistent) break;
      }
      if (consistent) descend(k + 1);
    }
  };
  if (gens.empty()) {
    out.push_back(image);
    return out;
  }
  descend(0);
  return out;
}

}  // namespace unifree
