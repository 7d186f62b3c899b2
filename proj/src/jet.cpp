#include "mdtn/jet.hpp"

#include <map>
#include <mutex>

namespace mdtn::detail {

namespace {

std::shared_ptr<const JetLayout> build(int nvars, int order) {
  auto L = std::make_shared<JetLayout>();
  L->nvars = nvars;
  L->order = order;
  for (int d = 0; d <= order; ++d) {
    L->degree_start.push_back(static_cast<int>(L->index.size()));
    // lexicographically descending in the first variable within each degree
    for (int a0 = d; a0 >= 0; --a0) {
      if (nvars < 1 && a0 > 0) continue;
      for (int a1 = d - a0; a1 >= 0; --a1) {
        const int a2 = d - a0 - a1;
        if (nvars < 2 && a1 > 0) continue;
        if (nvars < 3 && a2 > 0) continue;
        L->index.push_back({a0, a1, a2});
      }
    }
  }
  L->degree_start.push_back(static_cast<int>(L->index.size()));

  const int n = static_cast<int>(L->index.size());
  for (int i = 0; i < n; ++i) {
    const auto& a = L->index[static_cast<std::size_t>(i)];
    const int da = a[0] + a[1] + a[2];
    for (int j = 0; j < L->degree_start[static_cast<std::size_t>(order - da + 1)]; ++j) {
      const auto& b = L->index[static_cast<std::size_t>(j)];
      const int out = L->find({a[0] + b[0], a[1] + b[1], a[2] + b[2]});
      L->products.push_back({i, j, out});
    }
  }
  if (order >= 1) {
    auto lower = jet_layout(nvars, order - 1);
    for (int v = 0; v < nvars; ++v) {
      auto& table = L->deriv[static_cast<std::size_t>(v)];
      for (const auto& a : lower->index) {
        MultiIndex b = a;
        b[static_cast<std::size_t>(v)] += 1;
        table.emplace_back(L->find(b), b[static_cast<std::size_t>(v)]);
      }
    }
  }
  return L;
}

}  // namespace

int JetLayout::find(const MultiIndex& alpha) const {
  for (std::size_t v = 0; v < 3; ++v) {
    if (alpha[v] < 0) return -1;
    if (static_cast<int>(v) >= nvars && alpha[v] != 0) return -1;
  }
  const int d = alpha[0] + alpha[1] + alpha[2];
  if (d > order) return -1;
  // position within degree d for the descending ordering used in build()
  int pos = degree_start[static_cast<std::size_t>(d)];
  if (nvars == 1) return pos;
  if (nvars == 2) return pos + (d - alpha[0]);
  // nvars == 3: blocks for a0 = d, d-1, ..., each of size (d - a0 + 1)
  const int skipped = d - alpha[0];  // number of earlier a0 blocks
  pos += skipped * (skipped + 1) / 2;
  return pos + (d - alpha[0] - alpha[1]);
}

std::shared_ptr<const JetLayout> jet_layout(int nvars, int order) {
  if (nvars < 1 || nvars > 3) throw Error(ErrorCode::InvalidInput, "jets support 1 to 3 variables");
  if (order < 0 || order > 40) throw Error(ErrorCode::InvalidInput, "jet order out of range");
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const JetLayout>> cache;
  const int key = nvars * 100 + order;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto built = build(nvars, order);
  std::lock_guard<std::mutex> lock(mu);
  auto [it, inserted] = cache.emplace(key, std::move(built));
  return it->second;
}

}  // namespace mdtn::detail
