#include "dilmax/tiling.hpp"

#include <algorithm>
#include <map>
#include <unordered_set>

#include "dilmax/errors.hpp"

namespace dilmax::tiling {
namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  const std::int64_t q = a / b;
  return (a % b != 0 && ((a < 0) != (b < 0))) ? q - 1 : q;
}

}  // namespace

TilingInstance::TilingInstance(std::vector<std::int64_t> set, int cap_exp, int radius)
    : E(std::move(set)), N(cap_exp), I(radius) {
  std::sort(E.begin(), E.end());
  E.erase(std::unique(E.begin(), E.end()), E.end());
  if (E.empty()) throw InvalidArgument("tiling set must be nonempty");
  if (N < 0 || N > 12) throw InvalidArgument("cap exponent must lie in [0, 12]");
  if (E.size() > (std::size_t{1} << N)) throw InvalidArgument("card(E) exceeds 2^N");
  if (I < 0 || I > 100000) throw InvalidArgument("window radius out of range");
  const std::int64_t bound = std::int64_t{1} << 40;
  if (E.front() < -bound || E.back() > bound) throw InvalidArgument("tiling set elements too large");
}

TilingResult build_tiling(const TilingInstance& in) {
  const std::int64_t S = in.slot_width();
  TilingResult r;
  r.N = in.N;
  r.I = in.I;
  r.centers.assign(static_cast<std::size_t>(2 * in.I + 1), 0);
  r.forbidden.assign(r.centers.size(), 0);

  // c is forbidden iff c - b lies in the difference set E - E for a placed b.
  std::vector<std::int64_t> diff;
  diff.reserve(in.E.size() * in.E.size());
  for (auto a : in.E)
    for (auto b : in.E) diff.push_back(a - b);
  std::sort(diff.begin(), diff.end());
  diff.erase(std::unique(diff.begin(), diff.end()), diff.end());
  const std::int64_t dmin = diff.front(), dmax = diff.back();

  std::map<std::int64_t, int> placed{{0, 0}};
  std::vector<char> blocked(static_cast<std::size_t>(S));

  auto place = [&](int i) {
    const std::int64_t lo = static_cast<std::int64_t>(i) * S;
    std::fill(blocked.begin(), blocked.end(), 0);
    std::int64_t count = 0;
    for (auto it = placed.lower_bound(lo - dmax); it != placed.end() && it->first + dmin < lo + S; ++it) {
      const std::int64_t b = it->first;
      auto d = std::lower_bound(diff.begin(), diff.end(), lo - b);
      for (; d != diff.end() && b + *d < lo + S; ++d) {
        char& slot = blocked[static_cast<std::size_t>(b + *d - lo)];
        if (!slot) {
          slot = 1;
          ++count;
        }
      }
    }
    const auto free = std::find(blocked.begin(), blocked.end(), 0);
    if (free == blocked.end()) throw InfeasibleSlot("every center in slot " + std::to_string(i) + " is forbidden");
    const std::int64_t b = lo + (free - blocked.begin());
    placed.emplace(b, i);
    r.centers[static_cast<std::size_t>(i + in.I)] = b;
    r.forbidden[static_cast<std::size_t>(i + in.I)] = count;
    r.max_forbidden = std::max(r.max_forbidden, count);
  };

  for (int j = 1; j <= in.I; ++j) {
    place(j);
    place(-j);
  }
  return r;
}

bool verify_disjoint(const TilingResult& result, const std::vector<std::int64_t>& E, std::optional<Window> window) {
  std::unordered_set<std::int64_t> seen;
  seen.reserve(result.centers.size() * E.size());
  for (auto b : result.centers) {
    for (auto e : E) {
      const std::int64_t z = b + e;
      if (window && (z < window->lo || z > window->hi)) continue;
      if (!seen.insert(z).second) return false;
    }
  }
  return true;
}

bool verify_cover(const TilingResult& result, int N, std::optional<Window> window) {
  const std::int64_t S = std::int64_t{1} << (2 * N + 2);
  const Window allowed{result.center(-result.I) + S, result.center(result.I) - S};
  const Window w = window.value_or(allowed);
  if (w.lo < allowed.lo || w.hi > allowed.hi) throw WindowTooWide("cover window reaches the edge of the centers");
  std::vector<std::int64_t> B = result.centers;
  std::sort(B.begin(), B.end());
  // Walk the union of [b - S, b + S] from the left; cur is the first window
  // integer not yet known to be covered.
  std::int64_t cur = w.lo;
  for (auto b : B) {
    if (cur > w.hi) break;
    if (b - S > cur) return false;
    cur = std::max(cur, b + S + 1);
  }
  return cur > w.hi;
}

bool verify_localized(const TilingResult& result) {
  const std::int64_t S = result.slot_width();
  for (int i = -result.I; i <= result.I; ++i)
    if (floor_div(result.center(i), S) != i) return false;
  return true;
}

void certify(TilingResult& result, const std::vector<std::int64_t>& E) {
  const std::int64_t S = result.slot_width();
  Window all{result.center(-result.I) + E.front(), result.center(result.I) + E.back()};
  result.disjoint = Certificate{all, verify_disjoint(result, E)};
  const Window inner{result.center(-result.I) + S, result.center(result.I) - S};
  result.cover = Certificate{inner, inner.lo > inner.hi || verify_cover(result, result.N, inner)};
}

}  // namespace dilmax::tiling
