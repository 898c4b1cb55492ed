#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace dilmax::tiling {

struct TilingInstance {
  std::vector<std::int64_t> E;  // sorted and deduplicated by the constructor
  int N = 0;                    // card(E) <= 2^N
  int I = 0;                    // centers b_i for |i| <= I

  TilingInstance(std::vector<std::int64_t> set, int cap_exp, int radius);

  /// 4^(N+1).
  std::int64_t slot_width() const noexcept { return std::int64_t{1} << (2 * N + 2); }
};

/// Closed integer window [lo, hi].
struct Window {
  std::int64_t lo = 0;
  std::int64_t hi = -1;
};

struct Certificate {
  Window window;
  bool ok = false;
};

struct TilingResult {
  int N = 0;
  int I = 0;
  std::vector<std::int64_t> centers;     // b_i at index i + I
  std::vector<std::int64_t> forbidden;   // forbidden-set size per slot, same indexing (0 for b_0)
  std::int64_t max_forbidden = 0;
  std::optional<Certificate> disjoint;
  std::optional<Certificate> cover;

  std::int64_t center(int i) const { return centers.at(static_cast<std::size_t>(i + I)); }
  std::int64_t slot_width() const noexcept { return std::int64_t{1} << (2 * N + 2); }
};

/// b_0 = 0, then b_1, b_-1, b_2, b_-2, ...: each the smallest integer of its
/// slot [i 4^(N+1), (i+1) 4^(N+1)) whose translate misses every translate
/// already placed. Throws InfeasibleSlot if a slot is entirely forbidden.
TilingResult build_tiling(const TilingInstance& instance);

/// No integer of the window lies in two translates b_i + E. Without a window
/// every translate is checked.
bool verify_disjoint(const TilingResult& result, const std::vector<std::int64_t>& E,
                     std::optional<Window> window = std::nullopt);

/// Every integer of the window is n + b_i for some |n| <= 4^(N+1). The window
/// must lie in [b_-I + 4^(N+1), b_I - 4^(N+1)] (WindowTooWide otherwise);
/// without a window that whole range is scanned.
bool verify_cover(const TilingResult& result, int N, std::optional<Window> window = std::nullopt);

/// floor(b_i / 4^(N+1)) == i for every center.
bool verify_localized(const TilingResult& result);

/// Runs both verifiers on their default windows and records the certificates.
void certify(TilingResult& result, const std::vector<std::int64_t>& E);

}  // namespace dilmax::tiling
