#pragma once

#include <concepts>
#include <cstdint>

namespace hhm {

/// A commutative, associative combine with an identity element.
///
/// `combine_into(acc, v)` folds `v` into `acc` and returns true, or returns
/// false and leaves `acc` untouched when the result is not representable.
/// Monoids whose combine can never fail set `can_fail = false`, which lets
/// the matrix code skip the overflow pre-check on merges.
template <class M>
concept AdditiveMonoid = std::regular<typename M::value_type> &&
    requires(const M& m, typename M::value_type& acc, typename M::value_type v) {
      { m.identity() } -> std::same_as<typename M::value_type>;
      { m.combine_into(acc, v) } -> std::same_as<bool>;
      { M::can_fail } -> std::convertible_to<bool>;
    };

/// 64-bit signed integer addition; overflow is reported, never wrapped.
struct CheckedPlus {
  using value_type = std::int64_t;
  static constexpr bool can_fail = true;

  constexpr value_type identity() const noexcept { return 0; }

  constexpr bool combine_into(value_type& acc, value_type v) const noexcept {
    value_type out;
    if (__builtin_add_overflow(acc, v, &out)) return false;
    acc = out;
    return true;
  }
};

/// Floating-point addition. Not associative bit-for-bit; only used where
/// exact reproducibility of sums is not required.
struct FloatPlus {
  using value_type = double;
  static constexpr bool can_fail = false;

  constexpr value_type identity() const noexcept { return 0.0; }

  constexpr bool combine_into(value_type& acc, value_type v) const noexcept {
    acc += v;
    return true;
  }
};

static_assert(AdditiveMonoid<CheckedPlus>);
static_assert(AdditiveMonoid<FloatPlus>);

}  // namespace hhm
