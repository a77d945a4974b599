#pragma once

#include <cstddef>

#include "polarpunct/bits.hpp"
#include "polarpunct/pattern.hpp"

namespace polarpunct {

// Boolean capacities of the polarized channels when the underlying channel is
// perfect and punctured positions are useless. Z^(i)_N(p) satisfies
//   Z^(i)_N(p) = AND / OR (Z^(i>>1)_{N/2}(p_even), Z^(i>>1)_{N/2}(p_odd))
// for even / odd i, with Z^(0)_1(p_0) = p_0.

/// O(N) evaluation of a single channel.
bool z_capacity(std::size_t channel, const PuncturingPattern& p);

/// All N channels at once in O(N log N); entry i equals z_capacity(i, p).
BitVector z_capacities(const PuncturingPattern& p);

/// D: channels with zero boolean capacity under the useless-channel model.
IndexSet ucm_zero_set(const PuncturingPattern& p);

/// E: channels that must carry dependent (frozen) bits under the
/// deterministic-channel model, i.e. Z^(i)(complement p) = 1.
IndexSet dcm_frozen_set(const PuncturingPattern& p);

/// D under Ucm, E under Dcm.
IndexSet forced_frozen_set(const PuncturingPattern& p, ChannelModel model);

/// Ucm: 0 in B and B closed under ⪰₁. Dcm: N-1 in B and B closed under ⪰₀.
/// The unpunctured pattern is reciprocal under both models.
bool is_reciprocal(const PuncturingPattern& p, ChannelModel model);

/// Pattern whose zero set is the digit-permuted image of B.
PuncturingPattern permuted_pattern(const PuncturingPattern& p, const BitPermutation& perm);

/// Quasi-uniform puncturing: B = bit-reversal image of {0, ..., s-1}.
PuncturingPattern qup_pattern(unsigned n, std::size_t punctured);

/// Reverse QUP: B = bit-reversal image of {N-s, ..., N-1}.
PuncturingPattern rqup_pattern(unsigned n, std::size_t punctured);

}  // namespace polarpunct
