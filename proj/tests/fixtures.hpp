#pragma once

#include "cprel/event_family.hpp"

namespace fixtures {

using cprel::EventFamily;

// {12, 123, 1234} on m = 4.
inline EventFamily chain_growing() {
  return EventFamily::make(4, {{1, 2}, {1, 2, 3}, {1, 2, 3, 4}});
}

// {12, 23, 123} on m = 3.
inline EventFamily two_pairs_ground() {
  return EventFamily::make(3, {{1, 2}, {2, 3}, {1, 2, 3}});
}

// All two-subsets and the ground set of [3].
inline EventFamily all_subsets_3() {
  return EventFamily::make(3, {{1, 2}, {1, 3}, {2, 3}, {1, 2, 3}});
}

// All two-subsets of [3].
inline EventFamily pairs_3() { return EventFamily::make(3, {{1, 2}, {1, 3}, {2, 3}}); }

// All two-subsets of [4].
inline EventFamily pairs_4() {
  return EventFamily::make(4, {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}});
}

// All subsets of size >= 2 of [4].
inline EventFamily all_subsets_4() {
  return EventFamily::make(4, {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4},
                               {1, 2, 3}, {1, 2, 4}, {1, 3, 4}, {2, 3, 4},
                               {1, 2, 3, 4}});
}

// Chain of pairs with the ground set: {12, 23, 34, 1234}.
inline EventFamily besag_chain_3() {
  return EventFamily::make(4, {{1, 2}, {2, 3}, {3, 4}, {1, 2, 3, 4}});
}

// Single pair: a tree.
inline EventFamily single_pair() { return EventFamily::make(3, {{1, 2}}); }

// Two disjoint pairs on m = 4.
inline EventFamily split_pairs() { return EventFamily::make(4, {{1, 2}, {3, 4}}); }

// Chain {12, 23} on m = 3.
inline EventFamily chain_pairs() { return EventFamily::make(3, {{1, 2}, {2, 3}}); }

}  // namespace fixtures
