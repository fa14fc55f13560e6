#pragma once

// Word combinatorics indexing the terms of factor-chain polynomials.

#include <vector>

namespace lgequiv {

using SequenceWord = std::vector<int>;

/// Every repeated value has a strictly larger value between its two
/// occurrences. The empty word is hilly.
bool is_hilly(const SequenceWord& s);

/// All hilly words over {1..j}. A hilly word contains its maximum at most
/// once, so words come from the split H(j) = H(j-1) + H(j-1) j H(j-1).
std::vector<SequenceWord> hilly_words(int j);

/// The class M(i, j): words (i, a_2, ..., a_{p-1}, a_p) with a hilly middle
/// over {1..j} and a last letter a_p > j drawn from {1..universe}.
/// Requires 0 <= j < i <= universe.
std::vector<SequenceWord> enumerate_M(int i, int j, int universe);

}  // namespace lgequiv
