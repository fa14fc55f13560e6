#include "lgequiv/sequences.hpp"

#include <stdexcept>
#include <string>

namespace lgequiv {

bool is_hilly(const SequenceWord& s) {
    for (std::size_t a = 0; a < s.size(); ++a) {
        int peak = 0;
        for (std::size_t b = a + 1; b < s.size(); ++b) {
            if (s[b] == s[a] && peak <= s[a]) return false;
            peak = std::max(peak, s[b]);
        }
    }
    return true;
}

std::vector<SequenceWord> hilly_words(int j) {
    if (j < 0) throw std::invalid_argument("hilly_words: negative alphabet size");
    std::vector<SequenceWord> words{SequenceWord{}};
    for (int letter = 1; letter <= j; ++letter) {
        std::vector<SequenceWord> next = words;
        for (const auto& left : words) {
            for (const auto& right : words) {
                SequenceWord w = left;
                w.push_back(letter);
                w.insert(w.end(), right.begin(), right.end());
                next.push_back(std::move(w));
            }
        }
        words = std::move(next);
    }
    return words;
}

std::vector<SequenceWord> enumerate_M(int i, int j, int universe) {
    if (j < 0 || j >= i || i > universe) {
        throw std::invalid_argument("enumerate_M: need 0 <= j < i <= universe, got i=" + std::to_string(i) +
                                    " j=" + std::to_string(j) + " universe=" + std::to_string(universe));
    }
    std::vector<SequenceWord> out;
    for (const auto& middle : hilly_words(j)) {
        for (int last = j + 1; last <= universe; ++last) {
            SequenceWord w{i};
            w.insert(w.end(), middle.begin(), middle.end());
            w.push_back(last);
            out.push_back(std::move(w));
        }
    }
    return out;
}

}  // namespace lgequiv
