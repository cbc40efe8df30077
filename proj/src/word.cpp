#include "fgpit/word.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace fgpit {

ReducedWord ReducedWord::reduce(std::span<const Letter> letters) {
    ReducedWord w;
    auto& out = w.letters_;
    out.reserve(letters.size());
    for (const Letter& l : letters) {
        if (l.sign != 1 && l.sign != -1) throw std::invalid_argument("letter sign must be +1 or -1");
        if (l.generator < 1) throw std::invalid_argument("generator index must be positive");
        if (!out.empty() && out.back() == l.inverse())
            out.pop_back();
        else
            out.push_back(l);
    }
    return w;
}

ReducedWord ReducedWord::operator*(const ReducedWord& o) const {
    std::vector<Letter> all;
    all.reserve(letters_.size() + o.letters_.size());
    all.insert(all.end(), letters_.begin(), letters_.end());
    all.insert(all.end(), o.letters_.begin(), o.letters_.end());
    return reduce(all);
}

ReducedWord ReducedWord::inverse() const {
    ReducedWord w;
    w.letters_.reserve(letters_.size());
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) w.letters_.push_back(it->inverse());
    return w;
}

std::string ReducedWord::str() const {
    if (letters_.empty()) return "1";
    std::string s;
    for (std::size_t i = 0; i < letters_.size(); ++i) {
        if (i) s += "*";
        s += "x" + std::to_string(letters_[i].generator);
        if (letters_[i].sign < 0) s += "^-1";
    }
    return s;
}

IsolatingIndexSet isolating_index_set(const std::vector<ReducedWord>& words) {
    if (words.empty()) throw std::invalid_argument("isolating_index_set needs a nonempty set");
    const std::size_t degree = words.front().degree();
    for (const auto& w : words)
        if (w.degree() != degree) throw std::invalid_argument("words must share one degree");

    // de-duplicate
    std::vector<ReducedWord> current = words;
    std::sort(current.begin(), current.end());
    current.erase(std::unique(current.begin(), current.end()), current.end());

    IsolatingIndexSet result;
    while (current.size() > 1) {
        std::size_t pos = 0;
        while (pos < degree) {
            bool all_agree = true;
            for (const auto& w : current)
                if (!(w.letters()[pos] == current.front().letters()[pos])) {
                    all_agree = false;
                    break;
                }
            if (!all_agree) break;
            ++pos;
        }
        // pos < degree: distinct same-degree words must disagree somewhere
        std::map<Letter, std::vector<ReducedWord>> groups;
        for (const auto& w : current) groups[w.letters()[pos]].push_back(w);
        const std::size_t half = current.size() / 2;
        const std::vector<ReducedWord>* chosen = nullptr;
        for (const auto& [letter, group] : groups) {
            if (group.size() <= half) {
                chosen = &group;
                break;  // groups iterate in (generator, sign) order; first qualifying wins
            }
        }
        result.indices.push_back(pos + 1);
        current = *chosen;
    }
    result.word = current.front();
    return result;
}

}  // namespace fgpit
