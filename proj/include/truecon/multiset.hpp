#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <string>

namespace truecon {

using Action = std::string;
using ActionSet = std::set<Action>;

// Finite multiset of actions. No zero multiplicities are ever stored.
class ActionMultiset {
public:
    ActionMultiset() = default;

    void add(const Action& a, int n = 1) {
        if (n == 0) return;
        int& c = counts_[a];
        c += n;
        if (c <= 0) counts_.erase(a);
    }

    int count(const Action& a) const {
        auto it = counts_.find(a);
        return it == counts_.end() ? 0 : it->second;
    }

    ActionSet support() const {
        ActionSet s;
        for (auto& [a, _] : counts_) s.insert(a);
        return s;
    }

    bool empty() const { return counts_.empty(); }
    std::size_t total() const {
        std::size_t t = 0;
        for (auto& [_, n] : counts_) t += static_cast<std::size_t>(n);
        return t;
    }

    const std::map<Action, int>& entries() const { return counts_; }

    bool operator==(const ActionMultiset& o) const = default;
    auto operator<=>(const ActionMultiset& o) const { return counts_ <=> o.counts_; }

    // Multiset sum: adds multiplicities of identical elements.
    ActionMultiset oplus(const ActionMultiset& o) const {
        ActionMultiset r = *this;
        for (auto& [a, n] : o.counts_) r.add(a, n);
        return r;
    }

    // Multiset intersection: pointwise minimum of multiplicities.
    ActionMultiset otimes(const ActionMultiset& o) const {
        ActionMultiset r;
        for (auto& [a, n] : counts_) {
            int m = o.count(a);
            if (m > 0) r.add(a, std::min(n, m));
        }
        return r;
    }

    // Product with an action set embedded as a multiset of multiplicity 1:
    // keeps only the actions in the set.
    ActionMultiset restrict_to(const ActionSet& s) const {
        ActionMultiset r;
        for (auto& [a, n] : counts_)
            if (s.count(a)) r.add(a, n);
        return r;
    }

    // Product with the complement of an action set: drops the actions in it.
    ActionMultiset restrict_outside(const ActionSet& s) const {
        ActionMultiset r;
        for (auto& [a, n] : counts_)
            if (!s.count(a)) r.add(a, n);
        return r;
    }

    // Renders as "{a:2,b:1}"; the empty multiset is "{}".
    std::string to_string() const {
        std::ostringstream os;
        os << '{';
        bool first = true;
        for (auto& [a, n] : counts_) {
            if (!first) os << ',';
            first = false;
            os << a << ':' << n;
        }
        os << '}';
        return os.str();
    }

private:
    std::map<Action, int> counts_;
};

}  // namespace truecon
