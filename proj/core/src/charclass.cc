#include "regatta/charclass.hh"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "regatta/util.hh"

namespace regatta {

CharClass CharClass::range(CodePoint lo, CodePoint hi) {
    if (lo > hi) throw std::invalid_argument("CharClass range: lo > hi");
    CharClass c;
    c.ranges_.emplace_back(lo, hi);
    return c;
}

CharClass CharClass::of_ranges(std::vector<Range> ranges) {
    for (const auto& [lo, hi] : ranges)
        if (lo > hi) throw std::invalid_argument("CharClass range: lo > hi");
    std::sort(ranges.begin(), ranges.end());
    CharClass c;
    for (const auto& r : ranges) {
        if (!c.ranges_.empty()) {
            auto& last = c.ranges_.back();
            // merge overlapping or adjacent ranges
            if (uint64_t{last.second} + 1 >= r.first) {
                last.second = std::max(last.second, r.second);
                continue;
            }
        }
        c.ranges_.push_back(r);
    }
    return c;
}

CharClass CharClass::full(uint64_t alphabet_max) {
    if (alphabet_max == 0 || alphabet_max > kMaxAlphabetMax)
        throw std::invalid_argument("bad alphabet_max");
    return range(0, static_cast<CodePoint>(alphabet_max - 1));
}

uint64_t CharClass::count() const {
    uint64_t n = 0;
    for (const auto& [lo, hi] : ranges_) n += uint64_t{hi} - lo + 1;
    return n;
}

bool CharClass::contains(CodePoint cp) const {
    auto it = std::upper_bound(ranges_.begin(), ranges_.end(), cp,
                               [](CodePoint v, const Range& r) { return v < r.first; });
    if (it == ranges_.begin()) return false;
    --it;
    return cp <= it->second;
}

bool CharClass::subset_of(const CharClass& other) const {
    size_t j = 0;
    for (const auto& [lo, hi] : ranges_) {
        while (j < other.ranges_.size() && other.ranges_[j].second < lo) ++j;
        if (j == other.ranges_.size()) return false;
        if (other.ranges_[j].first > lo || other.ranges_[j].second < hi) return false;
    }
    return true;
}

bool CharClass::intersects(const CharClass& other) const {
    size_t i = 0, j = 0;
    while (i < ranges_.size() && j < other.ranges_.size()) {
        const auto& a = ranges_[i];
        const auto& b = other.ranges_[j];
        if (a.second < b.first) ++i;
        else if (b.second < a.first) ++j;
        else return true;
    }
    return false;
}

CharClass CharClass::union_with(const CharClass& other) const {
    std::vector<Range> all = ranges_;
    all.insert(all.end(), other.ranges_.begin(), other.ranges_.end());
    return of_ranges(std::move(all));
}

CharClass CharClass::intersect_with(const CharClass& other) const {
    std::vector<Range> out;
    size_t i = 0, j = 0;
    while (i < ranges_.size() && j < other.ranges_.size()) {
        const auto& a = ranges_[i];
        const auto& b = other.ranges_[j];
        CodePoint lo = std::max(a.first, b.first);
        CodePoint hi = std::min(a.second, b.second);
        if (lo <= hi) out.emplace_back(lo, hi);
        if (a.second < b.second) ++i; else ++j;
    }
    CharClass c;
    c.ranges_ = std::move(out);
    return c;
}

CharClass CharClass::complement(uint64_t alphabet_max) const {
    std::vector<Range> out;
    uint64_t next = 0;
    for (const auto& [lo, hi] : ranges_) {
        if (next < lo) out.emplace_back(static_cast<CodePoint>(next), lo - 1);
        next = uint64_t{hi} + 1;
    }
    if (next < alphabet_max)
        out.emplace_back(static_cast<CodePoint>(next),
                         static_cast<CodePoint>(alphabet_max - 1));
    CharClass c;
    c.ranges_ = std::move(out);
    return c;
}

CodePoint CharClass::min_code_point() const {
    if (ranges_.empty()) throw std::logic_error("min_code_point of empty class");
    return ranges_.front().first;
}

uint64_t CharClass::hash() const {
    uint64_t h = 0x9e3779b97f4a7c15ull;
    for (const auto& [lo, hi] : ranges_) {
        h = hash_combine(h, lo);
        h = hash_combine(h, hi);
    }
    return h;
}

std::string CharClass::to_string() const {
    std::ostringstream os;
    os << std::hex;
    bool first = true;
    for (const auto& [lo, hi] : ranges_) {
        if (!first) os << ',';
        first = false;
        os << lo;
        if (hi != lo) os << '-' << hi;
    }
    return os.str();
}

void CharClass::validate(uint64_t alphabet_max) const {
    uint64_t next = 0;       // smallest value the next range may start at
    bool first = true;
    for (const auto& [lo, hi] : ranges_) {
        if (lo > hi) throw std::invalid_argument("CharClass: lo > hi");
        if (!first && uint64_t{lo} < next)
            throw std::invalid_argument("CharClass: ranges not sorted/disjoint/non-adjacent");
        if (uint64_t{hi} >= alphabet_max)
            throw std::invalid_argument("CharClass: code point outside alphabet");
        next = uint64_t{hi} + 2;  // require a gap of at least one
        first = false;
    }
}

bool MintermTable::covers_alphabet() const {
    uint64_t covered = 0;
    for (const auto& m : minterms) covered += m.count();
    return covered == alphabet_max;
}

std::vector<uint32_t> MintermTable::ids_subset_of(const CharClass& cls) const {
    std::vector<uint32_t> ids;
    for (uint32_t m = 0; m < minterms.size(); ++m)
        if (minterms[m].subset_of(cls)) ids.push_back(m);
    return ids;
}

CodePoint MintermTable::representative(uint32_t minterm) const {
    return minterms.at(minterm).min_code_point();
}

void MintermTable::validate() const {
    for (const auto& m : minterms) {
        m.validate(alphabet_max);
        if (m.empty()) throw std::invalid_argument("MintermTable: empty minterm");
    }
    for (size_t i = 0; i < minterms.size(); ++i)
        for (size_t j = i + 1; j < minterms.size(); ++j)
            if (minterms[i].intersects(minterms[j]))
                throw std::invalid_argument("MintermTable: overlapping minterms");
    if (membership.size() != source_predicates.size())
        throw std::invalid_argument("MintermTable: membership size mismatch");
    for (size_t p = 0; p < source_predicates.size(); ++p) {
        CharClass u;
        for (uint32_t m : membership[p]) u = u.union_with(minterms.at(m));
        if (!(u == source_predicates[p]))
            throw std::invalid_argument("MintermTable: predicate is not the union of its minterms");
    }
}

MintermTable mintermize(const std::vector<CharClass>& predicates,
                        uint64_t alphabet_max, bool with_residual) {
    if (predicates.empty()) throw std::invalid_argument("no predicates");
    if (alphabet_max == 0 || alphabet_max > kMaxAlphabetMax)
        throw std::invalid_argument("bad alphabet_max");
    for (const auto& p : predicates) p.validate(alphabet_max);

    // Boundary points: starts of ranges and one-past-ends.
    std::vector<uint64_t> bounds{0, alphabet_max};
    for (const auto& p : predicates) {
        for (const auto& [lo, hi] : p.ranges()) {
            bounds.push_back(lo);
            bounds.push_back(uint64_t{hi} + 1);
        }
    }
    std::sort(bounds.begin(), bounds.end());
    bounds.erase(std::unique(bounds.begin(), bounds.end()), bounds.end());

    // Group segments by their membership signature.
    using Signature = std::vector<bool>;
    std::map<Signature, std::vector<CharClass::Range>> classes;
    for (size_t i = 0; i + 1 < bounds.size(); ++i) {
        if (bounds[i] >= alphabet_max) break;
        CodePoint lo = static_cast<CodePoint>(bounds[i]);
        CodePoint hi = static_cast<CodePoint>(bounds[i + 1] - 1);
        Signature sig(predicates.size());
        bool any = false;
        for (size_t p = 0; p < predicates.size(); ++p) {
            sig[p] = predicates[p].contains(lo);
            any = any || sig[p];
        }
        if (!any && !with_residual) continue;
        classes[sig].emplace_back(lo, hi);
    }

    struct Entry { CharClass cls; Signature sig; };
    std::vector<Entry> entries;
    for (auto& [sig, ranges] : classes) {
        CharClass cls = CharClass::of_ranges(std::move(ranges));
        if (cls.empty()) continue;
        entries.push_back({std::move(cls), sig});
    }
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        return a.cls.min_code_point() < b.cls.min_code_point();
    });

    MintermTable t;
    t.alphabet_max = alphabet_max;
    t.source_predicates = predicates;
    t.membership.resize(predicates.size());
    for (uint32_t id = 0; id < entries.size(); ++id) {
        const auto& e = entries[id];
        bool any = false;
        for (size_t p = 0; p < predicates.size(); ++p) {
            if (e.sig[p]) {
                t.membership[p].push_back(id);
                any = true;
            }
        }
        if (!any) t.residual = id;
        t.minterms.push_back(e.cls);
    }
    return t;
}

}  // namespace regatta
