#include "regatta/config.hh"

#include <sstream>

#include "regatta/util.hh"

namespace regatta {

uint64_t Config::hash() const {
    uint64_t h = nbits_;
    for (uint64_t w : w_) h = hash_combine(h, w);
    return h;
}

std::string Config::to_string() const {
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (uint32_t i = 0; i < nbits_; ++i) {
        if (!test(i)) continue;
        if (!first) os << ',';
        first = false;
        os << i;
    }
    os << '}';
    return os.str();
}

}  // namespace regatta
