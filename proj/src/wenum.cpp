#include "sdc/wenum.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include "sdc/errors.hpp"

namespace sdc {

WeightEnum WeightEnum::from_hist(const std::vector<uint64_t>& hist) {
    WeightEnum w(static_cast<int>(hist.size()) - 1);
    for (size_t i = 0; i < hist.size(); ++i)
        if (hist[i]) w.a_[i] = mpz_class(static_cast<unsigned long>(hist[i]));
    return w;
}

mpz_class WeightEnum::total() const {
    mpz_class t = 0;
    for (const auto& c : a_) t += c;
    return t;
}

int WeightEnum::min_nonzero(int from) const {
    for (size_t w = static_cast<size_t>(from); w < a_.size(); ++w)
        if (a_[w] != 0) return static_cast<int>(w);
    return -1;
}

int WeightEnum::distinct_nonzero_weights() const {
    int c = 0;
    for (size_t w = 1; w < a_.size(); ++w)
        if (a_[w] != 0) ++c;
    return c;
}

void WeightEnum::write(std::ostream& os) const {
    for (size_t w = 0; w < a_.size(); ++w)
        if (a_[w] != 0) os << w << ':' << a_[w].get_str() << '\n';
}

WeightEnum WeightEnum::parse(std::istream& is, int n) {
    WeightEnum out(n);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) break;
        size_t colon = line.find(':');
        if (colon == std::string::npos) throw ParseError("expected weight:count");
        int w = std::stoi(line.substr(0, colon));
        if (w < 0 || w > n) throw ParseError("weight out of range");
        out[w] = mpz_class(line.substr(colon + 1));
    }
    return out;
}

std::string WeightEnum::to_pairs() const {
    std::ostringstream os;
    bool first = true;
    for (size_t w = 0; w < a_.size(); ++w)
        if (a_[w] != 0) {
            if (!first) os << ',';
            os << w << ':' << a_[w].get_str();
            first = false;
        }
    return os.str();
}

uint64_t WeightEnum::hash() const {
    uint64_t h = 1469598103934665603ull;
    for (size_t w = 0; w < a_.size(); ++w)
        if (a_[w] != 0) {
            h ^= w * 0x100000001b3ull;
            h *= 0x100000001b3ull;
            h ^= static_cast<uint64_t>(mpz_fdiv_ui(a_[w].get_mpz_t(), 0xfffffffbu));
            h *= 0x100000001b3ull;
        }
    return h;
}

}  // namespace sdc
