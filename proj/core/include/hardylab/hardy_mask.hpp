#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace hardylab {

// One bit per coordinate: 0 selects the Cesaro average over (0, t_i), 1 the
// Bellman tail integral from |t_i|. All-zeros is the Hardy-Cesaro operator H,
// all-ones the Hardy-Bellman operator B.
struct EpsilonMask {
    std::vector<int> bits;

    std::size_t dim() const { return bits.size(); }

    static EpsilonMask zeros(std::size_t d) { return {std::vector<int>(d, 0)}; }
    static EpsilonMask ones(std::size_t d) { return {std::vector<int>(d, 1)}; }

    static EpsilonMask parse(const std::string& s) {
        EpsilonMask m;
        for (char c : s) {
            if (c == '0')
                m.bits.push_back(0);
            else if (c == '1')
                m.bits.push_back(1);
            else
                throw std::invalid_argument("EpsilonMask: expected a 0/1 string");
        }
        if (m.bits.empty()) throw std::invalid_argument("EpsilonMask: empty");
        return m;
    }

    void validate(std::size_t d) const {
        if (bits.size() != d)
            throw std::invalid_argument("EpsilonMask: dimension mismatch");
        for (int b : bits)
            if (b != 0 && b != 1) throw std::invalid_argument("EpsilonMask: bits must be 0/1");
    }

    std::string str() const {
        std::string s;
        for (int b : bits) s.push_back(b ? '1' : '0');
        return s;
    }
};

}  // namespace hardylab
