#include "abelprop/reversion.hpp"

namespace abelprop {

namespace {

void emit(int remaining, int max_part, std::vector<int>& counts, int total_parts,
          std::vector<Partition>& out) {
    if (remaining == 0) {
        Partition p;
        // Trim trailing zero multiplicities.
        int top = 0;
        for (std::size_t i = 0; i < counts.size(); ++i)
            if (counts[i] > 0) top = static_cast<int>(i) + 1;
        p.mult.assign(counts.begin(), counts.begin() + top);
        out.push_back(std::move(p));
        return;
    }
    for (int part = std::min(remaining, max_part); part >= 1; --part) {
        ++counts[static_cast<std::size_t>(part - 1)];
        emit(remaining - part, part, counts, total_parts + 1, out);
        --counts[static_cast<std::size_t>(part - 1)];
    }
}

}  // namespace

std::vector<Partition> partitions(int m) {
    if (m < 0) throw DomainError("reversion", "partitions needs m >= 0");
    std::vector<Partition> out;
    if (m == 0) {
        out.push_back(Partition{});
        return out;
    }
    std::vector<int> counts(static_cast<std::size_t>(m), 0);
    emit(m, m, counts, 0, out);
    return out;
}

}  // namespace abelprop
