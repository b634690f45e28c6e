#include "fptrace/lattice.hpp"

#include <string>

namespace fptrace {

namespace {

void check_cap(int N, int cap) {
    if (N < 0) throw std::invalid_argument("lattice: N must be >= 0");
    if (N > cap) throw std::out_of_range("lattice: N = " + std::to_string(N) + " exceeds step cap " + std::to_string(cap));
}

}  // namespace

std::vector<WalkDistribution> occupation_recursion(int N, int cap) {
    check_cap(N, cap);
    std::vector<WalkDistribution> rows;
    rows.reserve(static_cast<std::size_t>(N) + 1);
    rows.push_back({0, {1.0}});
    for (int n = 1; n <= N; ++n) {
        const WalkDistribution& prev = rows.back();
        WalkDistribution row{n, std::vector<double>(2 * static_cast<std::size_t>(n) + 1, 0.0)};
        for (int l = -n; l <= n; ++l)
            row.weights[static_cast<std::size_t>(l + n)] = 0.5 * prev.at(l - 1) + 0.5 * prev.at(l + 1);
        rows.push_back(std::move(row));
    }
    return rows;
}

FirstPassageSequence first_passage_coeffs(int site, int N, int cap) {
    check_cap(N, cap);
    if (site < 0) throw std::invalid_argument("first_passage_coeffs: site must be >= 0");
    const PowerSeries<double> f = first_passage_generating_series<double>(site, N);
    return {site, f.coeffs()};
}

std::vector<double> occupation_coeffs(int site, int N, int cap) {
    check_cap(N, cap);
    if (std::abs(site) > N) throw std::invalid_argument("occupation_coeffs: |site| must be <= N");
    return occupation_generating_series<double>(site, N).coeffs();
}

}  // namespace fptrace
