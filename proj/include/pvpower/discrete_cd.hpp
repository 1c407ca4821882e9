#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace pvpower {

using Table = std::vector<std::vector<double>>;  // [result][status]

struct OperatingMatrix {
    std::vector<std::string> statuses;  // ordered low to high
    std::vector<std::string> results;   // ordered low to high
    Table probs;                        // probs[r][c] = P(result r | status c)

    std::size_t k() const noexcept { return statuses.size(); }
    void validate() const;  // DomainError on bad shape, negative entry, or column sum off 1

    static OperatingMatrix cancer_screening();
};

// One cell of the one-sided p-value table. Interior diagonal cells carry both tails.
struct PCell {
    bool has_upper = false, has_lower = false;
    double upper = 0, lower = 0;  // P(R >= r | c), P(R <= r | c)
};

std::vector<std::vector<PCell>> one_sided_pvalues(const OperatingMatrix& m);

struct LevelEntry {
    std::size_t status;
    double level;
};

// For result r: 1 minus the tails that rule out the neighbouring statuses r-1 and r+1.
std::vector<LevelEntry> confidence_levels(const OperatingMatrix& m);

Table posterior(const OperatingMatrix& m, const std::vector<double>& prior_weights);
Table normalized_likelihood(const OperatingMatrix& m);
Table plugin_sampling(const OperatingMatrix& m, const std::vector<std::size_t>& map);

}  // namespace pvpower
