#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dyneval/aggregation.hpp"

namespace dyneval {

inline constexpr double kDefaultTieEps = 1e-9;

/// Candidates whose score is within `eps` of the best one.
struct TieSet {
  std::vector<std::size_t> members;  ///< ascending candidate indices
  double score = 0.0;                ///< the best score
  double eps = kDefaultTieEps;
};

TieSet tie_set(std::span<const double> scores, double eps = kDefaultTieEps);

/// Outcome of the maximal-product (evenness) criterion over a tie set.
struct ProductChoice {
  std::vector<std::size_t> winners;  ///< ascending; more than one on a product tie
  std::vector<double> log_products;  ///< aligned with TieSet::members
};

/// Among tied modes, those maximizing the product of their per-characteristic
/// scores. `rows[l]` is the component vector of mode l. Products are compared
/// as sums of logarithms; a product tie is a log-sum within ties.eps.
ProductChoice optimal_mode(const Table2& rows, const TieSet& ties);

/// Same criterion over per-mode score vectors of systems in an equivalence class.
ProductChoice optimal_system(const Table2& rows, const TieSet& ties);

}  // namespace dyneval
