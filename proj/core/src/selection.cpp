#include "dyneval/selection.hpp"

#include <algorithm>
#include <cmath>

#include "dyneval/errors.hpp"

namespace dyneval {

TieSet tie_set(std::span<const double> scores, double eps) {
  if (scores.empty()) throw Error(ErrorKind::InvalidArgument, "tie set of no candidates");
  if (!(eps >= 0.0)) throw Error(ErrorKind::InvalidArgument, "tie tolerance must be >= 0");
  for (double s : scores) {
    if (!std::isfinite(s)) throw Error(ErrorKind::NonFinite, "candidate score is not finite");
  }
  TieSet ties;
  ties.eps = eps;
  ties.score = *std::max_element(scores.begin(), scores.end());
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (scores[i] >= ties.score - eps) ties.members.push_back(i);
  }
  return ties;
}

namespace {

ProductChoice max_product(const Table2& rows, const TieSet& ties, const char* what) {
  if (ties.members.empty()) throw Error(ErrorKind::InvalidArgument, "empty tie set");
  ProductChoice choice;
  choice.log_products.reserve(ties.members.size());
  for (auto idx : ties.members) {
    if (idx >= rows.size()) {
      throw Error(ErrorKind::ShapeMismatch,
                  std::string(what) + " " + std::to_string(idx) + " has no component row");
    }
    const auto& row = rows[idx];
    if (row.empty()) {
      throw Error(ErrorKind::InvalidArgument,
                  std::string(what) + " " + std::to_string(idx) + " has an empty component row");
    }
    double log_sum = 0.0;
    for (double v : row) {
      if (!(v > 0.0) || !std::isfinite(v)) {
        throw Error(ErrorKind::Precondition,
                    std::string("product criterion needs positive components; ") + what + " " +
                        std::to_string(idx) + " has " + std::to_string(v));
      }
      log_sum += std::log(v);
    }
    choice.log_products.push_back(log_sum);
  }
  const double best = *std::max_element(choice.log_products.begin(), choice.log_products.end());
  for (std::size_t i = 0; i < ties.members.size(); ++i) {
    if (choice.log_products[i] >= best - ties.eps) choice.winners.push_back(ties.members[i]);
  }
  return choice;
}

}  // namespace

ProductChoice optimal_mode(const Table2& rows, const TieSet& ties) {
  return max_product(rows, ties, "mode");
}

ProductChoice optimal_system(const Table2& rows, const TieSet& ties) {
  return max_product(rows, ties, "system");
}

}  // namespace dyneval
