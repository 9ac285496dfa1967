#pragma once

#include <vector>

#include "fedsemi/data_sim.hpp"

// Evaluation-only access to the true labels of unlabeled samples. Training
// code must not include this header; an audit test enforces that.

namespace fedsemi {

class OracleAccess {
 public:
  // True labels of the unlabeled samples, order-aligned with
  // client.unlabeled. Empty for fully labeled clients.
  static std::vector<int> oracle_true_labels(const ClientDataset& client);

  // Mean total-variation distance between client class histograms (labeled
  // plus hidden labels) and the global histogram.
  static double partition_heterogeneity(const Dataset& ds, const std::vector<ClientDataset>& clients);
};

namespace eval {

inline std::vector<int> oracle_true_labels(const ClientDataset& client) {
  return OracleAccess::oracle_true_labels(client);
}

inline double partition_heterogeneity(const Dataset& ds, const std::vector<ClientDataset>& clients) {
  return OracleAccess::partition_heterogeneity(ds, clients);
}

}  // namespace eval
}  // namespace fedsemi
