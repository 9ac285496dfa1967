#pragma once

#include <cstdint>
#include <vector>

#include "fedsemi/rng.hpp"
#include "fedsemi/tensor_net.hpp"

namespace fedsemi {

struct Example {
  Vec x;
  int y = 0;
};

struct Dataset {
  int class_count = 0;
  int dim = 0;
  std::vector<Example> samples;
  std::uint64_t seed = 0;

  std::vector<std::int64_t> class_histogram() const;
};

// One client's view of the data. True labels of unlabeled samples are kept
// for evaluation-only reporting; they are private and reachable only through
// OracleAccess (see oracle.hpp), never from the training path.
class ClientDataset {
 public:
  int client_id = 0;
  std::vector<Example> labeled;
  std::vector<Vec> unlabeled;

  ClientDataset() = default;
  ClientDataset(int id, std::vector<Example> lab, std::vector<Vec> unlab, std::vector<int> hidden);

  std::int64_t labeled_count() const { return static_cast<std::int64_t>(labeled.size()); }
  std::int64_t unlabeled_count() const { return static_cast<std::int64_t>(unlabeled.size()); }
  std::int64_t total_count() const { return labeled_count() + unlabeled_count(); }

 private:
  std::vector<int> hidden_labels_;
  friend class OracleAccess;
};

struct PartitionSpec {
  int client_count = 1;
  double alpha = 0.8;
  // Per-client fraction of samples that keep their labels (1.0 fully
  // labeled, 0.0 fully unlabeled). Size must equal client_count.
  std::vector<double> label_fraction;
  std::uint64_t seed = 0;

  void validate() const;
};

// Isotropic Gaussian blobs: class means are drawn from the seeded generator
// on the unit sphere, samples are mean + spread * N(0, I). Samples are stored
// class by class.
Dataset gen_gaussian_mixture(int class_count, int dim, const std::vector<std::int64_t>& n_per_class,
                             double spread, std::uint64_t seed);

// Exponential long-tail counts: count_c = round(n_max * factor^(-c/(C-1))).
std::vector<std::int64_t> make_imbalanced_counts(int class_count, std::int64_t n_max,
                                                 double imbalance_factor);

// Per class, draws proportions ~ Dirichlet(alpha * 1_K) and distributes that
// class's samples by largest-remainder rounding. Every sample lands on
// exactly one client; empty clients trigger a re-draw with an incremented
// sub-seed (at most 100 attempts). label_fraction is then applied per client
// with a seeded uniform subsample.
std::vector<ClientDataset> dirichlet_partition(const Dataset& ds, const PartitionSpec& spec);

// Carves a per-class proportional share of the dataset into one fully
// labeled client (largest-remainder on class counts), then Dirichlet-splits
// the remainder into `unlabeled_clients` fully unlabeled clients with ids
// starting after the labeled one.
std::vector<ClientDataset> labeled_share_partition(const Dataset& ds, double labeled_share,
                                                   int unlabeled_clients, double alpha,
                                                   std::uint64_t seed);

enum class AugmentStrength { kWeak, kStrong };

struct AugmentParams {
  double sigma_weak = 0.05;
  double sigma_strong = 0.15;
  double p_drop = 0.1;
};

// weak: x + N(0, sigma_w^2 I); strong: x + N(0, sigma_s^2 I) followed by
// independent per-coordinate zeroing with probability p_drop. Consumes draws
// only from the supplied stream.
Vec augment(const Vec& x, AugmentStrength strength, RngStream& rng, const AugmentParams& params = {});

}  // namespace fedsemi
