#pragma once

#include <cstdint>
#include <vector>

#include "lmcca/types.hpp"

namespace lmcca {

/// Deterministic RNG helpers built on mt19937_64 with fully specified
/// sampling (no implementation-defined std distributions), so seeded
/// outputs are identical across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64();
  double uniform01();                    // in [0, 1)
  double normal();                       // standard normal (Box-Muller)
  std::uint64_t below(std::uint64_t n);  // uniform in [0, n), rejection sampled

  /// k distinct indices from [0, n), ascending.
  std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k);

 private:
  std::uint64_t splitmix();
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0;
};

/// Linear latent-factor model for synthetic landmark data: each image
/// draws a standard-normal latent vector z, and every coordinate is
/// loading . z plus independent Gaussian noise.
struct LatentModelSpec {
  int num_landmarks = 0;
  int latent_dim = 1;
  std::vector<std::vector<double>> loading;  // (2 * num_landmarks) rows x latent_dim
  double noise_sigma = 0.0;
  int num_images = 0;
  std::uint64_t seed = 0;
};

/// Random dense loading matrix, entries uniform in [-1, 1].
LatentModelSpec random_latent_spec(int num_landmarks, int latent_dim, double noise_sigma,
                                   int num_images, std::uint64_t seed);

/// Loading with `groups` disjoint landmark groups, each driven by its own
/// single latent factor; cross-group correlation comes only from noise.
LatentModelSpec grouped_latent_spec(int num_landmarks, int groups, double noise_sigma,
                                    int num_images, std::uint64_t seed);

/// Samples the model. Pure function of the spec (including its seed).
Dataset generate(const LatentModelSpec& spec);

}  // namespace lmcca
