#include "lmcca/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace lmcca {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

std::uint64_t Rng::splitmix() {
  // splitmix64; fully specified, so seeded streams are portable.
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t Rng::next_u64() { return splitmix(); }

double Rng::uniform01() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = 1.0 - uniform01();  // in (0, 1]
  double u2 = uniform01();
  double r = std::sqrt(-2.0 * std::log(u1));
  have_spare_ = true;
  spare_ = r * std::sin(kTwoPi * u2);
  return r * std::cos(kTwoPi * u2);
}

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw ValidationError("Rng::below(0)");
  std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
  for (;;) {
    std::uint64_t x = next_u64();
    if (x >= threshold) return x % n;
  }
}

std::vector<std::size_t> Rng::sample_without_replacement(std::size_t n, std::size_t k) {
  if (k > n) throw ValidationError("sample_without_replacement: k > n");
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t j = i + static_cast<std::size_t>(below(n - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(k);
  std::sort(idx.begin(), idx.end());
  return idx;
}

LatentModelSpec random_latent_spec(int num_landmarks, int latent_dim, double noise_sigma,
                                   int num_images, std::uint64_t seed) {
  LatentModelSpec spec;
  spec.num_landmarks = num_landmarks;
  spec.latent_dim = latent_dim;
  spec.noise_sigma = noise_sigma;
  spec.num_images = num_images;
  spec.seed = seed;
  Rng rng(seed);
  spec.loading.assign(static_cast<std::size_t>(2 * num_landmarks),
                      std::vector<double>(static_cast<std::size_t>(latent_dim)));
  for (auto& row : spec.loading)
    for (double& v : row) v = 2.0 * rng.uniform01() - 1.0;
  return spec;
}

LatentModelSpec grouped_latent_spec(int num_landmarks, int groups, double noise_sigma,
                                    int num_images, std::uint64_t seed) {
  if (groups < 1 || groups > num_landmarks)
    throw ValidationError("grouped_latent_spec: bad group count");
  // Each group owns a private 2-D latent; every landmark in the group maps
  // it through a well-conditioned 2x2 block, so within-group pairs carry two
  // strong canonical coefficients and cross-group pairs only noise.
  LatentModelSpec spec;
  spec.num_landmarks = num_landmarks;
  spec.latent_dim = 2 * groups;
  spec.noise_sigma = noise_sigma;
  spec.num_images = num_images;
  spec.seed = seed;
  Rng rng(seed);
  spec.loading.assign(static_cast<std::size_t>(2 * num_landmarks),
                      std::vector<double>(static_cast<std::size_t>(spec.latent_dim), 0.0));
  int per_group = (num_landmarks + groups - 1) / groups;
  for (int lm = 0; lm < num_landmarks; ++lm) {
    int g = std::min(lm / per_group, groups - 1);
    double angle = kTwoPi * rng.uniform01();
    double stretch = 0.6 + 0.8 * rng.uniform01();
    double c = std::cos(angle), s = std::sin(angle);
    auto& rx = spec.loading[static_cast<std::size_t>(2 * lm)];
    auto& ry = spec.loading[static_cast<std::size_t>(2 * lm + 1)];
    rx[static_cast<std::size_t>(2 * g)] = c * stretch;
    rx[static_cast<std::size_t>(2 * g + 1)] = -s;
    ry[static_cast<std::size_t>(2 * g)] = s * stretch;
    ry[static_cast<std::size_t>(2 * g + 1)] = c;
  }
  return spec;
}

Dataset generate(const LatentModelSpec& spec) {
  if (spec.num_landmarks < 1 || spec.num_images < 1 || spec.latent_dim < 1)
    throw ValidationError("generate: invalid latent model spec");
  if (spec.noise_sigma < 0) throw ValidationError("generate: negative noise sigma");
  if (spec.loading.size() != static_cast<std::size_t>(2 * spec.num_landmarks))
    throw ValidationError("generate: loading row count must be 2*M");

  // Offset stream from the loading-drawing stream so specs built from the
  // same seed do not replay identical values into the samples.
  Rng rng(spec.seed ^ 0xD1B54A32D192ED03ULL);
  Dataset d;
  d.format_name = "synth";
  d.sets.reserve(static_cast<std::size_t>(spec.num_images));
  std::vector<double> z(static_cast<std::size_t>(spec.latent_dim));
  for (int img = 0; img < spec.num_images; ++img) {
    for (double& zi : z) zi = rng.normal();
    LandmarkSet s;
    char id[32];
    std::snprintf(id, sizeof(id), "synth-%06d", img);
    s.image_id = id;
    s.points.reserve(static_cast<std::size_t>(spec.num_landmarks));
    for (int lm = 0; lm < spec.num_landmarks; ++lm) {
      const auto& rx = spec.loading[static_cast<std::size_t>(2 * lm)];
      const auto& ry = spec.loading[static_cast<std::size_t>(2 * lm + 1)];
      double x = 0, y = 0;
      for (int k = 0; k < spec.latent_dim; ++k) {
        x += rx[static_cast<std::size_t>(k)] * z[static_cast<std::size_t>(k)];
        y += ry[static_cast<std::size_t>(k)] * z[static_cast<std::size_t>(k)];
      }
      if (spec.noise_sigma > 0) {
        x += spec.noise_sigma * rng.normal();
        y += spec.noise_sigma * rng.normal();
      }
      s.points.push_back({x, y});
    }
    d.sets.push_back(std::move(s));
  }
  return d;
}

}  // namespace lmcca
