#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "qgrkit/module.hpp"

namespace qgrkit {

// Minimal graded free resolution F_L -> ... -> F_0 -> M, computed step by step.
// Over A it is usually infinite; only the first L differentials are built.
struct Resolution {
  ChainComplexSegment complex;
  // Position at which a zero module was reached (the resolution is finite), if any.
  std::optional<int> terminated_at;

  const FreeModule& F(int k) const { return complex.modules.at(k); }
  const GradedMatrix& d(int k) const { return complex.differentials.at(k - 1); }
  int length() const { return complex.length(); }
  // Largest generator degree over all F_k, or nullopt when every F_k is zero.
  std::optional<int> max_generator_degree() const;
};

// The augmentation F_0 -> M sends generator i to the i-th generator of the
// minimized presentation of M; `augmentation` expresses those in M's generators.
struct ResolutionWithAugmentation {
  std::shared_ptr<const Resolution> resolution;
  std::vector<Vec> augmentation;  // images of F_0's generators in M.generators()
};

Resolution compute_resolution(const PresentedModule& M, int length, std::vector<Vec>* augmentation = nullptr);

// Thread-safe memo of resolutions keyed by (ring, module fingerprint, length),
// optionally mirrored to versioned JSON files in a directory.
class ResolutionCache {
 public:
  explicit ResolutionCache(std::optional<std::filesystem::path> dir = std::nullopt);
  ResolutionWithAugmentation get(const PresentedModule& M, int length);
  size_t size() const;
  const std::optional<std::filesystem::path>& directory() const { return dir_; }

 private:
  std::optional<ResolutionWithAugmentation> load(const std::string& key, const Ring& ring) const;
  void store(const std::string& key, const ResolutionWithAugmentation& r) const;

  std::optional<std::filesystem::path> dir_;
  mutable std::mutex mu_;
  std::map<std::string, ResolutionWithAugmentation> memo_;
};

ResolutionWithAugmentation free_resolution(const PresentedModule& M, int length);

}  // namespace qgrkit
