#include "qgrkit/resolution.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qgrkit/error.hpp"

namespace qgrkit {

std::optional<int> Resolution::max_generator_degree() const {
  std::optional<int> best;
  for (const auto& F : complex.modules) {
    for (int b : F.degrees) best = best ? std::max(*best, b) : b;
  }
  return best;
}

Resolution compute_resolution(const PresentedModule& M, int length, std::vector<Vec>* augmentation) {
  if (length < 0) throw QgrError(ErrorKind::kInvalidParameter, "resolution length must be non-negative");
  Minimized mini = minimize_presentation(M);
  Resolution res;
  const Ring& ring = M.ring();
  FreeModule F0{ring, mini.module.generators().degrees};
  res.complex.modules.push_back(F0);
  if (augmentation) {
    augmentation->clear();
    for (int j : mini.kept) augmentation->push_back(vec_basis(M.generators(), j));
  }
  std::vector<Vec> K = mini.module.relations();
  if (F0.rank() == 0) res.terminated_at = 0;
  for (int k = 1; k <= length; ++k) {
    const FreeModule& prev = res.complex.modules.back();
    FreeModule Fk{ring, {}};
    GradedMatrix dk{Fk, prev, {}};
    std::vector<Vec> next;
    if (!K.empty()) {
      std::vector<GbInput> inputs = relation_multiples(prev);
      for (auto& v : K) inputs.push_back({std::move(v), true});
      GbOptions opts;
      opts.mode = SyzygyMode::kMinimal;
      opts.want_syzygies = k < length;
      GbResult r = gb_run(prev, inputs, opts);
      Fk.degrees = r.syzygy_source.degrees;
      for (int idx : r.kept) dk.columns.push_back(inputs[idx].vec);
      next = std::move(r.syzygies);
    }
    dk.source = Fk;
    res.complex.modules.push_back(Fk);
    res.complex.differentials.push_back(std::move(dk));
    if (Fk.rank() == 0 && !res.terminated_at) res.terminated_at = k;
    K = std::move(next);
  }
  return res;
}

// ---------------------------------------------------------------- cache

namespace {

constexpr int kCacheVersion = 1;

std::string fnv_hex(const std::string& s) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

nlohmann::json vec_to_json(const Vec& v, int nv) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : v.terms) {
    nlohmann::json e = nlohmann::json::array();
    for (int i = 0; i < nv; ++i) e.push_back(t.mono.exponent(i));
    terms.push_back({t.comp, e, t.coeff.to_string()});
  }
  return {{"degree", v.degree}, {"terms", terms}};
}

Vec vec_from_json(const nlohmann::json& j, const RingDescriptor& ring) {
  Vec v{j.at("degree").get<int>(), {}};
  for (const auto& t : j.at("terms")) {
    std::vector<int> e = t.at(1).get<std::vector<int>>();
    v.terms.push_back({t.at(0).get<int>(), ring.monomial(e), Rational::parse(t.at(2).get<std::string>())});
  }
  return v;
}

}  // namespace

ResolutionCache::ResolutionCache(std::optional<std::filesystem::path> dir) : dir_(std::move(dir)) {}

size_t ResolutionCache::size() const {
  std::lock_guard lock(mu_);
  return memo_.size();
}

std::optional<ResolutionWithAugmentation> ResolutionCache::load(const std::string& key, const Ring& ring) const {
  if (!dir_) return std::nullopt;
  auto path = *dir_ / ("res-" + fnv_hex(key) + ".json");
  std::ifstream in(path);
  if (!in) return std::nullopt;
  try {
    nlohmann::json j = nlohmann::json::parse(in);
    if (j.at("version").get<int>() != kCacheVersion || j.at("key").get<std::string>() != key) return std::nullopt;
    auto res = std::make_shared<Resolution>();
    for (const auto& degs : j.at("modules")) {
      res->complex.modules.push_back(FreeModule{ring, degs.get<std::vector<int>>()});
    }
    int k = 1;
    for (const auto& cols : j.at("differentials")) {
      GradedMatrix d{res->complex.modules.at(k), res->complex.modules.at(k - 1), {}};
      for (const auto& c : cols) d.columns.push_back(vec_from_json(c, *ring));
      res->complex.differentials.push_back(std::move(d));
      ++k;
    }
    if (!j.at("terminated_at").is_null()) res->terminated_at = j.at("terminated_at").get<int>();
    ResolutionWithAugmentation out;
    for (const auto& a : j.at("augmentation")) out.augmentation.push_back(vec_from_json(a, *ring));
    out.resolution = std::move(res);
    return out;
  } catch (const std::exception&) {
    return std::nullopt;  // unreadable entries are recomputed
  }
}

void ResolutionCache::store(const std::string& key, const ResolutionWithAugmentation& r) const {
  if (!dir_) return;
  std::error_code ec;
  std::filesystem::create_directories(*dir_, ec);
  if (ec) return;
  int nv = r.resolution->complex.modules.front().ring->num_vars();
  nlohmann::json j;
  j["version"] = kCacheVersion;
  j["key"] = key;
  j["modules"] = nlohmann::json::array();
  for (const auto& F : r.resolution->complex.modules) j["modules"].push_back(F.degrees);
  j["differentials"] = nlohmann::json::array();
  for (const auto& d : r.resolution->complex.differentials) {
    nlohmann::json cols = nlohmann::json::array();
    for (const auto& c : d.columns) cols.push_back(vec_to_json(c, nv));
    j["differentials"].push_back(cols);
  }
  j["terminated_at"] = r.resolution->terminated_at ? nlohmann::json(*r.resolution->terminated_at) : nlohmann::json();
  j["augmentation"] = nlohmann::json::array();
  for (const auto& a : r.augmentation) j["augmentation"].push_back(vec_to_json(a, nv));
  auto path = *dir_ / ("res-" + fnv_hex(key) + ".json");
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    out << j.dump();
  }
  std::filesystem::rename(tmp, path, ec);
}

ResolutionWithAugmentation ResolutionCache::get(const PresentedModule& M, int length) {
  std::string base = M.fingerprint();
  {
    std::lock_guard lock(mu_);
    auto it = memo_.find(base);
    if (it != memo_.end()) {
      const auto& r = *it->second.resolution;
      if (r.length() >= length || (r.terminated_at && *r.terminated_at <= r.length())) return it->second;
    }
  }
  std::string key = base + "#" + std::to_string(length);
  auto loaded = load(key, M.ring());
  ResolutionWithAugmentation out;
  if (loaded) {
    out = std::move(*loaded);
  } else {
    std::vector<Vec> aug;
    out.resolution = std::make_shared<Resolution>(compute_resolution(M, length, &aug));
    out.augmentation = std::move(aug);
    store(key, out);
  }
  std::lock_guard lock(mu_);
  auto& slot = memo_[base];
  if (!slot.resolution || slot.resolution->length() < out.resolution->length()) slot = out;
  return slot;
}

ResolutionWithAugmentation free_resolution(const PresentedModule& M, int length) {
  std::vector<Vec> aug;
  ResolutionWithAugmentation out;
  out.resolution = std::make_shared<Resolution>(compute_resolution(M, length, &aug));
  out.augmentation = std::move(aug);
  return out;
}

}  // namespace qgrkit
