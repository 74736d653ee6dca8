#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <thread>

#include "qgrkit/collection.hpp"
#include "qgrkit/error.hpp"
#include "qgrkit/mutation.hpp"
#include "qgrkit/report.hpp"

using namespace qgrkit;

namespace {

// Exit codes.
constexpr int kPass = 0;
constexpr int kMismatch = 1;
constexpr int kUsage = 2;
constexpr int kStabilization = 3;

struct Settings {
  int n = 3;
  std::string format = "table";
  int imax = 2;
  std::optional<int> trunc_start, trunc_cap;
  int trunc_window = 3;
  int jobs = 0;
  std::string cache_dir;
  uint64_t seed = 1;
  bool slow = false;

  ExtOptions ext() const {
    ExtOptions o;
    o.i_max = imax;
    o.trunc_start = trunc_start;
    o.trunc_cap = trunc_cap;
    o.window = trunc_window;
    return o;
  }
  int workers() const {
    if (jobs > 0) return jobs;
    return std::max(1u, std::thread::hardware_concurrency());
  }
};

void emit(const nlohmann::json& j) { std::cout << j.dump(2) << "\n"; }

Ring ring_for(const Settings& s) {
  if (s.n < 2) throw QgrError(ErrorKind::kInvalidParameter, "--n must be at least 2");
  return make_ring(s.n, true);
}

void require_scale(const Settings& s) {
  if (s.n > 4 && !s.slow) {
    throw QgrError(ErrorKind::kInvalidParameter, "collection-wide runs with n > 4 need --slow");
  }
}

NamedCollection load_collection(const std::string& what, const Ring& A) {
  auto labels = builtin_labels();
  if (std::find(labels.begin(), labels.end(), what) != labels.end()) return builtin_collection(what, A);
  std::ifstream in(what);
  if (!in) throw QgrError(ErrorKind::kInvalidParameter, "unknown collection '" + what + "' (not a label or a file)");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw QgrError(ErrorKind::kInvalidInput, what + ": " + e.what());
  }
  if (!j.is_array()) throw QgrError(ErrorKind::kInvalidInput, what + ": expected a JSON list of object expressions");
  NamedCollection c{"custom", *A->n_param(), {}};
  for (const auto& e : j) {
    if (!e.is_string()) throw QgrError(ErrorKind::kInvalidInput, what + ": entries must be strings");
    c.objects.push_back(parse_object(e.get<std::string>(), A));
  }
  return c;
}

// Verdict the literature states for a built-in collection, if any.
std::optional<bool> stated_verdict(const std::string& label, int n) {
  if (label == "intro" || label == "ec_1") return true;
  if ((label == "ec_2" || label == "ec_3") && n > 2) return true;
  return std::nullopt;
}

int cmd_hilbert(const Settings& s, int kmax) {
  Ring A = ring_for(s);
  auto rows = hilbert_rows(A, kmax);
  bool ok = true;
  Format f = parse_format(s.format);
  if (f == Format::kJson) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& r : rows) {
      j.push_back({{"k", r.k}, {"enumerated", r.enumerated}, {"series", r.series}, {"match", r.enumerated == r.series}});
    }
    emit(j);
  } else {
    std::cout << (f == Format::kCsv ? "k,enumerated,series,match\n" : "k  dim A_k  series  match\n");
    for (const auto& r : rows) {
      const char* sep = f == Format::kCsv ? "," : "  ";
      std::cout << r.k << sep << r.enumerated << sep << r.series << sep << (r.enumerated == r.series ? "yes" : "NO")
                << "\n";
    }
  }
  for (const auto& r : rows) ok = ok && r.enumerated == r.series;
  return ok ? kPass : kMismatch;
}

int cmd_ext(const Settings& s, const std::string& src, const std::string& dst) {
  Ring A = ring_for(s);
  auto M = parse_object(src, A);
  auto N = parse_object(dst, A);
  if (M.shift != 0 || N.shift != 0) throw QgrError(ErrorKind::kInvalidParameter, "ext takes unshifted objects");
  ExtResult r = default_engine().ext(M.module, N.module, s.ext());
  switch (parse_format(s.format)) {
    case Format::kJson: emit(ext_json(r)); break;
    case Format::kCsv: std::cout << ext_csv(r); break;
    case Format::kTable: std::cout << ext_table(r); break;
  }
  return kPass;
}

int cmd_resolve(const Settings& s, const std::string& expr, int length) {
  Ring A = ring_for(s);
  auto M = parse_object(expr, A).module;
  auto res = free_resolution(M, length);
  const Resolution& R = *res.resolution;
  nlohmann::json j;
  j["module"] = M.name();
  j["length"] = R.length();
  j["terms"] = nlohmann::json::array();
  for (int k = 0; k <= R.length(); ++k) {
    std::vector<int> twists;
    for (int b : R.F(k).degrees) twists.push_back(-b);
    std::sort(twists.rbegin(), twists.rend());
    j["terms"].push_back({{"position", k}, {"rank", twists.size()}, {"twists", twists}});
  }
  if (R.terminated_at) j["terminated_at"] = *R.terminated_at;
  Format f = parse_format(s.format);
  if (f == Format::kJson) {
    emit(j);
  } else {
    std::cout << (f == Format::kCsv ? "position,rank,twists\n" : "F_k = sum of A(twist)\n");
    for (const auto& t : j["terms"]) {
      std::string tw;
      for (const auto& x : t["twists"]) tw += (tw.empty() ? "" : " ") + std::to_string(x.get<int>());
      if (f == Format::kCsv) {
        std::cout << t["position"] << "," << t["rank"] << ",\"" << tw << "\"\n";
      } else {
        std::cout << "F_" << t["position"] << ": rank " << t["rank"] << "  twists [" << tw << "]\n";
      }
    }
    if (R.terminated_at && f == Format::kTable) std::cout << "resolution is finite (zero at F_" << *R.terminated_at << ")\n";
  }
  return kPass;
}

int cmd_mutate(const Settings& s, const std::string& left, const std::string& right, const std::string& object) {
  Ring A = ring_for(s);
  if (left.empty() == right.empty()) throw QgrError(ErrorKind::kInvalidParameter, "give exactly one of --left, --right");
  auto Y = parse_object(object, A);
  MutationChain chain = left.empty() ? iterated_right_mutation(Y, parse_object_list(right, A))
                                     : iterated_left_mutation(parse_object_list(left, A), Y);
  bool ok = true;
  for (const auto& st : chain.steps) ok = ok && st.witness_exact;
  switch (parse_format(s.format)) {
    case Format::kJson: emit(mutation_json(chain)); break;
    case Format::kCsv: {
      std::cout << "step,mechanism,hom_degree,hom_dim,witness_exact,result\n";
      for (size_t i = 0; i < chain.steps.size(); ++i) {
        const auto& st = chain.steps[i];
        std::cout << i + 1 << "," << to_string(st.mechanism) << "," << st.hom_degree << "," << st.hom_dim << ","
                  << st.witness_exact << "," << st.result.label() << "\n";
      }
      break;
    }
    case Format::kTable: std::cout << mutation_table(chain); break;
  }
  return ok ? kPass : kMismatch;
}

int cmd_negative_control(const Settings& s) {
  Ring A = ring_for(s);
  std::cerr << "seed = " << s.seed << "\n";
  NegativeControl nc = negative_control(A, s.seed);
  VerifyOptions vo;
  vo.jobs = s.workers();
  vo.ext = s.ext();
  CollectionReport r = verify_collection(nc.permuted, vo);
  std::set<std::tuple<int, int, int, long>> got, want;
  for (const auto& f : r.backward_failures) got.insert({f.k, f.l, f.i, f.dim});
  for (const auto& f : nc.predicted) want.insert({f.k, f.l, f.i, f.dim});
  bool ok = !r.passed && got == want;
  if (parse_format(s.format) == Format::kJson) {
    nlohmann::json j = collection_json(r);
    j["seed"] = s.seed;
    j["swapped"] = {nc.p, nc.q};
    j["predicted"] = nlohmann::json::array();
    for (const auto& f : nc.predicted) j["predicted"].push_back({{"k", f.k}, {"l", f.l}, {"i", f.i}, {"dim", f.dim}});
    j["control_ok"] = ok;
    emit(j);
  } else {
    std::cout << collection_table(r) << "predicted offending pairs:\n";
    for (const auto& f : nc.predicted) {
      std::cout << "  Hom^" << f.i << "(" << r.objects[f.k] << ", " << r.objects[f.l] << ") = " << f.dim << "\n";
    }
    std::cout << "negative control: " << (ok ? "failures match the prediction" : "MISMATCH") << "\n";
  }
  return ok ? kPass : kMismatch;
}

int cmd_verify(const Settings& s, const std::string& what, bool ceiling, bool gram_only, bool morphisms) {
  Ring A = ring_for(s);
  require_scale(s);
  NamedCollection c = load_collection(what, A);
  VerifyOptions vo;
  vo.jobs = s.workers();
  vo.ceiling_check = ceiling;
  vo.ext = s.ext();
  CollectionReport r = verify_collection(c, vo);
  std::optional<MorphismAlgebra> alg;
  if (morphisms) alg = morphism_algebra(c, r);
  auto stated = stated_verdict(c.label, s.n);
  Format f = parse_format(s.format);
  if (f == Format::kJson) {
    nlohmann::json j = collection_json(r, alg ? &*alg : nullptr);
    j["stated_verdict"] = stated ? nlohmann::json(*stated ? "pass" : "fail") : nlohmann::json(nullptr);
    emit(j);
  } else if (f == Format::kCsv) {
    if (gram_only) {
      for (const auto& row : r.gram) {
        for (size_t l = 0; l < row.size(); ++l) std::cout << (l ? "," : "") << row[l];
        std::cout << "\n";
      }
    } else if (alg) {
      std::cout << morphisms_csv(*alg);
    } else {
      std::cout << collection_csv(r);
    }
  } else if (gram_only) {
    std::cout << gram_table(r);
  } else if (alg) {
    std::cout << morphisms_table(*alg);
  } else {
    std::cout << collection_table(r);
    std::cout << "stated verdict: " << (stated ? (*stated ? "pass" : "fail") : "none") << "\n";
  }
  bool ok = r.passed && (!alg || alg->passed);
  if (gram_only) ok = r.unitriangular && (r.determinant == "1" || r.determinant == "-1");
  if (stated && *stated != r.passed) ok = false;
  return ok ? kPass : kMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qgrkit: Ext groups, mutations and exceptional collections over a weighted hypersurface ring"};
  app.require_subcommand(1);
  Settings s;
  if (const char* env = std::getenv("QGRKIT_CACHE")) s.cache_dir = env;
  if (s.cache_dir.empty()) s.cache_dir = ".qgrkit-cache";

  app.add_option("--n", s.n, "ring parameter n >= 2")->capture_default_str();
  app.add_option("--format", s.format, "table, json or csv")
      ->check(CLI::IsMember({"table", "json", "csv"}))
      ->capture_default_str();
  app.add_option("--imax", s.imax, "largest Ext degree (0..3)")->check(CLI::Range(0, 3))->capture_default_str();
  app.add_option("--trunc-start", s.trunc_start, "first truncation level");
  app.add_option("--trunc-window", s.trunc_window, "equal consecutive levels required")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--trunc-cap", s.trunc_cap, "last truncation level tried");
  app.add_option("--jobs", s.jobs, "worker threads (default: processors)")->check(CLI::NonNegativeNumber);
  app.add_option("--cache-dir", s.cache_dir, "resolution cache directory (env QGRKIT_CACHE)")->capture_default_str();
  bool no_cache = false;
  app.add_flag("--no-cache", no_cache, "keep resolutions in memory only");
  app.add_option("--seed", s.seed, "seed for randomized checks")->capture_default_str();
  app.add_flag("--slow", s.slow, "allow collection-wide runs for n > 4");

  int kmax = 20;
  auto* hilbert = app.add_subcommand("hilbert", "dim A_k by enumeration and by the Hilbert series");
  hilbert->add_option("--kmax", kmax, "largest degree")->check(CLI::NonNegativeNumber)->capture_default_str();

  std::string src, dst;
  auto* ext = app.add_subcommand("ext", "dimensions of Ext^i(M, N) in qgr(A)");
  ext->add_option("source", src, "object expression")->required();
  ext->add_option("target", dst, "object expression")->required();

  std::string robj;
  int length = 3;
  auto* resolve = app.add_subcommand("resolve", "minimal graded free resolution over A");
  resolve->add_option("object", robj, "object expression")->required();
  resolve->add_option("--length", length, "number of steps")->check(CLI::Range(0, 12))->capture_default_str();

  std::string left, right, object;
  auto* mutate = app.add_subcommand("mutate", "iterated left or right mutation");
  mutate->add_option("--left", left, "mutating objects E_1,...,E_r for L_<E_1..E_r>");
  mutate->add_option("--right", right, "mutating objects E_1,...,E_r for R_<E_1..E_r>");
  mutate->add_option("--object", object, "object being mutated")->required();

  std::string coll;
  bool ceiling = false, negative = false;
  auto* verify = app.add_subcommand("verify", "check that a collection is exceptional");
  verify->add_option("collection", coll, "intro, ec_1, ec_2, ec_3 or a JSON file of object expressions");
  verify->add_flag("--ceiling", ceiling, "also require Ext^3 = 0 for every pair");
  verify->add_flag("--negative-control", negative, "verify a seeded breaking permutation of ec_1 instead");
  auto* gram = app.add_subcommand("gram", "Euler form matrix of a collection");
  gram->add_option("collection", coll)->required();
  auto* morph = app.add_subcommand("morphisms", "forward Ext table and composition checks");
  morph->add_option("collection", coll)->required();
  for (auto* sub : {hilbert, ext, resolve, mutate, verify, gram, morph}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    configure_default_engine(no_cache ? std::nullopt : std::optional<std::filesystem::path>(s.cache_dir));
    if (*hilbert) return cmd_hilbert(s, kmax);
    if (*ext) return cmd_ext(s, src, dst);
    if (*resolve) return cmd_resolve(s, robj, length);
    if (*mutate) return cmd_mutate(s, left, right, object);
    if (*verify) {
      if (negative) return cmd_negative_control(s);
      if (coll.empty()) throw QgrError(ErrorKind::kInvalidParameter, "verify needs a collection");
      return cmd_verify(s, coll, ceiling, false, false);
    }
    if (*gram) return cmd_verify(s, coll, false, true, false);
    if (*morph) return cmd_verify(s, coll, false, false, true);
  } catch (const QgrError& e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::kParse:
      case ErrorKind::kInvalidParameter:
      case ErrorKind::kInvalidInput:
      case ErrorKind::kInvalidIndex:
        return kUsage;
      case ErrorKind::kStabilizationNotReached:
        return kStabilization;
      default:
        return kMismatch;
    }
  }
  return kUsage;
}
