#include "qgrkit/objects.hpp"

#include <cctype>

#include "qgrkit/error.hpp"

namespace qgrkit {

std::string ShiftedObject::label() const {
  std::string s = module.name().empty() ? "<module>" : module.name();
  if (shift != 0) s += "[" + std::to_string(shift) + "]";
  return s;
}

namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view s, size_t base = 0) : s_(s), base_(base) {}

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool done() {
    skip();
    return i_ >= s_.size();
  }
  bool accept(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  std::string ident() {
    skip();
    size_t start = i_;
    while (i_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (start == i_) fail("expected an object name");
    return std::string(s_.substr(start, i_ - start));
  }
  int integer() {
    skip();
    size_t start = i_;
    if (i_ < s_.size() && (s_[i_] == '-' || s_[i_] == '+')) ++i_;
    size_t digits = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (digits == i_) fail("expected an integer");
    long v = std::stol(std::string(s_.substr(start, i_ - start)));
    if (v > 1000000 || v < -1000000) fail("integer out of range");
    return static_cast<int>(v);
  }
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, base_ + i_); }
  size_t pos() const { return base_ + i_; }

 private:
  std::string_view s_;
  size_t base_;
  size_t i_ = 0;
};

PresentedModule build(const std::string& name, size_t name_pos, const std::vector<int>& args, const Ring& A,
                      const Cursor& at) {
  auto arity = [&](size_t k) {
    if (args.size() != k) at.fail(name + " takes " + std::to_string(k) + " argument" + (k == 1 ? "" : "s"));
  };
  try {
    if (name == "A") {
      arity(1);
      return make_free(A, args[0]);
    }
    if (name == "chi") {
      arity(1);
      return make_chi(A, args[0]);
    }
    if (name == "Q") {
      arity(2);
      return make_Q_top_bottom(A, args[0], args[1]);
    }
    if (name == "G") {
      arity(1);
      return make_G(A, args[0]);
    }
    if (name == "H") {
      arity(1);
      return make_H(A, args[0]);
    }
    if (name == "Aq01") {
      arity(1);
      return make_Aq01(A, args[0]);
    }
  } catch (const ParseError&) {
    throw;
  } catch (const QgrError& e) {
    at.fail(e.what());
  }
  throw ParseError("unknown object '" + name + "'", name_pos);
}

ShiftedObject parse_one(Cursor& c, const Ring& A) {
  c.skip();
  size_t name_pos = c.pos();
  std::string name = c.ident();
  c.expect('(');
  std::vector<int> args{c.integer()};
  while (c.accept(',')) args.push_back(c.integer());
  c.expect(')');
  ShiftedObject out{build(name, name_pos, args, A, c), 0};
  if (c.accept('[')) {
    out.shift = c.integer();
    c.expect(']');
  }
  return out;
}

}  // namespace

ShiftedObject parse_object(std::string_view text, const Ring& A) {
  Cursor c(text);
  ShiftedObject out = parse_one(c, A);
  if (!c.done()) c.fail("trailing characters");
  return out;
}

std::vector<ShiftedObject> parse_object_list(std::string_view text, const Ring& A) {
  std::vector<ShiftedObject> out;
  int depth = 0;
  size_t start = 0;
  for (size_t i = 0; i <= text.size(); ++i) {
    char ch = i < text.size() ? text[i] : ',';
    if (ch == '(' || ch == '[') ++depth;
    if (ch == ')' || ch == ']') --depth;
    if (ch == ',' && depth == 0) {
      Cursor c(text.substr(start, i - start), start);
      if (c.done()) throw ParseError("empty object expression", start);
      out.push_back(parse_one(c, A));
      if (!c.done()) c.fail("trailing characters");
      start = i + 1;
    }
  }
  return out;
}

PresentedModule module_from_json(const nlohmann::json& j, const Ring& R) {
  try {
    std::vector<int> degs = j.at("generators").get<std::vector<int>>();
    FreeModule F{R, degs};
    std::vector<Vec> rels;
    for (const auto& rel : j.value("relations", nlohmann::json::array())) {
      if (rel.size() != degs.size()) {
        throw QgrError(ErrorKind::kInvalidInput, "each relation needs one polynomial per generator");
      }
      std::vector<Polynomial> parts;
      std::optional<int> degree;
      for (size_t g = 0; g < degs.size(); ++g) {
        Polynomial p = parse_polynomial(rel[g].get<std::string>(), *R);
        if (!p.is_zero()) {
          int d = p.degree + degs[g];
          if (degree && *degree != d) throw QgrError(ErrorKind::kInvalidInput, "relation is not homogeneous");
          degree = d;
        }
        parts.push_back(std::move(p));
      }
      if (!degree) continue;
      rels.push_back(vec_from_components(F, *degree, parts));
    }
    return PresentedModule(F, std::move(rels), j.value("name", std::string("custom")));
  } catch (const nlohmann::json::exception& e) {
    throw QgrError(ErrorKind::kInvalidInput, std::string("module JSON: ") + e.what());
  }
}

nlohmann::json module_to_json(const PresentedModule& M) {
  nlohmann::json j;
  j["name"] = M.name();
  j["generators"] = M.generators().degrees;
  j["relations"] = nlohmann::json::array();
  for (const auto& r : M.relations()) {
    nlohmann::json row = nlohmann::json::array();
    for (const auto& p : vec_components(M.generators(), r)) row.push_back(format_polynomial(p, *M.ring()));
    j["relations"].push_back(row);
  }
  return j;
}

namespace {

std::vector<PresentedModule> candidates_at(const Ring& A, int mingen) {
  int n = *A->n_param();
  std::vector<PresentedModule> out;
  int k = -mingen;
  out.push_back(make_free(A, k));
  out.push_back(make_chi(A, k));
  out.push_back(make_Aq01(A, k));
  for (int r = 1; r < 2 * n - 1; ++r) out.push_back(make_Q_top_bottom(A, k, k - 2 * r));
  out.push_back(make_G(A, 1 - mingen));
  out.push_back(make_H(A, 1 - mingen));
  return out;
}

bool same_hilbert(const PresentedModule& M, const PresentedModule& N, int lo, int hi) {
  for (int d = lo; d <= hi; ++d) {
    if (M.dim(d) != N.dim(d)) return false;
  }
  return true;
}

}  // namespace

std::optional<Identification> identify_named(const PresentedModule& M, int height, bool allow_qgr) {
  const Ring& A = M.ring();
  if (!A->n_param() || !A->is_quotient()) return std::nullopt;
  PresentedModule m = minimize_presentation(M).module;
  if (m.is_zero_presentation()) return std::nullopt;
  int w = A->max_weight();
  int lo = m.min_generator_degree(), hi = m.max_generator_degree() + 2 * w;
  for (const auto& cand : candidates_at(A, lo)) {
    if (!same_hilbert(m, cand, lo - 1, hi)) continue;
    IsoResult iso = is_isomorphic(m, cand, height);
    if (iso.verdict == IsoVerdict::kIsomorphic) return Identification{cand.name(), false, std::move(iso)};
  }
  if (!allow_qgr) return std::nullopt;
  // Modulo torsion only the tail of the Hilbert function matters.
  int tail = hi + 2 * w;
  for (int shift = -2 * w; shift <= 2 * w; ++shift) {
    for (const auto& cand : candidates_at(A, lo + shift)) {
      if (!same_hilbert(m, cand, tail, tail + 2 * w)) continue;
      if (qgr_isomorphic(m, cand, height)) return Identification{cand.name(), true, {}};
    }
  }
  return std::nullopt;
}

}  // namespace qgrkit
