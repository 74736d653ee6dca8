#include "qgrkit/report.hpp"

#include <algorithm>
#include <sstream>

#include "qgrkit/error.hpp"

namespace qgrkit {

using nlohmann::json;

Format parse_format(const std::string& s) {
  if (s == "table") return Format::kTable;
  if (s == "json") return Format::kJson;
  if (s == "csv") return Format::kCsv;
  throw QgrError(ErrorKind::kInvalidParameter, "unknown format '" + s + "'");
}

namespace {

std::string join(const std::vector<std::string>& v, const char* sep) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
  return s;
}

std::string trace_text(const ExtResult& r, int i) {
  std::vector<std::string> parts;
  for (const auto& e : r.trace) {
    long d = i < static_cast<int>(e.dims.size()) ? e.dims[i] : 0;
    parts.push_back("t=" + std::to_string(e.t) + ":" + std::to_string(d));
  }
  return join(parts, ";");
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// Left-aligned columns.
std::string render(const std::vector<std::vector<std::string>>& rows) {
  std::vector<size_t> width;
  for (const auto& r : rows) {
    if (width.size() < r.size()) width.resize(r.size(), 0);
    for (size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
  }
  std::ostringstream os;
  for (const auto& r : rows) {
    std::string line;
    for (size_t c = 0; c < r.size(); ++c) {
      line += r[c];
      if (c + 1 < r.size()) line += std::string(width[c] - r[c].size() + 2, ' ');
    }
    os << line << "\n";
  }
  return os.str();
}

}  // namespace

json ext_json(const ExtResult& r) {
  json j;
  j["source"] = r.source;
  j["target"] = r.target;
  j["dims"] = r.dims;
  j["stable_level"] = r.stable_level;
  j["certified_by"] = r.certified_by;
  j["trace"] = json::array();
  for (const auto& e : r.trace) j["trace"].push_back({{"t", e.t}, {"dims", e.dims}});
  j["rows"] = json::array();
  for (size_t i = 0; i < r.dims.size(); ++i) {
    j["rows"].push_back({{"source", r.source},
                         {"target", r.target},
                         {"i", i},
                         {"dim", r.dims[i]},
                         {"method", join(r.certified_by, "+")},
                         {"trace", trace_text(r, static_cast<int>(i))}});
  }
  return j;
}

std::string ext_csv(const ExtResult& r) {
  std::string out = "source,target,i,dim,method,trace\n";
  for (size_t i = 0; i < r.dims.size(); ++i) {
    out += csv_field(r.source) + "," + csv_field(r.target) + "," + std::to_string(i) + "," +
           std::to_string(r.dims[i]) + "," + csv_field(join(r.certified_by, "+")) + "," +
           csv_field(trace_text(r, static_cast<int>(i))) + "\n";
  }
  return out;
}

std::string ext_table(const ExtResult& r) {
  std::vector<std::vector<std::string>> rows{{"i", "dim Ext^i(" + r.source + ", " + r.target + ")"}};
  for (size_t i = 0; i < r.dims.size(); ++i) rows.push_back({std::to_string(i), std::to_string(r.dims[i])});
  std::string out = render(rows);
  out += "stable from t = " + std::to_string(r.stable_level) + "; certified by " + join(r.certified_by, ", ") + "\n";
  std::vector<std::vector<std::string>> trace{{"t", "dims"}};
  for (const auto& e : r.trace) {
    std::vector<std::string> d;
    for (long x : e.dims) d.push_back(std::to_string(x));
    trace.push_back({std::to_string(e.t), join(d, " ")});
  }
  return out + "trace:\n" + render(trace);
}

json collection_json(const CollectionReport& r, const MorphismAlgebra* alg) {
  json j;
  j["collection"] = r.label;
  j["n"] = r.n;
  j["objects"] = r.objects;
  j["passed"] = r.passed;
  j["exceptional"] = json::array();
  for (const auto& e : r.exceptional) {
    j["exceptional"].push_back({{"object", e.label}, {"dims", e.dims}, {"exceptional", e.exceptional}});
  }
  j["checks"] = json::array();
  for (const auto& c : r.checks) {
    j["checks"].push_back({{"k", c.k}, {"l", c.l}, {"i", c.i}, {"dim", c.dim}, {"method", c.method}});
  }
  j["backward_failures"] = json::array();
  for (const auto& f : r.backward_failures) {
    j["backward_failures"].push_back({{"k", f.k}, {"l", f.l}, {"i", f.i}, {"dim", f.dim}});
  }
  j["gram"] = r.gram;
  j["det"] = r.determinant;
  j["unitriangular"] = r.unitriangular;
  j["fullness"] = "not checked; object count and Gram determinant are numerical evidence only";
  j["morphisms"] = json::array();
  if (alg) {
    for (const auto& e : alg->entries) {
      json row{{"k", e.k}, {"l", e.l}, {"i", e.i}, {"dim", e.dim}, {"ok", e.ok}};
      row["expected"] = e.expected ? json(*e.expected) : json(nullptr);
      row["rule"] = e.rule;
      j["morphisms"].push_back(row);
    }
    j["compositions"] = json::array();
    for (const auto& c : alg->compositions) {
      j["compositions"].push_back({{"rule", c.rule},
                                   {"description", c.description},
                                   {"predicted_nonzero", c.predicted_nonzero},
                                   {"observed_nonzero", c.observed_nonzero},
                                   {"ok", c.ok}});
    }
    j["morphisms_passed"] = alg->passed;
  }
  return j;
}

std::string collection_csv(const CollectionReport& r) {
  std::string out = "k,l,i,dim\n";
  for (const auto& c : r.checks) {
    out += std::to_string(c.k) + "," + std::to_string(c.l) + "," + std::to_string(c.i) + "," + std::to_string(c.dim) +
           "\n";
  }
  return out;
}

std::string collection_table(const CollectionReport& r) {
  std::ostringstream os;
  os << "collection " << r.label << ", n = " << r.n << ", " << r.objects.size() << " objects\n";
  std::vector<std::vector<std::string>> rows{{"#", "object", "Hom^0..2(E,E)", "exceptional"}};
  for (size_t k = 0; k < r.exceptional.size(); ++k) {
    const auto& e = r.exceptional[k];
    rows.push_back({std::to_string(k), e.label,
                    std::to_string(e.dims[0]) + " " + std::to_string(e.dims[1]) + " " + std::to_string(e.dims[2]),
                    e.exceptional ? "yes" : "NO"});
  }
  os << render(rows);
  long backward = 0;
  for (const auto& c : r.checks) backward += c.k > c.l;
  os << "backward pairs checked: " << backward << " (k > l, i = 0..2)\n";
  if (r.backward_failures.empty()) {
    os << "backward vanishing: all zero\n";
  } else {
    for (const auto& f : r.backward_failures) {
      os << "  FAIL Hom^" << f.i << "(" << r.objects[f.k] << ", " << r.objects[f.l] << ") = " << f.dim << "  [k=" << f.k
         << ", l=" << f.l << "]\n";
    }
  }
  os << gram_table(r);
  os << "result: " << (r.passed ? "PASS" : "FAIL") << "\n";
  return os.str();
}

std::string gram_table(const CollectionReport& r) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> head{""};
  for (size_t l = 0; l < r.gram.size(); ++l) head.push_back(std::to_string(l));
  rows.push_back(head);
  for (size_t k = 0; k < r.gram.size(); ++k) {
    std::vector<std::string> row{std::to_string(k)};
    for (long v : r.gram[k]) row.push_back(std::to_string(v));
    rows.push_back(row);
  }
  return "Euler form chi(E_k, E_l):\n" + render(rows) + "det = " + r.determinant +
         (r.unitriangular ? ", upper unitriangular" : ", not upper unitriangular") +
         " (numerical evidence only; fullness is not checked)\n";
}

std::string morphisms_table(const MorphismAlgebra& alg) {
  std::vector<std::vector<std::string>> rows{{"k", "l", "source", "target", "i", "dim", "expected", "rule", "ok"}};
  for (const auto& e : alg.entries) {
    if (e.dim == 0 && (!e.expected || *e.expected == 0)) continue;
    rows.push_back({std::to_string(e.k), std::to_string(e.l), alg.objects[e.k], alg.objects[e.l], std::to_string(e.i),
                    std::to_string(e.dim), e.expected ? std::to_string(*e.expected) : "-", e.rule,
                    e.ok ? "yes" : "NO"});
  }
  std::ostringstream os;
  os << "forward Ext of " << alg.label << ", n = " << alg.n << " (zero entries omitted; " << alg.entries.size()
     << " entries computed)\n"
     << render(rows);
  if (!alg.compositions.empty()) {
    std::vector<std::vector<std::string>> comp{{"rule", "composite", "predicted", "observed", "ok"}};
    for (const auto& c : alg.compositions) {
      comp.push_back({c.rule, c.description, c.predicted_nonzero ? "nonzero" : "zero",
                      c.observed_nonzero ? "nonzero" : "zero", c.ok ? "yes" : "NO"});
    }
    os << "compositions:\n" << render(comp);
  }
  os << "result: " << (alg.passed ? "PASS" : "FAIL") << "\n";
  return os.str();
}

std::string morphisms_csv(const MorphismAlgebra& alg) {
  std::string out = "k,l,i,dim,expected,rule,ok\n";
  for (const auto& e : alg.entries) {
    out += std::to_string(e.k) + "," + std::to_string(e.l) + "," + std::to_string(e.i) + "," + std::to_string(e.dim) +
           "," + (e.expected ? std::to_string(*e.expected) : "") + "," + csv_field(e.rule) + "," +
           (e.ok ? "1" : "0") + "\n";
  }
  return out;
}

json mutation_json(const MutationChain& chain) {
  json j;
  j["result"] = chain.result.label();
  j["steps"] = json::array();
  for (const auto& s : chain.steps) {
    json step{{"result", s.result.label()},
              {"mechanism", to_string(s.mechanism)},
              {"hom_degree", s.hom_degree},
              {"hom_dim", s.hom_dim},
              {"level", s.level},
              {"witness", s.witness.label},
              {"witness_exact", s.witness_exact}};
    if (s.identified) {
      step["identified"] = s.identified->name;
      step["up_to_torsion"] = s.identified->up_to_torsion;
    } else {
      step["identified"] = nullptr;
    }
    j["steps"].push_back(step);
  }
  return j;
}

std::string mutation_table(const MutationChain& chain) {
  std::vector<std::vector<std::string>> rows{{"step", "mechanism", "Hom^.", "witness", "exact", "result"}};
  for (size_t i = 0; i < chain.steps.size(); ++i) {
    const auto& s = chain.steps[i];
    std::string hom = s.hom_degree < 0 ? "0" : std::to_string(s.hom_dim) + " in degree " + std::to_string(s.hom_degree);
    std::string res = s.result.label();
    if (s.identified && s.identified->up_to_torsion) res += " (up to torsion)";
    if (!s.identified) res += " (unidentified)";
    rows.push_back({std::to_string(i + 1), to_string(s.mechanism), hom, s.witness.label,
                    s.witness_exact ? "yes" : "NO", res});
  }
  return render(rows) + "result: " + chain.result.label() + "\n";
}

std::vector<long> hilbert_series(int n, int kmax) {
  if (kmax < 0) return {};
  std::vector<long> c(kmax + 1, 0);
  c[0] = 1;
  // Numerator 1 - t^{4n-2}.
  if (4 * n - 2 <= kmax) c[4 * n - 2] -= 1;
  for (int w : {1, 2, 2 * n - 1, 4 * n - 3}) {
    for (int k = w; k <= kmax; ++k) c[k] += c[k - w];
  }
  return c;
}

std::vector<HilbertRow> hilbert_rows(const Ring& A, int kmax) {
  if (!A->n_param()) throw QgrError(ErrorKind::kInvalidParameter, "hilbert needs the family ring");
  auto series = hilbert_series(*A->n_param(), kmax);
  std::vector<HilbertRow> out;
  for (int k = 0; k <= kmax; ++k) out.push_back({k, static_cast<long>(monomial_basis(*A, k).size()), series[k]});
  return out;
}

}  // namespace qgrkit
