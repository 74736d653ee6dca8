#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "qgrkit/collection.hpp"
#include "qgrkit/mutation.hpp"

namespace qgrkit {

enum class Format { kTable, kJson, kCsv };
Format parse_format(const std::string& s);

// Rows (source, target, i, dim, method, trace).
nlohmann::json ext_json(const ExtResult& r);
std::string ext_csv(const ExtResult& r);
std::string ext_table(const ExtResult& r);

// {collection, n, objects[], checks[], gram[][], det, morphisms[], ...}
nlohmann::json collection_json(const CollectionReport& r, const MorphismAlgebra* alg = nullptr);
std::string collection_csv(const CollectionReport& r);  // k,l,i,dim
std::string collection_table(const CollectionReport& r);
std::string gram_table(const CollectionReport& r);
std::string morphisms_table(const MorphismAlgebra& alg);
std::string morphisms_csv(const MorphismAlgebra& alg);

nlohmann::json mutation_json(const MutationChain& chain);
std::string mutation_table(const MutationChain& chain);

// dim A_k by enumeration and by the series coefficient, k = 0..kmax.
struct HilbertRow {
  int k;
  long enumerated;
  long series;
};
std::vector<HilbertRow> hilbert_rows(const Ring& A, int kmax);
// Coefficients of 1 / ((1-t)(1-t^2)(1-t^{2n-1})(1-t^{4n-3})) * (1 - t^{4n-2}) up to kmax.
std::vector<long> hilbert_series(int n, int kmax);

}  // namespace qgrkit
