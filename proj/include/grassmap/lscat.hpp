#pragma once

// Lusternik-Schnirelmann category bounds for Gr_2(R^n).
//
// With 2^s < n <= 2^(s+1) and dim = 2(n-2):
//   lower:  cuplength = n + 2^s - 3
//   upper:  dim; dim - 1 when n >= 2^s + 2 (Berstein);
//           floor((k + dim) / 2) for a pi_1-isomorphic map to RP^k (Dranishnikov).

#include <algorithm>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "grassmap/error.hpp"
#include "grassmap/maps.hpp"

namespace grassmap {

struct CatBoundsRow {
  int n = 0;
  int s = 0;
  int dim = 0;
  int cuplength = 0;
  std::optional<int> berstein_upper;
  std::optional<int> best_k;
  std::optional<int> dranishnikov_upper;
  int lower = 0;
  int upper = 0;
  std::string lower_source;
  std::string upper_source;

  bool exact() const { return lower == upper; }
};

/// Bounds from the registry's maps; pass an empty registry to get the
/// classical bracket alone.
inline CatBoundsRow cat_bounds(int n, const MapRegistry& registry = default_registry()) {
  if (n < 3) throw Error(ErrorKind::UnsupportedN, "cat_bounds: n must be >= 3, got " + std::to_string(n));
  CatBoundsRow row;
  row.n = n;
  row.s = dyadic_exponent(n);
  row.dim = 2 * (n - 2);
  row.cuplength = n + (1 << row.s) - 3;
  row.lower = row.cuplength;
  row.lower_source = "cuplength";

  row.upper = row.dim;
  row.upper_source = "dimension";
  if (n >= (1 << row.s) + 2) {
    row.berstein_upper = row.dim - 1;
    if (*row.berstein_upper < row.upper) {
      row.upper = *row.berstein_upper;
      row.upper_source = "berstein";
    }
  }
  if (const auto entry = find_entry(registry, n)) {
    if (entry->k < pi1_threshold(n)) {
      throw Error(ErrorKind::UsageError, "registry entry (" + std::to_string(n) + ", " + std::to_string(entry->k) +
                                             ") lies below the pi_1 threshold " + std::to_string(pi1_threshold(n)));
    }
    row.best_k = entry->k;
    row.dranishnikov_upper = (entry->k + row.dim) / 2;
    if (*row.dranishnikov_upper < row.upper) {
      row.upper = *row.dranishnikov_upper;
      row.upper_source = "dranishnikov(k=" + std::to_string(entry->k) + ")";
    }
  }
  return row;
}

inline std::vector<CatBoundsRow> emit_table(const std::vector<int>& ns, const MapRegistry& registry = default_registry()) {
  std::vector<CatBoundsRow> rows;
  rows.reserve(ns.size());
  for (int n : ns) rows.push_back(cat_bounds(n, registry));
  return rows;
}

/// "8" for exact values, "[17,18]" otherwise.
inline std::string format_bounds(const CatBoundsRow& r) {
  if (r.exact()) return std::to_string(r.lower);
  return "[" + std::to_string(r.lower) + "," + std::to_string(r.upper) + "]";
}

namespace detail {
inline std::string opt(const std::optional<int>& v) { return v ? std::to_string(*v) : ""; }
}  // namespace detail

inline void write_csv(std::ostream& os, const std::vector<CatBoundsRow>& rows) {
  os << "n,s,dim,cuplength,berstein_upper,best_k,dranishnikov_upper,lower,upper,lower_source,upper_source\n";
  for (const auto& r : rows) {
    os << r.n << ',' << r.s << ',' << r.dim << ',' << r.cuplength << ',' << detail::opt(r.berstein_upper) << ','
       << detail::opt(r.best_k) << ',' << detail::opt(r.dranishnikov_upper) << ',' << r.lower << ',' << r.upper << ','
       << r.lower_source << ',' << '"' << r.upper_source << '"' << '\n';
  }
}

inline void write_text(std::ostream& os, const std::vector<CatBoundsRow>& rows) {
  for (const auto& r : rows) {
    os << "n=" << r.n << "  cat(Gr_2(R^" << r.n << ")) " << (r.exact() ? "= " : "in ") << format_bounds(r)
       << "  (upper: " << r.upper_source << ")\n";
  }
}

inline nlohmann::json to_json(const CatBoundsRow& r) {
  auto opt = [](const std::optional<int>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); };
  return {
      {"n", r.n},
      {"s", r.s},
      {"dim", r.dim},
      {"cuplength", r.cuplength},
      {"berstein_upper", opt(r.berstein_upper)},
      {"best_k", opt(r.best_k)},
      {"dranishnikov_upper", opt(r.dranishnikov_upper)},
      {"lower", r.lower},
      {"upper", r.upper},
      {"lower_source", r.lower_source},
      {"upper_source", r.upper_source},
  };
}

}  // namespace grassmap
