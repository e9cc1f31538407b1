#pragma once

// Residual-bearing verification suites, one per module. Each check records
// the worst residual seen and the threshold it was held to; thresholds are
// overridable by check name.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "grassmap/actions.hpp"
#include "grassmap/algebra.hpp"
#include "grassmap/analysis.hpp"
#include "grassmap/fiber.hpp"
#include "grassmap/geometry.hpp"
#include "grassmap/lscat.hpp"
#include "grassmap/maps.hpp"

namespace grassmap {

struct Check {
  std::string name;
  double residual = 0.0;
  double threshold = 0.0;
  // Most checks bound a residual from above; rank checks bound a ratio from below.
  bool lower_bound = false;

  bool pass() const { return lower_bound ? residual > threshold : residual <= threshold; }
};

struct SuiteReport {
  std::string suite;
  std::vector<Check> checks;
  nlohmann::json config = nlohmann::json::object();

  bool pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass(); });
  }

  const Check* first_failure() const {
    for (const auto& c : checks)
      if (!c.pass()) return &c;
    return nullptr;
  }

  void append(const SuiteReport& other) {
    for (Check c : other.checks) {
      c.name = other.suite + "." + c.name;
      checks.push_back(std::move(c));
    }
  }
};

inline nlohmann::json to_json(const SuiteReport& r) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks) {
    checks.push_back({{"name", c.name},
                      {"residual", c.residual},
                      {"threshold", c.threshold},
                      {"comparison", c.lower_bound ? ">" : "<="},
                      {"pass", c.pass()}});
  }
  return {{"suite", r.suite}, {"config", r.config}, {"checks", checks}, {"pass", r.pass()}};
}

struct VerifyConfig {
  std::uint64_t seed = 0;
  int samples = 1000;
  int word_len = 4;
  std::map<std::string, double> tol;

  double threshold(const std::string& name, double fallback) const {
    const auto it = tol.find(name);
    return it == tol.end() ? fallback : it->second;
  }
};

namespace detail {

inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char ch : s) {
    h ^= static_cast<unsigned char>(ch);
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Runs body(rng) `count` times on the substream named after the check and
/// records the worst residual.
class Sweep {
 public:
  Sweep(SuiteReport& report, const VerifyConfig& cfg) : report_(report), cfg_(cfg) {}

  void run(const std::string& name, double default_threshold, int count, const std::function<double(Rng&)>& body) {
    Rng rng(cfg_.seed, fnv1a(report_.suite + "." + name));
    double worst = 0.0;
    for (int i = 0; i < count; ++i) worst = std::max(worst, body(rng));
    report_.checks.push_back({name, worst, cfg_.threshold(name, default_threshold), false});
  }

  void value(const std::string& name, double residual, double default_threshold, bool lower_bound = false) {
    report_.checks.push_back({name, residual, cfg_.threshold(name, default_threshold), lower_bound});
  }

 private:
  SuiteReport& report_;
  const VerifyConfig& cfg_;
};

inline Octonion random_octonion(Rng& rng) { return Octonion::from_vector(rng.gaussian_vector(8)); }

}  // namespace detail

// ---------------------------------------------------------------------------

inline SuiteReport verify_algebra(const VerifyConfig& cfg) {
  SuiteReport r{"algebra", {}};
  detail::Sweep sweep(r, cfg);

  // Basis-level structure of the table: unit, squares, anticommutation.
  double mismatches = 0;
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      const SignedIndex e = kOctonionTable(i, j);
      if (i == 0 && !(e == SignedIndex{1, j})) ++mismatches;
      if (j == 0 && !(e == SignedIndex{1, i})) ++mismatches;
      if (i == j && i > 0 && !(e == SignedIndex{-1, 0})) ++mismatches;
      if (i != j && i > 0 && j > 0 && !(e == SignedIndex{-kOctonionTable(j, i).sign, kOctonionTable(j, i).index}))
        ++mismatches;
    }
  }
  sweep.value("table_structure", mismatches, 0.0);

  sweep.run("composition", 1e-12, 10 * cfg.samples, [](Rng& rng) {
    const Octonion x = detail::random_octonion(rng), y = detail::random_octonion(rng);
    return std::abs((x * y).norm() - x.norm() * y.norm()) / (1.0 + x.norm() * y.norm());
  });
  sweep.run("alternativity", 1e-12, cfg.samples, [](Rng& rng) {
    const Octonion x = detail::random_octonion(rng), y = detail::random_octonion(rng);
    const double scale = 1.0 + x.norm2() * y.norm();
    return std::max(((x * x) * y - x * (x * y)).norm(), ((y * x) * x - y * (x * x)).norm()) / scale;
  });
  sweep.run("anti_automorphism", 1e-14, cfg.samples, [](Rng& rng) {
    const Octonion x = detail::random_octonion(rng), y = detail::random_octonion(rng);
    return (conj(x * y) - conj(y) * conj(x)).norm() / (1.0 + x.norm() * y.norm());
  });
  sweep.run("inner_product", 1e-14, cfg.samples, [](Rng& rng) {
    const Octonion x = detail::random_octonion(rng), y = detail::random_octonion(rng);
    const double a = inner(x, y);
    const double b = 0.5 * (conj(x) * y + conj(y) * x).re();
    return std::max(std::abs(a - x.vec().dot(y.vec())), std::abs(b - a)) / (1.0 + x.norm() * y.norm());
  });
  sweep.run("two_generated_associativity", 1e-12, cfg.samples, [](Rng& rng) {
    const Octonion x = detail::random_octonion(rng), y = detail::random_octonion(rng);
    return associator(x, y, x * y).norm() / (1.0 + std::pow(x.norm() * y.norm(), 2));
  });
  return r;
}

inline SuiteReport verify_geometry(const VerifyConfig& cfg) {
  SuiteReport r{"geometry", {}};
  detail::Sweep sweep(r, cfg);
  for (int n : {4, 8, 16}) {
    sweep.run("lagrange_n" + std::to_string(n), 1e-10, cfg.samples, [n](Rng& rng) {
      const Vector x = rng.gaussian_vector(n), y = rng.gaussian_vector(n);
      const double rhs = x.squaredNorm() * y.squaredNorm() - std::pow(x.dot(y), 2);
      return std::abs(pluecker(x, y).squared_sum() - rhs) / (1.0 + x.squaredNorm() * y.squaredNorm());
    });
  }
  sweep.run("pluecker_basis_change", 1e-10, cfg.samples, [](Rng& rng) {
    const Vector x = rng.gaussian_vector(8), y = rng.gaussian_vector(8);
    const Eigen::Matrix2d a = random_gl2(rng);
    const auto [u, v] = change_basis(x, y, a);
    const auto& pu = pluecker(u, v).values();
    const auto& px = pluecker(x, y).values();
    double worst = 0.0;
    for (std::size_t i = 0; i < px.size(); ++i) worst = std::max(worst, std::abs(pu[i] - a.determinant() * px[i]));
    return worst / (1.0 + std::abs(a.determinant()) * x.norm() * y.norm());
  });
  sweep.run("orthonormalize_span", 1e-9, cfg.samples, [](Rng& rng) {
    const Vector x = rng.gaussian_vector(6), y = rng.gaussian_vector(6);
    const auto [u, v] = change_basis(x, y, random_gl2(rng));
    return plane_distance(orthonormalize(x, y), orthonormalize(u, v));
  });
  return r;
}

inline SuiteReport verify_maps(const VerifyConfig& cfg) {
  SuiteReport r{"maps", {}};
  detail::Sweep sweep(r, cfg);
  sweep.run("mu_h_cross_form", 1e-12, 100 * cfg.samples, [](Rng& rng) {
    const Vector x = rng.gaussian_vector(4), y = rng.gaussian_vector(4);
    return (mu_h(x, y, MuForm::Algebraic) - mu_h(x, y, MuForm::Pluecker)).norm();
  });
  sweep.run("mu_o_cross_form", 1e-12, 100 * cfg.samples, [](Rng& rng) {
    const Vector x = rng.gaussian_vector(8), y = rng.gaussian_vector(8);
    return (mu_o(x, y, MuForm::Algebraic) - mu_o(x, y, MuForm::Pluecker)).norm();
  });
  sweep.run("norm_identity", 1e-10, cfg.samples, [](Rng& rng) {
    const Vector x4 = rng.gaussian_vector(4), y4 = rng.gaussian_vector(4);
    const Vector x8 = rng.gaussian_vector(8), y8 = rng.gaussian_vector(8);
    const double h = std::abs(mu_h(x4, y4).squaredNorm() - pluecker(x4, y4).squared_sum());
    const double o = std::abs(mu_o(x8, y8).squaredNorm() - pluecker(x8, y8).squared_sum());
    return std::max(h / (1.0 + x4.squaredNorm() * y4.squaredNorm()), o / (1.0 + x8.squaredNorm() * y8.squaredNorm()));
  });
  for (int n : registered_dimensions()) {
    const GrassmannMap map = map_for_dimension(n);
    sweep.run("well_defined_" + map.id(), 1e-9, cfg.samples, [&map](Rng& rng) {
      const Plane p = random_plane(map.n(), rng);
      const auto [u, v] = change_basis(p.x(), p.y(), random_gl2(rng));
      return proj_distance(map(p), map(orthonormalize(u, v)));
    });
  }
  for (int n : registered_dimensions()) {
    const GrassmannMap map = map_for_dimension(n);
    const int parent_n = parent_dimension(n);
    if (parent_n == n) continue;
    const GrassmannMap parent = map_for_dimension(parent_n);
    sweep.run("restriction_coherence_" + map.id(), 1e-12, cfg.samples, [&map, &parent, parent_n](Rng& rng) {
      const Vector x = rng.gaussian_vector(map.n()), y = rng.gaussian_vector(map.n());
      const Vector mine = lift_to_parent(map.n(), map.raw(x, y));
      const Vector theirs = parent.raw(detail::pad(x, parent_n), detail::pad(y, parent_n));
      return (mine - theirs).norm() / (1.0 + x.norm() * y.norm());
    });
  }
  sweep.run("section_nu4", 1e-10, cfg.samples, [](Rng& rng) {
    const ProjectivePoint q = random_unit(2, rng);
    return proj_distance(nu4(section_nu4(q)), q);
  });
  sweep.run("section_nu8", 1e-10, cfg.samples, [](Rng& rng) {
    const ProjectivePoint q = random_unit(6, rng);
    return proj_distance(nu8(section_nu8(q)), q);
  });
  return r;
}

inline SuiteReport verify_actions(const VerifyConfig& cfg) {
  SuiteReport r{"actions", {}};
  detail::Sweep sweep(r, cfg);
  const int len = std::max(cfg.word_len, 1);
  sweep.run("triality_spin8", 1e-10, cfg.samples, [len](Rng& rng) {
    return random_spin8_word(rng, 1 + static_cast<int>(rng.uniform() * len) % len).validation_residual();
  });
  sweep.run("triality_spin7", 1e-10, cfg.samples, [len](Rng& rng) {
    return random_spin7_word(rng, 1 + static_cast<int>(rng.uniform() * len) % len).validation_residual();
  });
  sweep.run("triality_corollary", 1e-10, cfg.samples, [len](Rng& rng) {
    const SpinTriple t = random_spin8_word(rng, len);
    const Octonion x = detail::random_octonion(rng), y = detail::random_octonion(rng);
    return check_triality_corollary(t, x, y) / (1.0 + x.norm() * y.norm());
  });
  sweep.run("spin7_vector_rep", 1e-8, cfg.samples, [len](Rng& rng) {
    const SpinTriple t = random_spin7_word(rng, len);
    const double fixes_unit = (t.g_zero().col(0) - Matrix8::Identity().col(0)).norm();
    const double det = std::abs(t.g_zero().bottomRightCorner<7, 7>().determinant() - 1.0);
    return std::max({fixes_unit, det, t.orthogonality_residual(), (t.g_plus() - t.g_minus()).norm()});
  });
  sweep.run("nu4_equivariance", 1e-9, cfg.samples, [](Rng& rng) {
    const So4Element a = random_so4(rng);
    return check_nu4_equivariance(a, random_plane(4, rng));
  });
  sweep.run("so4_kernel", 0.0, cfg.samples, [](Rng& rng) {
    const So4Element a = random_so4(rng);
    const So4Element b{-a.g, -a.h};
    return (a.matrix() - b.matrix()).cwiseAbs().maxCoeff();
  });
  sweep.run("nu8_equivariance", 1e-9, cfg.samples, [len](Rng& rng) {
    const SpinTriple t = random_spin7_word(rng, len);
    return check_nu8_equivariance(t, random_plane(8, rng));
  });
  return r;
}

inline SuiteReport verify_fiber4(const VerifyConfig& cfg) {
  SuiteReport r{"fiber4", {}};
  detail::Sweep sweep(r, cfg);
  sweep.run("diagram_p_zeta", 1e-9, cfg.samples, [](Rng& rng) {
    const Plane p = random_plane(4, rng);
    return proj_distance(zeta(p).first(), nu4(p));
  });
  sweep.run("zeta_basis_independent", 1e-9, cfg.samples, [](Rng& rng) {
    const Plane p = random_plane(4, rng);
    const double angle = 2.0 * std::numbers::pi * rng.uniform();
    const StiefelPair rotated = rotate_frame(StiefelPair(p), angle);
    const Plane swapped(rotated.y(), rotated.x());
    return std::max(class_distance(zeta(p), zeta(Plane(rotated.x(), rotated.y()))),
                    class_distance(zeta(p), zeta(swapped)));
  });
  sweep.run("xi4_surjective", 1e-9, cfg.samples, [](Rng& rng) {
    const Vector u = random_unit(2, rng).rep(), v = random_unit(2, rng).rep();
    const Eigen::Vector3d su = rng.uniform() < 0.5 ? Eigen::Vector3d(u) : Eigen::Vector3d(-u);
    const auto [a, b] = xi4(xi4_preimage(su, v));
    return std::max((a - su).norm(), (b - v).norm());
  });
  sweep.run("xi4_swap_antipodal", 1e-12, cfg.samples, [](Rng& rng) {
    const Plane p = random_plane(4, rng);
    const auto [u, v] = xi4(StiefelPair(p.x(), p.y()));
    const auto [su, sv] = xi4(StiefelPair(p.y(), p.x()));
    return std::max((su + u).norm(), (sv + v).norm());
  });
  return r;
}

inline SuiteReport verify_fiber8(const VerifyConfig& cfg) {
  SuiteReport r{"fiber8", {}};
  detail::Sweep sweep(r, cfg);
  sweep.run("diagram_nu8_xi8", 1e-9, cfg.samples, [](Rng& rng) {
    const Octonion u = random_pure_unit_octonion(rng);
    const QPoint q(random_unit_octonion(rng), u);
    return proj_distance(nu8(xi8(q)), ProjectivePoint(u.im()));
  });
  sweep.run("equivalence_sound", 1e-9, cfg.samples, [](Rng& rng) {
    const QPoint q(random_unit_octonion(rng), random_pure_unit_octonion(rng));
    const CircleElement w = CircleElement::at_angle(q.u(), 2.0 * std::numbers::pi * rng.uniform());
    const int sign = rng.uniform() < 0.5 ? 1 : -1;
    return plane_distance(xi8(q), xi8(q.moved(w, sign)));
  });
  // Unrelated representatives must land on different planes.
  sweep.run("equivalence_complete", 1e-6, cfg.samples, [](Rng& rng) {
    const QPoint a(random_unit_octonion(rng), random_pure_unit_octonion(rng));
    const QPoint b(random_unit_octonion(rng), random_pure_unit_octonion(rng));
    const QPoint c(random_unit_octonion(rng), a.u());  // same u, x' off the circle
    const double d = std::min(plane_distance(xi8(a), xi8(b)), plane_distance(xi8(a), xi8(c)));
    return d > 1e-6 ? 0.0 : 1.0;
  });
  sweep.run("xi8_round_trip", 1e-9, cfg.samples, [](Rng& rng) {
    const Plane p = random_plane(8, rng);
    return plane_distance(xi8(xi8_inverse(p)), p);
  });
  sweep.run("fiber_circle_criterion", 1e-9, cfg.samples, [](Rng& rng) {
    const Octonion u = random_pure_unit_octonion(rng);
    const Octonion x = random_unit_octonion(rng);
    const Octonion moved = CircleElement::at_angle(u, 2.0 * std::numbers::pi * rng.uniform()).value() * x;
    return std::abs(circle_criterion(x, moved, u) - 1.0);
  });
  return r;
}

inline SuiteReport verify_analysis(const VerifyConfig& cfg) {
  SuiteReport r{"analysis", {}};
  detail::Sweep sweep(r, cfg);
  const double rank_tol = cfg.threshold("rank", tolerances().rank);
  for (const char* id : {"nu4", "nu8"}) {
    const RankReport rep = submersion_report(map_by_id(id), cfg.samples, cfg.seed, rank_tol);
    sweep.value(std::string("rank_") + id, rep.min_ratio, rank_tol, true);
  }
  sweep.run("spectrum_orbit_nu4", 1e-8, cfg.samples, [](Rng& rng) {
    const GrassmannMap map = map_by_id("nu4");
    const Plane p = random_plane(4, rng);
    const Plane q = so4_apply(random_so4(rng), p);
    return (singular_values(differential_nu(map, p)) - singular_values(differential_nu(map, q))).norm();
  });
  sweep.run("spectrum_orbit_nu8", 1e-8, cfg.samples, [&cfg](Rng& rng) {
    const GrassmannMap map = map_by_id("nu8");
    const Plane p = random_plane(8, rng);
    const SpinTriple t = random_spin7_word(rng, std::max(cfg.word_len, 1));
    const Plane q = orthonormalize(t.g_plus() * p.x(), t.g_plus() * p.y());
    return (singular_values(differential_nu(map, p)) - singular_values(differential_nu(map, q))).norm();
  });
  return r;
}

inline SuiteReport verify_lscat(const VerifyConfig& cfg) {
  SuiteReport r{"lscat", {}};
  detail::Sweep sweep(r, cfg);
  double violations = 0;
  for (int n = 3; n <= 64; ++n) {
    const CatBoundsRow row = cat_bounds(n);
    if (row.lower > row.upper || row.upper > row.dim) ++violations;
    if ((row.cuplength == row.dim) != (n == (1 << row.s) + 1)) ++violations;
    if (row.best_k && *row.best_k < pi1_threshold(n)) ++violations;
  }
  sweep.value("bounds_consistent", violations, 0.0);

  const std::vector<std::tuple<int, int, int>> reported = {
      {7, 8, 8}, {8, 9, 9}, {12, 17, 18}, {14, 19, 22}, {15, 20, 23}, {16, 21, 24}};
  double mismatches = 0;
  for (const auto& [n, lo, hi] : reported) {
    const CatBoundsRow row = cat_bounds(n);
    if (row.lower != lo || row.upper != hi) ++mismatches;
  }
  sweep.value("bounds_table", mismatches, 0.0);
  return r;
}

inline SuiteReport verify_all(const VerifyConfig& cfg) {
  SuiteReport all{"verify", {}};
  for (const auto& suite : {verify_algebra(cfg), verify_geometry(cfg), verify_maps(cfg), verify_actions(cfg),
                            verify_fiber4(cfg), verify_fiber8(cfg), verify_analysis(cfg), verify_lscat(cfg)}) {
    all.append(suite);
  }
  return all;
}

}  // namespace grassmap
