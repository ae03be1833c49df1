#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "reglab/error.hpp"
#include "reglab/unipoly.hpp"

namespace reglab::k3 {

using Rational = mpq_class;
using symbolic::UniPoly;

inline constexpr int kInfiniteOrder = std::numeric_limits<int>::max();

struct WeierstrassCurveQt {
  UniPoly a1, a2, a3, a4, a6;

  // "a1,a2,a3,a4,a6" as polynomials in t
  static WeierstrassCurveQt parse(const std::string& text);
  std::string str() const;
};

struct DiscriminantData {
  UniPoly delta, c4, c6;
  UniPoly b2, b4, b6, b8;
};

DiscriminantData discriminant(const WeierstrassCurveQt& c);

struct FiberData {
  std::string place;   // monic polynomial whose roots are the places, or "inf"
  int degree = 1;      // number of geometric fibers of this shape
  int v_c4 = 0, v_c6 = 0, v_delta = 0;
  std::string type;    // I0, In, II, III, IV, I0*, In*, IV*, III*, II*
  int components = 1;        // m_s
  int simple_components = 1; // m_s^(1)
  int euler = 0;
};

// Valuations of a minimal model; kInfiniteOrder stands for a vanishing invariant.
FiberData kodaira_type(int v_c4, int v_c6, int v_delta);
// Lowers (v4, v6, vΔ) by (4, 6, 12) until minimal.
void minimalize(int& v_c4, int& v_c6, int& v_delta);

// Singular fibers over ℚ̄ grouped by ℚ-places, t = ∞ last.
std::vector<FiberData> singular_fibers(const WeierstrassCurveQt& c);

int shioda_tate_rho(int mw_rank, const std::vector<FiberData>& fibers);
Rational transcendental_det(const std::vector<FiberData>& fibers, long torsion_order);

struct SchuettData {
  long d = 0;        // |det T|
  long d_K = 0;      // discriminant of ℚ(√−d)
  long level = 0;    // D
};

SchuettData schuett_level(long d);

// Order of (0, 0) in E(ℚ(t)) when a6 = 0, searched up to max_order; nullopt if not torsion within it.
std::optional<int> point_order_origin(const WeierstrassCurveQt& c, int max_order = 24);

struct SurfaceInvariants {
  DiscriminantData disc;
  std::vector<FiberData> fibers;
  int euler_number = 0;
  bool is_k3 = false;
  int mw_rank = 0;
  bool mw_rank_forced = false;  // deduced from ρ = 20 on a K3
  long torsion_order = 1;
  int rho = 0;
  Rational det_t;
  bool det_integral = false;
  std::optional<SchuettData> schuett;
  std::string schuett_error;
};

// mw_rank: given, or forced by ρ = 20 when the surface is K3 and none is given.
SurfaceInvariants analyze(const WeierstrassCurveQt& c, std::optional<int> mw_rank = std::nullopt,
                          std::optional<long> torsion_order = std::nullopt);

}  // namespace reglab::k3
