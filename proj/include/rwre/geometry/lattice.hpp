#pragma once

#include <rwre/geometry/regions.hpp>

#include <cstdint>
#include <optional>
#include <vector>

namespace rwre::geom {

/// The floor-of-linear-combination anchor set: points floor(sum_k j_k l_k)
/// with j_1 in spacing_l * Z and j_2..j_d in spacing_t * Z (floors taken
/// coordinatewise). Spacings are reals; the parallelogram lattice genuinely
/// uses a non-integer transverse spacing.
class AnchorLattice {
 public:
  AnchorLattice(DirectionFrame frame, double spacing_l, double spacing_t);

  const DirectionFrame& frame() const { return frame_; }
  double spacing_l() const { return spacing_l_; }
  double spacing_t() const { return spacing_t_; }

  /// Anchor point for the integer index tuple (m_1, ..., m_d).
  Site point(const Site& index) const;

  /// All (index, point) pairs whose point lies in the window.
  struct Anchor {
    Site index;
    Site point;
  };
  std::vector<Anchor> anchors_in_window(const LatticeWindow& window,
                                        std::uint64_t cap = 1u << 22) const;

 private:
  DirectionFrame frame_;
  double spacing_l_;
  double spacing_t_;
};

/// Exact lattice intersection test for two boxes sharing a frame. A
/// frame-coordinate interval separation proves emptiness outright; otherwise
/// the (small) candidate window is scanned. Scans beyond `scan_cap` report
/// the conservative answer `true`.
bool boxes_intersect(const Box& a, const Box& b, std::uint64_t scan_cap = 1u << 22);

/// The scale-k box family: boxes anchored on the lattice with spacings
/// (N_{k-1} - 2, 2 * frontal_width - 2). With conforming widths this is the
/// family whose middle frontal parts cover the whole lattice.
class BoxFamily {
 public:
  BoxFamily(DirectionFrame frame, ScaleSchedule schedule, int level,
            BoxOverrides overrides = {});

  /// Same family but anchored on an explicit lattice (used to demonstrate
  /// cover-property failure under corrupted spacings).
  static BoxFamily with_lattice(DirectionFrame frame, ScaleSchedule schedule, int level,
                                BoxOverrides overrides, AnchorLattice lattice);

  int level() const { return level_; }
  const DirectionFrame& frame() const { return frame_; }
  const ScaleSchedule& schedule() const { return schedule_; }
  const AnchorLattice& lattice() const { return lattice_; }
  const BoxOverrides& overrides() const { return overrides_; }

  Box box_at(const Site& anchor) const;

  /// Anchors y of the family with x in Btilde(y, k), sorted lexicographically.
  std::vector<Site> covering_anchors(const Site& x) const;

  /// Deterministic box assignment: the lexicographically smallest covering
  /// anchor. Throws std::runtime_error when no anchor covers x (geometry
  /// misconfiguration; cannot happen for conforming N0 in 6Z).
  Site assign(const Site& x) const;

  /// Anchors whose box intersects `target` (exact lattice intersection).
  std::vector<Site> anchors_intersecting(const Box& target, std::uint64_t cap = 100000) const;

 private:
  BoxFamily(DirectionFrame frame, ScaleSchedule schedule, int level, BoxOverrides overrides,
            AnchorLattice lattice);

  DirectionFrame frame_;
  ScaleSchedule schedule_;
  int level_;
  BoxOverrides overrides_;
  AnchorLattice lattice_;
  double nk_, nkm1_, frontal_width_;
};

struct CoverReport {
  bool covered = true;
  std::vector<Site> witnesses;  // uncovered points (capped)
  std::uint64_t checked = 0;
};

/// Exhaustively verifies that the middle frontal parts of the family cover
/// every point of the window.
CoverReport cover_check(const BoxFamily& family, const LatticeWindow& window,
                        std::size_t witness_cap = 16);

/// Parallelogram anchor set at scale n (n >= 3): spacing_l = n and
/// spacing_t = n^3 lnln n / ln n.
AnchorLattice parallelogram_lattice(std::int64_t n, const DirectionFrame& frame);

/// 5^d colouring of the window's parallelogram anchors by the residues mod 5
/// of their index coordinates; parallelograms within one class are pairwise
/// disjoint, verified exhaustively. Throws std::runtime_error when the
/// residue construction fails for the given n.
struct ColoringPartition {
  std::int64_t n = 0;
  int d = 0;
  std::vector<std::vector<Site>> classes;        // 5^d anchor-point lists
  std::vector<std::vector<Site>> class_indices;  // matching index tuples
  std::uint64_t anchors_total = 0;
  bool verified = false;
};

ColoringPartition color_classes(std::int64_t n, const DirectionFrame& frame,
                                const LatticeWindow& window);

}  // namespace rwre::geom
