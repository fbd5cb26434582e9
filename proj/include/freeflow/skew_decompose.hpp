#pragma once

#include <span>
#include <vector>

#include "freeflow/decompose.hpp"
#include "freeflow/graph.hpp"
#include "freeflow/multiflow.hpp"

namespace freeflow {

/// Rounds a half-integer flow g, given as doubled = 2g, to an integer flow h
/// with h + mate(h) = g + mate(g) and div h = div g, by cancelling half-units
/// around circuits of the fractional arcs. Throws InvalidInput naming the
/// offending arc or node when g is not half-integral in the required sense.
ArcFlow integerize_half_flow(const SkewNetwork& n, std::span<const Cap> doubled);

/// Splits a symmetric flow with even divergences as f = g + mate(g) with
/// div g = div f / 2.
ArcFlow halve_even_flow(const SkewNetwork& n, std::span<const Cap> f);

/// f = sum_i (f_ii + mate(f_ii)) + sum_{i<j} (f_ij + mate(f_ij)), where
/// f_ij runs from terminal i to the mate of terminal j.
struct SymmetricPairDecomposition {
  /// f_ii, one per terminal.
  std::vector<ArcFlow> diagonal;
  /// f_ij for i < j.
  IsMultiflow off_diagonal;
};

SymmetricPairDecomposition decompose_symmetric_pairs(const SkewNetwork& n, std::span<const Cap> f,
                                                     const DecomposeOptions& options = {});

struct SymmetricPath {
  WeightedPath path;
  /// Mate of `path`, traversed in its own direction.
  WeightedPath mate;
};

/// f = sum weight * (chi(P) + chi(mate P)). Requires even divergences.
std::vector<SymmetricPath> symmetric_path_decompose(const SkewNetwork& n, std::span<const Cap> f);

/// Mate of a path or circuit.
WeightedPath mate_path(const SkewNetwork& n, const WeightedPath& p);

}  // namespace freeflow
