#pragma once

#include <cstdint>
#include <vector>

#include "sheafcsp/affine.hpp"
#include "sheafcsp/graph.hpp"
#include "sheafcsp/structure.hpp"

namespace sheafcsp {

struct CfiSpec {
  OrderedGraph base;
  std::uint32_t q = 2;
  std::vector<std::uint32_t> twist;  // per edge of base, in edge order, reduced mod q

  /// Throws InputError on q < 2, a twist table of the wrong length or an
  /// unreduced value, or an isolated base vertex.
  void validate() const;
  std::uint32_t twist_total() const;
};

/// Gadget layout shared by the structure and its equation system. Element
/// ids run through the gadgets in vertex order; inside a gadget the
/// zero-sum tables over the sorted neighbourhood appear in lexicographic
/// order (first neighbour most significant).
struct CfiLayout {
  std::vector<std::size_t> gadget_start;          // per vertex, plus total
  std::vector<Vertex> gadget_of;                  // per element
  std::vector<std::vector<std::uint32_t>> table;  // per element, parallel to neighbours

  std::size_t size() const { return gadget_of.size(); }
  /// a(v) for element a in the gadget of a neighbour-having vertex u.
  std::uint32_t value(const OrderedGraph& g, Element a, Vertex v) const;
};

CfiLayout cfi_layout(const CfiSpec& spec);

/// Symbol names, in signature order: prec, R_I, R_C, R_E_0 .. R_E_{q-1}.
std::vector<Symbol> cfi_signature(std::uint32_t q);

/// CFI_q(G, g): gadgets A_x of zero-sum vectors over N(x); prec relates
/// A_x × A_y for x < y; for each edge, in both orientations, R_I (resp. R_C)
/// holds (a, b, c) with a, b ∈ A_x, c ∈ A_y and a(y) = b(y) (resp.
/// a(y) = b(y) + 1); R_E_c holds (a, b) and (b, a) for a ∈ A_x, b ∈ A_y with
/// a(y) + b(x) = c + g(xy).
Structure cfi_structure(const CfiSpec& spec);

/// The system over variables w_{a,v} (element a, neighbour v of its vertex;
/// numbered by element, then neighbour position) with the four families:
/// X: Σ_v w_{a,v} = 0; I: w_{a,v} - w_{b,v} = 0 for a < b agreeing at v;
/// C: w_{a,v} - w_{b,v} = 1 when a(v) = b(v) + 1; E: w_{a,v} + w_{b,u} = c
/// for a ∈ A_u, b ∈ A_v, u < v, with (a, b) ∈ R_E_c.
AffineSystem cfi_equations(const CfiSpec& spec);

}  // namespace sheafcsp
