#pragma once

#include <utility>

#include "sheafcsp/structure.hpp"

namespace sheafcsp {

/// Interprets a CFI structure as a system of ℤ_q equations in at most three
/// variables and returns it as an instance (A, B) with B a ring structure on
/// ℤ_q. For adjacent elements a, b the variables w_{a,b} and z_{a,b} are the
/// triples (a, a, b) and (a, b, b); A is numbered with all w first, then all
/// z, each in (a, b) order.
///   1. w_{a,b} = w_{a,b'} and z_{a,b} = z_{a,b'} for b, b' in one gadget;
///   2. R_I, R_C and R_E_c tuples become the two-variable equations;
///   3. z are running totals of Σ w_{a,b} along the neighbour gadgets of a
///      in base order: w - z = 0 on the first, z' + w - z = 0 on later ones,
///      z = 0 on the last.
/// Throws InputError when the input lacks the CFI signature or its prec
/// relation is not a gadget preorder.
std::pair<Structure, Structure> phi_interpretation(const Structure& cfi, std::uint32_t q);

}  // namespace sheafcsp
