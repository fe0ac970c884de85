#pragma once

// Brute-force reference computations. Nothing here calls into the normic
// implementation; inputs and outputs are plain integers and vectors.

#include <cstdint>
#include <vector>

namespace normic::oracle {

using Orders = std::vector<std::int64_t>;
using Tuple = std::vector<std::int64_t>;

/// All tuples of Z/r_1 x ... x Z/r_m in mixed-radix order.
std::vector<Tuple> all_tuples(const Orders& orders);

/// Invariant factors (ascending, each > 1) of M / C, where M is a finite subgroup of
/// Z/r_1 x ... x Z/r_m listed element by element and C a subgroup of M. Derived
/// purely from counts #{x in M : k x in C}.
Orders quotient_invariants(const Orders& orders, const std::vector<Tuple>& M, const std::vector<Tuple>& C);

Orders group_invariants(const Orders& orders);

/// Cyclic subgroup generated by g, by repeated addition.
std::vector<Tuple> cyclic_span(const Orders& orders, const Tuple& g);

struct BrauerOracle {
    Orders membership;
    Orders quotient;
    std::int64_t kernel_order = 0;
    std::int64_t membership_order = 0;
};

/// {(n_i) in + Z/r_i : n | sum d_i n_i} / <(1,...,1)> by enumeration.
BrauerOracle brauer_quotient(std::int64_t n, const Orders& d, const Orders& r);

/// Quadratic Hilbert symbol (a,b)_p for odd p: +1 or -1, decided by searching
/// for a primitive zero of z^2 - a y^2 - b w^2 modulo p^3 with a Hensel-admissible gradient.
int hilbert_symbol(std::int64_t a, std::int64_t b, std::int64_t p);

/// Number of subgroups, by testing every subset for closure (|G| <= 12).
std::int64_t count_subgroups_by_subsets(const Orders& orders);

/// Smallest proper monic integer factor of a monic integer polynomial (low-first
/// coefficients) found by exhaustive search within the Cauchy root bound; empty
/// when the polynomial is irreducible over Q.
std::vector<std::int64_t> find_monic_factor(const std::vector<std::int64_t>& coeffs);

/// Irreducibility over F_p by trial division with every monic polynomial of
/// degree 1..deg/2 (low-first coefficients, deg >= 1).
bool fp_is_irreducible(const std::vector<std::int64_t>& coeffs, std::int64_t p);

/// Product of low-first coefficient vectors mod p, trailing zeros stripped.
std::vector<std::int64_t> fp_multiply(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b, std::int64_t p);

/// #{(c, y_0..y_m) in F_q^{m+2} : eps_i y_i^{r_i} = f_i(c)} by full enumeration.
std::int64_t affine_points(std::int64_t q, const std::vector<std::vector<std::int64_t>>& f,
                           const std::vector<std::int64_t>& r, const std::vector<std::int64_t>& eps);

}  // namespace normic::oracle
