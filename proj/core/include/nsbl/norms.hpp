#pragma once

#include <limits>
#include <map>
#include <span>
#include <vector>

#include "nsbl/field.hpp"

namespace nsbl {

inline constexpr double kInfExponent = std::numeric_limits<double>::infinity();

// All norms follow the component-sum convention:
//   ||u||_Lq   = ( sum_i  integral |u_i|^q dx )^(1/q)
//   ||u||_inf  = sup over components and points of |u_i|
//   ||D^n u||_Lq sums over all n-letter derivative index strings j1..jn and
//   components; the sup variant takes the max over strings instead.
// Every constant recorded by the toolkit is tied to this convention; do not
// swap in the pointwise-Euclidean variant.
double lq_norm(const ScalarField& f, double q);
double lq_norm(const VectorField& f, double q);

// Derivative norms, order >= 1. Derivatives are formed spectrally and the
// quadrature runs in physical space (uniform cell weights).
double dn_lq_norm(const ScalarField& f, int order, double q);
double dn_lq_norm(const VectorField& f, int order, double q);

// (u,v) = sum_j integral u_j v_j dx
double inner_product(const VectorField& f, const VectorField& g);
double inner_product(const ScalarField& f, const ScalarField& g);

struct NormKey {
    int order;
    double q;
    bool operator<(const NormKey& o) const {
        if (order != o.order) return order < o.order;
        return q < o.q;
    }
};

class NormTable {
public:
    void set(int order, double q, double value);
    double get(int order, double q) const;  // throws if absent
    bool has(int order, double q) const;
    const std::map<NormKey, double>& entries() const { return map_; }

private:
    std::map<NormKey, double> map_;
};

// Applies lq_norm / dn_lq_norm over the requested (order, exponent) lattice.
// Derivative fields are materialized once per index multiset and shared by
// all exponents.
NormTable norm_table(const VectorField& f, std::span<const int> orders,
                     std::span<const double> exponents);

}  // namespace nsbl
