#include "nsbl/norms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nsbl/field_ops.hpp"
#include "nsbl/reduce.hpp"

namespace nsbl {

namespace {

// The diagnostic exponent set gets branch-free powers; anything else falls
// back to std::pow.
enum class FastQ { q1, q15, q2, q3, q4, q6, general };

FastQ classify(double q) {
    if (q == 1.0) return FastQ::q1;
    if (q == 1.5) return FastQ::q15;
    if (q == 2.0) return FastQ::q2;
    if (q == 3.0) return FastQ::q3;
    if (q == 4.0) return FastQ::q4;
    if (q == 6.0) return FastQ::q6;
    return FastQ::general;
}

inline double abs_pow(double v, FastQ f, double q) {
    const double a = std::fabs(v);
    const double a2 = v * v;
    switch (f) {
        case FastQ::q1: return a;
        case FastQ::q15: return a * std::sqrt(a);
        case FastQ::q2: return a2;
        case FastQ::q3: return a2 * a;
        case FastQ::q4: return a2 * a2;
        case FastQ::q6: return a2 * a2 * a2;
        default: return std::pow(a, q);
    }
}

// Chunked pairwise accumulation of |v|^q for several exponents in one pass.
// Chunk layout is fixed, so the result does not depend on threading.
constexpr std::size_t kChunk = 256;

struct PowerSums {
    std::vector<double> sums;  // one per finite exponent
    double max_abs = 0.0;
};

PowerSums power_sums(std::span<const double> v, std::span<const double> finite_q) {
    const std::size_t nchunks = (v.size() + kChunk - 1) / kChunk;
    std::vector<FastQ> cls(finite_q.size());
    for (std::size_t j = 0; j < finite_q.size(); ++j) cls[j] = classify(finite_q[j]);

    std::vector<double> partials(nchunks * finite_q.size(), 0.0);
    double max_abs = 0.0;
    for (std::size_t c = 0; c < nchunks; ++c) {
        const std::size_t lo = c * kChunk;
        const std::size_t hi = std::min(v.size(), lo + kChunk);
        for (std::size_t i = lo; i < hi; ++i) {
            const double x = v[i];
            max_abs = std::max(max_abs, std::fabs(x));
            for (std::size_t j = 0; j < finite_q.size(); ++j)
                partials[c * finite_q.size() + j] += abs_pow(x, cls[j], finite_q[j]);
        }
    }
    PowerSums out;
    out.max_abs = max_abs;
    out.sums.resize(finite_q.size());
    for (std::size_t j = 0; j < finite_q.size(); ++j)
        out.sums[j] = pairwise_sum(nchunks, [&](std::size_t c) { return partials[c * finite_q.size() + j]; });
    return out;
}

void check_exponent(double q) {
    if (!(q >= 1.0)) throw std::invalid_argument("lq_norm: exponent must satisfy q >= 1");
}

// Derivative index multisets (a,b,c), a+b+c = order, with string multiplicity
// order!/(a! b! c!). Strings sharing a multiset produce identical derivative
// fields, so the Lq sum over all 3^order strings reduces to a weighted sum.
struct Multiset {
    int a, b, c;
    double multiplicity;
};

std::vector<Multiset> multisets(int order) {
    auto factorial = [](int k) {
        double f = 1.0;
        for (int i = 2; i <= k; ++i) f *= i;
        return f;
    };
    std::vector<Multiset> out;
    for (int a = 0; a <= order; ++a)
        for (int b = 0; b + a <= order; ++b) {
            const int c = order - a - b;
            out.push_back({a, b, c, factorial(order) / (factorial(a) * factorial(b) * factorial(c))});
        }
    return out;
}

// D1^a D2^b D3^c applied spectrally: multiplier i^order kx^a ky^b kz^c with
// Nyquist indices zeroed on every differentiated axis.
ScalarField derivative_multiset(const ScalarField& fs, int a, int b, int c) {
    const GridSpec& g = fs.grid();
    const double dk = g.dk();
    const int nyq = g.n / 2;
    const int order = a + b + c;
    std::vector<cplx> out(g.num_modes());
    const auto& in = fs.coefs();
    const cplx iphase = (order % 4 == 0)   ? cplx{1.0, 0.0}
                        : (order % 4 == 1) ? cplx{0.0, 1.0}
                        : (order % 4 == 2) ? cplx{-1.0, 0.0}
                                           : cplx{0.0, -1.0};
    for_each_mode(g, [&](std::size_t s, int mx, int my, int mz) {
        if ((a > 0 && mx == nyq) || (b > 0 && std::abs(my) == nyq) || (c > 0 && std::abs(mz) == nyq)) {
            out[s] = cplx{0.0, 0.0};
            return;
        }
        double amp = 1.0;
        for (int i = 0; i < a; ++i) amp *= dk * mx;
        for (int i = 0; i < b; ++i) amp *= dk * my;
        for (int i = 0; i < c; ++i) amp *= dk * mz;
        out[s] = iphase * amp * in[s];
    });
    return ScalarField::spectral(g, std::move(out));
}

struct TableRequest {
    std::vector<double> finite_q;
    bool want_inf = false;
};

TableRequest split_exponents(std::span<const double> exponents) {
    TableRequest r;
    for (double q : exponents) {
        check_exponent(q);
        if (std::isinf(q)) r.want_inf = true;
        else r.finite_q.push_back(q);
    }
    return r;
}

// Shared core: weighted Lq sums over derivative-multiset fields of the given
// components.
void table_for_order(const GridSpec& g, std::span<const ScalarField> spectral_comps, int order,
                     const TableRequest& req, NormTable& out) {
    struct Piece {
        PowerSums sums;
        double weight;
    };
    std::vector<Piece> pieces;

    auto add_field = [&](const ScalarField& phys, double weight) {
        pieces.push_back({power_sums(phys.samples(), req.finite_q), weight});
    };

    if (order == 0) {
        for (const ScalarField& c : spectral_comps) add_field(to_physical(c), 1.0);
    } else {
        for (const Multiset& m : multisets(order))
            for (const ScalarField& c : spectral_comps)
                add_field(to_physical(derivative_multiset(c, m.a, m.b, m.c)), m.multiplicity);
    }

    const double vol = g.cell_volume();
    for (std::size_t j = 0; j < req.finite_q.size(); ++j) {
        const double q = req.finite_q[j];
        const double total =
            pairwise_sum(pieces.size(), [&](std::size_t p) { return pieces[p].weight * pieces[p].sums[j]; });
        out.set(order, q, std::pow(vol * total, 1.0 / q));
    }
    if (req.want_inf) {
        double m = 0.0;
        for (const Piece& p : pieces) m = std::max(m, p.sums.max_abs);
        out.set(order, kInfExponent, m);
    }
}

}  // namespace

double lq_norm(const ScalarField& f, double q) {
    check_exponent(q);
    const ScalarField fp = to_physical(f);
    TableRequest req = split_exponents(std::span<const double>(&q, 1));
    PowerSums ps = power_sums(fp.samples(), req.finite_q);
    if (req.want_inf) return ps.max_abs;
    return std::pow(f.grid().cell_volume() * ps.sums[0], 1.0 / q);
}

double lq_norm(const VectorField& f, double q) {
    check_exponent(q);
    if (std::isinf(q)) {
        double m = 0.0;
        for (int c = 0; c < 3; ++c) m = std::max(m, lq_norm(f[c], q));
        return m;
    }
    double sum = 0.0;
    const double vol = f.grid().cell_volume();
    TableRequest req;
    req.finite_q = {q};
    for (int c = 0; c < 3; ++c) sum += power_sums(to_physical(f[c]).samples(), req.finite_q).sums[0];
    return std::pow(vol * sum, 1.0 / q);
}

double dn_lq_norm(const ScalarField& f, int order, double q) {
    if (order < 1) throw std::invalid_argument("dn_lq_norm: order must be >= 1");
    check_exponent(q);
    const ScalarField fs = to_spectral(f);
    NormTable t;
    TableRequest req = split_exponents(std::span<const double>(&q, 1));
    table_for_order(f.grid(), std::span<const ScalarField>(&fs, 1), order, req, t);
    return t.get(order, q);
}

double dn_lq_norm(const VectorField& f, int order, double q) {
    if (order < 1) throw std::invalid_argument("dn_lq_norm: order must be >= 1");
    check_exponent(q);
    const VectorField fs = to_spectral(f);
    std::array<ScalarField, 3> comps = {fs[0], fs[1], fs[2]};
    NormTable t;
    TableRequest req = split_exponents(std::span<const double>(&q, 1));
    table_for_order(f.grid(), std::span<const ScalarField>(comps.data(), 3), order, req, t);
    return t.get(order, q);
}

double inner_product(const ScalarField& f, const ScalarField& g) {
    if (f.grid() != g.grid()) throw std::invalid_argument("inner_product: grid mismatch");
    const ScalarField fp = to_physical(f);
    const ScalarField gp = to_physical(g);
    const auto& a = fp.samples();
    const auto& b = gp.samples();
    return f.grid().cell_volume() * pairwise_sum(a.size(), [&](std::size_t i) { return a[i] * b[i]; });
}

double inner_product(const VectorField& f, const VectorField& g) {
    if (f.grid() != g.grid()) throw std::invalid_argument("inner_product: grid mismatch");
    double s = 0.0;
    for (int c = 0; c < 3; ++c) s += inner_product(f[c], g[c]);
    return s;
}

void NormTable::set(int order, double q, double value) { map_[NormKey{order, q}] = value; }

double NormTable::get(int order, double q) const {
    auto it = map_.find(NormKey{order, q});
    if (it == map_.end()) throw std::out_of_range("NormTable: entry not present");
    return it->second;
}

bool NormTable::has(int order, double q) const { return map_.count(NormKey{order, q}) > 0; }

NormTable norm_table(const VectorField& f, std::span<const int> orders,
                     std::span<const double> exponents) {
    const VectorField fs = to_spectral(f);
    std::array<ScalarField, 3> comps = {fs[0], fs[1], fs[2]};
    TableRequest req = split_exponents(exponents);
    NormTable t;
    for (int order : orders) {
        if (order < 0) throw std::invalid_argument("norm_table: order must be >= 0");
        table_for_order(f.grid(), std::span<const ScalarField>(comps.data(), 3), order, req, t);
    }
    return t;
}

}  // namespace nsbl
