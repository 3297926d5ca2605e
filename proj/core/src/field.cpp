#include "nsbl/field.hpp"

#include <fftw3.h>

#include <cstring>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace nsbl {

namespace {

// FFTW planning is not thread safe; execution on private buffers is. Each
// thread keeps its own plans + scratch per grid size, so transforms can run
// concurrently without locking. FFTW_ESTIMATE keeps plan selection (and
// therefore roundoff) reproducible across runs.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct FftEngine {
    int n = 0;
    double* rbuf = nullptr;
    fftw_complex* cbuf = nullptr;
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;

    explicit FftEngine(int n_) : n(n_) {
        std::lock_guard<std::mutex> lock(planner_mutex());
        rbuf = fftw_alloc_real(static_cast<std::size_t>(n) * n * n);
        cbuf = fftw_alloc_complex(static_cast<std::size_t>(n) * n * (n / 2 + 1));
        if (!rbuf || !cbuf) throw std::bad_alloc();
        fwd = fftw_plan_dft_r2c_3d(n, n, n, rbuf, cbuf, FFTW_ESTIMATE);
        bwd = fftw_plan_dft_c2r_3d(n, n, n, cbuf, rbuf, FFTW_ESTIMATE);
        if (!fwd || !bwd) throw std::runtime_error("FftEngine: plan creation failed");
    }
    ~FftEngine() {
        std::lock_guard<std::mutex> lock(planner_mutex());
        if (fwd) fftw_destroy_plan(fwd);
        if (bwd) fftw_destroy_plan(bwd);
        fftw_free(rbuf);
        fftw_free(cbuf);
    }
    FftEngine(const FftEngine&) = delete;
    FftEngine& operator=(const FftEngine&) = delete;
};

FftEngine& engine_for(int n) {
    thread_local std::unordered_map<int, std::unique_ptr<FftEngine>> cache;
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, std::make_unique<FftEngine>(n)).first;
    return *it->second;
}

}  // namespace

ScalarField ScalarField::physical(const GridSpec& g, std::vector<double> samples) {
    g.validate();
    if (samples.size() != g.num_points())
        throw std::invalid_argument("ScalarField::physical: sample count mismatch");
    ScalarField f;
    f.grid_ = g;
    f.rep_ = Rep::physical;
    f.phys_ = std::move(samples);
    return f;
}

ScalarField ScalarField::spectral(const GridSpec& g, std::vector<cplx> coefs) {
    g.validate();
    if (coefs.size() != g.num_modes())
        throw std::invalid_argument("ScalarField::spectral: coefficient count mismatch");
    ScalarField f;
    f.grid_ = g;
    f.rep_ = Rep::spectral;
    f.spec_ = std::move(coefs);
    return f;
}

ScalarField ScalarField::zero(const GridSpec& g, Rep rep) {
    if (rep == Rep::physical) return physical(g, std::vector<double>(g.num_points(), 0.0));
    return spectral(g, std::vector<cplx>(g.num_modes(), cplx{0.0, 0.0}));
}

const std::vector<double>& ScalarField::samples() const {
    if (rep_ != Rep::physical) throw std::logic_error("ScalarField: not in physical representation");
    return phys_;
}

const std::vector<cplx>& ScalarField::coefs() const {
    if (rep_ != Rep::spectral) throw std::logic_error("ScalarField: not in spectral representation");
    return spec_;
}

std::vector<double>& ScalarField::mutable_samples() {
    if (rep_ != Rep::physical) throw std::logic_error("ScalarField: not in physical representation");
    return phys_;
}

std::vector<cplx>& ScalarField::mutable_coefs() {
    if (rep_ != Rep::spectral) throw std::logic_error("ScalarField: not in spectral representation");
    return spec_;
}

VectorField::VectorField(std::array<ScalarField, 3> comps) : comp_(std::move(comps)) {
    for (int i = 1; i < 3; ++i) {
        if (comp_[i].grid() != comp_[0].grid() || comp_[i].rep() != comp_[0].rep())
            throw std::invalid_argument("VectorField: components disagree on grid or representation");
    }
}

VectorField VectorField::zero(const GridSpec& g, Rep rep) {
    return VectorField({ScalarField::zero(g, rep), ScalarField::zero(g, rep), ScalarField::zero(g, rep)});
}

ScalarField to_spectral(const ScalarField& f) {
    if (f.rep() == Rep::spectral) return f;
    const GridSpec& g = f.grid();
    FftEngine& e = engine_for(g.n);
    std::memcpy(e.rbuf, f.samples().data(), g.num_points() * sizeof(double));
    fftw_execute(e.fwd);
    std::vector<cplx> out(g.num_modes());
    const double scale = 1.0 / static_cast<double>(g.num_points());
    const double* src = reinterpret_cast<const double*>(e.cbuf);
    for (std::size_t s = 0; s < out.size(); ++s)
        out[s] = cplx{src[2 * s] * scale, src[2 * s + 1] * scale};
    return ScalarField::spectral(g, std::move(out));
}

ScalarField to_physical(const ScalarField& f) {
    if (f.rep() == Rep::physical) return f;
    const GridSpec& g = f.grid();
    FftEngine& e = engine_for(g.n);
    std::memcpy(e.cbuf, f.coefs().data(), g.num_modes() * sizeof(cplx));
    fftw_execute(e.bwd);
    std::vector<double> out(g.num_points());
    std::memcpy(out.data(), e.rbuf, out.size() * sizeof(double));
    return ScalarField::physical(g, std::move(out));
}

VectorField to_spectral(const VectorField& f) {
    return VectorField({to_spectral(f[0]), to_spectral(f[1]), to_spectral(f[2])});
}

VectorField to_physical(const VectorField& f) {
    return VectorField({to_physical(f[0]), to_physical(f[1]), to_physical(f[2])});
}

}  // namespace nsbl
