#include "qmlab/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>

namespace qmlab {
namespace {

std::mutex g_plan_mutex;
std::map<std::tuple<int, int, int>, fftw_plan> g_plans;

fftw_plan plan_for(const GridSpec& grid, int sign) {
    std::lock_guard<std::mutex> lock(g_plan_mutex);
    auto key = std::make_tuple(grid.dim, grid.n, sign);
    auto it = g_plans.find(key);
    if (it != g_plans.end()) return it->second;

    std::vector<cdouble> scratch(grid.size());
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    int dims[3] = {grid.n, grid.n, grid.n};
    // FFTW_ESTIMATE keeps planning deterministic; FFTW_UNALIGNED lets the
    // plan run on any caller-owned buffer via the new-array interface.
    fftw_plan p = fftw_plan_dft(grid.dim, dims, buf, buf, sign,
                                FFTW_ESTIMATE | FFTW_UNALIGNED);
    g_plans.emplace(key, p);
    return p;
}

void execute(const GridSpec& grid, std::vector<cdouble>& data, int sign) {
    if (data.size() != grid.size()) throw GridMismatchError("fft: data size mismatch");
    fftw_plan p = plan_for(grid, sign);
    auto* buf = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(p, buf, buf);
}

}  // namespace

void fft_forward(const GridSpec& grid, std::vector<cdouble>& data) {
    execute(grid, data, FFTW_FORWARD);
}

void fft_backward(const GridSpec& grid, std::vector<cdouble>& data) {
    execute(grid, data, FFTW_BACKWARD);
}

void fft_backward_normalized(const GridSpec& grid, std::vector<cdouble>& data) {
    execute(grid, data, FFTW_BACKWARD);
    const double scale = 1.0 / static_cast<double>(grid.size());
    for (auto& v : data) v *= scale;
}

}  // namespace qmlab
