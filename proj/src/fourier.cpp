#include "cirlab/fourier.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>

namespace cirlab::fourier {

namespace {
// fftw plan creation/destruction mutates global planner state; execution of a
// private plan does not.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}
}  // namespace

void dft_inplace(std::vector<std::complex<double>>& data) {
    if (data.empty()) throw std::invalid_argument("dft_inplace: empty input");
    auto* buf = reinterpret_cast<fftw_complex*>(data.data());
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        plan = fftw_plan_dft_1d(static_cast<int>(data.size()), buf, buf, FFTW_FORWARD,
                                FFTW_ESTIMATE);
    }
    if (plan == nullptr) throw std::runtime_error("dft_inplace: fftw plan failed");
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(plan);
    }
}

}  // namespace cirlab::fourier
