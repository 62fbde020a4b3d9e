#pragma once

#include "qkt/common.hpp"

#include <cmath>

namespace qkt {

// One-sided periodogram: bins k = 0..floor(M/2), freqs in cycles per unit time,
// power = |DFT coefficient|^2 with no normalization factor.
struct Spectrum {
    RealVector freqs;
    RealVector power;
};

// Mean-removed, unwindowed DFT of a uniformly sampled real series.
inline Spectrum power_spectrum(const TimeSeries& series) {
    const size_t m = series.values.size();
    if (m < 4) {
        throw std::invalid_argument("power_spectrum: need at least 4 samples");
    }
    if (series.times.size() != m) {
        throw std::invalid_argument("power_spectrum: times/values length mismatch");
    }
    const double dt = (series.times.back() - series.times.front()) / double(m - 1);
    if (!(dt > 0.0)) {
        throw std::invalid_argument("power_spectrum: time grid must be increasing");
    }
    const double span = std::max(1.0, std::abs(series.times.back()));
    for (size_t i = 0; i < m; ++i) {
        if (std::abs(series.times[i] - (series.times.front() + double(i) * dt)) > 1e-9 * span) {
            throw std::invalid_argument("power_spectrum: non-uniform time grid");
        }
    }

    double mean = 0.0;
    for (double v : series.values) mean += v;
    mean /= double(m);

    const size_t n_bins = m / 2 + 1;
    Spectrum sp;
    sp.freqs.resize(Eigen::Index(n_bins));
    sp.power.resize(Eigen::Index(n_bins));
    for (size_t k = 0; k < n_bins; ++k) {
        cplx acc = 0.0;
        for (size_t n = 0; n < m; ++n) {
            acc += (series.values[n] - mean) *
                   std::polar(1.0, -2.0 * pi * double(k) * double(n) / double(m));
        }
        sp.freqs(Eigen::Index(k)) = double(k) / (double(m) * dt);
        sp.power(Eigen::Index(k)) = std::norm(acc);
    }
    return sp;
}

// Keep every stride-th sample starting from the first; used for kick-stroboscopic spectra.
inline TimeSeries stroboscopic(const TimeSeries& series, int stride) {
    if (stride < 1) {
        throw std::invalid_argument("stroboscopic: stride must be >= 1");
    }
    TimeSeries out;
    for (size_t i = 0; i < series.values.size(); i += size_t(stride)) {
        out.times.push_back(series.times[i]);
        out.values.push_back(series.values[i]);
    }
    return out;
}

}  // namespace qkt
