#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>

#include "waveq/io.hpp"
#include "waveq/qubit.hpp"
#include "waveq/relations.hpp"
#include "waveq/signal.hpp"
#include "waveq/transform.hpp"
#include "waveq/wavelet.hpp"

namespace fixtures {

using namespace waveq;

struct MapFixture {
    TimeSeries<double> signal;
    FrequencyGrid<double> freq;
    ShiftGrid<double> times;
    WaveletMap<double> map;
    AnalyzingWavelet<double> wavelet;
};

inline MapFixture make_map_fixture(const TimeSeries<double>& signal, double lo, double hi, Index nw,
                                   Index stride) {
    MapFixture f;
    f.wavelet = AnalyzingWavelet<double>{};
    f.signal = signal;
    f.freq = FrequencyGrid<double>::log_band(lo, hi, nw);
    f.times = stride_grid(signal, stride);
    f.map = forward_cwt(f.signal, f.wavelet, f.freq, f.times);
    return f;
}

// Gaussian cosine burst (center 5, frequency 10, width 0.5) on 2048 samples
// over 10 s, analyzed on [2.5, 40] x 96 with stride 4.
inline const MapFixture& single_burst() {
    static const MapFixture fx =
        make_map_fixture(synth_burst(0.0, 0.0048828125, 2048, BurstSpec<double>{5.0, 10.0, 0.5, 1.0}), 2.5,
                         40.0, 96, 4);
    return fx;
}

inline TimeSeries<double> three_burst_signal(double shift) {
    TimeSeries<double> s =
        superpose(synth_burst(0.0, 0.005, 2000, BurstSpec<double>{3.0 + shift, 8.0, 0.6, 1.0}),
                  synth_burst(0.0, 0.005, 2000, BurstSpec<double>{3.0 + shift, 20.0, 0.3, 2.2}));
    return superpose(s, synth_burst(0.0, 0.005, 2000, BurstSpec<double>{7.0 + shift, 8.0, 0.6, 1.0}));
}

// Two bursts at t = 3 (frequencies 8 and 20) and one at t = 7 (frequency 8)
// on 2000 samples at dt = 0.005, analyzed on [2.5, 40] x 24 with stride 4.
inline const MapFixture& three_burst() {
    static const MapFixture fx = make_map_fixture(three_burst_signal(0.0), 2.5, 40.0, 24, 4);
    return fx;
}

// The same three bursts delayed by half a second.
inline const MapFixture& three_burst_shifted() {
    static const MapFixture fx = make_map_fixture(three_burst_signal(0.5), 2.5, 40.0, 24, 4);
    return fx;
}

// Coarse single burst: 256 samples over 10 s, [2.5, 40] x 24, stride 4.
inline const MapFixture& coarse_burst() {
    static const MapFixture fx = make_map_fixture(
        synth_burst(0.0, 10.0 / 256, 256, BurstSpec<double>{5.0, 10.0, 0.5, 1.0}), 2.5, 40.0, 24, 4);
    return fx;
}

inline const DualBasisFunction<double>& default_dual() {
    static const DualBasisFunction<double> dual = dual_function(AnalyzingWavelet<double>{});
    return dual;
}

// Wide analysis grids for kernel quadrature: [0.15, 110] x 128 over shifts
// -75.2 .. 85.2 at spacing 0.0125.
inline const FrequencyGrid<double>& kernel_freq() {
    static const FrequencyGrid<double> freq = FrequencyGrid<double>::log_band(0.15, 110.0, 128);
    return freq;
}

inline const ShiftGrid<double>& kernel_times() {
    static const ShiftGrid<double> times{-75.2, 0.0125, 12833};
    return times;
}

// Fresh scratch directory under the working directory.
inline std::string fresh_dir(const std::string& name) {
    namespace fs = std::filesystem;
    const fs::path dir = fs::path("waveq_test_tmp") / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir.string();
}

inline std::string slurp(const std::string& path) {
    std::ifstream ifs(path, std::ios::binary);
    std::ostringstream os;
    os << ifs.rdbuf();
    return os.str();
}

inline void spit(const std::string& path, const std::string& text) {
    std::ofstream ofs(path, std::ios::binary);
    ofs << text;
}

inline bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

// Runs fn, returns the message of the E it throws (empty if it does not throw E).
template <typename E, typename Fn>
inline std::string message_of(Fn&& fn) {
    try {
        std::forward<Fn>(fn)();
    } catch (const E& e) {
        return e.what();
    }
    return std::string();
}

} // namespace fixtures
