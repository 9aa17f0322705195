#include "cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "waveq/io.hpp"
#include "waveq/qubit.hpp"
#include "waveq/relations.hpp"
#include "waveq/signal.hpp"
#include "waveq/transform.hpp"
#include "waveq/wavelet.hpp"

namespace waveq::cli {
namespace {

namespace fs = std::filesystem;

struct RunConfig {
    std::string wavelet = "mexican-hat";
    double omega_min = 2.5;
    double omega_max = 40.0;
    long omega_count = 96;
    long stride = 4;
    double xi_min = 1e-4;
    double xi_max = 16.0;
    long xi_n = 4096;
    double tol_bell = 1e-10;
    double tol_sep = 1e-10;
    std::string out_dir = ".";

    void validate() const {
        if (!(omega_min > 0))
            throw UsageError("usage error: --omega-min must be positive");
        if (!(omega_max > omega_min))
            throw UsageError("usage error: --omega-max must exceed --omega-min");
        if (omega_count < 8)
            throw UsageError("usage error: --omega-count must be at least 8");
        if (stride < 1)
            throw UsageError("usage error: --stride must be at least 1");
    }

    WaveletKind kind() const { return wavelet_kind_from_name(wavelet); }
    FrequencyGrid<double> band() const {
        return FrequencyGrid<double>::log_band(omega_min, omega_max, omega_count);
    }
    QuadratureSpec<double> quadrature() const { return {xi_min, xi_max, static_cast<Index>(xi_n)}; }
};

// Output paths land in the run directory unless given as absolute.
std::string in_out_dir(const RunConfig& cfg, const std::string& name) {
    fs::path p(name);
    if (p.is_absolute())
        return name;
    return (fs::path(cfg.out_dir) / p).string();
}

void write_run_meta(const RunConfig& cfg) {
    std::ostringstream os;
    os << "wavelet = " << cfg.wavelet << "\n"
       << "omega-min = " << fmt17(cfg.omega_min) << "\n"
       << "omega-max = " << fmt17(cfg.omega_max) << "\n"
       << "omega-count = " << cfg.omega_count << "\n"
       << "stride = " << cfg.stride << "\n"
       << "xi-min = " << fmt17(cfg.xi_min) << "\n"
       << "xi-max = " << fmt17(cfg.xi_max) << "\n"
       << "xi-n = " << cfg.xi_n << "\n"
       << "tol-bell = " << fmt17(cfg.tol_bell) << "\n"
       << "tol-sep = " << fmt17(cfg.tol_sep) << "\n"
       << "out-dir = " << cfg.out_dir << "\n";
    detail::write_text(in_out_dir(cfg, "run.meta"), os.str());
}

double parse_double_or_usage(const std::string& text, const std::string& what) {
    double v = 0;
    if (!detail::parse_double(text, v))
        throw UsageError("usage error: " + what + " '" + text + "' is not a number");
    return v;
}

long parse_long_or_usage(const std::string& text, const std::string& what) {
    const std::string t = detail::trim(text);
    if (t.empty())
        throw UsageError("usage error: " + what + " is empty");
    char* end = nullptr;
    errno = 0;
    const long v = std::strtol(t.c_str(), &end, 10);
    if (end != t.c_str() + t.size() || errno == ERANGE)
        throw UsageError("usage error: " + what + " '" + text + "' is not an integer");
    return v;
}

BurstSpec<double> parse_burst(const std::string& text) {
    BurstSpec<double> spec;
    bool has_center = false;
    bool has_freq = false;
    bool has_width = false;
    bool has_amp = false;
    for (const std::string& field : detail::split_fields(text)) {
        const std::size_t eq = field.find('=');
        if (eq == std::string::npos)
            throw UsageError("usage error: burst field '" + detail::trim(field) + "' is not key=value");
        const std::string key = detail::trim(field.substr(0, eq));
        const double value = parse_double_or_usage(field.substr(eq + 1), "burst value for '" + key + "'");
        auto set = [&](bool& seen, double& slot) {
            if (seen)
                throw UsageError("usage error: duplicate burst key '" + key + "'");
            seen = true;
            slot = value;
        };
        if (key == "center")
            set(has_center, spec.center);
        else if (key == "freq")
            set(has_freq, spec.frequency);
        else if (key == "width")
            set(has_width, spec.width);
        else if (key == "amp")
            set(has_amp, spec.amplitude);
        else
            throw UsageError("usage error: unknown burst key '" + key + "'");
    }
    if (!has_center || !has_freq || !has_width)
        throw UsageError("usage error: a burst needs center, freq and width");
    return spec;
}

std::pair<Index, Index> parse_point(const std::string& text, const std::string& flag) {
    const std::vector<std::string> fields = detail::split_fields(text);
    if (fields.size() != 2)
        throw UsageError("usage error: " + flag + " expects 'freq_index,time_index'");
    return {static_cast<Index>(parse_long_or_usage(fields[0], flag + " frequency index")),
            static_cast<Index>(parse_long_or_usage(fields[1], flag + " time index"))};
}

struct SynthArgs {
    std::vector<std::string> bursts;
    long n = 0;
    double dt = 0;
    double t0 = 0;
    std::string out = "signal.csv";
};

struct TransformArgs {
    std::string in;
    std::string out = "map.csv";
    std::string pgm;
};

struct ReconstructArgs {
    std::string in;
    std::string out = "recon.csv";
    std::string reference;
    long n = 0;
    double dt = 0;
    double t0 = 0;
    bool n_given = false;
    bool dt_given = false;
    bool t0_given = false;
};

struct EncodeArgs {
    std::string in;
    std::string p1;
    std::string p2;
    long auto_k = 0;
    std::string out = "qubit.json";
};

struct RelateArgs {
    std::string q1;
    std::string q2;
    std::string out = "relation.json";
};

int cmd_synth(const RunConfig& cfg, const SynthArgs& args) {
    if (args.bursts.empty())
        throw UsageError("usage error: at least one --burst is required");
    if (args.n < 2)
        throw UsageError("usage error: --n must be at least 2");
    if (!(args.dt > 0))
        throw UsageError("usage error: --dt must be positive");

    TimeSeries<double> series = synth_burst(args.t0, args.dt, args.n, parse_burst(args.bursts[0]));
    for (std::size_t b = 1; b < args.bursts.size(); ++b)
        series = superpose(series, synth_burst(args.t0, args.dt, args.n, parse_burst(args.bursts[b])));

    const std::string out = in_out_dir(cfg, args.out);
    write_signal_csv(series, out);
    std::cout << "n = " << series.size() << "  dt = " << fmt17(series.dt) << "  t0 = " << fmt17(series.t0)
              << "\n";
    std::cout << "wrote " << out << "\n";
    return 0;
}

int cmd_transform(const RunConfig& cfg, const TransformArgs& args) {
    const TimeSeries<double> series = read_signal_csv(args.in);
    const AnalyzingWavelet<double> wavelet{cfg.kind()};
    const FrequencyGrid<double> freq = cfg.band();
    const ShiftGrid<double> times = stride_grid(series, static_cast<Index>(cfg.stride));
    const WaveletMap<double> map = forward_cwt(series, wavelet, freq, times);

    const std::string out = in_out_dir(cfg, args.out);
    write_map_csv(map, out);
    if (!args.pgm.empty())
        write_map_pgm(map, in_out_dir(cfg, args.pgm));

    const MapExtremum<double> peak = map_argmax(map);
    std::cout << "map " << map.rows() << " x " << map.cols() << "\n";
    std::cout << "max |W| = " << fmt17(std::abs(peak.value)) << " at omega = "
              << fmt17(map.freq.values[peak.row]) << " (row " << peak.row << "), T = "
              << fmt17(map.times.value(peak.col)) << " (col " << peak.col << ")\n";
    if (std::abs(peak.value) > 0 && (peak.row == 0 || peak.row == map.rows() - 1))
        std::cerr << "warning: strongest response sits on the edge of the frequency band; the band may not"
                     " cover the signal\n";
    std::cout << "wrote " << out << "\n";
    return 0;
}

int cmd_reconstruct(const RunConfig& cfg, const ReconstructArgs& args) {
    const WaveletMap<double> map = read_map_csv(args.in);
    const DualBasisFunction<double> dual = dual_function(AnalyzingWavelet<double>{cfg.kind()}, cfg.quadrature());

    double out_t0 = args.t0;
    double out_dt = args.dt;
    Index out_n = static_cast<Index>(args.n);
    bool have_reference = !args.reference.empty();
    TimeSeries<double> reference;
    if (have_reference) {
        reference = read_signal_csv(args.reference);
        if (args.n_given && static_cast<Index>(args.n) != reference.size())
            throw UsageError("usage error: reference length does not match --n");
        if (args.dt_given && args.dt != reference.dt)
            throw UsageError("usage error: reference spacing does not match --dt");
        if (args.t0_given && args.t0 != reference.t0)
            throw UsageError("usage error: reference start does not match --t0");
        out_t0 = reference.t0;
        out_dt = reference.dt;
        out_n = reference.size();
    } else {
        if (!args.n_given || !args.dt_given)
            throw UsageError("usage error: reconstruct needs --reference or both --n and --dt");
        if (out_n < 2)
            throw UsageError("usage error: --n must be at least 2");
        if (!(out_dt > 0))
            throw UsageError("usage error: --dt must be positive");
    }

    const TimeSeries<double> recon = reconstruct(map, dual, out_t0, out_dt, out_n);
    const std::string out = in_out_dir(cfg, args.out);
    write_signal_csv(recon, out);
    std::cout << "reconstructed " << recon.size() << " samples\n";
    if (have_reference)
        std::cout << "relative L2 error = " << fmt17(reconstruction_error(reference, recon)) << "\n";
    std::cout << "wrote " << out << "\n";
    return 0;
}

int cmd_encode(const RunConfig& cfg, const EncodeArgs& args) {
    const bool have_points = !args.p1.empty() || !args.p2.empty();
    const bool have_auto = args.auto_k != 0;
    if (have_points && have_auto)
        throw UsageError("usage error: give either --p1/--p2 or --auto, not both");
    if (have_points && (args.p1.empty() || args.p2.empty()))
        throw UsageError("usage error: --p1 and --p2 must be given together");
    if (!have_points && !have_auto)
        throw UsageError("usage error: encode needs --p1/--p2 or --auto");
    if (have_auto && args.auto_k < 2)
        throw UsageError("usage error: --auto needs at least 2 peaks");

    const WaveletMap<double> map = read_map_csv(args.in);
    const DualBasisFunction<double> dual = dual_function(AnalyzingWavelet<double>{cfg.kind()}, cfg.quadrature());

    QubitState<double> qubit;
    if (have_points) {
        qubit = encode_qubit(map, parse_point(args.p1, "--p1"), parse_point(args.p2, "--p2"), dual);
    } else {
        const std::vector<MapPoint<double>> peaks = select_peaks(map, static_cast<Index>(args.auto_k));
        qubit = encode_qubit(map, {peaks[0].freq_index, peaks[0].time_index},
                             {peaks[1].freq_index, peaks[1].time_index}, dual);
    }

    const std::string out = in_out_dir(cfg, args.out);
    write_qubit_json(qubit, out);
    auto show = [](const char* name, const MapPoint<double>& p) {
        std::cout << "point " << name << ": (" << p.freq_index << ", " << p.time_index << ")  omega = "
                  << fmt17(p.omega) << "  T = " << fmt17(p.shift) << "  W = " << fmt17(p.coeff) << "\n";
    };
    show("m", qubit.point_m);
    show("n", qubit.point_n);
    std::cout << "norm = " << fmt17(qubit_norm(qubit)) << "\n";
    std::cout << "wrote " << out << "\n";
    return 0;
}

int cmd_relate(const RunConfig& cfg, const RelateArgs& args) {
    const QubitState<double> q1 = read_qubit_json(args.q1);
    const QubitState<double> q2 = read_qubit_json(args.q2);

    const RelationState<double> state = relate_product(q1, q2);
    const BellClassification<double> cls = classify_bell_condition(state, cfg.tol_bell);
    const double det = determinant(state);
    const bool separated = is_separated(state, cfg.tol_sep);

    const std::string out = in_out_dir(cfg, args.out);
    write_relation_json(state, cls, det, separated, cfg.tol_bell, out);

    std::cout << "U = [" << fmt17(state.u11()) << ", " << fmt17(state.u12()) << ", " << fmt17(state.u21())
              << ", " << fmt17(state.u22()) << "]\n";
    std::cout << "determinant = " << fmt17(det) << "\n";
    std::cout << "bell matched:";
    if (cls.matched.empty())
        std::cout << " (none)";
    for (const BellCondition c : cls.matched)
        std::cout << " " << bell_condition_letter(c) << "->" << bell_condition_form(c);
    std::cout << "\n";
    if (cls.degenerate)
        std::cout << "degenerate: all four slots vanish\n";
    std::cout << "separated = " << (separated ? "true" : "false") << "\n";
    std::cout << "wrote " << out << "\n";
    return 0;
}

} // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{"wavelet map toolkit: synthesize signals, build coefficient maps, reconstruct,"
                 " encode qubit states and relate them"};
    app.require_subcommand(1);

    RunConfig cfg;
    app.set_config("--config", "", "Read options from a key = value file");
    app.allow_config_extras(false);
    app.add_option("--wavelet", cfg.wavelet, "Analyzing wavelet kind")->capture_default_str();
    app.add_option("--omega-min", cfg.omega_min, "Lowest labeled frequency of the band")->capture_default_str();
    app.add_option("--omega-max", cfg.omega_max, "Highest labeled frequency of the band")->capture_default_str();
    app.add_option("--omega-count", cfg.omega_count, "Number of frequency rows")->capture_default_str();
    app.add_option("--stride", cfg.stride, "Shift-axis stride in samples")->capture_default_str();
    app.add_option("--xi-min", cfg.xi_min, "Admissibility quadrature lower limit")->capture_default_str();
    app.add_option("--xi-max", cfg.xi_max, "Admissibility quadrature upper limit")->capture_default_str();
    app.add_option("--xi-n", cfg.xi_n, "Admissibility quadrature point count")->capture_default_str();
    app.add_option("--tol-bell", cfg.tol_bell, "Zero tolerance for condition matching")->capture_default_str();
    app.add_option("--tol-sep", cfg.tol_sep, "Zero tolerance for the separation test")->capture_default_str();
    app.add_option("--out-dir", cfg.out_dir, "Directory receiving outputs and run.meta")->capture_default_str();

    SynthArgs synth_args;
    CLI::App* synth = app.add_subcommand("synth", "Synthesize a sum of Gaussian cosine bursts");
    synth->fallthrough();
    synth->add_option("--burst", synth_args.bursts,
                      "Burst as 'center=..,freq=..,width=..[,amp=..]' (repeatable)");
    synth->add_option("--n", synth_args.n, "Sample count")->required();
    synth->add_option("--dt", synth_args.dt, "Sample spacing")->required();
    synth->add_option("--t0", synth_args.t0, "Start time")->capture_default_str();
    synth->add_option("--out", synth_args.out, "Output CSV")->capture_default_str();

    TransformArgs transform_args;
    CLI::App* transform = app.add_subcommand("transform", "Build the coefficient map of a signal");
    transform->fallthrough();
    transform->add_option("--in", transform_args.in, "Input signal CSV")->required();
    transform->add_option("--out", transform_args.out, "Output map CSV")->capture_default_str();
    transform->add_option("--pgm", transform_args.pgm, "Also render the map to this PGM file");

    ReconstructArgs recon_args;
    CLI::App* recon = app.add_subcommand("reconstruct", "Rebuild a signal from a coefficient map");
    recon->fallthrough();
    recon->add_option("--in", recon_args.in, "Input map CSV")->required();
    recon->add_option("--out", recon_args.out, "Output CSV")->capture_default_str();
    recon->add_option("--reference", recon_args.reference,
                      "Signal CSV defining the output grid; also reports the relative L2 error");
    CLI::Option* recon_n = recon->add_option("--n", recon_args.n, "Output sample count");
    CLI::Option* recon_dt = recon->add_option("--dt", recon_args.dt, "Output sample spacing");
    CLI::Option* recon_t0 = recon->add_option("--t0", recon_args.t0, "Output start time");

    EncodeArgs encode_args;
    CLI::App* encode = app.add_subcommand("encode", "Read two map points into a qubit state");
    encode->fallthrough();
    encode->add_option("--in", encode_args.in, "Input map CSV")->required();
    encode->add_option("--p1", encode_args.p1, "First point as 'freq_index,time_index'");
    encode->add_option("--p2", encode_args.p2, "Second point as 'freq_index,time_index'");
    encode->add_option("--auto", encode_args.auto_k, "Pick the two strongest of k selected peaks");
    encode->add_option("--out", encode_args.out, "Output JSON")->capture_default_str();

    RelateArgs relate_args;
    CLI::App* relate = app.add_subcommand("relate", "Combine two qubit states into a relation");
    relate->fallthrough();
    relate->add_option("--q1", relate_args.q1, "First qubit JSON")->required();
    relate->add_option("--q2", relate_args.q2, "Second qubit JSON")->required();
    relate->add_option("--out", relate_args.out, "Output JSON")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    }

    try {
        cfg.validate();
        cfg.kind(); // reject unknown wavelet names before doing any work
        recon_args.n_given = recon_n->count() > 0;
        recon_args.dt_given = recon_dt->count() > 0;
        recon_args.t0_given = recon_t0->count() > 0;

        if (!cfg.out_dir.empty()) {
            std::error_code ec;
            fs::create_directories(cfg.out_dir, ec);
            if (ec)
                throw IoError("I/O error: cannot create out-dir '" + cfg.out_dir + "': " + ec.message());
        }
        write_run_meta(cfg);

        if (synth->parsed())
            return cmd_synth(cfg, synth_args);
        if (transform->parsed())
            return cmd_transform(cfg, transform_args);
        if (recon->parsed())
            return cmd_reconstruct(cfg, recon_args);
        if (encode->parsed())
            return cmd_encode(cfg, encode_args);
        if (relate->parsed())
            return cmd_relate(cfg, relate_args);
        throw UsageError("usage error: no command given");
    } catch (const ParseError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const UsageError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const ConvergenceError& e) {
        std::cerr << e.what() << "\n";
        return 3;
    } catch (const ExtentError& e) {
        std::cerr << e.what() << "\n";
        return 3;
    } catch (const DomainError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const IoError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace waveq::cli
