#include "mcwave/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <random>
#include <thread>

#include "mcwave/csv.hpp"
#include "mcwave/gfdm.hpp"
#include "mcwave/linalg.hpp"
#include "mcwave/link_sim.hpp"
#include "mcwave/spectral.hpp"
#include "mcwave/vofdm.hpp"

namespace mcw {
namespace {

const std::map<std::string, PulseKind> kPulseNames{
    {"rc", PulseKind::RaisedCosine}, {"rect", PulseKind::RectSubsymbol}, {"dirichlet", PulseKind::Dirichlet}};

// Raised when a command's arguments are individually well formed but do not
// describe a valid configuration.
class UsageError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct PulseOptions {
    std::string kind = "rc";
    double rolloff = 0.5;

    PulseSpec spec() const { return {kPulseNames.at(kind), rolloff, {}}; }
};

void add_pulse_options(CLI::App* cmd, PulseOptions& p) {
    cmd->add_option("--pulse", p.kind, "GFDM prototype")
        ->check(CLI::IsMember({"rc", "rect", "dirichlet"}))
        ->capture_default_str();
    cmd->add_option("--rolloff", p.rolloff, "raised-cosine rolloff in [0, 1]")->capture_default_str();
}

// Writes to the -o path, or to `out` when none was given.
void emit(const CsvTable& table, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        write_csv(out, table);
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw IoError("cannot open " + path + " for writing");
    write_csv(file, table);
    file.close();
    if (!file) throw IoError("failed writing " + path);
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw IoError("cannot open " + path + " for writing");
    file << text;
    file.close();
    if (!file) throw IoError("failed writing " + path);
}

// ---------------------------------------------------------------------------
// modulate

struct ModulateOptions {
    std::string system;
    std::size_t M = 0, L = 0, K = 0;
    PulseOptions pulse;
    std::optional<std::size_t> impulse;
    std::string input;
    std::uint64_t seed = 1;
    std::string output;
};

void require(std::size_t value, const char* flag, const std::string& system) {
    if (value == 0) throw UsageError(std::string(flag) + " is required and must be positive for --system " + system);
}

ComplexVector modulate_data(const ModulateOptions& o, std::size_t n) {
    if (o.impulse) {
        if (*o.impulse >= n)
            throw UsageError("--impulse " + std::to_string(*o.impulse) + " outside 0.." + std::to_string(n - 1));
        ComplexVector d(n);
        d[*o.impulse] = 1.0;
        return d;
    }
    if (!o.input.empty()) {
        auto d = read_samples(o.input);
        if (d.size() != n)
            throw UsageError(o.input + " holds " + std::to_string(d.size()) + " symbols, frame needs " +
                             std::to_string(n));
        return d;
    }
    std::mt19937_64 rng(o.seed);
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    ComplexVector d(n);
    for (auto& z : d) z = {normal(rng), normal(rng)};
    return d;
}

void cmd_modulate(const ModulateOptions& o, std::ostream& out) {
    ComplexVector x(1);
    if (o.system == "vofdm") {
        require(o.M, "--M", o.system);
        require(o.L, "--L", o.system);
        const VofdmConfig cfg{o.M, o.L};
        x = vofdm_modulate({cfg, modulate_data(o, cfg.N())});
    } else {
        require(o.K, "--K", o.system);
        require(o.M, "--M", o.system);
        const GfdmConfig cfg{o.K, o.M, o.pulse.spec()};
        cfg.validate();
        const auto d = modulate_data(o, cfg.N());
        x = gfdm_modulate({cfg, reshape_cols(d, cfg.K, cfg.M)});
    }
    emit(samples_table(x), o.output, out);
}

// ---------------------------------------------------------------------------
// matrix

struct MatrixOptions {
    std::string system;
    std::size_t N = 0, M = 0, L = 0, K = 0;
    PulseOptions pulse;
    std::size_t max_n = 1024;
    std::string output;
};

void cmd_matrix(const MatrixOptions& o, std::ostream& out) {
    std::size_t n = 0;
    if (o.system == "dft" || o.system == "idft") {
        require(o.N, "--N", o.system);
        n = o.N;
    } else if (o.system == "vofdm") {
        require(o.M, "--M", o.system);
        require(o.L, "--L", o.system);
        n = o.M * o.L;
    } else {
        require(o.K, "--K", o.system);
        require(o.M, "--M", o.system);
        n = o.K * o.M;
    }
    if (n > o.max_n)
        throw UsageError("N = " + std::to_string(n) + " exceeds --max-n " + std::to_string(o.max_n));

    ComplexMatrix m(1, 1);
    if (o.system == "dft") m = dft_matrix(n);
    else if (o.system == "idft") m = adjoint(dft_matrix(n));
    else if (o.system == "vofdm") m = vofdm_modulation_matrix({o.M, o.L});
    else m = gfdm_modulation_matrix({o.K, o.M, o.pulse.spec()});
    emit(matrix_table(m), o.output, out);
}

// ---------------------------------------------------------------------------
// verify

struct VerifyOptions {
    std::size_t vofdm_M = 3, vofdm_L = 4;
    std::size_t gfdm_K = 3, gfdm_M = 4;
    PulseOptions pulse;
    double tolerance = 0.0;
    std::uint64_t seed = 1;
    std::string output;
};

int cmd_verify(const VerifyOptions& o, std::ostream& out, std::ostream& err) {
    ComparisonOptions options;
    options.seed = o.seed;
    options.tolerance_override = o.tolerance;
    const auto checks = run_verification_suite({o.vofdm_M, o.vofdm_L}, {o.gfdm_K, o.gfdm_M, o.pulse.spec()}, options);

    CsvTable table{{"check_name", "value", "tolerance", "pass"}, {}};
    std::size_t failed = 0;
    for (const auto& c : checks) {
        table.rows.push_back({c.name, format_double(c.value), format_double(c.tolerance), c.pass ? "1" : "0"});
        if (!c.pass) {
            ++failed;
            err << "FAIL " << c.name << ": " << format_double(c.value)
                << (c.bound == Bound::AtMost ? " > " : " < ") << format_double(c.tolerance) << '\n';
        }
    }
    emit(table, o.output, out);
    err << "verify: " << checks.size() - failed << "/" << checks.size() << " checks passed\n";
    return failed == 0 ? kExitOk : kExitCheckFailed;
}

// ---------------------------------------------------------------------------
// ber

struct BerOptions {
    std::size_t N = 16;
    std::size_t vofdm_M = 2;
    std::size_t gfdm_M = 1;
    PulseOptions pulse;
    std::vector<std::string> systems{"ofdm", "vofdm"};
    std::vector<double> snr{0.0, 5.0, 10.0, 15.0, 20.0};
    std::size_t frames = 10000;
    std::uint64_t seed = 1;
    std::string channel = "two-tap-null";
    std::vector<double> taps;
    std::vector<double> taps_im;
    unsigned threads = 0;
    std::string output;
};

ChannelSpec ber_channel(const BerOptions& o) {
    if (o.taps.empty()) {
        if (!o.taps_im.empty()) throw UsageError("--taps-im needs --taps");
        return o.channel == "identity" ? ChannelSpec::identity() : ChannelSpec::two_tap_null();
    }
    if (!o.taps_im.empty() && o.taps_im.size() != o.taps.size())
        throw UsageError("--taps-im must have as many entries as --taps");
    ComplexVector taps(o.taps.size());
    for (std::size_t i = 0; i < taps.size(); ++i) taps[i] = {o.taps[i], o.taps_im.empty() ? 0.0 : o.taps_im[i]};
    return {taps, "custom taps"};
}

LinkConfig link_config(const BerOptions& o, System s) {
    switch (s) {
        case System::Ofdm: return {s, o.N, 1, {}};
        case System::Vofdm: return {s, o.N, o.vofdm_M, {}};
        case System::Gfdm: return {s, o.N, o.gfdm_M, o.pulse.spec()};
    }
    return {};
}

nlohmann::ordered_json ber_metadata(const BerOptions& o, const ChannelSpec& ch) {
    nlohmann::ordered_json meta;
    meta["description"] =
        "Uncoded QPSK over a cyclic channel with AWGN; the channel, SNR grid and receivers are an "
        "experimental design, not reference results.";
    meta["frame_length"] = o.N;
    meta["frames_per_point"] = o.frames;
    meta["seed"] = o.seed;
    meta["rng"] = "mt19937_64 per frame, seeded by seed_seq(seed, frame index)";
    meta["snr_definition"] = "noise variance per complex sample = (||y||^2 / N) / 10^(snr_db / 10), y = channel output";
    meta["channel"]["description"] = ch.description;
    for (const auto& t : ch.taps) meta["channel"]["taps"].push_back({t.real(), t.imag()});
    for (const auto& name : o.systems) {
        const System s = parse_system(name);
        nlohmann::ordered_json sys;
        sys["system"] = to_string(s);
        switch (s) {
            case System::Ofdm:
                sys["receiver"] = "per-bin zero forcing; bins with |H| < 1e-12 are set to zero";
                break;
            case System::Vofdm:
                sys["M"] = o.vofdm_M;
                sys["L"] = o.N / o.vofdm_M;
                sys["receiver"] =
                    "per-bin MMSE H* Y / (|H|^2 + noise variance), then V^H; ZF is undefined at an exact null";
                break;
            case System::Gfdm:
                sys["K"] = o.N / o.gfdm_M;
                sys["M"] = o.gfdm_M;
                sys["pulse"] = o.pulse.kind;
                sys["rolloff"] = o.pulse.rolloff;
                sys["receiver"] = "per-bin MMSE, then zero-forcing GFDM demodulation A^{-1}";
                break;
        }
        meta["systems"].push_back(sys);
    }
    return meta;
}

void cmd_ber(const BerOptions& o, std::ostream& out) {
    if (o.frames == 0) throw UsageError("--frames must be positive");
    const ChannelSpec channel = ber_channel(o);
    std::vector<LinkConfig> configs;
    for (const auto& name : o.systems) {
        configs.push_back(link_config(o, parse_system(name)));
        configs.back().validate();
    }
    channel.validate(o.N);
    const unsigned threads = o.threads ? o.threads : std::max(1u, std::min(8u, std::thread::hardware_concurrency()));

    CsvTable table{{"system", "snr_db", "bits", "errors", "ber", "seed"}, {}};
    for (const auto& cfg : configs)
        for (double snr : o.snr) {
            const auto r = run_ber(cfg, channel, snr, o.frames, o.seed, threads);
            table.rows.push_back({to_string(r.system), format_double(r.snr_db), std::to_string(r.bits_sent),
                                  std::to_string(r.bit_errors), format_double(r.ber), std::to_string(r.seed)});
        }
    emit(table, o.output, out);
    if (!o.output.empty()) write_text(o.output + ".meta.json", ber_metadata(o, channel).dump(2) + "\n");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Vector OFDM and GFDM modulation, spectral verification and BER experiments", "mcwave"};
    app.set_config("--config", "", "TOML file with one [section] per subcommand; flags override it");
    app.allow_config_extras(CLI::config_extras_mode::error);
    app.require_subcommand(1);

    ModulateOptions mod;
    auto* modulate = app.add_subcommand("modulate", "modulate one frame and write its samples");
    modulate->add_option("--system", mod.system)->required()->check(CLI::IsMember({"vofdm", "gfdm"}));
    modulate->add_option("--M", mod.M, "VOFDM rows / GFDM subsymbols");
    modulate->add_option("--L", mod.L, "VOFDM vector blocks");
    modulate->add_option("--K", mod.K, "GFDM subcarriers");
    add_pulse_options(modulate, mod.pulse);
    auto* impulse = modulate->add_option("--impulse", mod.impulse, "unit symbol at this data index");
    auto* input = modulate->add_option("--input", mod.input, "symbols as index,re,im CSV");
    impulse->excludes(input);
    modulate->add_option("--seed", mod.seed, "seed for random unit-power symbols")->capture_default_str();
    modulate->add_option("-o,--output", mod.output);

    MatrixOptions mat;
    auto* matrix = app.add_subcommand("matrix", "write a dense modulation matrix");
    matrix->add_option("--system", mat.system)->required()->check(CLI::IsMember({"dft", "idft", "vofdm", "gfdm"}));
    matrix->add_option("--N", mat.N, "size for dft / idft");
    matrix->add_option("--M", mat.M);
    matrix->add_option("--L", mat.L);
    matrix->add_option("--K", mat.K);
    add_pulse_options(matrix, mat.pulse);
    matrix->add_option("--max-n", mat.max_n, "refuse larger frames")->capture_default_str();
    matrix->add_option("-o,--output", mat.output);

    VerifyOptions ver;
    auto* verify = app.add_subcommand("verify", "run the spectral verification suite");
    verify->add_option("--vofdm-M", ver.vofdm_M)->capture_default_str();
    verify->add_option("--vofdm-L", ver.vofdm_L)->capture_default_str();
    verify->add_option("--gfdm-K", ver.gfdm_K)->capture_default_str();
    verify->add_option("--gfdm-M", ver.gfdm_M)->capture_default_str();
    add_pulse_options(verify, ver.pulse);
    verify->add_option("--tolerance", ver.tolerance, "override every upper-bound tolerance")
        ->check(CLI::PositiveNumber);
    verify->add_option("--seed", ver.seed)->capture_default_str();
    verify->add_option("-o,--output", ver.output);

    BerOptions ber;
    auto* ber_cmd = app.add_subcommand("ber", "bit error rate over a cyclic channel");
    ber_cmd->add_option("--N", ber.N, "frame length")->capture_default_str();
    ber_cmd->add_option("--vofdm-M", ber.vofdm_M)->capture_default_str();
    ber_cmd->add_option("--gfdm-M", ber.gfdm_M, "GFDM subsymbols (K = N / M)")->capture_default_str();
    add_pulse_options(ber_cmd, ber.pulse);
    ber_cmd->add_option("--systems", ber.systems)
        ->delimiter(',')
        ->check(CLI::IsMember({"ofdm", "vofdm", "gfdm"}))
        ->capture_default_str();
    ber_cmd->add_option("--snr", ber.snr, "SNR points in dB")->delimiter(',')->capture_default_str();
    ber_cmd->add_option("--frames", ber.frames)->capture_default_str();
    ber_cmd->add_option("--seed", ber.seed)->capture_default_str();
    ber_cmd->add_option("--channel", ber.channel)
        ->check(CLI::IsMember({"identity", "two-tap-null"}))
        ->capture_default_str();
    ber_cmd->add_option("--taps", ber.taps, "real parts of custom taps")->delimiter(',');
    ber_cmd->add_option("--taps-im", ber.taps_im, "imaginary parts of custom taps")->delimiter(',');
    ber_cmd->add_option("--threads", ber.threads, "worker threads (0 = automatic)");
    ber_cmd->add_option("-o,--output", ber.output, "CSV path; metadata goes to <path>.meta.json");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (modulate->parsed()) cmd_modulate(mod, out);
        else if (matrix->parsed()) cmd_matrix(mat, out);
        else if (verify->parsed()) return cmd_verify(ver, out, err);
        else cmd_ber(ber, out);
        return kExitOk;
    } catch (const IoError& e) {
        err << "mcwave: " << e.what() << '\n';
        return kExitIo;
    } catch (const UsageError& e) {
        err << "mcwave: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        err << "mcwave: " << e.what() << '\n';
        return kExitUsage;
    }
}

}  // namespace mcw
