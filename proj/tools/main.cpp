// Command-line front end: curve inspection, bitstream generation, the
// randomness battery, and the image cipher with its quality metrics.
//
// Exit codes: 0 success, 1 argument error, 2 parameter validation failure,
// 3 I/O failure, 4 battery failure under --strict.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ecprbg/bitstream.hpp"
#include "ecprbg/curve.hpp"
#include "ecprbg/field.hpp"
#include "ecprbg/imagecipher.hpp"
#include "ecprbg/prbg.hpp"
#include "ecprbg/sha256.hpp"
#include "ecprbg/stattests.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitIo = 3;
constexpr int kExitTestFailure = 4;

/// Argument-level problems CLI11 cannot catch (config file contents, flag combinations).
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// File-system problems: missing inputs, unwritable outputs.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CurveOptions {
    std::uint64_t p = 503;
    std::int64_t a = 4;
    std::int64_t b = 1;
    std::uint64_t gx = 283;
    std::uint64_t gy = 315;
    std::uint64_t order = 129;
    std::string seed_hex;
    bool random_seed = false;
    unsigned trunc_bits = 128;
    std::string config_path;
};

struct OptionHandles {
    CLI::Option* p = nullptr;
    CLI::Option* a = nullptr;
    CLI::Option* b = nullptr;
    CLI::Option* gx = nullptr;
    CLI::Option* gy = nullptr;
    CLI::Option* order = nullptr;
    CLI::Option* seed = nullptr;
    CLI::Option* trunc = nullptr;
};

OptionHandles add_curve_options(CLI::App* cmd, CurveOptions& opts, bool with_seed) {
    OptionHandles h;
    h.p = cmd->add_option("--p", opts.p, "Field modulus (prime, 3 < p < 2^62)")
              ->capture_default_str();
    h.a = cmd->add_option("--a", opts.a, "Curve coefficient a")->capture_default_str();
    h.b = cmd->add_option("--b", opts.b, "Curve coefficient b")->capture_default_str();
    h.gx = cmd->add_option("--gx", opts.gx, "Generator x coordinate")->capture_default_str();
    h.gy = cmd->add_option("--gy", opts.gy, "Generator y coordinate")->capture_default_str();
    h.order = cmd->add_option("--order", opts.order, "Generator order (verified at startup)")
                  ->capture_default_str();
    if (with_seed) {
        h.seed = cmd->add_option("--seed", opts.seed_hex, "Seed as a hex string");
        cmd->add_flag("--random-seed", opts.random_seed,
                      "Draw a 32-byte seed from the OS and print it");
        h.trunc = cmd->add_option("--trunc-bits", opts.trunc_bits,
                                  "Output bits taken per digest (1..256)")
                      ->capture_default_str();
    }
    cmd->add_option("--config", opts.config_path,
                    "key=value file with the options above; command-line flags win");
    return h;
}

std::uint64_t parse_u64(const std::string& text, const std::string& key) {
    std::size_t pos = 0;
    std::uint64_t value = 0;
    try {
        value = std::stoull(text, &pos);
    } catch (const std::exception&) {
        throw UsageError("config value for '" + key + "' is not an integer: " + text);
    }
    if (pos != text.size())
        throw UsageError("config value for '" + key + "' is not an integer: " + text);
    return value;
}

std::int64_t parse_i64(const std::string& text, const std::string& key) {
    std::size_t pos = 0;
    std::int64_t value = 0;
    try {
        value = std::stoll(text, &pos);
    } catch (const std::exception&) {
        throw UsageError("config value for '" + key + "' is not an integer: " + text);
    }
    if (pos != text.size())
        throw UsageError("config value for '" + key + "' is not an integer: " + text);
    return value;
}

std::string trim(const std::string& s) {
    const std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// key=value file, '#' comments. Values apply only where no flag was given.
void apply_config(const OptionHandles& h, CurveOptions& opts) {
    if (opts.config_path.empty()) return;
    std::ifstream in(opts.config_path);
    if (!in) throw IoError("cannot open config file " + opts.config_path);

    const auto unset = [](const CLI::Option* opt) { return opt != nullptr && opt->count() == 0; };
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string::size_type hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        const std::string::size_type eq = stripped.find('=');
        if (eq == std::string::npos)
            throw UsageError("config line " + std::to_string(line_no) + " is not key=value: " +
                             stripped);
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key == "p") {
            if (unset(h.p)) opts.p = parse_u64(value, key);
        } else if (key == "a") {
            if (unset(h.a)) opts.a = parse_i64(value, key);
        } else if (key == "b") {
            if (unset(h.b)) opts.b = parse_i64(value, key);
        } else if (key == "gx") {
            if (unset(h.gx)) opts.gx = parse_u64(value, key);
        } else if (key == "gy") {
            if (unset(h.gy)) opts.gy = parse_u64(value, key);
        } else if (key == "order") {
            if (unset(h.order)) opts.order = parse_u64(value, key);
        } else if (key == "seed") {
            if (unset(h.seed)) opts.seed_hex = value;
        } else if (key == "trunc-bits") {
            if (unset(h.trunc)) opts.trunc_bits = unsigned(parse_u64(value, key));
        } else {
            throw UsageError("unknown config key '" + key + "' in " + opts.config_path);
        }
    }
}

ecprbg::GeneratorSpec build_spec(const CurveOptions& opts) {
    ecprbg::PrimeField field(opts.p);
    ecprbg::CurveParams curve(field, field.element_from_signed(opts.a),
                              field.element_from_signed(opts.b));
    const ecprbg::CurvePoint g =
        ecprbg::CurvePoint::affine(field.element(opts.gx), field.element(opts.gy));
    return ecprbg::GeneratorSpec(curve, g, opts.order);
}

std::vector<std::uint8_t> resolve_seed(const CurveOptions& opts) {
    if (opts.random_seed) {
        if (!opts.seed_hex.empty())
            throw UsageError("--seed and --random-seed are mutually exclusive");
        std::random_device rd;
        std::vector<std::uint8_t> seed(32);
        for (std::size_t i = 0; i < seed.size(); i += 4) {
            const std::uint32_t word = rd();
            for (std::size_t j = 0; j < 4 && i + j < seed.size(); ++j)
                seed[i + j] = std::uint8_t(word >> (8 * j));
        }
        std::cout << "seed: " << ecprbg::to_hex(seed) << "\n";
        return seed;
    }
    if (opts.seed_hex.empty()) throw UsageError("--seed is required (or pass --random-seed)");
    return ecprbg::from_hex(opts.seed_hex);
}

nlohmann::json curve_json(const CurveOptions& opts) {
    nlohmann::json j;
    j["p"] = opts.p;
    j["a"] = opts.a;
    j["b"] = opts.b;
    j["gx"] = opts.gx;
    j["gy"] = opts.gy;
    j["order"] = opts.order;
    return j;
}

// ---- curve-info ------------------------------------------------------------

int run_curve_info(const CurveOptions& opts) {
    const ecprbg::GeneratorSpec spec = build_spec(opts);
    const ecprbg::CurveParams& curve = spec.curve();
    std::cout << "curve: y^2 = x^3 + " << curve.a().value() << "x + " << curve.b().value()
              << " over F_" << opts.p << "\n";
    std::cout << "discriminant: nonzero (curve is non-singular)\n";
    if (opts.p <= (std::uint64_t{1} << 20)) {
        std::cout << "cardinality: " << ecprbg::curve_order(curve) << "\n";
    } else {
        std::cout << "cardinality: skipped (p > 2^20)\n";
    }
    std::cout << "generator: (" << spec.generator().x().value() << ", "
              << spec.generator().y().value() << ") on curve\n";
    std::cout << "order: " << spec.order() << " (verified)\n";
    return kExitOk;
}

// ---- generate ---------------------------------------------------------------

int run_generate(const CurveOptions& opts, std::size_t bits, const std::string& out_path,
                 const std::string& format) {
    const std::vector<std::uint8_t> seed = resolve_seed(opts);
    ecprbg::GeneratorState state(build_spec(opts), seed, opts.trunc_bits);
    const ecprbg::BitStream stream = state.generate(bits);

    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw IoError("cannot open " + out_path + " for writing");
    if (format == "raw") {
        out.write(reinterpret_cast<const char*>(stream.bytes().data()),
                  std::streamsize(stream.bytes().size()));
    } else {
        const std::string text = stream.to_ascii();
        out.write(text.data(), std::streamsize(text.size()));
    }
    if (!out) throw IoError("write failed for " + out_path);
    out.close();

    nlohmann::json meta;
    meta["bits"] = bits;
    meta["format"] = format;
    meta["curve"] = curve_json(opts);
    meta["trunc_bits"] = opts.trunc_bits;
    meta["seed_sha256"] = ecprbg::to_hex(ecprbg::Sha256::digest(std::span(seed)));
    const std::string meta_path = out_path + ".meta.json";
    std::ofstream meta_out(meta_path);
    if (!meta_out) throw IoError("cannot open " + meta_path + " for writing");
    meta_out << meta.dump(2) << "\n";
    if (!meta_out) throw IoError("write failed for " + meta_path);

    std::cout << "wrote " << bits << " bits (" << format << ") to " << out_path << "\n";
    return kExitOk;
}

// ---- test -------------------------------------------------------------------

std::vector<std::uint8_t> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::vector<std::uint8_t> data((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
    return data;
}

bool looks_like_ascii_bits(const std::vector<std::uint8_t>& data) {
    if (data.empty()) return false;
    const std::size_t probe = std::min<std::size_t>(data.size(), 4096);
    for (std::size_t i = 0; i < probe; ++i) {
        const std::uint8_t c = data[i];
        if (c != '0' && c != '1' && c != '\n' && c != '\r' && c != ' ' && c != '\t') return false;
    }
    return true;
}

ecprbg::BitStream load_stream(const std::string& path, std::string format,
                              std::optional<std::size_t> bits_flag) {
    const std::vector<std::uint8_t> data = read_file(path);

    std::optional<std::size_t> sidecar_bits;
    std::string sidecar_format;
    const std::string meta_path = path + ".meta.json";
    if (std::filesystem::exists(meta_path)) {
        try {
            const nlohmann::json meta = nlohmann::json::parse(read_file(meta_path));
            if (meta.contains("bits")) sidecar_bits = meta["bits"].get<std::size_t>();
            if (meta.contains("format")) sidecar_format = meta["format"].get<std::string>();
        } catch (const nlohmann::json::exception&) {
            // unreadable sidecar: fall back to sniffing
        }
    }

    if (format == "auto") {
        if (!sidecar_format.empty())
            format = sidecar_format;
        else
            format = looks_like_ascii_bits(data) ? "ascii" : "raw";
    }

    if (format == "ascii")
        return ecprbg::BitStream::from_ascii(
            std::string_view(reinterpret_cast<const char*>(data.data()), data.size()));

    std::size_t n_bits = 8 * data.size();
    if (sidecar_bits) n_bits = *sidecar_bits;
    if (bits_flag) n_bits = *bits_flag;
    return ecprbg::BitStream::from_bytes(data, n_bits);
}

int run_test(const std::string& in_path, const std::string& format,
             std::optional<std::size_t> bits_flag, std::string json_path, bool strict,
             const ecprbg::BatteryConfig& config) {
    const ecprbg::BitStream stream = load_stream(in_path, format, bits_flag);
    const ecprbg::BatteryReport report = ecprbg::run_battery(stream, config);

    std::cout << ecprbg::report_text(report);

    if (json_path.empty()) json_path = in_path + ".report.json";
    std::ofstream out(json_path);
    if (!out) throw IoError("cannot open " + json_path + " for writing");
    out << ecprbg::report_json(report);
    if (!out) throw IoError("write failed for " + json_path);

    if (strict && !report.all_passed) return kExitTestFailure;
    return kExitOk;
}

// ---- encrypt / decrypt --------------------------------------------------------

constexpr const char* kKeymatPrefix = "keymat ";

int run_encrypt(const CurveOptions& opts, const std::string& in_path,
                const std::string& out_path) {
    const std::vector<std::uint8_t> seed = resolve_seed(opts);
    const ecprbg::GrayImage plain = ecprbg::read_pgm(in_path);
    const ecprbg::Sha256::Digest digest = ecprbg::image_digest(plain);

    ecprbg::GeneratorState state(build_spec(opts), ecprbg::keystream_seed(seed, digest),
                                 opts.trunc_bits);
    const ecprbg::GrayImage cipher = ecprbg::encrypt_image(plain, state);
    ecprbg::write_pgm(out_path, cipher, {kKeymatPrefix + ecprbg::to_hex(digest)});
    std::cout << "encrypted " << plain.width << "x" << plain.height << " image to " << out_path
              << "\n";
    return kExitOk;
}

int run_decrypt(const CurveOptions& opts, const std::string& in_path,
                const std::string& out_path) {
    if (opts.random_seed) throw UsageError("decrypt requires the original --seed");
    const std::vector<std::uint8_t> seed = resolve_seed(opts);

    std::vector<std::string> comments;
    const ecprbg::GrayImage cipher = ecprbg::read_pgm(in_path, &comments);

    std::string keymat_hex;
    for (const std::string& comment : comments)
        if (comment.rfind(kKeymatPrefix, 0) == 0) keymat_hex = comment.substr(7);
    if (keymat_hex.empty())
        throw std::invalid_argument(in_path +
                                    " carries no keymat header; was it produced by 'encrypt'?");
    const std::vector<std::uint8_t> keymat = ecprbg::from_hex(keymat_hex);
    if (keymat.size() != ecprbg::Sha256::kDigestSize)
        throw std::invalid_argument("keymat header has wrong length");
    ecprbg::Sha256::Digest digest{};
    std::copy(keymat.begin(), keymat.end(), digest.begin());

    ecprbg::GeneratorState state(build_spec(opts), ecprbg::keystream_seed(seed, digest),
                                 opts.trunc_bits);
    const ecprbg::GrayImage plain = ecprbg::decrypt_image(cipher, state);
    if (ecprbg::image_digest(plain) != digest)
        std::cerr << "warning: decrypted image does not match the keymat digest "
                     "(wrong seed, parameters, or corrupted file)\n";
    ecprbg::write_pgm(out_path, plain);
    std::cout << "decrypted " << plain.width << "x" << plain.height << " image to " << out_path
              << "\n";
    return kExitOk;
}

// ---- analyze ------------------------------------------------------------------

int run_analyze(const std::string& plain_path, const std::string& cipher_path,
                const std::string& cipher2_path, const std::string& json_path) {
    const ecprbg::GrayImage plain = ecprbg::read_pgm(plain_path);
    const ecprbg::GrayImage cipher = ecprbg::read_pgm(cipher_path);
    std::optional<ecprbg::GrayImage> cipher2;
    if (!cipher2_path.empty()) cipher2 = ecprbg::read_pgm(cipher2_path);

    const ecprbg::CipherMetrics metrics =
        ecprbg::compute_metrics(plain, cipher, cipher2 ? &*cipher2 : nullptr);

    const auto opt = [](const std::optional<double>& v) {
        return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
    };
    nlohmann::json doc;
    doc["cipher"] = nlohmann::json::parse(ecprbg::metrics_json(metrics));
    doc["plain"]["entropy"] = ecprbg::image_entropy(plain);
    doc["plain"]["corr_horizontal"] =
        opt(ecprbg::adjacent_correlation(plain, ecprbg::Adjacency::horizontal));
    doc["plain"]["corr_vertical"] =
        opt(ecprbg::adjacent_correlation(plain, ecprbg::Adjacency::vertical));
    doc["plain"]["corr_diagonal"] =
        opt(ecprbg::adjacent_correlation(plain, ecprbg::Adjacency::diagonal));

    const std::string text = doc.dump(2) + "\n";
    std::cout << text;
    if (!json_path.empty()) {
        std::ofstream out(json_path);
        if (!out) throw IoError("cannot open " + json_path + " for writing");
        out << text;
        if (!out) throw IoError("write failed for " + json_path);
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Elliptic-curve hash-chained bit generator, randomness battery, image cipher"};
    app.require_subcommand(1);

    CurveOptions curve_opts;

    CLI::App* info_cmd = app.add_subcommand("curve-info", "Validate and describe the curve setup");
    const OptionHandles info_handles = add_curve_options(info_cmd, curve_opts, false);

    CLI::App* gen_cmd = app.add_subcommand("generate", "Write a pseudorandom bitstream to a file");
    const OptionHandles gen_handles = add_curve_options(gen_cmd, curve_opts, true);
    std::size_t gen_bits = 0;
    std::string gen_out, gen_format = "raw";
    gen_cmd->add_option("--bits", gen_bits, "Number of bits to generate")->required();
    gen_cmd->add_option("--out", gen_out, "Output path")->required();
    gen_cmd->add_option("--format", gen_format, "raw (packed bytes) or ascii ('0'/'1' lines)")
        ->check(CLI::IsMember({"raw", "ascii"}))
        ->capture_default_str();

    CLI::App* test_cmd = app.add_subcommand("test", "Run the randomness battery over a bit file");
    std::string test_in, test_format = "auto", test_json;
    bool test_strict = false;
    std::optional<std::size_t> test_bits;
    ecprbg::BatteryConfig battery;
    test_cmd->add_option("--in", test_in, "Bitstream file (raw or ascii)")->required();
    test_cmd->add_option("--format", test_format, "raw, ascii, or auto")
        ->check(CLI::IsMember({"raw", "ascii", "auto"}))
        ->capture_default_str();
    test_cmd->add_option("--bits", test_bits, "Bit count for raw input (default: whole file)");
    test_cmd->add_option("--json", test_json, "Report path (default: <in>.report.json)");
    test_cmd->add_flag("--strict", test_strict, "Exit 4 if any test fails");
    test_cmd->add_option("--block-m", battery.block_frequency_m, "Block frequency block size")
        ->capture_default_str();
    test_cmd->add_option("--serial-m", battery.serial_m, "Serial pattern length")
        ->capture_default_str();
    test_cmd->add_option("--apen-m", battery.approximate_entropy_m,
                         "Approximate entropy block length")
        ->capture_default_str();
    test_cmd->add_option("--template", battery.template_bits, "Non-overlapping template bits")
        ->capture_default_str();
    test_cmd->add_option("--template-blocks", battery.template_blocks,
                         "Non-overlapping template block count")
        ->capture_default_str();
    test_cmd->add_option("--lc-block", battery.linear_complexity_block,
                         "Linear complexity block length")
        ->capture_default_str();

    CLI::App* enc_cmd = app.add_subcommand("encrypt", "Encrypt a PGM image");
    const OptionHandles enc_handles = add_curve_options(enc_cmd, curve_opts, true);
    std::string enc_in, enc_out;
    enc_cmd->add_option("--in", enc_in, "Plain PGM image")->required();
    enc_cmd->add_option("--out", enc_out, "Cipher PGM path")->required();

    CLI::App* dec_cmd = app.add_subcommand("decrypt", "Decrypt a PGM image from 'encrypt'");
    const OptionHandles dec_handles = add_curve_options(dec_cmd, curve_opts, true);
    std::string dec_in, dec_out;
    dec_cmd->add_option("--in", dec_in, "Cipher PGM image")->required();
    dec_cmd->add_option("--out", dec_out, "Output PGM path")->required();

    CLI::App* ana_cmd = app.add_subcommand("analyze", "Cipher-quality metrics for an image pair");
    std::string ana_plain, ana_cipher, ana_cipher2, ana_json;
    ana_cmd->add_option("--plain", ana_plain, "Plain PGM image")->required();
    ana_cmd->add_option("--cipher", ana_cipher, "Cipher PGM image")->required();
    ana_cmd->add_option("--cipher2", ana_cipher2,
                        "Second cipher image (enables NPCR/UACI)");
    ana_cmd->add_option("--json", ana_json, "Also write the JSON report here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (app.got_subcommand(info_cmd)) {
            apply_config(info_handles, curve_opts);
            return run_curve_info(curve_opts);
        }
        if (app.got_subcommand(gen_cmd)) {
            apply_config(gen_handles, curve_opts);
            return run_generate(curve_opts, gen_bits, gen_out, gen_format);
        }
        if (app.got_subcommand(test_cmd))
            return run_test(test_in, test_format, test_bits, test_json, test_strict, battery);
        if (app.got_subcommand(enc_cmd)) {
            apply_config(enc_handles, curve_opts);
            return run_encrypt(curve_opts, enc_in, enc_out);
        }
        if (app.got_subcommand(dec_cmd)) {
            apply_config(dec_handles, curve_opts);
            return run_decrypt(curve_opts, dec_in, dec_out);
        }
        if (app.got_subcommand(ana_cmd))
            return run_analyze(ana_plain, ana_cipher, ana_cipher2, ana_json);
        std::cerr << "error: no subcommand selected\n";
        return kExitUsage;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const ecprbg::PgmError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
}
